#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <boost/rational.hpp>

#include "cgw/combinatorics.hpp"

namespace cgw {

using Rational = boost::rational<long>;

enum class EightOverKappa { even_integer, odd_integer, rational_non_integer, irrational };
const char* to_string(EightOverKappa k);

// Continued-fraction recognition; max denominator and tolerance follow the
// documented policy (1000, 1e-12).
std::optional<Rational> recognize_rational(double x, long max_den = 1000, double tol = 1e-12);

struct SpeedContext {
    double kappa = 0;
    double n = 0;
    double c = 0;
    EightOverKappa eight_over_kappa = EightOverKappa::irrational;
    std::optional<Rational> exact;  // kappa as a rational, when recognised

    static SpeedContext from_kappa(double kappa);
    static SpeedContext from_rational(Rational kappa);
};

double fugacity(double kappa);
double central_charge(double kappa);

struct MeanderMatrix {
    int n_arcs = 0;
    double fugacity = 0;
    Eigen::MatrixXi exponents;
    Eigen::MatrixXd entries;
    long size() const { return entries.rows(); }
};

inline constexpr int kMaxMeanderArcs = 7;

Eigen::MatrixXi loop_exponents(const std::vector<ArcDiagram>& diagrams);
MeanderMatrix build_meander_matrix(int n_arcs, double n, std::optional<int> anchor = {},
                                   int max_arcs = kMaxMeanderArcs);

double meander_zero(int q, int qpp);

struct ExceptionalSpeed {
    long q = 0;
    long q_prime = 0;
    double kappa() const { return 4.0 * q / q_prime; }
};

std::optional<ExceptionalSpeed> is_exceptional(double kappa, int n_arcs);
std::optional<ExceptionalSpeed> is_exceptional(Rational kappa, int n_arcs);

int rank_at_zero(int n_arcs, int q, int qpp);
// Singular values above tol * max(sigma_max, floor) count; floor = 0 makes the
// test purely relative.
int numeric_rank(const Eigen::MatrixXd& m, double tol = 1e-10, double floor = 0);
// Meander entries are O(1) polynomials in n, so the reference scale is at least 1
// (M_N(0) is the zero matrix).
inline int numeric_rank(const MeanderMatrix& m, double tol = 1e-10) { return numeric_rank(m.entries, tol, 1.0); }

// All admissible zeros (q, q'') with q <= N+1, sorted by value.
struct MeanderZero {
    int q, qpp;
    double n;
};
std::vector<MeanderZero> meander_zeros(int n_arcs);

bool sign_relation_check(int n_arcs, std::optional<int> anchor = {});

}  // namespace cgw
