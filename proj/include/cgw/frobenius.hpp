#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cgw/config.hpp"
#include "cgw/limits.hpp"
#include "cgw/quadrature.hpp"

namespace cgw {

// F ~ d^{1-6/k} (A0 + A1 d + ...) + d^{2/k} (B0 + B1 d + ...) [+ d^{2/k} log d (C0 + ...)]
// with d = x_{i+1} - x_i. Coefficients are functions of the remaining points,
// reported at the given x.
struct FrobeniusFit {
    double A0 = 0, A1 = 0, B0 = 0, B1 = 0, C0 = 0;
    bool has_log = false;
    double exponent_A = 0;  // 1 - 6/kappa
    double exponent_B = 0;  // 2/kappa
    double residual = 0;
    double scale = 0;       // max |d^{6/k-1} F| over the ladder
    SeriesFit raw;
};

FrobeniusFit fit_expansion(const Evaluator& F, const std::vector<double>& x, int i, double kappa,
                           const LadderConfig& ladder = {});
std::vector<FrobeniusFit> fit_expansion_vec(const VecEvaluator& F, const std::vector<double>& x, int i, double kappa,
                                            const LadderConfig& ladder = {});
// Component j of a vector fit, packaged like fit_expansion.
FrobeniusFit component_fit(const SeriesFit& fit, int j, double kappa);

// Linear combination of component fits (the fit is linear in the data).
FrobeniusFit combine_fits(const std::vector<FrobeniusFit>& fits, const Eigen::VectorXd& c);

// Free-exponent fit: minimizes the least-squares residual of
// d^p (sum_m a_m d^m + sum_m b_m d^{8/k-1+m}) over p in [p_lo, p_hi].
struct ExponentFit {
    double exponent = 0;
    double residual = 0;
};
ExponentFit fit_leading_exponent(const Evaluator& F, const std::vector<double>& x, int i, double kappa, double p_lo,
                                 double p_hi, int points = 14);

enum class SleType { contractible, propagating, mixed, indeterminate };
enum class CftType { two_leg, identity, neither, undefined_identity, indeterminate };
const char* to_string(SleType t);
const char* to_string(CftType t);

struct IntervalClassification {
    SleType sle_type = SleType::indeterminate;
    CftType cft_type = CftType::indeterminate;
    Eigen::VectorXd coefficients;  // a_sigma in enumerate order
    FrobeniusFit fit;
};

// Three-way test against scale: 0 zero, 1 nonzero, -1 inside the band.
int zero_test(double value, double scale, const Thresholds& th = {});

SleType sle_type_from_coefficients(int n_arcs, int i, const Eigen::VectorXd& a, const Thresholds& th = {});
CftType cft_type_from_fit(const FrobeniusFit& fit, double kappa, const Thresholds& th = {});

IntervalClassification classify_interval(int n_arcs, const Evaluator& F, const std::vector<double>& x, int i,
                                         double kappa, const LadderConfig& ladder = {}, const Thresholds& th = {});

// Collapse of the crossing probabilities of F = sum a_sigma Pi_sigma at the
// (non-wrapping) interval i. Vectors are in enumerate_connectivities(N) order.
struct ConditionedLimits {
    Eigen::VectorXd limits;         // fitted lim P_sigma
    Eigen::VectorXd reduced_q;      // Q_sigma from the (N-1)-system, 0 for propagating sigma
    Eigen::VectorXd lambda_ratios;  // a Lambda / sum a Lambda over propagating sigma, 0 otherwise
    std::vector<bool> contractible; // sigma has an arc on interval i
    double residual = 0;
};

ConditionedLimits conditioned_probability_limits(int n_arcs, const Eigen::VectorXd& a, const std::vector<double>& x,
                                                 int i, double kappa, const QuadConfig& cfg = {},
                                                 const LadderConfig& ladder = {});

}  // namespace cgw
