#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cgw/coulomb_gas.hpp"
#include "cgw/limits.hpp"
#include "cgw/quadrature.hpp"

namespace cgw {

// Thrown when M_N(n) cannot be inverted reliably at the requested speed.
struct SingularMeander : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class WeightProvenance { solved_from_meander, limit_regularized };

struct WeightVector {
    Eigen::VectorXd values;  // Pi_1 .. Pi_{C_N} at x
    WeightProvenance provenance = WeightProvenance::solved_from_meander;
    double condition = 0;    // 2-norm condition number of M_N(n)
};

// Relative determinant threshold below which the direct solve refuses.
inline constexpr double kSingularDetRel = 1e-8;

// F_1 .. F_{C_N} at x, in enumerate_connectivities(N) order.
Eigen::VectorXd basis_values(int n_arcs, double kappa, const std::vector<double>& x, const QuadConfig& cfg = {});
VecEvaluator basis_evaluator(int n_arcs, double kappa, const QuadConfig& cfg = {});

// M_N(n) Pi = F.
WeightVector solve_weights(int n_arcs, double kappa, const std::vector<double>& x, const QuadConfig& cfg = {});
VecEvaluator weights_evaluator(int n_arcs, double kappa, const QuadConfig& cfg = {});

// Pi at a speed where M_N is singular, as a symmetric kappa-limit of the solve.
WeightVector regularized_weights(int n_arcs, double kappa, const std::vector<double>& x, double dk = 1e-3,
                                 const QuadConfig& cfg = {});

// a_sigma = [L_sigma] F for every sigma (one column per component of F).
Eigen::MatrixXd decompose_vec(int n_arcs, const VecEvaluator& F, const std::vector<double>& x, double kappa,
                              const LadderConfig& ladder = {});
Eigen::VectorXd decompose(int n_arcs, const Evaluator& F, const std::vector<double>& x, double kappa,
                          const LadderConfig& ladder = {});

struct CrossingDistribution {
    Eigen::VectorXd probs;
    Eigen::VectorXd coefficients;  // a_sigma
    Eigen::VectorXd weights;       // Pi_sigma(x)
    double partition_value = 0;    // sum_sigma a_sigma Pi_sigma(x)
    double direct_value = std::nan("");  // F(x) evaluated directly when available
    std::vector<std::string> warnings;
};

// P_sigma = a_sigma Pi_sigma / sum_rho a_rho Pi_rho, given the coefficients.
CrossingDistribution crossing_from_coefficients(int n_arcs, const Eigen::VectorXd& a, double kappa,
                                                const std::vector<double>& x, const QuadConfig& cfg = {});
CrossingDistribution crossing_probabilities(int n_arcs, const Evaluator& F, const std::vector<double>& x,
                                            double kappa, const QuadConfig& cfg = {},
                                            const LadderConfig& ladder = {});

// Theta_sigma = sum_{theta <= C_{N-1}} b_{sigma,theta} F_theta with b the
// inverse of the meander block of the diagrams containing interval i. Indices
// refer to enumerate_connectivities(N, i).
struct ThetaConstruction {
    int n_arcs = 0;
    int interval = 0;
    int sigma = 0;                     // 1-based, <= C_{N-1}
    Eigen::VectorXd b;                 // coefficients on F_1 .. F_{C_{N-1}}
    Eigen::VectorXd expected_image;    // n at sigma, 1 where chi(rho) = sigma, 0 elsewhere
    Evaluator evaluate;
};

ThetaConstruction build_theta(int n_arcs, int sigma, int interval, double kappa, const QuadConfig& cfg = {});

// Reduced-system weights Xi at the points with interval i removed, indexed
// like the first C_{N-1} anchored diagrams of the N-system.
Eigen::VectorXd reduced_weights(int n_arcs, int interval, double kappa, const std::vector<double>& reduced_x,
                                const QuadConfig& cfg = {});

// lim n(k)^{-1} F_theta(k) as k -> kappa (theta is 1-based in enumerate order).
double regularized_basis_element(int n_arcs, int theta, double kappa, const std::vector<double>& x,
                                 double dk = 1e-4, const QuadConfig& cfg = {});

// v(F) = ([L_1]F, ..., [L_{C_N}]F) for each column of the evaluator.
Eigen::MatrixXd limit_vectors(int n_arcs, const VecEvaluator& F, const std::vector<double>& x, double kappa,
                              const LadderConfig& ladder = {});

// Fusion of x_2, ..., x_N onto x_1 with the one-leg fusion exponents 2j/kappa
// at step j; `leading_ratio` is the largest |A0|/(|A0|+|B0|) met along the
// way, i.e. how strongly the limit diverges.
struct MultiCollapse {
    double value = 0;
    double leading_ratio = 0;
};
MultiCollapse multi_collapse_limit(int n_arcs, const Evaluator& F, const std::vector<double>& x, double kappa,
                                   const LadderConfig& ladder = {});
inline double delta_plus(int s, double kappa) { return 2.0 * s / kappa; }

struct RainbowReport {
    int basis_rank = 0;     // rank of {v(F_1), ..., v(F_{C_N})}
    int extended_rank = 0;  // with v(Pi_{C_N}) appended
    int expected_basis_rank = 0;
    Eigen::MatrixXd vectors;  // columns v(F_theta), then v(Pi_{C_N})
};

RainbowReport rainbow_extended_basis_check(int n_arcs, double kappa, const std::vector<double>& x,
                                           const QuadConfig& cfg = {}, const LadderConfig& ladder = {});

}  // namespace cgw
