#pragma once

#include <array>
#include <vector>

#include "cgw/coulomb_gas.hpp"

namespace cgw {

// Finite-difference residuals of the PDE system. Every residual is the
// absolute value of the operator applied to F divided by the sum of the
// absolute values of its individual terms, so 0 means exact and 1 means no
// cancellation at all. Derivatives use fourth-order central stencils with
// step h_rel * (min gap); the evaluator should be smooth in x at that scale
// (use a fixed quadrature level, see QuadConfig::fixed_level).
inline constexpr double kDefaultStepRel = 1e-2;

double null_state_residual(const Evaluator& F, const std::vector<double>& x, int j, double kappa,
                           double h_rel = kDefaultStepRel);

// translation, dilation, special conformal
std::array<double, 3> ward_residuals(const Evaluator& F, const std::vector<double>& x, double kappa,
                                     double h_rel = kDefaultStepRel);

// Third-order operator attached to phi_{1,3}.
double phi13_residual(const Evaluator& F, const std::vector<double>& x, int j, double kappa,
                      double h_rel = kDefaultStepRel);

// Relative deviation of F(lambda x) from lambda^{-2N theta_1} F(x).
double scale_covariance_defect(const Evaluator& F, const std::vector<double>& x, double kappa, double lambda);

}  // namespace cgw
