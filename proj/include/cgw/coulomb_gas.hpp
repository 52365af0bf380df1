#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "cgw/combinatorics.hpp"
#include "cgw/meander.hpp"
#include "cgw/quadrature.hpp"

namespace cgw {

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Strictly increasing coordinates x_1 < ... < x_2N.
struct PointConfig {
    std::vector<double> coords;
    static PointConfig make(std::vector<double> x, double eps_geom = 1e-8);
    int n_arcs() const { return static_cast<int>(coords.size()) / 2; }
    double min_gap() const;
};

enum class ContourKind { simple_upper_arc, pochhammer };

struct ContourSpec {
    ContourKind kind = ContourKind::simple_upper_arc;
    int i = 0, j = 0;       // 0-based endpoint indices, i < j
    int nesting_level = 0;  // number of contour arcs enclosing this one
};

struct CoulombGasSpec {
    int n_arcs = 0;
    ArcDiagram diagram;
    int c = 1;  // 1-based
    SpeedContext speed;
    std::vector<ContourSpec> contours;
    int c_depth = 0;  // number of contour arcs enclosing the arc at x_c
};

struct EvalResult {
    double value = 0;
    double abs_error_est = 0;
    double imag_leak = 0;
    long n_evals = 0;
};

// c is 1-based and must be an endpoint of some arc of the diagram.
CoulombGasSpec build_spec(const ArcDiagram& diagram, int c, double kappa);

// The exceptional kappa values where the Gamma factors of the prefactor hit
// poles (8/kappa an integer >= 2).
bool prefactor_singular(double kappa);

// n [n Gamma(2-8/k) / Gamma(1-4/k)^2]^{N-1}, the contour normalization already
// folded into the continued simple-arc integral.
double basis_constant(int n_arcs, double kappa);

EvalResult evaluate_basis(const CoulombGasSpec& spec, const std::vector<double>& x,
                          const QuadConfig& cfg = {});

// Convenience: c defaults to 1, kappa limits are taken automatically at
// prefactor singularities.
double basis_value(const ArcDiagram& diagram, double kappa, const std::vector<double>& x,
                   const QuadConfig& cfg = {}, int c = 1);

// lim_{k'->kappa} F(k')/n(k'), finite when n(kappa) = 0.
double regularized_basis_value(const ArcDiagram& diagram, double kappa, const std::vector<double>& x,
                               const QuadConfig& cfg = {}, int c = 1, double dk = 1e-4);

// Symmetric Richardson limit of g(k') as k' -> kappa.
double kappa_limit(const std::function<double(double)>& g, double kappa, double dk);

// The bare Coulomb-gas integral J with the reality normalization applied.
EvalResult coulomb_integral(const CoulombGasSpec& spec, const std::vector<double>& x,
                            const QuadConfig& cfg = {});

// Left side of the kappa = 6 integral identity with contours on the given
// arcs (0-based endpoint pairs) and x_c the endpoint of the remaining arc.
EvalResult evaluate_dotsenko_fateev_kernel(const std::vector<double>& x, int c,
                                           const std::vector<std::pair<int, int>>& arcs,
                                           double kappa, const QuadConfig& cfg = {});
double dotsenko_fateev_rhs(const std::vector<double>& x, int c);

using Evaluator = std::function<double(const std::vector<double>&)>;

}  // namespace cgw
