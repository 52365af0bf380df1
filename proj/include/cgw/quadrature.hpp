#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace cgw {

using cplx = std::complex<double>;

struct QuadConfig {
    double rel_tol = 1e-11;
    double abs_tol = 1e-300;
    int min_level = 3;
    int max_level = 9;
    int fixed_level = -1;     // >= 0 disables adaptivity (smooth in parameters)
    double s_max = 0;         // 0 selects from the endpoint exponents
    double loop_kappa = 4.6;  // below this, endpoint loops replace the bare arc
    double loop_radius = 0.25;   // fraction of the local gap
    double arc_height = 0.5;     // arc height / endpoint distance (0.5 = semicircle)
};

// Tanh-sinh abscissae on (-1,1). dl = 1 + x and dr = 1 - x are computed
// without cancellation so integrands can evaluate endpoint powers exactly.
struct TSNode {
    double x, dl, dr, w;
};

// Nodes introduced at `level` (h = 2^-level); level 0 carries all integer
// multiples. Weights already include the step h.
const std::vector<TSNode>& tanh_sinh_level(int level, double s_max);

// s_max giving negligible tail for endpoint exponent beta > -1.
double tanh_sinh_smax(double beta);

struct QuadResult {
    cplx value{};
    double error = 0;
    long evals = 0;
    int level = 0;
    bool converged = false;
};

QuadResult tanh_sinh(const std::function<cplx(const TSNode&)>& f, const QuadConfig& cfg, double s_max);

// Real integral of f over [a,b] with the same rule; f receives (x, x-a, b-x).
QuadResult integrate_real(const std::function<double(double, double, double)>& f, double a, double b,
                          const QuadConfig& cfg, double s_max = 4.0);

}  // namespace cgw
