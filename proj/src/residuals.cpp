#include "cgw/residuals.hpp"

#include <cmath>
#include <stdexcept>

namespace cgw {

namespace {

double min_gap(const std::vector<double>& x)
{
    return PointConfig::make(x, 0).min_gap();
}

double shifted(const Evaluator& F, std::vector<double> x, int k, double d)
{
    x[k] += d;
    return F(x);
}

double d1(const Evaluator& F, const std::vector<double>& x, int k, double h)
{
    return (-shifted(F, x, k, 2 * h) + 8 * shifted(F, x, k, h) - 8 * shifted(F, x, k, -h) +
            shifted(F, x, k, -2 * h)) /
           (12 * h);
}

double d2(const Evaluator& F, const std::vector<double>& x, int k, double h, double f0)
{
    return (-shifted(F, x, k, 2 * h) + 16 * shifted(F, x, k, h) - 30 * f0 + 16 * shifted(F, x, k, -h) -
            shifted(F, x, k, -2 * h)) /
           (12 * h * h);
}

double d3(const Evaluator& F, const std::vector<double>& x, int k, double h)
{
    return (-shifted(F, x, k, 3 * h) + 8 * shifted(F, x, k, 2 * h) - 13 * shifted(F, x, k, h) +
            13 * shifted(F, x, k, -h) - 8 * shifted(F, x, k, -2 * h) + shifted(F, x, k, -3 * h)) /
           (8 * h * h * h);
}

// d/dx_k d/dx_j
double d11(const Evaluator& F, const std::vector<double>& x, int k, int j, double h)
{
    const double c[4] = {-1, 8, -8, 1};
    const double o[4] = {2, 1, -1, -2};
    double s = 0;
    for (int a = 0; a < 4; ++a) {
        std::vector<double> y = x;
        y[k] += o[a] * h;
        s += c[a] * d1(F, y, j, h);
    }
    return s / (12 * h);
}

double ratio(double sum, double mag)
{
    return mag > 0 ? std::abs(sum) / mag : std::abs(sum);
}

void check_index(const std::vector<double>& x, int j)
{
    if (j < 1 || j > static_cast<int>(x.size())) throw std::invalid_argument("point index out of range");
}

}  // namespace

double null_state_residual(const Evaluator& F, const std::vector<double>& x, int j, double kappa, double h_rel)
{
    check_index(x, j);
    const int jj = j - 1;
    const double h = h_rel * min_gap(x);
    const double f0 = F(x), th1 = (6.0 - kappa) / (2.0 * kappa);
    double t = kappa / 4.0 * d2(F, x, jj, h, f0);
    double sum = t, mag = std::abs(t);
    for (int k = 0; k < static_cast<int>(x.size()); ++k) {
        if (k == jj) continue;
        double dx = x[k] - x[jj];
        double a = d1(F, x, k, h) / dx, b = -th1 * f0 / (dx * dx);
        sum += a + b;
        mag += std::abs(a) + std::abs(b);
    }
    return ratio(sum, mag);
}

std::array<double, 3> ward_residuals(const Evaluator& F, const std::vector<double>& x, double kappa, double h_rel)
{
    const double h = h_rel * min_gap(x);
    const double f0 = F(x), th1 = (6.0 - kappa) / (2.0 * kappa);
    double s[3] = {0, 0, 0}, m[3] = {0, 0, 0};
    for (int k = 0; k < static_cast<int>(x.size()); ++k) {
        double g = d1(F, x, k, h);
        double terms[3][2] = {{g, 0}, {x[k] * g, th1 * f0}, {x[k] * x[k] * g, 2 * th1 * x[k] * f0}};
        for (int a = 0; a < 3; ++a)
            for (double v : terms[a]) {
                s[a] += v;
                m[a] += std::abs(v);
            }
    }
    return {ratio(s[0], m[0]), ratio(s[1], m[1]), ratio(s[2], m[2])};
}

double phi13_residual(const Evaluator& F, const std::vector<double>& x, int j, double kappa, double h_rel)
{
    check_index(x, j);
    const int jj = j - 1;
    const double h = h_rel * min_gap(x);
    const double f0 = F(x), g = kappa / 2.0 - 1.0;
    const double fj = d1(F, x, jj, h);
    double t = 2.0 / kappa * d3(F, x, jj, h);
    double sum = t, mag = std::abs(t);
    for (int k = 0; k < static_cast<int>(x.size()); ++k) {
        if (k == jj) continue;
        double dx = x[k] - x[jj];
        double dk = d1(F, x, k, h);
        double terms[4] = {2.0 * d11(F, x, k, jj, h) / dx, -2.0 * g * fj / (dx * dx), -g * dk / (dx * dx),
                           g * (kappa - 2.0) * f0 / (dx * dx * dx)};
        for (double v : terms) {
            sum += v;
            mag += std::abs(v);
        }
    }
    return ratio(sum, mag);
}

double scale_covariance_defect(const Evaluator& F, const std::vector<double>& x, double kappa, double lambda)
{
    std::vector<double> y = x;
    for (double& v : y) v *= lambda;
    const double n2 = static_cast<double>(x.size());
    double expect = std::pow(lambda, -n2 * (6.0 - kappa) / (2.0 * kappa)) * F(x);
    return std::abs(F(y) - expect) / std::abs(expect);
}

}  // namespace cgw
