#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "cgw/coulomb_gas.hpp"
#include "cgw/residuals.hpp"

using namespace cgw;

namespace {

// N = 2, kappa > 4, x_c = x_1: one screening charge on a real segment between
// the endpoints of the arc not touching x_1.
double two_arc_oracle(const ArcDiagram& d, double k, const std::vector<double>& x)
{
    const int a = d.pairing[0] == 1 ? 2 : 1;
    const int b = d.pairing[a];
    const double n = fugacity(k);
    const double pre = n * n * std::tgamma(2 - 8 / k) / std::pow(std::tgamma(1 - 4 / k), 2);
    double P = 1;
    for (int j = 1; j < 4; ++j)
        for (int l = j + 1; l < 4; ++l) P *= std::pow(x[l] - x[j], 2 / k);
    for (int j = 1; j < 4; ++j) P *= std::pow(x[j] - x[0], 1 - 6 / k);
    const int other = 6 - a - b;  // the remaining index besides 0, a, b
    auto g = [&](double u, double uc) {
        double dl, dr;
        if (uc < 0) {
            dl = -uc;
            dr = x[b] - u;
        } else {
            dl = u - x[a];
            dr = uc;
        }
        return std::pow(u - x[0], 12 / k - 2) * std::pow(std::abs(u - x[other]), -4 / k) * std::pow(dl, -4 / k) *
               std::pow(dr, -4 / k);
    };
    boost::math::quadrature::tanh_sinh<double> ts;
    return pre * P * ts.integrate(g, x[a], x[b]);
}

std::vector<double> unit_points(int n)
{
    std::vector<double> x;
    for (int k = 0; k < 2 * n; ++k) x.push_back(k);
    return x;
}

}  // namespace

TEST_CASE("point configurations")
{
    CHECK_THROWS_AS(PointConfig::make({0, 2, 1, 3}), std::invalid_argument);
    CHECK_THROWS_AS(PointConfig::make({0, 1, 2}), std::invalid_argument);
    auto p = PointConfig::make({0, 1, 2.5, 3});
    CHECK(p.n_arcs() == 2);
    CHECK(p.min_gap() == doctest::Approx(0.5));
}

TEST_CASE("one arc is a pure power")
{
    for (double k : {2.5, 3.0, 5.0, 7.0}) {
        const double v = basis_value(diagram_from_parens("()"), k, {0.3, 1.7});
        CHECK(v == doctest::Approx(fugacity(k) * std::pow(1.4, 1 - 6 / k)).epsilon(1e-10));
    }
    const double reg = regularized_basis_value(diagram_from_parens("()"), 8.0 / 3.0, {0.3, 1.7});
    CHECK(reg == doctest::Approx(std::pow(1.4, 1 - 6 / (8.0 / 3.0))).epsilon(1e-8));
}

TEST_CASE("two arcs against a separate segment integral")
{
    const std::vector<std::vector<double>> xs = {{0, 1, 2.3, 3.1}, {-1, 0.2, 0.9, 4}, {0, 0.5, 3, 3.25}};
    for (double k : {4.5, 5.0, 16.0 / 3.0, 20.0 / 3.0, 7.5})
        for (const auto& x : xs)
            for (const auto& d : enumerate_connectivities(2)) {
                CAPTURE(k);
                CAPTURE(d.parens());
                const double lib = basis_value(d, k, x);
                CHECK(lib == doctest::Approx(two_arc_oracle(d, k, x)).epsilon(1e-9));
            }
}

TEST_CASE("kappa = 6 gives the constant function")
{
    for (int n : {1, 2, 3}) {
        const auto x = unit_points(n);
        for (const auto& d : enumerate_connectivities(n))
            for (int c = 1; c <= 2 * n; c += (n == 3 ? 3 : 1)) {
                CAPTURE(d.parens());
                CAPTURE(c);
                CHECK(evaluate_basis(build_spec(d, c, 6.0), x).value == doctest::Approx(1.0).epsilon(1e-7));
            }
    }
}

TEST_CASE("kappa = 6 integral identity")
{
    std::vector<double> x = {0, 1.1, 2.4, 3.9};
    const double lhs = evaluate_dotsenko_fateev_kernel(x, 1, {{1, 2}}, 6.0).value;
    CHECK(lhs == doctest::Approx(dotsenko_fateev_rhs(x, 1)).epsilon(1e-8));
}

TEST_CASE("the choice of x_c does not matter")
{
    const std::vector<double> x = {0, 0.7, 1.9, 2.6};
    for (double k : {3.0, 5.0, 7.0})
        for (const auto& d : enumerate_connectivities(2)) {
            const double ref = basis_value(d, k, x, {}, 1);
            for (int c = 2; c <= 4; ++c) {
                CAPTURE(k);
                CAPTURE(c);
                CHECK(basis_value(d, k, x, {}, c) == doctest::Approx(ref).epsilon(1e-8));
            }
        }
}

TEST_CASE("mirror image maps the basis onto itself")
{
    const std::vector<double> x = {0, 0.7, 1.9, 2.6, 4.0, 4.4};
    std::vector<double> xr(x.rbegin(), x.rend());
    for (auto& v : xr) v = -v;
    for (const auto& d : enumerate_connectivities(3)) {
        std::vector<int> mp(6);
        for (int j = 0; j < 6; ++j) mp[5 - j] = 5 - d.pairing[j];
        const auto dm = make_diagram(mp);
        CAPTURE(d.parens());
        CHECK(basis_value(d, 5.0, x) == doctest::Approx(basis_value(dm, 5.0, xr)).epsilon(1e-8));
    }
}

TEST_CASE("results are real and scale covariant")
{
    auto spec = build_spec(diagram_from_parens("(())"), 1, 5.0);
    auto r = evaluate_basis(spec, {0, 1, 2, 3.5});
    CHECK(r.imag_leak < 1e-8 * std::abs(r.value));
    Evaluator F = [](const std::vector<double>& y) { return basis_value(diagram_from_parens("(())"), 3.0, y); };
    CHECK(scale_covariance_defect(F, {0, 1, 2, 3.5}, 3.0, 1.7) < 1e-8);
}

TEST_CASE("PDE residuals on a small basis")
{
    QuadConfig q;
    q.fixed_level = 6;
    const std::vector<double> x = {0, 0.9, 2.1, 2.8};
    for (double k : {3.0, 5.0}) {
        for (const auto& d : enumerate_connectivities(2)) {
            Evaluator F = [&](const std::vector<double>& y) { return basis_value(d, k, y, q); };
            for (int j = 1; j <= 4; ++j) CHECK(null_state_residual(F, x, j, k) < 1e-5);
            for (double w : ward_residuals(F, x, k)) CHECK(w < 1e-5);
        }
    }
    // a function that is not a solution must fail
    Evaluator bad = [](const std::vector<double>& y) { return std::exp(y[1] - y[0]) * (y[3] - y[2]); };
    CHECK(null_state_residual(bad, x, 1, 5.0) > 1e-2);
}

TEST_CASE("third-order operator at kappa = 3")
{
    QuadConfig q;
    q.fixed_level = 6;
    const std::vector<double> x = {0, 0.9, 2.1, 2.8};
    for (const auto& d : enumerate_connectivities(2)) {
        Evaluator F = [&](const std::vector<double>& y) { return basis_value(d, 3.0, y, q); };
        CHECK(phi13_residual(F, x, 2, 3.0) < 1e-4);
    }
}

TEST_CASE("prefactor poles")
{
    CHECK(prefactor_singular(8.0 / 3.0));
    CHECK(prefactor_singular(4.0));
    CHECK_FALSE(prefactor_singular(5.0));
    // the automatic kappa limit matches nearby values
    const auto d = diagram_from_parens("(())");
    const std::vector<double> x = {0, 1, 2, 3.5};
    const double at = basis_value(d, 4.0, x);
    const double near = 0.5 * (basis_value(d, 4.0 + 1e-4, x) + basis_value(d, 4.0 - 1e-4, x));
    CHECK(at == doctest::Approx(near).epsilon(1e-6));
}

TEST_CASE("bad input is rejected")
{
    CHECK_THROWS(build_spec(diagram_from_parens("()()"), 5, 5.0));
    CHECK_THROWS(basis_value(diagram_from_parens("()()"), 9.0, {0, 1, 2, 3}));
    CHECK_THROWS(basis_value(diagram_from_parens("()()"), 5.0, {0, 1, 2}));
}
