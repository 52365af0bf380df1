#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "cgw/frobenius.hpp"
#include "cgw/weights.hpp"

using namespace cgw;

namespace {
const std::vector<double> kX2 = {0, 1, 2.2, 3.5};
}

TEST_CASE("zero test bands")
{
    Thresholds th;
    CHECK(zero_test(1e-8, 1.0, th) == 0);
    CHECK(zero_test(1e-3, 1.0, th) == 1);
    CHECK(zero_test(5e-6, 1.0, th) == -1);
}

TEST_CASE("exponents at kappa = 5")
{
    const double k = 5.0;
    const auto ds = enumerate_connectivities(2);
    // interval 1 is on an arc of ()() and between arcs of (())
    Evaluator on = [&](const std::vector<double>& y) { return basis_value(ds[0], k, y); };
    auto W = weights_evaluator(2, k);
    Evaluator off = [&](const std::vector<double>& y) { return W(y)(1); };
    CHECK(fit_leading_exponent(on, kX2, 1, k, -0.6, 0.6).exponent == doctest::Approx(1 - 6 / k).epsilon(1e-4));
    CHECK(fit_leading_exponent(off, kX2, 1, k, 0.1, 0.9).exponent == doctest::Approx(2 / k).epsilon(1e-4));
}

TEST_CASE("series coefficients of a basis function")
{
    const double k = 5.0;
    Evaluator F = [&](const std::vector<double>& y) { return basis_value(enumerate_connectivities(2)[0], k, y); };
    const auto f = fit_expansion(F, kX2, 1, k);
    CHECK(f.exponent_A == doctest::Approx(1 - 6 / k));
    CHECK(f.exponent_B == doctest::Approx(2 / k));
    CHECK(f.A0 == doctest::Approx(collapse_limit(F, kX2, 1, k)).epsilon(1e-8));
    CHECK(std::abs(f.A1) < 1e-4 * f.scale);
    CHECK(f.residual < 1e-6);
    CHECK_FALSE(f.has_log);
}

TEST_CASE("A0 depends only on the remaining points")
{
    const double k = 5.0;
    Evaluator F = [&](const std::vector<double>& y) { return basis_value(enumerate_connectivities(2)[1], k, y); };
    auto y = kX2;
    const double a = fit_expansion(F, y, 2, k).A0;
    y[2] = 1.7;  // x_{i+1} moves, x_i and the rest stay
    const double b = fit_expansion(F, y, 2, k).A0;
    CHECK(b == doctest::Approx(a).epsilon(1e-6));
}

TEST_CASE("classification of weights")
{
    const double k = 5.0;
    auto W = weights_evaluator(2, k);
    const auto ds = enumerate_connectivities(2);
    for (int t = 0; t < 2; ++t) {
        Evaluator P = [&](const std::vector<double>& y) { return W(y)(t); };
        const auto c = classify_interval(2, P, kX2, 1, k);
        const bool on = contains_interval(ds[static_cast<size_t>(t)], 1);
        CAPTURE(t);
        CHECK(c.sle_type == (on ? SleType::contractible : SleType::propagating));
        CHECK((c.cft_type == CftType::two_leg) == !on);
    }
}

TEST_CASE("propagating and two-leg agree on mixtures")
{
    const double k = 16.0 / 3.0;
    auto W = weights_evaluator(2, k);
    for (auto [a, b] : {std::pair{1.0, 0.0}, {0.0, 1.0}, {1.0, 2.0}}) {
        Evaluator F = [&](const std::vector<double>& y) {
            auto w = W(y);
            return a * w(0) + b * w(1);
        };
        const auto c = classify_interval(2, F, kX2, 1, k);
        CHECK((c.sle_type == SleType::propagating) == (c.cft_type == CftType::two_leg));
    }
}

TEST_CASE("sle type from coefficients")
{
    Eigen::VectorXd a(2);
    a << 1.0, 0.0;
    CHECK(sle_type_from_coefficients(2, 1, a) == SleType::contractible);
    a << 0.0, 1.0;
    CHECK(sle_type_from_coefficients(2, 1, a) == SleType::propagating);
    a << 1.0, 1.0;
    CHECK(sle_type_from_coefficients(2, 1, a) == SleType::mixed);
    a << 1.0, 3e-6;
    CHECK(sle_type_from_coefficients(2, 1, a) == SleType::indeterminate);
}

TEST_CASE("no log at kappa = 4")
{
    const double k = 4.0;
    Evaluator F = [&](const std::vector<double>& y) { return basis_value(enumerate_connectivities(2)[1], k, y); };
    LadderConfig lc;
    lc.log_terms = true;
    const auto f = fit_expansion(F, kX2, 1, k, lc);
    CHECK(f.has_log);
    CHECK(std::abs(f.A0) > 0.1);
    CHECK(std::abs(f.C0) < 1e-4 * std::max({std::abs(f.A0), std::abs(f.B0), std::abs(f.C0)}));
}

TEST_CASE("log term at kappa = 8/3")
{
    const double k = 8.0 / 3.0;
    VecEvaluator G = [&](const std::vector<double>& y) {
        Eigen::VectorXd v(2);
        for (int t = 1; t <= 2; ++t) v(t - 1) = regularized_basis_element(2, t, k, y);
        return v;
    };
    const auto fits = fit_expansion_vec(G, kX2, 1, k);
    REQUIRE(fits.size() == 2);
    // ()() holds interval 1 only through the removed pair: two-leg, no log
    CHECK(cft_type_from_fit(fits[0], k) == CftType::two_leg);
    CHECK(cft_type_from_fit(fits[1], k) == CftType::undefined_identity);
    CHECK(std::abs(fits[1].C0) > 1e-3 * std::abs(fits[1].A0));
    // the fit is linear in the data
    Eigen::Vector2d c(0.3, -1.2);
    const auto mix = combine_fits(fits, c);
    CHECK(mix.C0 == doctest::Approx(0.3 * fits[0].C0 - 1.2 * fits[1].C0).epsilon(1e-8));
}

TEST_CASE("conditioned limits match the reduced system")
{
    const double k = 5.0;
    Eigen::VectorXd a(2);
    a << 1.0, 2.0;
    const auto r = conditioned_probability_limits(2, a, kX2, 1, k);
    for (int s = 0; s < 2; ++s) {
        CHECK(std::abs(r.limits(s) - r.reduced_q(s)) < 1e-5);
        if (!r.contractible[static_cast<size_t>(s)]) CHECK(std::abs(r.limits(s)) < 1e-5);
    }
}
