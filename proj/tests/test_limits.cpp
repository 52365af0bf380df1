#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "cgw/coulomb_gas.hpp"
#include "cgw/limits.hpp"

using namespace cgw;

namespace {

bool has_family(const std::vector<SeriesTerm>& t, char f)
{
    for (const auto& s : t)
        if (s.family == f) return true;
    return false;
}

}  // namespace

TEST_CASE("ladder geometry")
{
    const auto d = ladder(0.1, 7);
    REQUIRE(d.size() == 7);
    for (size_t k = 1; k < d.size(); ++k) CHECK(d[k] == doctest::Approx(d[k - 1] / 2));
    const auto y = collapse_points({0, 1, 3, 4}, 2, 0.25);
    CHECK(y == std::vector<double>{0, 1, 1.25, 4});
    CHECK(local_gap({0, 1, 3, 4}, 2) == doctest::Approx(1.0));
}

TEST_CASE("dictionary by case")
{
    LadderConfig cfg;
    const auto generic = collapse_dictionary(5.0, cfg);
    CHECK(generic.size() == 6);
    CHECK_FALSE(has_family(generic, 'C'));
    CHECK(has_family(collapse_dictionary(8.0 / 3.0, cfg), 'C'));
    CHECK_FALSE(has_family(collapse_dictionary(4.0, cfg), 'C'));
    cfg.log_terms = true;
    CHECK(has_family(collapse_dictionary(4.0, cfg), 'C'));
    // the A series stops below 8/kappa - 1 when that is an integer
    for (const auto& t : collapse_dictionary(2.0, LadderConfig{}))
        if (t.family == 'A') CHECK(t.power < 3);
    CHECK_THROWS_AS(collapse_dictionary(8.0 / 3.0004, LadderConfig{}), std::domain_error);
}

TEST_CASE("fit recovers synthetic coefficients")
{
    const double k = 5.0, e = 8.0 / k - 1;
    LadderConfig cfg;
    cfg.points = 10;
    const auto terms = collapse_dictionary(k, cfg);
    const auto d = ladder(0.2, cfg.points);
    Eigen::MatrixXd v(d.size(), 1);
    for (size_t j = 0; j < d.size(); ++j) {
        const double t = d[j];
        v(j, 0) = 1.5 - 0.3 * t + 0.2 * t * t + std::pow(t, e) * (0.7 + 0.1 * t);
    }
    const auto f = fit_series(d, v, terms);
    CHECK(f.coefficient('A', 0) == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(f.coefficient('A', 1) == doctest::Approx(-0.3).epsilon(1e-6));
    CHECK(f.coefficient('B', 0) == doctest::Approx(0.7).epsilon(1e-8));
    CHECK(f.residual < 1e-12);
}

TEST_CASE("fit with a log term")
{
    const double k = 8.0 / 3.0;
    LadderConfig cfg;
    cfg.points = 12;
    cfg.series_terms = 4;
    const auto terms = collapse_dictionary(k, cfg);
    const auto d = ladder(0.2, cfg.points);
    Eigen::MatrixXd v(d.size(), 1);
    for (size_t j = 0; j < d.size(); ++j) {
        const double t = d[j];
        v(j, 0) = 2.0 + 0.5 * t + t * t * (0.3 + 0.25 * std::log(t)) + 0.1 * t * t * t;
    }
    const auto f = fit_series(d, v, terms);
    CHECK(f.coefficient('A', 0) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(f.coefficient('B', 0) == doctest::Approx(0.3).epsilon(1e-6));
    CHECK(f.coefficient('C', 0) == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("collapse limit of a single arc")
{
    for (double k : {3.0, 5.0, 7.0}) {
        Evaluator F = [&](const std::vector<double>& y) { return basis_value(diagram_from_parens("()"), k, y); };
        CHECK(collapse_limit(F, {0, 1}, 1, k) == doctest::Approx(fugacity(k)).epsilon(1e-8));
        CHECK(apply_L(diagram_from_parens("()"), F, {0, 1}, k) == doctest::Approx(fugacity(k)).epsilon(1e-8));
    }
}

TEST_CASE("limits are linear in F")
{
    const double k = 5.0;
    const std::vector<double> x = {0, 1, 2.2, 3.5};
    const auto ds = enumerate_connectivities(2);
    Evaluator F1 = [&](const std::vector<double>& y) { return basis_value(ds[0], k, y); };
    Evaluator F2 = [&](const std::vector<double>& y) { return basis_value(ds[1], k, y); };
    Evaluator G = [&](const std::vector<double>& y) { return 2 * F1(y) - 0.5 * F2(y); };
    const double a = collapse_limit(F1, x, 2, k), b = collapse_limit(F2, x, 2, k);
    CHECK(collapse_limit(G, x, 2, k) == doctest::Approx(2 * a - 0.5 * b).epsilon(1e-10));
}

TEST_CASE("pairing with the basis and order independence")
{
    const double k = 5.0, n = fugacity(k);
    const std::vector<double> x = {0, 1, 2.2, 3.5};
    const auto ds = enumerate_connectivities(2);
    const auto top = ds[0];  // ()()
    for (const auto& th : ds) {
        Evaluator F = [&](const std::vector<double>& y) { return basis_value(th, k, y); };
        const double expect = std::pow(n, loop_count(top, th));
        const double left_first = apply_L(top, F, x, k, {}, {0, 0});
        const double right_first = apply_L(top, F, x, k, {}, {2, 0});
        CHECK(left_first == doctest::Approx(expect).epsilon(1e-6));
        CHECK(right_first == doctest::Approx(left_first).epsilon(1e-6));
    }
}

TEST_CASE("collapse at infinity")
{
    const double k = 5.0, n = fugacity(k);
    const std::vector<double> inner = {0, 1.3};
    const double inner_value = basis_value(diagram_from_parens("()"), k, inner);
    Evaluator rainbow = [&](const std::vector<double>& y) { return basis_value(diagram_from_parens("(())"), k, y); };
    Evaluator pair = [&](const std::vector<double>& y) { return basis_value(diagram_from_parens("()()"), k, y); };
    CHECK(collapse_at_infinity(rainbow, inner, k) == doctest::Approx(n * inner_value).epsilon(1e-6));
    CHECK(collapse_at_infinity(pair, inner, k) == doctest::Approx(inner_value).epsilon(1e-6));
}

TEST_CASE("bad collapse requests")
{
    Evaluator F = [](const std::vector<double>&) { return 1.0; };
    CHECK_THROWS(collapse_limit(F, {0, 1, 2, 3}, 4, 5.0));
    CHECK_THROWS(collapse_limit(F, {0, 1, 2, 3}, 0, 5.0));
}
