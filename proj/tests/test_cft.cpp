#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <set>

#include "cgw/cft.hpp"

using namespace cgw;

TEST_CASE("central charge, exact")
{
    CHECK(central_charge_exact(Rational(6)) == Rational(0));
    CHECK(central_charge_exact(Rational(4)) == Rational(1));
    CHECK(central_charge_exact(Rational(3)) == Rational(1, 2));
    CHECK(minimal_model_central_charge(3, 2) == Rational(0));
    CHECK(minimal_model_central_charge(4, 3) == Rational(1, 2));
    CHECK_THROWS(minimal_model_central_charge(4, 2));
}

TEST_CASE("every exceptional speed lands on its minimal model")
{
    int seen = 0;
    for (long q = 2; q <= 8; ++q)
        for (long qp = 2; qp <= 8; ++qp) {
            if (std::gcd(q, qp) != 1 || Rational(4 * q, qp) >= 8) continue;
            const Rational k(4 * q, qp);
            const auto m = minimal_model_map(k);
            REQUIRE(m);
            CHECK(m->model.p == std::max(q, qp));
            CHECK(m->model.p_prime == std::min(q, qp));
            CHECK(central_charge_exact(k) == m->model.central_charge);
            CHECK(m->fact == (k > 2 ? CorrespondenceFact::fact2_two_to_one : CorrespondenceFact::fact3_one_to_one));
            ++seen;
        }
    CHECK(seen > 10);
}

TEST_CASE("the two speeds of a model share the central charge")
{
    for (long p = 3; p <= 8; ++p)
        for (long pp = 2; pp < p; ++pp) {
            if (std::gcd(p, pp) != 1) continue;
            const Rational a(4 * p, pp), b(4 * pp, p);
            const Rational c = minimal_model_central_charge(p, pp);
            CHECK(central_charge_exact(b) == c);
            if (a < 8) CHECK(central_charge_exact(a) == c);
            if (a < 8) {
                const auto ma = minimal_model_map(a), mb = minimal_model_map(b);
                REQUIRE(ma);
                REQUIRE(mb);
                CHECK(ma->model.p == mb->model.p);
                CHECK(ma->model.p_prime == mb->model.p_prime);
            }
        }
}

TEST_CASE("speeds in (0, 2] correspond to distinct models")
{
    std::set<std::pair<long, long>> models;
    int count = 0;
    for (long q = 2; q <= 8; ++q)
        for (long qp = 2; qp <= 8; ++qp) {
            if (std::gcd(q, qp) != 1 || Rational(4 * q, qp) > 2) continue;
            const auto m = minimal_model_map(Rational(4 * q, qp));
            REQUIRE(m);
            models.insert({m->model.p, m->model.p_prime});
            ++count;
        }
    CHECK(static_cast<int>(models.size()) == count);
}

TEST_CASE("map examples")
{
    CHECK_FALSE(minimal_model_map(Rational(4)));
    CHECK_FALSE(minimal_model_map(Rational(1, 2)));
    CHECK_FALSE(minimal_model_map(3.14159265358979));
    auto m32 = minimal_model_map(Rational(8, 3));
    REQUIRE(m32);
    CHECK(m32->model.p == 3);
    CHECK(m32->model.p_prime == 2);
    auto m = minimal_model_map(20.0 / 13.0);
    REQUIRE(m);
    CHECK(m->model.p == 13);
    CHECK(m->model.p_prime == 5);
    CHECK(m->fact == CorrespondenceFact::fact3_one_to_one);
}

TEST_CASE("Kac weights")
{
    for (double k : {4.5, 5.0, 6.5, 7.5}) CHECK(kac_weight(1, 3, k).value == doctest::Approx(8.0 / k - 1));
    CHECK(kac_weight(1, 2, 6.0).value == doctest::Approx(0.0));
    CHECK(kac_weight(1, 1, 6.0).value == doctest::Approx(0.0));
    CHECK(kac_weight(2, 1, 3.0).value == doctest::Approx(kac_weight(1, 3, 3.0).value));
    CHECK(kac_weight(2, 1, 3.0).phase == KacPhase::dilute);
    CHECK(kac_weight_exact(1, 3, Rational(16, 3)) == Rational(1, 2));
    for (double k : {2.5, 3.5, 5.0, 7.0}) {
        auto [r, s] = one_leg_operator_label(k);
        CHECK(kac_weight(r, s, k).value == doctest::Approx(s_leg_weight(1, k)));
    }
}

TEST_CASE("s-leg weights")
{
    for (double k : {2.0, 3.0, 5.0, 6.0, 7.0}) {
        CHECK(s_leg_weight(2, k) - s_leg_weight(0, k) == doctest::Approx(8.0 / k - 1));
        CHECK(-2 * s_leg_weight(1, k) + s_leg_weight(2, k) == doctest::Approx(2.0 / k));
        CHECK(-2 * s_leg_weight(1, k) + s_leg_weight(0, k) == doctest::Approx(1 - 6.0 / k));
    }
    CHECK(s_leg_weight(1, 6.0) == doctest::Approx(0.0));
    CHECK_THROWS(s_leg_weight(3, 5.0));
}

TEST_CASE("null vector levels")
{
    CHECK(null_vector_levels(1, 2, 3, 2, 2).levels == std::vector<long>{2, 1});
    CHECK(null_vector_levels(2, 1, 4, 3, 2).levels == std::vector<long>{2, 3});
    auto h = null_vector_levels(1, 1, 3, 2, 6);
    CHECK(h.levels.front() == 1);
    CHECK(h.displayed == 4);
    CHECK(null_vector_levels(1, 2, 3, 2, 4).levels == std::vector<long>{2, 1, 7, 5});
    for (int r = 1; r < 2; ++r)
        for (int s = 1; s < 3; ++s) {
            const auto l = null_vector_levels(r, s, 3, 2, 4).levels;
            CHECK(l[0] == r * s);
            CHECK(l[1] == (2 - r) * (3 - s));
            CHECK(l[2] == r * s + (2 - r) * (3 + s));
            CHECK(l[3] == r * s + (2 + r) * (3 - s));
        }
}
