#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pjacobi/error.hpp"
#include "pjacobi/polynomial.hpp"

using namespace pjacobi;

TEST_CASE("arithmetic keeps exact degree") {
    const Poly x = Poly::linear(0, 1);
    CHECK(poly_arith(x, x, PolyOp::Mul) == Poly({0, 0, 1}));
    CHECK(poly_arith(Poly({-1, 1}), Poly::constant(1), PolyOp::Add) == x);
    CHECK(poly_arith(Poly({-2, -2, 1}), Poly::constant(2), PolyOp::Sub) == Poly({-4, -2, 1}));
    CHECK((x - x).is_zero());
    CHECK((x - x).degree() == -1);
    CHECK(Poly({1, 2, 0, 0}).degree() == 1);
}

TEST_CASE("Horner evaluation") {
    const Poly q({-2, -2, 1});
    CHECK(poly_eval(q, 0.0) == -2.0);
    CHECK(poly_eval(q, 1.0 + std::sqrt(5.0)) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(poly_eval(Poly{}, 3.7) == 0.0);
}

TEST_CASE("derivative") {
    CHECK(poly_derivative(Poly({-2, -2, 1})) == Poly({-2, 2}));
    CHECK(poly_derivative(Poly::constant(5)).is_zero());
    CHECK(poly_derivative(Poly({0, 0, 0, 1})) == Poly({0, 0, 3}));
}

TEST_CASE("division") {
    const auto [q, r] = poly_divmod(Poly({-4, -2, 1}), Poly({-1, 1}));
    CHECK(q == Poly({-1, 1}));
    CHECK(r == Poly::constant(-5));
    CHECK_THROWS_AS(poly_divmod(Poly({1}), Poly{}), Error);
}

TEST_CASE("real roots from Sturm isolation") {
    const double tol = 1e-12;
    SUBCASE("quadratic with irrational roots") {
        const auto expect = oracle::quadratic_roots(1, -2, -4);
        const auto r = real_roots_in(Poly({-4, -2, 1}), -10, 10, tol);
        REQUIRE(r.size() == 2);
        CHECK(std::abs(r[0].value - expect[0]) <= tol);
        CHECK(std::abs(r[1].value - expect[1]) <= tol);
    }
    SUBCASE("root at a bisection midpoint is reported once") {
        const auto r = real_roots_in(Poly({0, -2, 1}), -10, 10, tol);
        REQUIRE(r.size() == 2);
        CHECK(std::abs(r[0].value) <= tol);
        CHECK(std::abs(r[1].value - 2.0) <= tol);
    }
    SUBCASE("double root carries its multiplicity") {
        const auto r = real_roots_in(Poly({0, 0, 1}), -1, 1, tol);
        REQUIRE(r.size() == 1);
        CHECK(std::abs(r[0].value) <= tol);
        CHECK(r[0].multiplicity == 2);
    }
    SUBCASE("mixed multiplicities (x-1)^3 (x+2)") {
        const Poly f = Poly({-1, 1}) * Poly({-1, 1}) * Poly({-1, 1}) * Poly({2, 1});
        const auto r = real_roots_in(f, -5, 5, tol);
        REQUIRE(r.size() == 2);
        CHECK(r[0].value == doctest::Approx(-2.0));
        CHECK(r[0].multiplicity == 1);
        CHECK(r[1].value == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(r[1].multiplicity == 3);
    }
    SUBCASE("root at the left endpoint is included") {
        const auto r = real_roots_in(Poly({1, 1}), -1, 1, tol);
        REQUIRE(r.size() == 1);
        CHECK(r[0].value == -1.0);
    }
    SUBCASE("no real roots") { CHECK(real_roots_in(Poly({1, 0, 1}), -5, 5, tol).empty()); }
}

TEST_CASE("root finder rejects degenerate requests") {
    CHECK_THROWS_AS(real_roots_in(Poly({0, 1}), 1, 1, 1e-12), Error);
    CHECK_THROWS_AS(real_roots_in(Poly({0, 1}), 0, 1, 0.0), Error);
    CHECK_THROWS_AS(real_roots_in(Poly{}, 0, 1, 1e-12), Error);
}

TEST_CASE("property: products of random linear factors") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> root(-3.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int deg = 1 + trial % 8;
        std::vector<double> roots(deg);
        Poly f = Poly::constant(1.0);
        for (auto& r : roots) {
            r = root(rng);
            f = f * Poly({-r, 1});
        }
        std::ranges::sort(roots);
        // Well-separated roots only; clustered ones are covered above.
        bool separated = true;
        for (int k = 1; k < deg; ++k) separated = separated && roots[k] - roots[k - 1] > 1e-2;
        if (!separated) continue;

        const double tol = 1e-12;
        const auto got = real_roots_in(f, -4, 4, tol);
        const auto chain = sturm_chain(f);
        CHECK(sturm_count(chain, -4, 4) == static_cast<int>(got.size()));
        REQUIRE(got.size() == roots.size());
        const Poly df = poly_derivative(f);
        for (int k = 0; k < deg; ++k) {
            CHECK(std::abs(got[k].value - roots[k]) <= 1e-9);
            CHECK(std::abs(f(got[k].value)) <= 1e3 * tol * (std::abs(df(got[k].value)) + 1.0));
        }
        // Rolle: roots of f' interlace roots of f.
        if (deg >= 2) {
            const auto crit = real_roots_in(df, -4, 4, tol);
            REQUIRE(crit.size() == roots.size() - 1);
            for (int k = 0; k + 1 < deg; ++k) {
                CHECK(got[k].value < crit[k].value);
                CHECK(crit[k].value < got[k + 1].value);
            }
        }
    }
}
