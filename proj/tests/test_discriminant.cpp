#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "pjacobi/discriminant.hpp"
#include "pjacobi/error.hpp"

using namespace pjacobi;

TEST_CASE("transfer matrices") {
    const Poly x = Poly::linear(0, 1);

    const auto t1 = transfer_matrix(new_periodic({1}, {0}), 0);
    CHECK(t1(0, 0) == x);
    CHECK(t1(0, 1) == Poly::constant(-1));
    CHECK(t1(1, 0) == Poly::constant(1));
    CHECK(t1(1, 1).is_zero());

    // Second site of a = (1, 1), b = (0, 2).
    const auto t2 = transfer_matrix(new_periodic({1, 1}, {0, 2}), 1);
    CHECK(t2(0, 0) == Poly({-2, 1}));
    CHECK(t2(0, 1) == Poly::constant(-1));

    // First site of a = (2, 4): the wrapped neighbour is a_2 = 4.
    const auto t3 = transfer_matrix(new_periodic({2, 4}, {0, 0}), 0);
    CHECK(t3(0, 0) == Poly({0, 0.5}));
    CHECK(t3(0, 1) == Poly::constant(-2));

    CHECK_THROWS_AS(transfer_matrix(new_periodic({1, 1}, {0, 0}), 2), Error);
}

TEST_CASE("closed forms of the discriminant") {
    CHECK(discriminant_poly(new_periodic({1}, {0})) == Poly({0, 1}));

    const Poly d2 = discriminant_poly(new_periodic({1, 1}, {0, 2}));
    REQUIRE(d2.degree() == 2);
    CHECK(d2.coeff(0) == doctest::Approx(-2));
    CHECK(d2.coeff(1) == doctest::Approx(-2));
    CHECK(d2.coeff(2) == doctest::Approx(1));

    oracle::OperatorGen gen(3);
    gen.pmin = gen.pmax = 2;
    for (int trial = 0; trial < 50; ++trial) {
        const auto c = gen.next();
        const double a1 = c.a()[0], a2 = c.a()[1], b1 = c.b()[0], b2 = c.b()[1];
        const Poly d = discriminant_poly(c);
        for (double x : {-7.0, -1.3, 0.0, 2.2, 6.5}) {
            const double expect = ((x - b1) * (x - b2) - a1 * a1 - a2 * a2) / (a1 * a2);
            CHECK(d(x) == doctest::Approx(expect).epsilon(1e-12));
            CHECK(eval_discriminant_stable(c, x) == doctest::Approx(expect).epsilon(1e-12));
        }
    }
}

TEST_CASE("free operator gives the scaled Chebyshev polynomial") {
    for (int p = 1; p <= 12; ++p) {
        const auto c = new_periodic(std::vector<double>(p, 1.0), std::vector<double>(p, 0.0));
        const Poly d = discriminant_poly(c);
        CHECK(d.degree() == p);
        for (int k = 0; k < 20; ++k) {
            const double x = -2.5 + 5.0 * k / 19.0;
            const double expect = oracle::free_delta(p, x);
            CHECK(d(x) == doctest::Approx(expect).epsilon(1e-10));
            CHECK(eval_discriminant_stable(c, x) == doctest::Approx(expect).epsilon(1e-10));
        }
    }
}

TEST_CASE("stable evaluation at points") {
    CHECK(eval_discriminant_stable(new_periodic({1, 1}, {0, 2}), 0.0) == doctest::Approx(-2.0));
    CHECK(eval_discriminant_stable(new_periodic({1}, {5}), 5.0) == 0.0);
    CHECK(eval_discriminant_stable(new_periodic({1, 1, 1, 1}, {0, 0, 0, 0}), 2.0) ==
          doctest::Approx(2.0));

    const auto c = new_periodic({1, 2, 0.5}, {0.3, -1, 2});
    const auto vs = eval_discriminant_with_slope(c, 0.7);
    const double h = 1e-6;
    const double fd = (oracle::naive_delta(c, 0.7 + h) - oracle::naive_delta(c, 0.7 - h)) / (2 * h);
    CHECK(vs.value == doctest::Approx(oracle::naive_delta(c, 0.7)));
    CHECK(vs.slope == doctest::Approx(fd).epsilon(1e-7));
    CHECK(static_cast<double>(eval_discriminant_extended(c, 0.7L)) == doctest::Approx(vs.value));
}

TEST_CASE("stable evaluation does not overflow for long periods") {
    const std::size_t p = 400;
    const auto c = new_periodic(std::vector<double>(p, 0.1), std::vector<double>(p, 0.0));
    // 2 T_p(x / (2 * 0.1)) at x = 0 is 2 cos(p pi / 2) = 2 for p divisible by 4.
    CHECK(eval_discriminant_stable(c, 0.0) == doctest::Approx(2.0).epsilon(1e-8));
    // Intermediate products reach 10^400 at x = 0.19 without overflowing the result.
    const double x = 0.19;
    CHECK(eval_discriminant_stable(c, x) ==
          doctest::Approx(2.0 * std::cos(p * std::acos(x / 0.2))).epsilon(1e-6));
}

TEST_CASE("build_discriminant checks") {
    const auto d = build_discriminant(new_periodic({1, 1}, {0, 2}));
    CHECK(d.leading == doctest::Approx(1.0));
    REQUIRE(d.criticalPoints.size() == 1);
    CHECK(d.criticalPoints[0] == doctest::Approx(1.0));
    CHECK(d.searchLo < 1 - std::sqrt(5.0));
    CHECK(d.searchHi > 1 + std::sqrt(5.0));
    CHECK(d.warnings.empty());

    const auto w = build_discriminant(new_periodic({2, 0.5, 3}, {0, 0, 0}));
    CHECK(w.leading == doctest::Approx(1.0 / 3.0));

    const auto l = build_discriminant(new_periodic(std::vector<double>(40, 1.0), std::vector<double>(40, 0.0)));
    CHECK(l.stablePathOnly);
    CHECK(l.criticalPoints.size() == 39);
}

TEST_CASE("property: rotation, shift and scale covariance of the discriminant") {
    oracle::OperatorGen gen(8);
    for (int trial = 0; trial < 60; ++trial) {
        const auto c = gen.next();
        const Poly d = discriminant_poly(c);
        const Poly r = discriminant_poly(c.rotated(1));
        double scale = 0;
        for (double v : d.coeffs()) scale = std::max(scale, std::abs(v));
        for (int k = 0; k <= d.degree(); ++k) CHECK(std::abs(d.coeff(k) - r.coeff(k)) <= 1e-9 * scale);

        const double t = 1.25, s = 0.6;
        const auto cs = c.shifted(t);
        const auto ck = c.scaled(s);
        for (int k = 0; k < 15; ++k) {
            const double x = -8.0 + 16.0 * k / 14.0;
            const double base = eval_discriminant_stable(c, x);
            CHECK(eval_discriminant_stable(cs, x + t) == doctest::Approx(base).epsilon(1e-9));
            CHECK(eval_discriminant_stable(ck, s * x) == doctest::Approx(base).epsilon(1e-9));
            CHECK(base == doctest::Approx(oracle::naive_delta(c, x)).epsilon(1e-9));
        }
    }
}
