#pragma once

// Closed forms and brute-force references used as independent oracles.
// Nothing here calls into the band or root-finding code it is checked against.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "pjacobi/coefficients.hpp"

namespace oracle {

inline std::vector<double> quadratic_roots(double a, double b, double c) {
    const double disc = std::sqrt(b * b - 4 * a * c);
    std::vector<double> r{(-b - disc) / (2 * a), (-b + disc) / (2 * a)};
    std::ranges::sort(r);
    return r;
}

// Period 2: Delta = ((x - b1)(x - b2) - a1^2 - a2^2) / (a1 a2). Band edges
// solve Delta = +/-2, i.e. x^2 - (b1+b2) x + b1 b2 - a1^2 - a2^2 -/+ 2 a1 a2 = 0.
inline std::vector<double> period2_edges(double a1, double a2, double b1, double b2) {
    std::vector<double> e;
    for (double level : {2.0, -2.0}) {
        auto r = quadratic_roots(1.0, -(b1 + b2), b1 * b2 - a1 * a1 - a2 * a2 - level * a1 * a2);
        e.insert(e.end(), r.begin(), r.end());
    }
    std::ranges::sort(e);
    return e;
}

// Free operator: Delta(x) = 2 T_p(x / 2) = 2 cos(p arccos(x / 2)) on [-2, 2].
inline double free_delta(int p, double x) {
    if (std::abs(x) <= 2.0) return 2.0 * std::cos(p * std::acos(x / 2.0));
    const double t = std::acosh(std::abs(x) / 2.0);
    return 2.0 * std::cosh(p * t) * ((x < 0 && p % 2 == 1) ? -1.0 : 1.0);
}

// Band edges of the free operator: 2 cos(k pi / p), interior ones doubled.
inline std::vector<double> free_edges(int p) {
    std::vector<double> e;
    for (int k = 0; k <= p; ++k) {
        const double x = 2.0 * std::cos(k * std::numbers::pi / p);
        e.push_back(x);
        if (k > 0 && k < p) e.push_back(x);
    }
    std::ranges::sort(e);
    return e;
}

// Direct 2x2 monodromy product without any of the library's machinery.
template <typename Real = double>
Real naive_delta(const pjacobi::PeriodicCoefficients& c, Real x) {
    const std::size_t p = c.period();
    Real m00 = 1, m01 = 0, m10 = 0, m11 = 1;
    for (std::size_t n = 0; n < p; ++n) {
        const Real an = c.a()[n], aprev = c.a()[(n + p - 1) % p];
        const Real t00 = (x - c.b()[n]) / an, t01 = -aprev / an;
        const Real n00 = t00 * m00 + t01 * m10, n01 = t00 * m01 + t01 * m11;
        m10 = m00;
        m11 = m01;
        m00 = n00;
        m01 = n01;
    }
    return m00 + m11;
}

// Seeded generator of operators with a log-uniform, b uniform.
struct OperatorGen {
    std::mt19937_64 rng;
    int pmin = 2, pmax = 10;
    double aLo = 0.1, aHi = 10.0, bLo = -5.0, bHi = 5.0;

    explicit OperatorGen(std::uint64_t seed) : rng(seed) {}

    pjacobi::PeriodicCoefficients next() {
        std::uniform_int_distribution<int> pd(pmin, pmax);
        std::uniform_real_distribution<double> la(std::log(aLo), std::log(aHi)), bd(bLo, bHi);
        const int p = pd(rng);
        std::vector<double> a(p), b(p);
        for (auto& x : a) x = std::exp(la(rng));
        for (auto& x : b) x = bd(rng);
        return {a, b};
    }
};

}  // namespace oracle
