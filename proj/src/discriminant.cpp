#include "pjacobi/discriminant.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>

#include "pjacobi/error.hpp"
#include "pjacobi/floquet.hpp"

namespace pjacobi {

namespace {

constexpr double kLeadingTol = 1e-9;
constexpr double kCriticalSlack = 1e-9;

// Keeps the largest entry of a running product within [0.5, 1) * 2^k.
template <typename M0, typename... M>
void renormalize(int& exponent, M0& first, M&... mats) {
    using Real = std::remove_cvref_t<decltype(first.e[0])>;
    Real big = 0;
    auto track = [&big](const auto& m) {
        for (const auto& v : m.e) big = std::max(big, std::abs(v));
    };
    track(first);
    (track(mats), ...);
    if (big == 0 || (big > Real(0x1p-200) && big < Real(0x1p200))) return;
    int e = 0;
    std::frexp(big, &e);
    auto apply = [e](auto& m) {
        for (auto& v : m.e) v = std::ldexp(v, -e);
    };
    apply(first);
    (apply(mats), ...);
    exponent += e;
}

template <typename Real>
Mat2<Real> numeric_transfer(const PeriodicCoefficients& c, std::size_t n, Real t) {
    const Real an = c.a_at(n);
    Mat2<Real> m;
    m.e = {(t - Real(c.b_at(n))) / an, -Real(c.a_prev(n)) / an, Real(1), Real(0)};
    return m;
}

template <typename Real>
Real eval_stable(const PeriodicCoefficients& c, Real t) noexcept {
    Mat2<Real> acc;
    acc.e = {Real(1), Real(0), Real(0), Real(1)};
    int exponent = 0;
    for (std::size_t n = 0; n < c.period(); ++n) {
        acc = numeric_transfer(c, n, t) * acc;
        renormalize(exponent, acc);
    }
    return std::ldexp(acc.trace(), exponent);
}

}  // namespace

TransferMatrix transfer_matrix(const PeriodicCoefficients& c, std::size_t n) {
    if (n >= c.period()) {
        throw Error(ErrorKind::IndexOutOfRange,
                    "transfer matrix index " + std::to_string(n) + " outside period " +
                        std::to_string(c.period()));
    }
    const double an = c.a_at(n);
    TransferMatrix m;
    m.e = {Poly::linear(-c.b_at(n) / an, 1.0 / an), Poly::constant(-c.a_prev(n) / an),
           Poly::constant(1.0), Poly{}};
    return m;
}

Poly discriminant_poly(const PeriodicCoefficients& c, double center, double half) {
    TransferMatrix acc;
    acc.e = {Poly::constant(1.0), Poly{}, Poly{}, Poly::constant(1.0)};
    for (std::size_t n = 0; n < c.period(); ++n) {
        const double an = c.a_at(n);
        TransferMatrix step;
        step.e = {Poly::linear((center - c.b_at(n)) / an, half / an),
                  Poly::constant(-c.a_prev(n) / an), Poly::constant(1.0), Poly{}};
        acc = step * acc;
    }
    return acc.trace();
}

double eval_discriminant_stable(const PeriodicCoefficients& c, double t) noexcept {
    return eval_stable(c, t);
}

long double eval_discriminant_extended(const PeriodicCoefficients& c, long double t) noexcept {
    return eval_stable(c, t);
}

ValueSlope eval_discriminant_with_slope(const PeriodicCoefficients& c, double t) noexcept {
    Mat2<double> val;
    val.e = {1.0, 0.0, 0.0, 1.0};
    Mat2<double> der;  // zero
    int exponent = 0;
    for (std::size_t n = 0; n < c.period(); ++n) {
        const Mat2<double> step = numeric_transfer(c, n, t);
        Mat2<double> dstep;
        dstep.e = {1.0 / c.a_at(n), 0.0, 0.0, 0.0};
        der = step * der + dstep * val;
        val = step * val;
        renormalize(exponent, val, der);
    }
    return {std::ldexp(val.trace(), exponent), std::ldexp(der.trace(), exponent)};
}

namespace {

// Bisects on the sign of Delta' inside a bracket whose ends have opposite
// slope signs.
double bisect_slope(const PeriodicCoefficients& c, double lo, double hi, double tol) {
    double slo = eval_discriminant_with_slope(c, lo).slope;
    for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= tol || mid <= lo || mid >= hi) return mid;
        const double sm = eval_discriminant_with_slope(c, mid).slope;
        if (sm == 0.0) return mid;
        if ((sm > 0.0) == (slo > 0.0)) {
            lo = mid;
            slo = sm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Large periods: each band centre from the Floquet oracle has a strict slope
// sign, and consecutive centres bracket exactly one critical point.
std::vector<double> critical_points_from_oracle(const PeriodicCoefficients& c, double tol) {
    const auto edges = band_edges_oracle(c).merged();
    const std::size_t p = c.period();
    std::vector<double> crit;
    crit.reserve(p - 1);
    for (std::size_t k = 0; k + 1 < p; ++k) {
        const double left = 0.5 * (edges[2 * k] + edges[2 * k + 1]);
        const double right = 0.5 * (edges[2 * k + 2] + edges[2 * k + 3]);
        crit.push_back(bisect_slope(c, left, right, tol));
    }
    return crit;
}

}  // namespace

DiscriminantData build_discriminant(const PeriodicCoefficients& c) {
    const std::size_t p = c.period();
    const ScalarSummary sum = scalar_summary(c);
    const double width = sum.gershgorinUpper - sum.gershgorinLower;

    DiscriminantData d(discriminant_poly(c), c);
    d.searchLo = sum.gershgorinLower - 0.01 * width;
    d.searchHi = sum.gershgorinUpper + 0.01 * width;
    d.stablePathOnly = p > kMonomialPeriodLimit;

    auto violation = [&](const std::string& what) {
        if (d.stablePathOnly) d.warnings.push_back(what);
        else throw Error(ErrorKind::PropertyViolation, what);
    };

    if (d.delta.degree() != static_cast<int>(p)) {
        violation("discriminant degree " + std::to_string(d.delta.degree()) + " != period " +
                  std::to_string(p));
    }
    if (std::abs(d.leading * std::exp(c.log_product_a()) - 1.0) > kLeadingTol) {
        violation("leading coefficient is not 1/prod(a)");
    }

    const double center = 0.5 * (d.searchLo + d.searchHi);
    const double half = 0.5 * (d.searchHi - d.searchLo);
    const double tol = default_root_tol(d.searchLo, d.searchHi);

    if (d.stablePathOnly) {
        d.criticalPoints = critical_points_from_oracle(c, tol);
    } else if (p >= 2) {
        // Root isolation on [-1, 1] in the rescaled variable is far better
        // conditioned than on the raw Gershgorin interval.
        std::string sturmFailure;
        try {
            const Poly scaled = discriminant_poly(c, center, half);
            const auto roots = real_roots_in(scaled, -1.0, 1.0, tol / half, [&](double x) {
                return eval_discriminant_stable(c, center + half * x);
            });
            const auto crit = real_roots_in(poly_derivative(scaled), -1.0, 1.0, tol / half, [&](double x) {
                return eval_discriminant_with_slope(c, center + half * x).slope;
            });
            if (roots.size() != p ||
                std::ranges::any_of(roots, [](const RealRoot& r) { return r.multiplicity != 1; })) {
                sturmFailure = "Sturm isolation found " + std::to_string(roots.size()) +
                               " distinct roots of Delta, expected " + std::to_string(p);
            }
            for (const auto& r : crit) {
                for (int k = 0; k < r.multiplicity; ++k) d.criticalPoints.push_back(center + half * r.value);
            }
            if (sturmFailure.empty() && d.criticalPoints.size() != p - 1) {
                sturmFailure = "Sturm isolation found " + std::to_string(d.criticalPoints.size()) +
                               " roots of Delta', expected " + std::to_string(p - 1);
            }
        } catch (const Error& e) {
            sturmFailure = e.what();
        }
        if (!sturmFailure.empty()) {
            // Thin bands make the monomial expansion ill-conditioned well
            // before kMonomialPeriodLimit; the stable path does not care.
            d.warnings.push_back(sturmFailure + "; critical points taken from the stable path");
            d.criticalPoints = critical_points_from_oracle(c, tol);
        }
    }

    // Proposition items 3 and 4 on the stable path: critical values alternate
    // in sign outside (-2, 2), so each monotone piece holds one simple root.
    for (std::size_t k = 1; k < d.criticalPoints.size(); ++k) {
        if ((d(d.criticalPoints[k]) > 0.0) == (d(d.criticalPoints[k - 1]) > 0.0)) {
            violation("critical values do not alternate in sign; Delta lacks " + std::to_string(p) +
                      " distinct real roots");
            break;
        }
    }
    for (double x : d.criticalPoints) {
        if (std::abs(d(x)) < 2.0 - kCriticalSlack) {
            violation("|Delta| < 2 at critical point " + std::to_string(x));
        }
    }
    return d;
}

}  // namespace pjacobi
