#include "pjacobi/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "pjacobi/error.hpp"

namespace pjacobi {

namespace {

// A point counts as extremal when ||Delta| - 2| <= kExtremeTol plus the
// slope times the bracket resolution of the edge solver.
constexpr double kExtremeTol = 1e-8;
constexpr double kEdgeResolution = 1e-12;

// Band edges, one point per closed gap, plus critical points inside sigma
// that are not already edges.
std::vector<double> candidate_points(const DiscriminantData& d, const BandStructure& bs) {
    std::vector<double> pts;
    for (std::size_t k = 0; k < bs.bands.size(); ++k) {
        if (k == 0 || !bs.closedGapFlags[k - 1]) pts.push_back(bs.bands[k].lo);
        pts.push_back(bs.bands[k].hi);
    }
    for (double c : d.criticalPoints) {
        if (std::ranges::find(pts, c) != pts.end()) continue;
        if (std::ranges::any_of(bs.bands, [c](const Interval& b) { return b.contains(c); })) {
            pts.push_back(c);
        }
    }
    std::ranges::sort(pts);
    return pts;
}

// |Delta| at a computed edge x, re-bisected in long double. Double
// evaluation noise can leave the double edge several ulps off, and on bands
// of width 1e-10 (slope ~1e10) each ulp moves |Delta| by ~1e-6, so the value
// is taken on the band side of the extended-precision root.
long double edge_magnitude(const DiscriminantData& d, double x) {
    const auto f = [&](long double t) { return eval_discriminant_extended(d.coeffs, t); };
    const long double v = f(x);
    const long double target = v > 0 ? 2.0L : -2.0L;
    const long double ulp = std::max(std::abs(static_cast<long double>(x)), 1.0L) * 0x1p-52L;
    long double lo = 0, hi = 0, glo = 0, ghi = 0;
    bool bracketed = false;
    for (long double w = 2 * ulp; w <= 0x1p24L * ulp && !bracketed; w *= 4) {
        lo = x - w;
        hi = x + w;
        glo = f(lo) - target;
        ghi = f(hi) - target;
        bracketed = (glo > 0) != (ghi > 0) && glo != 0 && ghi != 0;
    }
    if (!bracketed) return std::abs(v);
    for (int it = 0; it < 200; ++it) {
        const long double mid = 0.5L * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const long double gm = f(mid) - target;
        if (gm == 0) return 2.0L;
        if ((gm > 0) == (glo > 0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    // Band side: |Delta| <= 2, i.e. Delta - target has the sign of -target.
    const long double inside = (glo > 0) == (target > 0) ? hi : lo;
    return std::abs(f(inside));
}

}  // namespace

Rational Rational::make(std::int64_t num, std::int64_t den) {
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    return g > 0 ? Rational{num / g, den / g} : Rational{0, 1};
}

Rational operator+(const Rational& x, const Rational& y) {
    return Rational::make(x.num * y.den + y.num * x.den, x.den * y.den);
}

double capacity_interval(const Interval& iv) noexcept { return iv.length() / 4.0; }

namespace {

long double log_chebyshev_number(const DiscriminantData& d, const BandStructure& bs) {
    long double sup = 0.0L;
    for (double x : candidate_points(d, bs)) sup = std::max(sup, edge_magnitude(d, x));
    return static_cast<long double>(d.coeffs.log_product_a()) + std::log(sup);
}

}  // namespace

double chebyshev_number(const DiscriminantData& d, const BandStructure& bs) {
    return static_cast<double>(std::exp(log_chebyshev_number(d, bs)));
}

double spectrum_capacity(const DiscriminantData& d, const BandStructure& bs) {
    const double p = static_cast<double>(d.coeffs.period());
    // (t_p / 2)^{1/p}, in log space so long periods do not overflow t_p.
    const double cap =
        static_cast<double>(std::exp((log_chebyshev_number(d, bs) - std::log(2.0L)) / p));
    const double A = std::exp(d.coeffs.log_product_a() / p);
    if (std::abs(cap - A) > kCapacityRelTol * A) {
        std::ostringstream os;
        os.precision(17);
        os << "Cap(sigma) = " << cap << " but A = " << A;
        throw Error(ErrorKind::CapacityMismatch, os.str());
    }
    return cap;
}

AlternationSet alternation_set(const DiscriminantData& d, const BandStructure& bs) {
    AlternationSet alt;
    alt.period = bs.period();

    const double resolution = kEdgeResolution * std::max(1.0, bs.s);
    for (double x : candidate_points(d, bs)) {
        const auto [v, slope] = eval_discriminant_with_slope(d.coeffs, x);
        if (std::abs(std::abs(v) - 2.0) > kExtremeTol + std::abs(slope) * resolution) continue;
        alt.points.push_back({x, v > 0.0 ? 1 : -1});
    }
    alt.extremePointCount = static_cast<int>(alt.points.size());

    // Greedy from the right: x_p must carry +, then signs alternate.
    int want = 1;
    for (auto it = alt.points.rbegin(); it != alt.points.rend(); ++it) {
        if (it->sign == want) {
            ++alt.alternatingLength;
            want = -want;
        }
    }

    for (std::size_t k = 0; k < bs.bands.size(); ++k) {
        if (k > 0 && bs.closedGapFlags[k - 1]) alt.maximalIntervals.back().hi = bs.bands[k].hi;
        else alt.maximalIntervals.push_back(bs.bands[k]);
    }
    for (const auto& iv : alt.maximalIntervals) {
        const auto n = std::ranges::count_if(
            alt.points, [&](const AlternationPoint& pt) { return iv.contains(pt.x); });
        alt.extremePerInterval.push_back(static_cast<int>(n));
    }

    const int p = static_cast<int>(alt.period);
    const int l = static_cast<int>(alt.maximalIntervals.size());
    if (alt.alternatingLength < p + 1) {
        throw Error(ErrorKind::AlternationFailure,
                    "longest alternating subsequence " + std::to_string(alt.alternatingLength) +
                        " < p + 1 = " + std::to_string(p + 1));
    }
    if (alt.extremePointCount != p + l) {
        throw Error(ErrorKind::AlternationFailure,
                    std::to_string(alt.extremePointCount) + " extreme points, expected p + l = " +
                        std::to_string(p + l));
    }
    return alt;
}

std::vector<Rational> equilibrium_band_measures(const AlternationSet& alt) {
    std::vector<Rational> mu;
    mu.reserve(alt.extremePerInterval.size());
    for (int count : alt.extremePerInterval) {
        mu.push_back(Rational::make(count - 1, static_cast<std::int64_t>(alt.period)));
    }
    return mu;
}

PotentialReport potential_report(const DiscriminantData& d, const BandStructure& bs) {
    PotentialReport r;
    for (const auto& b : bs.bands) r.capBands.push_back(capacity_interval(b));
    r.chebNumber = chebyshev_number(d, bs);
    r.capSpectrum = spectrum_capacity(d, bs);
    r.widomFactor = std::exp(std::log(r.chebNumber) -
                             static_cast<double>(bs.period()) * std::log(r.capSpectrum));
    r.alternation = alternation_set(d, bs);
    r.bandMeasures = equilibrium_band_measures(r.alternation);
    r.extremePointCount = r.alternation.extremePointCount;
    return r;
}

}  // namespace pjacobi
