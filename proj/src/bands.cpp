#include "pjacobi/bands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "pjacobi/error.hpp"

namespace pjacobi {

double BandStructure::total_gap_measure() const noexcept {
    double g = 0.0;
    for (const auto& iv : gaps) g += iv.length();
    return g;
}

bool BandStructure::all_gaps_open() const noexcept {
    return std::ranges::none_of(closedGapFlags, [](bool closed) { return closed; });
}

double default_band_tol(const DiscriminantData& d) noexcept {
    return 1e-12 * std::max(1.0, d.searchHi - d.searchLo);
}

namespace {

long double delta_ext(const DiscriminantData& d, double x) {
    return eval_discriminant_extended(d.coeffs, static_cast<long double>(x));
}

// Solves Delta(x) = target on a monotone piece [lo, hi] bracketing it and
// returns the bracket end lying inside the band (|Delta| <= 2 there). The
// bracket is pushed past tol down to floating-point resolution: near thin
// bands |Delta'| reaches 1e10 and the bracket width shows up directly in
// sup |Delta| over sigma. Signs come from the extended evaluation so that
// edges next to a narrow gap do not drown in rounding noise.
double solve_level(const DiscriminantData& d, double target, double lo, double hi, double tol) {
    const long double t = target;
    long double glo = delta_ext(d, lo) - t;
    if (glo == 0.0L) return lo;
    long double ghi = delta_ext(d, hi) - t;
    if (ghi == 0.0L) return hi;
    for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const long double gm = delta_ext(d, mid) - t;
        if (gm == 0.0L) return mid;
        if ((gm > 0.0L) == (glo > 0.0L)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
            ghi = gm;
        }
    }
    if (hi - lo > tol) throw Error(ErrorKind::NonConvergence, "band edge bisection did not converge");
    // Inside the band Delta - target has the sign opposite to target.
    return (glo > 0.0L) == (target > 0.0) ? hi : lo;
}

}  // namespace

BandStructure band_structure(const DiscriminantData& d, double tol, double closedTol) {
    const std::size_t p = d.coeffs.period();
    if (d.criticalPoints.size() + 1 != p) {
        throw Error(ErrorKind::EdgeCountMismatch,
                    std::to_string(d.criticalPoints.size()) + " critical points for period " +
                        std::to_string(p));
    }
    std::vector<double> knots;
    knots.reserve(p + 1);
    knots.push_back(d.searchLo);
    knots.insert(knots.end(), d.criticalPoints.begin(), d.criticalPoints.end());
    knots.push_back(d.searchHi);

    std::vector<long double> values(knots.size());
    for (std::size_t k = 0; k < knots.size(); ++k) {
        values[k] = delta_ext(d, knots[k]);
        if (std::abs(values[k]) < 2.0L - kKnotTol) {
            throw Error(ErrorKind::EdgeCountMismatch,
                        "|Delta| < 2 at knot " + std::to_string(knots[k]) + " (value " +
                            std::to_string(static_cast<double>(values[k])) + ")");
        }
        if (k > 0 && (values[k] > 0.0L) == (values[k - 1] > 0.0L)) {
            throw Error(ErrorKind::EdgeCountMismatch, "critical values fail to alternate in sign");
        }
    }

    BandStructure bs;
    bs.bands.reserve(p);
    for (std::size_t k = 0; k < p; ++k) {
        const double left = knots[k], right = knots[k + 1];
        const long double vl = values[k], vr = values[k + 1];
        Interval band;
        band.lo = (k > 0 && std::abs(vl) <= 2.0L + kTouchTol)
                      ? left
                      : solve_level(d, vl > 0 ? 2.0 : -2.0, left, right, tol);
        band.hi = (k + 1 < p && std::abs(vr) <= 2.0L + kTouchTol)
                      ? right
                      : solve_level(d, vr > 0 ? 2.0 : -2.0, left, right, tol);
        if (!(band.hi > band.lo)) {
            throw Error(ErrorKind::EdgeCountMismatch,
                        "band " + std::to_string(k + 1) + " near " + std::to_string(band.lo) +
                            " is narrower than floating-point resolution");
        }
        bs.bands.push_back(band);
    }
    for (std::size_t k = 0; k + 1 < p; ++k) {
        // Bisection brackets stay inside each piece, so ordering holds; clamp
        // only guards rounding in the touching branch.
        Interval gap{bs.bands[k].hi, std::max(bs.bands[k].hi, bs.bands[k + 1].lo)};
        bs.gaps.push_back(gap);
    }
    bs.s = bs.highest() - bs.lowest();
    for (const auto& b : bs.bands) bs.totalBandMeasure += b.length();
    auto gr = gap_report(bs, closedTol);
    bs.minGap = gr.minGap;
    bs.closedGapFlags = std::move(gr.closedGapFlags);
    return bs;
}

GapReport gap_report(const BandStructure& bs, double closedTol) {
    GapReport r;
    if (bs.bands.size() <= 1) return r;
    const double threshold = closedTol * std::max(1.0, bs.s);
    double minOpen = std::numeric_limits<double>::infinity();
    for (const auto& g : bs.gaps) {
        const bool closed = g.length() <= threshold;
        r.closedGapFlags.push_back(closed);
        if (!closed) minOpen = std::min(minOpen, g.length());
    }
    r.minGap = minOpen;
    return r;
}

std::vector<std::string> check_band_invariants(const DiscriminantData& d, const BandStructure& bs,
                                               double tol) {
    std::vector<std::string> fails;
    auto fail = [&](std::string msg) { fails.push_back(std::move(msg)); };
    const std::size_t p = d.coeffs.period();
    if (bs.bands.size() != p) fail("band count != period");
    if (bs.gaps.size() + 1 != bs.bands.size()) fail("gap count != band count - 1");

    int lastSlopeSign = 0;
    for (std::size_t k = 0; k < bs.bands.size(); ++k) {
        const Interval& b = bs.bands[k];
        if (!(b.length() > 0.0)) fail("band " + std::to_string(k) + " has non-positive length");
        if (k + 1 < bs.bands.size() && b.hi > bs.bands[k + 1].lo) {
            fail("bands " + std::to_string(k) + " and " + std::to_string(k + 1) + " overlap");
        }
        for (double e : {b.lo, b.hi}) {
            const auto [v, slope] = eval_discriminant_with_slope(d.coeffs, e);
            const double err = std::abs(std::abs(v) - 2.0);
            // Touching edges sit on a critical point; their accuracy is set
            // by kTouchTol rather than by the bisection width.
            if (err > std::max(10.0 * tol * (1.0 + std::abs(slope)), 2.0 * static_cast<double>(kTouchTol))) {
                std::ostringstream os;
                os << "|Delta| = " << std::abs(v) << " at edge " << e << " of band " << k;
                fail(os.str());
            }
        }
        // Delta is strictly monotone on an open band: same slope sign at
        // interior sample points, and sign alternates band to band.
        int bandSign = 0;
        for (double frac : {0.25, 0.5, 0.75}) {
            const double slope = eval_discriminant_with_slope(d.coeffs, b.lo + frac * b.length()).slope;
            const int sg = (slope > 0.0) - (slope < 0.0);
            if (bandSign == 0) bandSign = sg;
            else if (sg != bandSign) fail("Delta not monotone on band " + std::to_string(k));
        }
        if (lastSlopeSign != 0 && bandSign == lastSlopeSign) {
            fail("slope sign does not alternate at band " + std::to_string(k));
        }
        lastSlopeSign = bandSign;
    }
    if (!bs.bands.empty()) {
        const double total = bs.totalBandMeasure + bs.total_gap_measure();
        if (std::abs(total - bs.s) > 1e-9 * std::max(1.0, bs.s)) fail("bands + gaps != s");
        if (bs.highest() > d.searchHi || bs.lowest() < d.searchLo) fail("band outside search interval");
    }
    return fails;
}

void write_bands_csv(std::ostream& out, const BandStructure& bs) {
    const auto old = out.precision(17);
    out << "band_index,lo,hi,length\n";
    for (std::size_t k = 0; k < bs.bands.size(); ++k) {
        const auto& b = bs.bands[k];
        out << k + 1 << ',' << b.lo << ',' << b.hi << ',' << b.length() << '\n';
    }
    out << "gap_index,lo,hi,length\n";
    for (std::size_t k = 0; k < bs.gaps.size(); ++k) {
        const auto& g = bs.gaps[k];
        out << k + 1 << ',' << g.lo << ',' << g.hi << ',' << g.length() << '\n';
    }
    out.precision(old);
}

}  // namespace pjacobi
