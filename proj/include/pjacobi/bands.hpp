#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pjacobi/discriminant.hpp"

namespace pjacobi {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double length() const noexcept { return hi - lo; }
    bool contains(double x) const noexcept { return lo <= x && x <= hi; }
};

inline constexpr double kDefaultClosedTol = 1e-9;
/// |Delta(c)| - 2 at or below this at a critical point c means touching
/// bands. Measured in extended precision; near a double root the excess
/// grows like the square of the gap width, so this resolves gaps down to
/// roughly 1e-8 / sqrt(|Delta''(c)|).
inline constexpr long double kTouchTol = 1e-16L;
/// A critical value this far inside (-2, 2) is reported as a broken
/// discriminant rather than absorbed as rounding.
inline constexpr long double kKnotTol = 1e-9L;

struct BandStructure {
    std::vector<Interval> bands;  // p bands, increasing
    std::vector<Interval> gaps;   // p - 1 gaps, possibly of zero length
    double s = 0.0;               // lambda_p^max - lambda_1^min
    double totalBandMeasure = 0.0;
    /// Smallest open gap; +inf when every gap is closed; empty when p == 1.
    std::optional<double> minGap;
    std::vector<bool> closedGapFlags;

    std::size_t period() const noexcept { return bands.size(); }
    double lowest() const noexcept { return bands.front().lo; }
    double highest() const noexcept { return bands.back().hi; }
    double total_gap_measure() const noexcept;
    bool all_gaps_open() const noexcept;
};

/// Default edge accuracy: 1e-12 * max(1, width of the search interval).
double default_band_tol(const DiscriminantData& d) noexcept;

/// Preimage of [-2, 2] under Delta. Between consecutive critical points
/// Delta is monotone, so every monotone piece carries exactly one band whose
/// edges are found by bisection on the stable evaluation. A critical value
/// within kTouchTol of +/-2 is a closed gap: the critical point is both the
/// upper edge of one band and the lower edge of the next.
/// Throws EdgeCountMismatch when critical values do not alternate outside (-2, 2).
BandStructure band_structure(const DiscriminantData& d, double tol,
                             double closedTol = kDefaultClosedTol);
inline BandStructure band_structure(const DiscriminantData& d) {
    return band_structure(d, default_band_tol(d));
}

struct GapReport {
    std::optional<double> minGap;
    std::vector<bool> closedGapFlags;
};

/// gamma_n is closed iff |gamma_n| <= closedTol * max(1, s).
GapReport gap_report(const BandStructure& bs, double closedTol = kDefaultClosedTol);

/// Checks edge values (+/-2), monotonicity inside each band, alternation of
/// slope signs, ordering and the measure identity. Returns a list of failures.
std::vector<std::string> check_band_invariants(const DiscriminantData& d, const BandStructure& bs,
                                               double tol);

/// Two CSV sections: "band_index,lo,hi,length" rows then "gap_index,lo,hi,length" rows.
void write_bands_csv(std::ostream& out, const BandStructure& bs);

}  // namespace pjacobi
