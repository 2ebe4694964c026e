#pragma once

#include <cstdint>
#include <vector>

#include "pjacobi/bands.hpp"

namespace pjacobi {

/// Exact nonnegative fraction, always reduced, den > 0.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Rational make(std::int64_t num, std::int64_t den);
    double to_double() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
    friend Rational operator+(const Rational& x, const Rational& y);
    friend bool operator==(const Rational&, const Rational&) = default;
};

/// Logarithmic capacity of a segment: a quarter of its length.
double capacity_interval(const Interval& iv) noexcept;

/// t_p(sigma) = sup over sigma of |A^p Delta|, taken over band edges and
/// the critical points that lie in sigma. Equals 2 A^p.
double chebyshev_number(const DiscriminantData& d, const BandStructure& bs);

inline constexpr double kCapacityRelTol = 1e-9;

/// (t_p / 2)^{1/p}. Throws CapacityMismatch if it differs from A by more
/// than kCapacityRelTol relative.
double spectrum_capacity(const DiscriminantData& d, const BandStructure& bs);

struct AlternationPoint {
    double x;
    int sign;  // sign of Delta at x; |A^p Delta(x)| = t_p
};

struct AlternationSet {
    std::vector<AlternationPoint> points;  // sorted, touching edges merged
    std::vector<Interval> maximalIntervals;  // bands merged across closed gaps
    std::vector<int> extremePerInterval;     // q_j + 1
    int extremePointCount = 0;
    std::size_t period = 0;
    /// Length of the longest alternating subsequence ending on a + sign.
    int alternatingLength = 0;
};

/// Collects the points of sigma where |A^p Delta| reaches t_p and checks
/// that an alternating subsequence of length p + 1 exists and that the
/// extreme-point count equals p + l (l maximal intervals). Closed gaps are
/// taken from bs.closedGapFlags. Throws AlternationFailure.
AlternationSet alternation_set(const DiscriminantData& d, const BandStructure& bs);

/// mu([a_j, b_j]) = q_j / p per maximal interval; the result sums to 1.
std::vector<Rational> equilibrium_band_measures(const AlternationSet& alt);

struct PotentialReport {
    double capSpectrum = 0.0;
    std::vector<double> capBands;
    double chebNumber = 0.0;
    double widomFactor = 0.0;
    AlternationSet alternation;
    std::vector<Rational> bandMeasures;
    int extremePointCount = 0;
};

PotentialReport potential_report(const DiscriminantData& d, const BandStructure& bs);

}  // namespace pjacobi
