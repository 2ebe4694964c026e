#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pjacobi/bands.hpp"
#include "pjacobi/coefficients.hpp"

namespace pjacobi {

enum class Relation { LessEq, GreaterEq };

/// One inequality lhs (<= | >=) rhs evaluated on exact band data. Values are
/// extended reals: +inf stands for 1/0. slack is oriented so that a
/// nonnegative value means the inequality holds.
struct BoundRecord {
    std::string name;
    std::string anchor;
    Relation relation = Relation::LessEq;
    double lhs = 0.0;
    double rhs = 0.0;
    /// Member of the gap-hypothesis family (log_sum_upper, min_band_upper).
    bool conditional = false;
    /// False means not applicable; the record is then vacuously satisfied.
    bool conditionMet = true;
    bool satisfied = true;
    double slack = 0.0;
};

inline constexpr double kBoundTol = 1e-9;

/// Fills slack and satisfied from lhs, rhs, relation and conditionMet.
BoundRecord finalize_record(BoundRecord r);

/// Gershgorin containment plus the eight classical band and gap estimates.
std::vector<BoundRecord> classical_bounds(const PeriodicCoefficients& c, const BandStructure& bs,
                                          const ScalarSummary& summary);

/// 1/log(d/A) <= sum_n 1/log(4d/|sigma_n|) whenever s <= d. Default d = s.
BoundRecord theorem_log_sum_lower(const PeriodicCoefficients& c, const BandStructure& bs,
                                  std::optional<double> d = std::nullopt);

/// 4 A^p / s^{p-1} <= max_n |sigma_n|.
BoundRecord corollary_max_band(const PeriodicCoefficients& c, const BandStructure& bs);

/// 1/log+(d/A) >= sum_n 1/log+(4d/|sigma_n|) whenever every gap is at least d.
/// Default d = smallest open gap.
BoundRecord theorem_log_sum_upper(const PeriodicCoefficients& c, const BandStructure& bs,
                                  std::optional<double> d = std::nullopt);

/// min_n |sigma_n| <= 4 A^p / g^{p-1}, g the smallest gap, provided
/// 4g >= max(max_n |sigma_n|, 4A).
BoundRecord corollary_min_band(const PeriodicCoefficients& c, const BandStructure& bs);

struct BoundsReport {
    std::vector<BoundRecord> records;  // 13 records
    bool unconditional_ok() const noexcept;
    bool conditional_ok() const noexcept;
};

BoundsReport evaluate_bounds(const PeriodicCoefficients& c, const BandStructure& bs,
                             std::optional<double> dLower = std::nullopt,
                             std::optional<double> dUpper = std::nullopt);

}  // namespace pjacobi
