#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "pjacobi/bands.hpp"
#include "pjacobi/bounds.hpp"
#include "pjacobi/coefficients.hpp"
#include "pjacobi/potential.hpp"

namespace pjacobi {

struct Tolerances {
    std::optional<double> bandTol;  // default_band_tol when empty
    double closedTol = kDefaultClosedTol;
    double oracleRelTol = 1e-8;     // edges vs eigenvalues, relative to max(1, s)
    double jacobiTol = 1e-13;
    double widomTol = 1e-8;
    double chebRelTol = 1e-8;
};

struct EnsembleConfig {
    std::uint64_t trials = 1000;
    int pmin = 2;
    int pmax = 10;
    double aLo = 0.1;
    double aHi = 10.0;
    double bLo = -5.0;
    double bHi = 5.0;
    std::uint64_t seed = 42;
    Tolerances tol;
};

/// Throws ConfigInvalid.
void validate(const EnsembleConfig& cfg);

/// Counter-based stream: draw k of trial t is a SplitMix64 finalizer applied
/// to (hash(seed, t), k), so every trial is reproducible on its own.
class TrialStream {
public:
    TrialStream(std::uint64_t seed, std::uint64_t trialIndex);
    std::uint64_t next_u64() noexcept;
    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() noexcept;
    /// Uniform integer in [lo, hi].
    int uniform_int(int lo, int hi) noexcept;

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

PeriodicCoefficients sample_operator(const EnsembleConfig& cfg, std::uint64_t trialIndex);

enum class Family {
    Discriminant,
    Bands,
    Oracle,
    Potential,
    BoundsUnconditional,
    BoundsConditional,
};
inline constexpr std::size_t kFamilyCount = 6;
const char* family_name(Family f) noexcept;

struct TrialReport {
    explicit TrialReport(PeriodicCoefficients c) : coeffs(std::move(c)) {}

    std::uint64_t trialIndex = 0;
    PeriodicCoefficients coeffs;
    std::optional<BandStructure> bands;
    std::optional<PotentialReport> potential;
    std::optional<BoundsReport> bounds;
    /// max |edge - eigenvalue| over the sorted multisets (absolute).
    double oracleDiscrepancy = std::numeric_limits<double>::quiet_NaN();
    std::array<bool, kFamilyCount> passed{};
    std::vector<std::string> diagnostics;
    double wallSeconds = 0.0;

    bool passed_all() const noexcept;
    bool passed_family(Family f) const noexcept { return passed[static_cast<std::size_t>(f)]; }
};

/// Full pipeline on one operator. Module errors are caught and recorded as
/// a failed family with a diagnostic; nothing propagates.
TrialReport run_trial(const PeriodicCoefficients& c, const Tolerances& tol = {},
                      std::optional<double> dLower = std::nullopt,
                      std::optional<double> dUpper = std::nullopt);

struct EnsembleSummary {
    std::uint64_t trials = 0;
    std::array<std::uint64_t, kFamilyCount> familyPasses{};
    std::uint64_t trialsAllPassed = 0;
    double maxOracleDiscrepancy = 0.0;     // absolute
    double maxOracleRelDiscrepancy = 0.0;  // divided by max(1, s)
    std::uint64_t logSumUpperApplicable = 0;
    std::uint64_t minBandUpperApplicable = 0;
    bool all_passed() const noexcept { return trialsAllPassed == trials; }
};

struct EnsembleResult {
    EnsembleConfig config;
    EnsembleSummary summary;
    std::vector<TrialReport> trials;
};

/// Trials run in parallel with OpenMP; output is independent of the
/// thread count. Throws ConfigInvalid.
EnsembleResult run_ensemble(const EnsembleConfig& cfg);
/// Single-threaded reference of run_ensemble.
EnsembleResult run_ensemble_serial(const EnsembleConfig& cfg);

EnsembleSummary summarize(const std::vector<TrialReport>& trials);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Structural invariants of one operator: cyclic-shift invariance of Delta,
/// shift and scale covariance of the bands, agreement of the two evaluation
/// paths, and interlacing of the Delta = +2 / -2 roots.
std::vector<CheckResult> structural_checks(const PeriodicCoefficients& c);

}  // namespace pjacobi
