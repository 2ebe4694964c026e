#include "pjacobi/report_json.hpp"

#include <cmath>

namespace pjacobi {

ojson extended_real(double x) {
    if (std::isnan(x)) return nullptr;
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

ojson to_json(const BoundRecord& r) {
    return ojson{{"name", r.name},
                 {"anchor", r.anchor},
                 {"lhs", extended_real(r.lhs)},
                 {"rhs", extended_real(r.rhs)},
                 {"condition_met", r.conditionMet},
                 {"satisfied", r.satisfied},
                 {"slack", extended_real(r.slack)}};
}

ojson to_json(const BoundsReport& r) {
    ojson arr = ojson::array();
    for (const auto& rec : r.records) arr.push_back(to_json(rec));
    return arr;
}

namespace {

ojson intervals(const std::vector<Interval>& ivs) {
    ojson arr = ojson::array();
    for (const auto& iv : ivs) arr.push_back({{"lo", iv.lo}, {"hi", iv.hi}, {"length", iv.length()}});
    return arr;
}

}  // namespace

ojson to_json(const BandStructure& bs) {
    ojson j{{"bands", intervals(bs.bands)},
            {"gaps", intervals(bs.gaps)},
            {"s", bs.s},
            {"total_band_measure", bs.totalBandMeasure},
            {"total_gap_measure", bs.total_gap_measure()}};
    j["min_gap"] = bs.minGap ? extended_real(*bs.minGap) : ojson(nullptr);
    j["closed_gaps"] = bs.closedGapFlags;
    return j;
}

ojson to_json(const PotentialReport& pr) {
    ojson alt = ojson::array();
    for (const auto& pt : pr.alternation.points) alt.push_back({{"x", pt.x}, {"sign", pt.sign}});
    ojson measures = ojson::array();
    for (const auto& q : pr.bandMeasures) {
        measures.push_back(std::to_string(q.num) + "/" + std::to_string(q.den));
    }
    return ojson{{"cap_spectrum", pr.capSpectrum},
                 {"cap_bands", pr.capBands},
                 {"chebyshev_number", pr.chebNumber},
                 {"widom_factor", pr.widomFactor},
                 {"alternation_set", alt},
                 {"alternating_length", pr.alternation.alternatingLength},
                 {"extreme_point_count", pr.extremePointCount},
                 {"maximal_intervals", intervals(pr.alternation.maximalIntervals)},
                 {"equilibrium_measures", measures}};
}

ojson to_json(const ScalarSummary& s) {
    return ojson{{"A", s.A},
                 {"min_a", s.minA},
                 {"max_a", s.maxA},
                 {"m", s.m},
                 {"gershgorin_lower", s.gershgorinLower},
                 {"gershgorin_upper", s.gershgorinUpper},
                 {"M", s.M}};
}

ojson to_json(const TrialReport& t, bool includeTiming) {
    ojson j;
    j["trial"] = t.trialIndex;
    j["a"] = std::vector<double>(t.coeffs.a().begin(), t.coeffs.a().end());
    j["b"] = std::vector<double>(t.coeffs.b().begin(), t.coeffs.b().end());
    j["summary"] = to_json(scalar_summary(t.coeffs));
    ojson fam;
    for (std::size_t f = 0; f < kFamilyCount; ++f) fam[family_name(static_cast<Family>(f))] = t.passed[f];
    j["passed"] = fam;
    j["oracle_discrepancy"] = extended_real(t.oracleDiscrepancy);
    j["band_structure"] = t.bands ? to_json(*t.bands) : ojson(nullptr);
    j["potential"] = t.potential ? to_json(*t.potential) : ojson(nullptr);
    j["bounds"] = t.bounds ? to_json(*t.bounds) : ojson(nullptr);
    j["diagnostics"] = t.diagnostics;
    if (includeTiming) j["wall_seconds"] = t.wallSeconds;
    return j;
}

ojson to_json(const EnsembleSummary& s) {
    ojson fam;
    for (std::size_t f = 0; f < kFamilyCount; ++f) {
        fam[family_name(static_cast<Family>(f))] = s.familyPasses[f];
    }
    return ojson{{"trials", s.trials},
                 {"trials_all_passed", s.trialsAllPassed},
                 {"family_passes", fam},
                 {"max_oracle_discrepancy", s.maxOracleDiscrepancy},
                 {"max_oracle_rel_discrepancy", s.maxOracleRelDiscrepancy},
                 {"log_sum_upper_applicable", s.logSumUpperApplicable},
                 {"min_band_upper_applicable", s.minBandUpperApplicable}};
}

ojson to_json(const EnsembleConfig& c) {
    return ojson{{"trials", c.trials}, {"seed", c.seed}, {"pmin", c.pmin}, {"pmax", c.pmax},
                 {"a_lo", c.aLo},      {"a_hi", c.aHi},  {"b_lo", c.bLo},  {"b_hi", c.bHi}};
}

ojson to_json(const EnsembleResult& r, bool includeTiming) {
    ojson trials = ojson::array();
    for (const auto& t : r.trials) trials.push_back(to_json(t, includeTiming));
    return ojson{{"config", to_json(r.config)}, {"summary", to_json(r.summary)}, {"trials", trials}};
}

}  // namespace pjacobi
