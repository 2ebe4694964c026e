#include "pjacobi/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pjacobi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_plus(double x) { return std::max(std::log(x), 0.0); }
double reciprocal(double x) { return x == 0.0 ? kInf : 1.0 / x; }

double max_band(const BandStructure& bs) {
    double m = 0.0;
    for (const auto& b : bs.bands) m = std::max(m, b.length());
    return m;
}

double min_band(const BandStructure& bs) {
    double m = kInf;
    for (const auto& b : bs.bands) m = std::min(m, b.length());
    return m;
}

// 4 A^p / x^{p-1}, in log space.
double four_Ap_over(const PeriodicCoefficients& c, double x) {
    const double p = static_cast<double>(c.period());
    return std::exp(std::log(4.0) + c.log_product_a() - (p - 1.0) * std::log(x));
}

BoundRecord make(std::string name, std::string anchor, Relation rel, double lhs, double rhs,
                 bool conditional = false, bool conditionMet = true) {
    BoundRecord r;
    r.name = std::move(name);
    r.anchor = std::move(anchor);
    r.relation = rel;
    r.lhs = lhs;
    r.rhs = rhs;
    r.conditional = conditional;
    r.conditionMet = conditionMet;
    return finalize_record(std::move(r));
}

}  // namespace

BoundRecord finalize_record(BoundRecord r) {
    const double small = r.relation == Relation::LessEq ? r.lhs : r.rhs;
    const double large = r.relation == Relation::LessEq ? r.rhs : r.lhs;
    if (large == kInf || small == -kInf) {
        r.slack = kInf;
    } else if (std::isnan(small) || std::isnan(large)) {
        r.slack = std::numeric_limits<double>::quiet_NaN();
    } else {
        r.slack = large - small;  // -inf when small is +inf
    }
    const bool holds = r.slack >= -kBoundTol * (1.0 + std::abs(r.lhs) + std::abs(r.rhs)) ||
                       r.slack == kInf;
    r.satisfied = !r.conditionMet || holds;
    return r;
}

std::vector<BoundRecord> classical_bounds(const PeriodicCoefficients& c, const BandStructure& bs,
                                          const ScalarSummary& sm) {
    std::vector<BoundRecord> out;
    const double sigma = bs.totalBandMeasure;
    const double s = bs.s;
    const bool hasGaps = c.period() >= 2;

    {
        // Both Gershgorin sides in one record; lhs/rhs show the lower side,
        // slack is the smaller of the two oriented margins.
        BoundRecord r = make("gershgorin", "min_n (b_n - a_n - a_{n-1}) <= lambda_1^min",
                             Relation::LessEq, sm.gershgorinLower, bs.lowest());
        const double upperSlack = sm.gershgorinUpper - bs.highest();
        r.slack = std::min(r.slack, upperSlack);
        r.satisfied = r.satisfied &&
                      upperSlack >= -kBoundTol * (1.0 + std::abs(sm.gershgorinUpper) + std::abs(bs.highest()));
        out.push_back(r);
    }
    out.push_back(make("diameter_ge_4A", "s := lambda_p^max - lambda_1^min >= 4A", Relation::GreaterEq,
                       s, 4.0 * sm.A));
    out.push_back(make("measure_le_4A", "|sigma| = sum |sigma_n| <= 4A", Relation::LessEq, sigma,
                       4.0 * sm.A));
    out.push_back(make("measure_le_s_minus_m", "sum |sigma_n| <= s - m", Relation::LessEq, sigma,
                       s - sm.m));
    out.push_back(make("measure_le_4_min_a", "sum |sigma_n| <= 4 min_n a_n", Relation::LessEq, sigma,
                       4.0 * sm.minA));
    out.push_back(make("measure_ge_4Ap_over_M", "sum |sigma_n| >= 4A^p / M^{p-1}", Relation::GreaterEq,
                       sigma, four_Ap_over(c, sm.M)));
    out.push_back(make("measure_ge_4Ap_over_s", "sum |sigma_n| >= 4A^p / s^{p-1}", Relation::GreaterEq,
                       sigma, four_Ap_over(c, s)));

    const double gaps = bs.total_gap_measure();
    out.push_back(make("gaps_ge_4_A_minus_min_a", "sum |gamma_n| >= 4(A - min_n a_n)",
                       Relation::GreaterEq, gaps, 4.0 * (sm.A - sm.minA), false, hasGaps));
    const double combined = std::max(std::max(4.0 * sm.A, 2.0 * sm.maxA) - 4.0 * sm.minA, sm.m);
    out.push_back(make("gaps_ge_combined",
                       "sum |gamma_n| >= max{max{4A, 2max_n a_n} - 4min_n a_n, max_n b_n - min_n b_n}",
                       Relation::GreaterEq, gaps, combined, false, hasGaps));
    return out;
}

BoundRecord theorem_log_sum_lower(const PeriodicCoefficients& c, const BandStructure& bs,
                                  std::optional<double> d) {
    const double dd = d.value_or(bs.s);
    const ScalarSummary sm = scalar_summary(c);
    double rhs = 0.0;
    for (const auto& b : bs.bands) rhs += reciprocal(std::log(4.0 * dd / b.length()));
    return make("log_sum_lower", "s <= d implies 1/log(d/A) <= sum_n 1/log(4d/|sigma_n|)",
                Relation::LessEq, reciprocal(std::log(dd / sm.A)), rhs, false,
                bs.s <= dd * (1.0 + kBoundTol));
}

BoundRecord corollary_max_band(const PeriodicCoefficients& c, const BandStructure& bs) {
    return make("max_band_lower", "4A^p/s^{p-1} <= max_{1<=n<=p} |sigma_n|", Relation::LessEq,
                four_Ap_over(c, bs.s), max_band(bs));
}

BoundRecord theorem_log_sum_upper(const PeriodicCoefficients& c, const BandStructure& bs,
                                  std::optional<double> d) {
    const char* anchor = "min_n |gamma_n| >= d implies 1/log+(d/A) >= sum_n 1/log+(4d/|sigma_n|)";
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (c.period() < 2) return make("log_sum_upper", anchor, Relation::GreaterEq, nan, nan, true, false);

    const bool open = bs.all_gaps_open();
    const double g = open ? *bs.minGap : 0.0;
    const double dd = d.value_or(open ? g : nan);
    if (std::isnan(dd)) return make("log_sum_upper", anchor, Relation::GreaterEq, nan, nan, true, false);

    const ScalarSummary sm = scalar_summary(c);
    double rhs = 0.0;
    for (const auto& b : bs.bands) rhs += reciprocal(log_plus(4.0 * dd / b.length()));
    return make("log_sum_upper", anchor, Relation::GreaterEq, reciprocal(log_plus(dd / sm.A)), rhs,
                true, open && dd > 0.0 && g >= dd);
}

BoundRecord corollary_min_band(const PeriodicCoefficients& c, const BandStructure& bs) {
    const char* anchor = "4(min_n |gamma_n|) >= max{max_n |sigma_n|, 4A} implies "
                         "min_n |sigma_n| <= 4A^p / (min_n |gamma_n|)^{p-1}";
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (c.period() < 2 || !bs.all_gaps_open()) {
        return make("min_band_upper", anchor, Relation::LessEq, min_band(bs), nan, true, false);
    }
    const ScalarSummary sm = scalar_summary(c);
    const double g = *bs.minGap;
    const bool met = 4.0 * g >= std::max(max_band(bs), 4.0 * sm.A);
    return make("min_band_upper", anchor, Relation::LessEq, min_band(bs), four_Ap_over(c, g), true, met);
}

bool BoundsReport::unconditional_ok() const noexcept {
    return std::ranges::all_of(records, [](const BoundRecord& r) {
        return r.conditional ? true : r.satisfied;
    });
}

bool BoundsReport::conditional_ok() const noexcept {
    return std::ranges::all_of(records, [](const BoundRecord& r) {
        return r.conditional ? r.satisfied : true;
    });
}

BoundsReport evaluate_bounds(const PeriodicCoefficients& c, const BandStructure& bs,
                             std::optional<double> dLower, std::optional<double> dUpper) {
    BoundsReport rep;
    rep.records = classical_bounds(c, bs, scalar_summary(c));
    rep.records.push_back(theorem_log_sum_lower(c, bs, dLower));
    rep.records.push_back(corollary_max_band(c, bs));
    rep.records.push_back(theorem_log_sum_upper(c, bs, dUpper));
    rep.records.push_back(corollary_min_band(c, bs));
    return rep;
}

}  // namespace pjacobi
