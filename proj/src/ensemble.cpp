#include "pjacobi/ensemble.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "pjacobi/discriminant.hpp"
#include "pjacobi/error.hpp"
#include "pjacobi/floquet.hpp"

namespace pjacobi {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

}  // namespace

void validate(const EnsembleConfig& cfg) {
    auto bad = [](const std::string& what) { throw Error(ErrorKind::ConfigInvalid, what); };
    if (cfg.trials < 1) bad("trials must be >= 1");
    if (cfg.pmin < 1 || cfg.pmin > cfg.pmax) bad("need 1 <= pmin <= pmax");
    if (!(cfg.aLo > 0.0) || !(cfg.aLo <= cfg.aHi) || !std::isfinite(cfg.aHi)) bad("need 0 < a-lo <= a-hi");
    if (!(cfg.bLo <= cfg.bHi) || !std::isfinite(cfg.bLo) || !std::isfinite(cfg.bHi)) bad("need b-lo <= b-hi");
}

TrialStream::TrialStream(std::uint64_t seed, std::uint64_t trialIndex)
    : key_(mix64(mix64(seed) ^ (trialIndex * kGolden + 0x632BE59BD9B4E019ULL))) {}

std::uint64_t TrialStream::next_u64() noexcept { return mix64(key_ + (++counter_) * kGolden); }

double TrialStream::uniform01() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1p-53;
}

int TrialStream::uniform_int(int lo, int hi) noexcept {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next_u64() % span);
}

PeriodicCoefficients sample_operator(const EnsembleConfig& cfg, std::uint64_t trialIndex) {
    TrialStream rng(cfg.seed, trialIndex);
    const int p = rng.uniform_int(cfg.pmin, cfg.pmax);
    const double logLo = std::log(cfg.aLo), logHi = std::log(cfg.aHi);
    std::vector<double> a(static_cast<std::size_t>(p)), b(static_cast<std::size_t>(p));
    for (auto& x : a) x = cfg.aLo == cfg.aHi ? cfg.aLo : std::exp(logLo + rng.uniform01() * (logHi - logLo));
    for (auto& x : b) x = cfg.bLo + rng.uniform01() * (cfg.bHi - cfg.bLo);
    return {std::move(a), std::move(b)};
}

const char* family_name(Family f) noexcept {
    switch (f) {
        case Family::Discriminant: return "discriminant";
        case Family::Bands: return "bands";
        case Family::Oracle: return "oracle";
        case Family::Potential: return "potential";
        case Family::BoundsUnconditional: return "bounds_unconditional";
        case Family::BoundsConditional: return "bounds_conditional";
    }
    return "?";
}

bool TrialReport::passed_all() const noexcept {
    return std::ranges::all_of(passed, [](bool x) { return x; });
}

TrialReport run_trial(const PeriodicCoefficients& c, const Tolerances& tol,
                      std::optional<double> dLower, std::optional<double> dUpper) {
    const auto start = std::chrono::steady_clock::now();
    TrialReport rep(c);
    auto set = [&](Family f, bool ok) { rep.passed[static_cast<std::size_t>(f)] = ok; };
    auto note = [&](Family f, const std::string& msg) {
        rep.diagnostics.push_back(std::string(family_name(f)) + ": " + msg);
    };
    auto finish = [&] {
        rep.wallSeconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return rep;
    };

    std::optional<DiscriminantData> disc;
    try {
        disc = build_discriminant(c);
        set(Family::Discriminant, true);
        for (const auto& w : disc->warnings) note(Family::Discriminant, "warning: " + w);
    } catch (const Error& e) {
        note(Family::Discriminant, e.what());
        return finish();
    }

    const double bandTol = tol.bandTol.value_or(default_band_tol(*disc));
    try {
        rep.bands = band_structure(*disc, bandTol, tol.closedTol);
        const auto fails = check_band_invariants(*disc, *rep.bands, bandTol);
        for (const auto& f : fails) note(Family::Bands, f);
        set(Family::Bands, fails.empty());
    } catch (const Error& e) {
        note(Family::Bands, e.what());
        return finish();
    }
    const BandStructure& bs = *rep.bands;
    const double scale = std::max(1.0, bs.s);

    try {
        const OracleEdges oracle = band_edges_oracle(c, tol.jacobiTol);
        const auto eig = oracle.merged();
        std::vector<double> edges;
        for (const auto& b : bs.bands) {
            edges.push_back(b.lo);
            edges.push_back(b.hi);
        }
        bool ok = eig.size() == edges.size();
        if (ok) {
            rep.oracleDiscrepancy = 0.0;
            for (std::size_t k = 0; k < eig.size(); ++k) {
                rep.oracleDiscrepancy = std::max(rep.oracleDiscrepancy, std::abs(eig[k] - edges[k]));
            }
            if (rep.oracleDiscrepancy > tol.oracleRelTol * scale) {
                ok = false;
                note(Family::Oracle, "edge discrepancy " + fmt(rep.oracleDiscrepancy));
            }
        } else {
            note(Family::Oracle, "eigenvalue count differs from edge count");
        }
        auto level_check = [&](const std::vector<double>& pts, double level) {
            for (double e : pts) {
                const auto [v, slope] = eval_discriminant_with_slope(c, e);
                if (std::abs(v - level) > tol.oracleRelTol * scale * (1.0 + std::abs(slope))) {
                    ok = false;
                    note(Family::Oracle, "Delta(" + fmt(e) + ") = " + fmt(v) + ", expected " + fmt(level));
                }
            }
        };
        level_check(oracle.plus, 2.0);
        level_check(oracle.minus, -2.0);
        if (oracle.plus.size() != c.period() || oracle.minus.size() != c.period()) ok = false;
        set(Family::Oracle, ok);
    } catch (const Error& e) {
        note(Family::Oracle, e.what());
    }

    try {
        rep.potential = potential_report(*disc, bs);
        const PotentialReport& pot = *rep.potential;
        const ScalarSummary sm = scalar_summary(c);
        bool ok = true;
        auto require = [&](bool cond, const std::string& what) {
            if (!cond) {
                ok = false;
                note(Family::Potential, what);
            }
        };
        require(std::abs(pot.widomFactor - 2.0) <= tol.widomTol, "Widom factor " + fmt(pot.widomFactor));
        const double twoAp = 2.0 * std::exp(c.log_product_a());
        require(std::abs(pot.chebNumber - twoAp) <= tol.chebRelTol * twoAp, "t_p != 2A^p");
        Rational total;
        for (const auto& q : pot.bandMeasures) total = total + q;
        require(total == Rational{1, 1}, "equilibrium measures do not sum to 1");
        if (bs.all_gaps_open()) {
            const auto p = static_cast<std::int64_t>(c.period());
            require(pot.bandMeasures.size() == c.period() &&
                        std::ranges::all_of(pot.bandMeasures,
                                            [p](const Rational& q) { return q == Rational::make(1, p); }),
                    "open gaps but band measure != 1/p");
        }
        const double capTol = 1e-9 * sm.A;
        for (double cb : pot.capBands) require(cb <= pot.capSpectrum + capTol, "Cap(band) > Cap(sigma)");
        require(pot.capSpectrum <= bs.s / 4.0 + capTol, "Cap(sigma) > s/4");
        set(Family::Potential, ok);
    } catch (const Error& e) {
        note(Family::Potential, e.what());
    }

    rep.bounds = evaluate_bounds(c, bs, dLower, dUpper);
    for (const auto& r : rep.bounds->records) {
        if (!r.satisfied) {
            note(r.conditional ? Family::BoundsConditional : Family::BoundsUnconditional,
                 r.name + " violated: lhs=" + fmt(r.lhs) + " rhs=" + fmt(r.rhs));
        }
    }
    set(Family::BoundsUnconditional, rep.bounds->unconditional_ok());
    set(Family::BoundsConditional, rep.bounds->conditional_ok());
    return finish();
}

EnsembleSummary summarize(const std::vector<TrialReport>& trials) {
    EnsembleSummary s;
    s.trials = trials.size();
    for (const auto& t : trials) {
        for (std::size_t f = 0; f < kFamilyCount; ++f) s.familyPasses[f] += t.passed[f] ? 1 : 0;
        if (t.passed_all()) ++s.trialsAllPassed;
        if (!std::isnan(t.oracleDiscrepancy)) {
            s.maxOracleDiscrepancy = std::max(s.maxOracleDiscrepancy, t.oracleDiscrepancy);
            const double scale = t.bands ? std::max(1.0, t.bands->s) : 1.0;
            s.maxOracleRelDiscrepancy = std::max(s.maxOracleRelDiscrepancy, t.oracleDiscrepancy / scale);
        }
        if (t.bounds) {
            for (const auto& r : t.bounds->records) {
                if (r.name == "log_sum_upper" && r.conditionMet) ++s.logSumUpperApplicable;
                if (r.name == "min_band_upper" && r.conditionMet) ++s.minBandUpperApplicable;
            }
        }
    }
    return s;
}

namespace {

TrialReport ensemble_trial(const EnsembleConfig& cfg, std::uint64_t i) {
    TrialReport r = run_trial(sample_operator(cfg, i), cfg.tol);
    r.trialIndex = i;
    return r;
}

}  // namespace

EnsembleResult run_ensemble(const EnsembleConfig& cfg) {
    validate(cfg);
    std::vector<std::optional<TrialReport>> slots(cfg.trials);
    const auto n = static_cast<std::int64_t>(cfg.trials);
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < n; ++i) {
        slots[static_cast<std::size_t>(i)] = ensemble_trial(cfg, static_cast<std::uint64_t>(i));
    }
    std::vector<TrialReport> trials;
    trials.reserve(slots.size());
    for (auto& s : slots) trials.push_back(std::move(*s));
    EnsembleSummary s = summarize(trials);
    return {cfg, s, std::move(trials)};
}

EnsembleResult run_ensemble_serial(const EnsembleConfig& cfg) {
    validate(cfg);
    std::vector<TrialReport> trials;
    trials.reserve(cfg.trials);
    for (std::uint64_t i = 0; i < cfg.trials; ++i) trials.push_back(ensemble_trial(cfg, i));
    EnsembleSummary s = summarize(trials);
    return {cfg, s, std::move(trials)};
}

std::vector<CheckResult> structural_checks(const PeriodicCoefficients& c) {
    std::vector<CheckResult> out;
    const std::size_t p = c.period();

    {
        // Coefficientwise, relative to the largest coefficient of Delta.
        const Poly base = discriminant_poly(c);
        double norm = 0.0;
        for (double v : base.coeffs()) norm = std::max(norm, std::abs(v));
        double worst = 0.0;
        for (std::size_t r = 1; r < p; ++r) {
            const Poly rot = discriminant_poly(c.rotated(r));
            for (std::size_t k = 0; k <= p; ++k) {
                worst = std::max(worst, std::abs(rot.coeff(k) - base.coeff(k)) / norm);
            }
        }
        out.push_back({"cyclic_shift_invariance", worst <= 1e-9, "max rel coeff diff " + fmt(worst)});
    }

    try {
        const auto d = build_discriminant(c);
        const auto bs = band_structure(d);

        auto covariance = [&](const std::string& name, const PeriodicCoefficients& moved, auto map) {
            try {
                const auto dm = build_discriminant(moved);
                const auto bm = band_structure(dm);
                double worst = 0.0;
                for (std::size_t k = 0; k < p; ++k) {
                    for (auto [x, y] : {std::pair{bs.bands[k].lo, bm.bands[k].lo},
                                        std::pair{bs.bands[k].hi, bm.bands[k].hi}}) {
                        const double expect = map(x);
                        worst = std::max(worst, std::abs(y - expect) /
                                                    std::max({1.0, std::abs(expect), bm.s}));
                    }
                }
                out.push_back({name, worst <= 1e-9, "max rel edge diff " + fmt(worst)});
            } catch (const Error& e) {
                out.push_back({name, false, e.what()});
            }
        };
        const double t = 0.5 + 0.25 * bs.s;
        covariance("shift_covariance", c.shifted(t), [t](double x) { return x + t; });
        const double k = 1.75;
        covariance("scale_covariance", c.scaled(k), [k](double x) { return k * x; });

        const bool monomial = p <= kMonomialPeriodLimit;
        {
            // Fixed uniform grid over the Gershgorin interval. Past the
            // monomial limit the expanded polynomial is not trusted, so the
            // stable path is compared with its extended-precision twin.
            const ScalarSummary sm = scalar_summary(c);
            double worst = 0.0;
            for (int i = 0; i < 100; ++i) {
                const double x = sm.gershgorinLower +
                                 (sm.gershgorinUpper - sm.gershgorinLower) * (i + 0.5) / 100.0;
                const double stable = eval_discriminant_stable(c, x);
                const double other = monomial ? poly_eval(d.delta, x)
                                              : static_cast<double>(eval_discriminant_extended(c, x));
                worst = std::max(worst, std::abs(other - stable) / (1.0 + std::abs(stable)));
            }
            out.push_back({"evaluation_paths_agree", worst <= 1e-8,
                           std::string(monomial ? "monomial" : "extended") + " vs stable, max mixed diff " +
                               fmt(worst)});
        }

        {
            // Roots of Delta -/+ 2, independent of the band solver: Sturm
            // isolation on the rescaled polynomial, or the Floquet
            // eigenvalues once the monomial form is out of range.
            struct Labeled {
                double x;
                int level;
            };
            std::vector<Labeled> roots;
            if (monomial) {
                const double center = 0.5 * (d.searchLo + d.searchHi);
                const double half = 0.5 * (d.searchHi - d.searchLo);
                const Poly scaled = discriminant_poly(c, center, half);
                for (int level : {2, -2}) {
                    const Poly shifted = scaled - Poly::constant(static_cast<double>(level));
                    for (const auto& r : real_roots_in(shifted, -1.0, 1.0, 1e-13)) {
                        for (int m = 0; m < r.multiplicity; ++m) roots.push_back({center + half * r.value, level});
                    }
                }
            } else {
                const auto oe = band_edges_oracle(c);
                for (double x : oe.plus) roots.push_back({x, 2});
                for (double x : oe.minus) roots.push_back({x, -2});
            }
            std::ranges::sort(roots, {}, &Labeled::x);
            bool ok = roots.size() == 2 * p;
            // From the top: +2 | -2 -2 | +2 +2 | ... within-band pairs differ,
            // across-gap pairs agree.
            for (std::size_t i = 0; ok && i < roots.size(); ++i) {
                const std::size_t fromTop = roots.size() - 1 - i;
                const int expected = ((fromTop + 1) / 2) % 2 == 0 ? 2 : -2;
                ok = roots[i].level == expected;
            }
            double worst = 0.0;
            if (ok) {
                for (std::size_t k = 0; k < p; ++k) {
                    worst = std::max({worst, std::abs(roots[2 * k].x - bs.bands[k].lo),
                                      std::abs(roots[2 * k + 1].x - bs.bands[k].hi)});
                }
            }
            // Sturm roots of a double root blur to sqrt(eps); only the
            // pattern is asserted when gaps close.
            const bool positionsOk = !bs.all_gaps_open() || worst <= 1e-8 * std::max(1.0, bs.s);
            out.push_back({"interlacing_pm2_roots", ok && positionsOk,
                           std::to_string(roots.size()) + " roots (" + (monomial ? "Sturm" : "Floquet") +
                               "), max edge diff " + fmt(worst)});
        }
    } catch (const Error& e) {
        out.push_back({"band_structure", false, e.what()});
    }
    return out;
}

}  // namespace pjacobi
