// pjacobi: band structure, capacity identities and spectral bounds for
// periodic Jacobi operators.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <omp.h>

#include <CLI11.hpp>

#include "pjacobi/error.hpp"
#include "pjacobi/report_json.hpp"

using namespace pjacobi;

namespace {

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path);
    out << text;
}

std::string ext(double x) {
    if (std::isnan(x)) return "n/a";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os << std::setprecision(10) << x;
    return os.str();
}

void print_trial(const TrialReport& t) {
    const ScalarSummary sm = scalar_summary(t.coeffs);
    std::cout << "period " << t.coeffs.period() << "  A = " << ext(sm.A) << "  m = " << ext(sm.m)
              << "  Gershgorin [" << ext(sm.gershgorinLower) << ", " << ext(sm.gershgorinUpper) << "]\n";
    if (t.bands) {
        const auto& bs = *t.bands;
        for (std::size_t k = 0; k < bs.bands.size(); ++k) {
            std::cout << "  band " << k + 1 << "  [" << ext(bs.bands[k].lo) << ", " << ext(bs.bands[k].hi)
                      << "]  length " << ext(bs.bands[k].length()) << "\n";
            if (k < bs.gaps.size()) {
                std::cout << "  gap  " << k + 1 << "  length " << ext(bs.gaps[k].length())
                          << (bs.closedGapFlags[k] ? "  (closed)" : "") << "\n";
            }
        }
        std::cout << "  s = " << ext(bs.s) << "  sum|sigma| = " << ext(bs.totalBandMeasure) << "\n";
    }
    if (t.potential) {
        const auto& pr = *t.potential;
        std::cout << "Cap(sigma) = " << ext(pr.capSpectrum) << "  t_p = " << ext(pr.chebNumber)
                  << "  Widom = " << ext(pr.widomFactor) << "  extreme points = " << pr.extremePointCount
                  << "\n  equilibrium measures:";
        for (const auto& q : pr.bandMeasures) std::cout << ' ' << q.num << '/' << q.den;
        std::cout << "\n";
    }
    std::cout << "oracle discrepancy = " << ext(t.oracleDiscrepancy) << "\n";
    if (t.bounds) {
        std::cout << std::left;
        for (const auto& r : t.bounds->records) {
            const char* status = !r.conditionMet ? "n/a " : (r.satisfied ? "ok  " : "FAIL");
            std::cout << "  " << status << "  " << std::setw(26) << r.name << " lhs "
                      << std::setw(18) << ext(r.lhs) << " rhs " << std::setw(18) << ext(r.rhs)
                      << " slack " << ext(r.slack) << "\n";
        }
    }
    for (std::size_t f = 0; f < kFamilyCount; ++f) {
        std::cout << (t.passed[f] ? "PASS  " : "FAIL  ") << family_name(static_cast<Family>(f)) << "\n";
    }
    for (const auto& d : t.diagnostics) std::cout << "  ! " << d << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral bands, capacity and band/gap bounds of periodic Jacobi operators"};
    app.require_subcommand(1);

    std::string opPath, reportPath, csvPath;
    std::optional<double> dLower, dUpper;
    auto* analyze = app.add_subcommand("analyze", "Analyze one operator from a JSON file");
    analyze->add_option("operator", opPath, "JSON file {\"a\": [...], \"b\": [...]}")->required();
    analyze->add_option("--report", reportPath, "Write the trial report as JSON");
    analyze->add_option("--bands-csv", csvPath, "Write bands and gaps as CSV");
    analyze->add_option("--d-lower", dLower, "d for the log-sum lower bound (default s)");
    analyze->add_option("--d-upper", dUpper, "d for the log-sum upper bound (default min gap)");

    EnsembleConfig cfg;
    int threads = 0;
    bool timing = false;
    auto* ensemble = app.add_subcommand("ensemble", "Run a seeded random ensemble");
    ensemble->add_option("--trials", cfg.trials, "Number of trials")->capture_default_str();
    ensemble->add_option("--seed", cfg.seed, "Seed")->capture_default_str();
    ensemble->add_option("--pmin", cfg.pmin, "Smallest period")->capture_default_str();
    ensemble->add_option("--pmax", cfg.pmax, "Largest period")->capture_default_str();
    ensemble->add_option("--a-lo", cfg.aLo, "Lower end of the log-uniform a range")->capture_default_str();
    ensemble->add_option("--a-hi", cfg.aHi, "Upper end of the log-uniform a range")->capture_default_str();
    ensemble->add_option("--b-lo", cfg.bLo, "Lower end of the uniform b range")->capture_default_str();
    ensemble->add_option("--b-hi", cfg.bHi, "Upper end of the uniform b range")->capture_default_str();
    ensemble->add_option("--report", reportPath, "Write the full ensemble report as JSON");
    ensemble->add_option("--threads", threads, "OpenMP threads (0 = runtime default)");
    ensemble->add_flag("--timing", timing, "Include per-trial wall time in the report");

    auto* verify = app.add_subcommand("verify", "Run the full invariant suite on one operator");
    verify->add_option("operator", opPath, "JSON operator file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze) {
            const auto c = load_coefficients(opPath);
            const TrialReport t = run_trial(c, {}, dLower, dUpper);
            print_trial(t);
            if (!reportPath.empty()) write_file(reportPath, to_json(t, true).dump(2) + "\n");
            if (!csvPath.empty() && t.bands) {
                std::ofstream out(csvPath);
                write_bands_csv(out, *t.bands);
            }
            return t.passed_all() ? 0 : 1;
        }
        if (*ensemble) {
            if (threads > 0) omp_set_num_threads(threads);
            const EnsembleResult r = run_ensemble(cfg);
            const auto& s = r.summary;
            std::cout << "trials " << s.trials << ", all families passed in " << s.trialsAllPassed << "\n";
            for (std::size_t f = 0; f < kFamilyCount; ++f) {
                std::cout << "  " << std::left << std::setw(22) << family_name(static_cast<Family>(f))
                          << s.familyPasses[f] << "/" << s.trials << "\n";
            }
            std::cout << "max oracle discrepancy " << ext(s.maxOracleDiscrepancy) << " (relative "
                      << ext(s.maxOracleRelDiscrepancy) << ")\n"
                      << "log_sum_upper applicable in " << s.logSumUpperApplicable
                      << " trials, min_band_upper in " << s.minBandUpperApplicable << "\n";
            for (const auto& t : r.trials) {
                for (const auto& d : t.diagnostics) std::cout << "  trial " << t.trialIndex << ": " << d << "\n";
            }
            if (!reportPath.empty()) write_file(reportPath, to_json(r, timing).dump(2) + "\n");
            return s.all_passed() ? 0 : 1;
        }
        if (*verify) {
            const auto c = load_coefficients(opPath);
            const TrialReport t = run_trial(c);
            bool ok = t.passed_all();
            std::cout << std::left;
            for (std::size_t f = 0; f < kFamilyCount; ++f) {
                std::cout << (t.passed[f] ? "PASS  " : "FAIL  ") << family_name(static_cast<Family>(f)) << "\n";
            }
            for (const auto& chk : structural_checks(c)) {
                ok = ok && chk.passed;
                std::cout << (chk.passed ? "PASS  " : "FAIL  ") << std::setw(26) << chk.name << chk.detail
                          << "\n";
            }
            for (const auto& d : t.diagnostics) std::cout << "  ! " << d << "\n";
            return ok ? 0 : 1;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
