#include <doctest.h>

#include <omp.h>

#include <cmath>

#include "pjacobi/ensemble.hpp"
#include "pjacobi/error.hpp"
#include "pjacobi/report_json.hpp"

using namespace pjacobi;

TEST_CASE("trial streams are reproducible and independent of order") {
    TrialStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    for (int k = 0; k < 10; ++k) {
        const auto x = a.next_u64();
        CHECK(x == b.next_u64());
        CHECK(x != c.next_u64());
        CHECK(x != d.next_u64());
    }
    TrialStream u(1, 0);
    for (int k = 0; k < 1000; ++k) {
        const double v = u.uniform01();
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
        const int i = u.uniform_int(2, 5);
        CHECK(i >= 2);
        CHECK(i <= 5);
    }
}

TEST_CASE("sampling respects the configuration") {
    EnsembleConfig cfg;
    CHECK(sample_operator(cfg, 3) == sample_operator(cfg, 3));

    cfg.pmin = cfg.pmax = 2;
    for (std::uint64_t t = 0; t < 50; ++t) CHECK(sample_operator(cfg, t).period() == 2);

    cfg.pmin = 2;
    cfg.pmax = 10;
    cfg.aLo = cfg.aHi = 1.0;
    for (std::uint64_t t = 0; t < 50; ++t) {
        const auto c = sample_operator(cfg, t);
        for (double a : c.a()) CHECK(a == 1.0);
        for (double b : c.b()) {
            CHECK(b >= cfg.bLo);
            CHECK(b <= cfg.bHi);
        }
    }
}

TEST_CASE("invalid configurations") {
    auto invalid = [](EnsembleConfig cfg) {
        try {
            validate(cfg);
        } catch (const Error& e) {
            return e.kind() == ErrorKind::ConfigInvalid;
        }
        return false;
    };
    EnsembleConfig cfg;
    cfg.trials = 0;
    CHECK(invalid(cfg));
    cfg = {};
    cfg.pmin = 5;
    cfg.pmax = 3;
    CHECK(invalid(cfg));
    cfg = {};
    cfg.pmin = 0;
    CHECK(invalid(cfg));
    cfg = {};
    cfg.aLo = 0.0;
    CHECK(invalid(cfg));
    cfg = {};
    cfg.bLo = 1;
    cfg.bHi = -1;
    CHECK(invalid(cfg));
    CHECK_NOTHROW(validate(EnsembleConfig{}));
}

TEST_CASE("single trials") {
    const auto t = run_trial(new_periodic({1, 1}, {0, 2}));
    CHECK(t.passed_all());
    CHECK(t.oracleDiscrepancy < 1e-8);
    CHECK(t.diagnostics.empty());

    CHECK(run_trial(new_periodic({1}, {0})).passed_all());

    const auto thin = run_trial(new_periodic({1, 1}, {0, 1e-7}));
    CHECK(thin.passed_all());
    REQUIRE(thin.bands.has_value());
    CHECK(thin.bands->closedGapFlags == std::vector<bool>{false});

    Tolerances loose;
    loose.closedTol = 1e-6;
    const auto merged = run_trial(new_periodic({1, 1}, {0, 1e-7}), loose);
    REQUIRE(merged.bands.has_value());
    CHECK(merged.bands->closedGapFlags == std::vector<bool>{true});
}

TEST_CASE("parallel ensemble matches the serial reference") {
    EnsembleConfig cfg;
    cfg.trials = 300;
    cfg.seed = 9;
    const auto serial = run_ensemble_serial(cfg);
    for (int threads : {1, 3, 8}) {
        omp_set_num_threads(threads);
        const auto par = run_ensemble(cfg);
        CHECK(to_json(par).dump() == to_json(serial).dump());
    }
    CHECK(serial.summary.all_passed());
    CHECK(serial.summary.trials == 300);
}

TEST_CASE("ensemble passes on the default configuration") {
    EnsembleConfig cfg;
    cfg.trials = 200;
    const auto res = run_ensemble(cfg);
    for (auto n : res.summary.familyPasses) CHECK(n == 200);
    CHECK(res.summary.maxOracleRelDiscrepancy <= 1e-8);
    CHECK(res.summary.logSumUpperApplicable > 0);
}

TEST_CASE("structural checks") {
    for (const auto& c : {new_periodic({1, 1}, {0, 2}), new_periodic({0.3, 2, 5, 1}, {-1, 4, 0.5, 2}),
                          new_periodic(std::vector<double>(6, 1.0), std::vector<double>(6, 0.0))}) {
        const auto checks = structural_checks(c);
        CHECK(checks.size() >= 5);
        for (const auto& r : checks) CHECK_MESSAGE(r.passed, r.name << ": " << r.detail);
    }
}

TEST_CASE("JSON encoding") {
    CHECK(extended_real(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(extended_real(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(extended_real(std::nan("")).is_null());
    CHECK(extended_real(1.5) == 1.5);

    const auto t = run_trial(new_periodic({1, 1}, {0, 2}));
    const auto j = to_json(t);
    CHECK(j.contains("bounds"));
    CHECK(j["bounds"].size() == 13);
    CHECK_FALSE(j.contains("wall_seconds"));
    CHECK(to_json(t, true).contains("wall_seconds"));
    const auto& rec = j["bounds"][0];
    for (const char* key : {"name", "anchor", "lhs", "rhs", "condition_met", "satisfied", "slack"})
        CHECK_MESSAGE(rec.contains(key), key);
}
