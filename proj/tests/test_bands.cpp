#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "oracles.hpp"
#include "pjacobi/bands.hpp"
#include "pjacobi/discriminant.hpp"

using namespace pjacobi;

namespace {

BandStructure bands_of(const std::vector<double>& a, const std::vector<double>& b) {
    return band_structure(build_discriminant(new_periodic(a, b)));
}

std::vector<double> edges(const BandStructure& bs) {
    std::vector<double> e;
    for (const auto& iv : bs.bands) {
        e.push_back(iv.lo);
        e.push_back(iv.hi);
    }
    return e;
}

}  // namespace

TEST_CASE("period-2 bands match the quadratic formula") {
    const double r5 = std::sqrt(5.0);
    const auto bs = bands_of({1, 1}, {0, 2});
    REQUIRE(bs.period() == 2);
    CHECK(std::abs(bs.bands[0].lo - (1 - r5)) <= 1e-12);
    CHECK(std::abs(bs.bands[0].hi) <= 1e-12);
    CHECK(std::abs(bs.bands[1].lo - 2.0) <= 1e-12);
    CHECK(std::abs(bs.bands[1].hi - (1 + r5)) <= 1e-12);
    CHECK(bs.gaps[0].length() == doctest::Approx(2.0));
    CHECK(bs.s == doctest::Approx(2 * r5));
    CHECK(bs.totalBandMeasure == doctest::Approx(2 * (r5 - 1)));
    CHECK(bs.all_gaps_open());

    oracle::OperatorGen gen(21);
    gen.pmin = gen.pmax = 2;
    for (int trial = 0; trial < 100; ++trial) {
        const auto c = gen.next();
        const auto expect = oracle::period2_edges(c.a()[0], c.a()[1], c.b()[0], c.b()[1]);
        const auto got = edges(band_structure(build_discriminant(c)));
        for (int k = 0; k < 4; ++k) CHECK(got[k] == doctest::Approx(expect[k]).epsilon(1e-10));
    }
}

TEST_CASE("touching bands close the gap") {
    const auto bs = bands_of({1, 1}, {0, 0});
    CHECK(bs.bands[0].lo == doctest::Approx(-2));
    CHECK(bs.bands[0].hi == 0.0);
    CHECK(bs.bands[1].lo == 0.0);
    CHECK(bs.bands[1].hi == doctest::Approx(2));
    CHECK(bs.closedGapFlags == std::vector<bool>{true});
    REQUIRE(bs.minGap.has_value());
    CHECK(std::isinf(*bs.minGap));
}

TEST_CASE("single band") {
    const auto bs = bands_of({1}, {0});
    REQUIRE(bs.period() == 1);
    CHECK(bs.bands[0].lo == doctest::Approx(-2));
    CHECK(bs.bands[0].hi == doctest::Approx(2));
    CHECK(bs.gaps.empty());
    CHECK(bs.closedGapFlags.empty());
    CHECK_FALSE(bs.minGap.has_value());
}

TEST_CASE("free operator edges") {
    for (int p = 2; p <= 12; ++p) {
        const auto bs = bands_of(std::vector<double>(p, 1.0), std::vector<double>(p, 0.0));
        const auto expect = oracle::free_edges(p);
        const auto got = edges(bs);
        REQUIRE(got.size() == expect.size());
        for (std::size_t k = 0; k < got.size(); ++k) CHECK(std::abs(got[k] - expect[k]) <= 1e-9);
        CHECK(bs.totalBandMeasure == doctest::Approx(4.0));
        for (bool closed : bs.closedGapFlags) CHECK(closed);
    }
}

TEST_CASE("gap report") {
    const auto open = gap_report(bands_of({1, 1}, {0, 2}), 1e-9);
    CHECK(open.closedGapFlags == std::vector<bool>{false});
    REQUIRE(open.minGap.has_value());
    CHECK(*open.minGap == doctest::Approx(2.0));

    const auto closed = gap_report(bands_of({1, 1}, {0, 0}));
    CHECK(closed.closedGapFlags == std::vector<bool>{true});
    CHECK(*closed.minGap == std::numeric_limits<double>::infinity());

    CHECK(gap_report(bands_of({1}, {0})).closedGapFlags.empty());

    // Gap of width ~1e-7 is open at 1e-9 and closed at 1e-6.
    const auto thin = bands_of({1, 1}, {0, 1e-7});
    CHECK(thin.gaps[0].length() == doctest::Approx(1e-7).epsilon(1e-3));
    CHECK(gap_report(thin, 1e-9).closedGapFlags == std::vector<bool>{false});
    CHECK(gap_report(thin, 1e-6).closedGapFlags == std::vector<bool>{true});
}

TEST_CASE("band CSV") {
    std::ostringstream out;
    write_bands_csv(out, bands_of({1, 1}, {0, 2}));
    const std::string csv = out.str();
    CHECK(csv.starts_with("band_index,lo,hi,length\n1,"));
    CHECK(csv.find("\ngap_index,lo,hi,length\n1,") != std::string::npos);
}

TEST_CASE("property: band invariants on random operators") {
    oracle::OperatorGen gen(99);
    for (int trial = 0; trial < 200; ++trial) {
        const auto c = gen.next();
        const auto d = build_discriminant(c);
        const auto bs = band_structure(d);
        const auto failures = check_band_invariants(d, bs, default_band_tol(d));
        CHECK_MESSAGE(failures.empty(), (failures.empty() ? "" : failures.front()));
        CHECK(bs.period() == c.period());
        CHECK(bs.totalBandMeasure + bs.total_gap_measure() == doctest::Approx(bs.s));
        for (std::size_t n = 0; n < bs.period(); ++n) {
            CHECK(std::abs(oracle::naive_delta<long double>(c, bs.bands[n].lo)) <= 2.0L + 1e-9L);
            CHECK(std::abs(oracle::naive_delta<long double>(c, bs.bands[n].hi)) <= 2.0L + 1e-9L);
            // Inside a band the naive product stays in [-2, 2].
            const double mid = 0.5 * (bs.bands[n].lo + bs.bands[n].hi);
            CHECK(std::abs(oracle::naive_delta(c, mid)) <= 2.0 + 1e-9);
        }
        for (const auto& g : bs.gaps) {
            if (g.length() <= 0) continue;
            CHECK(std::abs(oracle::naive_delta(c, 0.5 * (g.lo + g.hi))) > 2.0);
        }
    }
}
