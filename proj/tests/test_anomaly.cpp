#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "newsignals/anomaly/anomaly.hpp"
#include "newsignals/util/rng.hpp"

using namespace newsignals;
using anomaly::AnomalyParams;
using core::Tick;
using core::TimeSeries;

namespace {

Tick T(const char* iso) { return Tick::parse(iso); }

TimeSeries series(std::vector<double> values, const char* start = "2023-01-01") {
    return TimeSeries("x", T(start), std::move(values));
}

}  // namespace

TEST_CASE("zscore matches hand-computed values") {
    const TimeSeries z = anomaly::zscore_series(series({1, 2, 3, 4, 5}));
    CHECK(z.name() == "x_zscore");
    CHECK(z.start() == T("2023-01-01"));
    REQUIRE(z.size() == 5);
    // mean 3, population sigma sqrt(2)
    CHECK(z[0] == doctest::Approx(-1.4142135623730951).epsilon(1e-12));
    CHECK(z[1] == doctest::Approx(-0.7071067811865476).epsilon(1e-12));
    CHECK(z[2] == doctest::Approx(0.0));
    CHECK(z[3] == doctest::Approx(0.7071067811865476).epsilon(1e-12));
    CHECK(z[4] == doctest::Approx(1.4142135623730951).epsilon(1e-12));
}

TEST_CASE("constant series standardizes to zeros") {
    const TimeSeries z = anomaly::zscore_series(series({4, 4, 4, 4}));
    for (std::size_t i = 0; i < z.size(); ++i) CHECK(z[i] == 0.0);
    CHECK(anomaly::positive_rate(anomaly::detect_anomalies(series({4, 4, 4, 4}), {})) == 0.0);
}

TEST_CASE("single spike in a constant series hits z = sqrt(n-1) exactly") {
    // n = 10: mean 6, population sigma 3, spike z = 9/3 = 3 exactly.
    const TimeSeries spiky = series({5, 5, 5, 5, 5, 5, 5, 5, 5, 15});
    const TimeSeries z = anomaly::zscore_series(spiky);
    CHECK(z[9] == 3.0);
    CHECK(z[0] == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));

    AnomalyParams params;  // t = 3, strict
    const TimeSeries none = anomaly::detect_anomalies(spiky, params);
    for (std::size_t i = 0; i < none.size(); ++i) CHECK(none[i] == 0.0);

    params.threshold_t = 2.99;
    const TimeSeries one = anomaly::detect_anomalies(spiky, params);
    CHECK(one[9] == 1.0);
    CHECK(anomaly::positive_rate(one) == doctest::Approx(0.1));

    params.threshold_t = 3.0;
    params.strict = false;  // >= includes the boundary
    const TimeSeries boundary = anomaly::detect_anomalies(spiky, params);
    CHECK(boundary[9] == 1.0);
    CHECK(boundary.name() == "x_anomalies");
}

TEST_CASE("stats window uses training moments only") {
    // Window 2023-01-01..2023-01-04 covers {1,2,3}: mean 2, sigma sqrt(2/3).
    const TimeSeries ts = series({1, 2, 3, 10});
    AnomalyParams params;
    params.stats_window = {{T("2023-01-01"), T("2023-01-04")}};
    const TimeSeries z = anomaly::zscore_series(ts, T("2023-01-01"), T("2023-01-04"));
    const double sigma = std::sqrt(2.0 / 3.0);
    CHECK(z[0] == doctest::Approx(-1.0 / sigma).epsilon(1e-12));
    CHECK(z[3] == doctest::Approx(8.0 / sigma).epsilon(1e-12));  // 9.797958...
    CHECK(z[3] == doctest::Approx(9.797958971132712).epsilon(1e-12));
    REQUIRE(z.size() == 4);

    const TimeSeries flags = anomaly::detect_anomalies(ts, params);
    CHECK(flags[3] == 1.0);
    CHECK(flags[0] == 0.0);

    // Whole-series moments would hide the spike less dramatically.
    const TimeSeries full = anomaly::zscore_series(ts);
    CHECK(full[3] < z[3]);

    AnomalyParams tiny;
    tiny.stats_window = {{T("2023-01-01"), T("2023-01-02")}};
    CHECK_THROWS_WITH_AS(anomaly::detect_anomalies(ts, tiny),
                         doctest::Contains("stats window"), std::invalid_argument);
}

TEST_CASE("zscore input validation") {
    CHECK_THROWS_WITH_AS(anomaly::zscore_series(series({1})),
                         doctest::Contains("length >= 2"), std::invalid_argument);
    AnomalyParams bad;
    bad.threshold_t = 0.0;
    CHECK_THROWS_AS(anomaly::detect_anomalies(series({1, 2}), bad), std::invalid_argument);
    CHECK_THROWS_WITH_AS(anomaly::positive_rate(series({0, 0.5, 1})),
                         doctest::Contains("index 1"), std::invalid_argument);
}

TEST_CASE("anomaly labels are invariant under positive affine maps") {
    util::SplitMix64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> values(30);
        for (auto& v : values) v = static_cast<double>(rng.next_below(50));
        const double a = 0.25 + rng.next_double() * 4.0;
        const double b = (rng.next_double() - 0.5) * 100.0;
        std::vector<double> mapped(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) mapped[i] = a * values[i] + b;

        AnomalyParams params;
        params.threshold_t = 1.5;
        const TimeSeries lhs = anomaly::detect_anomalies(series(values), params);
        const TimeSeries rhs = anomaly::detect_anomalies(series(std::move(mapped)), params);
        for (std::size_t i = 0; i < lhs.size(); ++i) CHECK(lhs[i] == rhs[i]);
    }
}

TEST_CASE("detection rate on gaussian noise matches the upper normal tail") {
    // One-sided strict threshold at t = 3 keeps ~0.135% of standard normals.
    util::SplitMix64 rng(2023);
    std::vector<double> values(50000);
    for (auto& v : values) v = rng.next_gaussian();
    const TimeSeries ts = series(std::move(values));
    const double rate = anomaly::positive_rate(anomaly::detect_anomalies(ts, {}));
    CHECK(rate > 0.0007);
    CHECK(rate < 0.0021);

    // Higher threshold never flags more.
    double previous = 1.0;
    for (double t : {2.0, 2.5, 3.0, 3.5}) {
        AnomalyParams params;
        params.threshold_t = t;
        const double r = anomaly::positive_rate(anomaly::detect_anomalies(ts, params));
        CHECK(r <= previous);
        previous = r;
    }
}
