#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "roughvol/errors.hpp"
#include "roughvol/dates.hpp"
#include "roughvol/market_data.hpp"

using namespace roughvol;

namespace {

TickSeries make_ticks(std::vector<Tick> records) {
    TickSeries t;
    t.records = std::move(records);
    return t;
}

// Log-price random walk sampled once per minute for `days` days, plus one
// closing tick at the final midnight.
TickSeries random_walk_ticks(int days, double step_sd, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, step_sd);
    TickSeries t;
    double logp = std::log(100.0);
    for (std::int64_t minute = 0; minute <= std::int64_t(days) * 1440; ++minute) {
        t.records.push_back({minute * 60, std::exp(logp), 1.0});
        logp += gauss(rng);
    }
    return t;
}

} // namespace

TEST_CASE("parse_ticks") {
    SUBCASE("plain rows") {
        std::istringstream in("1500000000,2500.0,0.5\n1500000060,2501.0,1.0");
        const TickSeries t = parse_ticks(in, TickFormat::bitcoincharts_csv, "btc");
        REQUIRE(t.records.size() == 2);
        CHECK(t.records[0].price == 2500.0);
        CHECK(t.records[1].price == 2501.0);
        CHECK(t.records[0].timestamp == 1500000000);
        CHECK(t.instrument_label == "btc");
        CHECK(t.malformed_rows == 0);
    }
    SUBCASE("empty input") {
        std::istringstream in("");
        CHECK_THROWS_WITH_AS(parse_ticks(in, TickFormat::bitcoincharts_csv),
                             doctest::Contains("no records"), data_error);
    }
    SUBCASE("out-of-order rows are re-sorted and counted") {
        std::istringstream in("1500000060,2501.0,1.0\n1500000059,2500.0,0.5");
        const TickSeries t = parse_ticks(in, TickFormat::bitcoincharts_csv);
        CHECK(t.out_of_order_rows == 1);
        REQUIRE(t.records.size() == 2);
        CHECK(t.records[0].timestamp == 1500000059);
        CHECK(t.records[1].timestamp == 1500000060);
    }
    SUBCASE("malformed and non-positive-price rows are counted") {
        std::istringstream in(
            "garbage\n1500000000,2500.0,0.5\n1500000060,-1.0,1.0\n1500000120,,2\n");
        const TickSeries t = parse_ticks(in, TickFormat::bitcoincharts_csv);
        CHECK(t.records.size() == 1);
        CHECK(t.malformed_rows == 2);
        CHECK(t.rejected_rows == 1);
    }
    SUBCASE("identical bytes give identical records") {
        const std::string bytes = "1500000000,2500.0,0.5\n1500000060,2501.0,1.0";
        std::istringstream a(bytes), b(bytes);
        const TickSeries ta = parse_ticks(a, TickFormat::bitcoincharts_csv);
        const TickSeries tb = parse_ticks(b, TickFormat::bitcoincharts_csv);
        REQUIRE(ta.records.size() == tb.records.size());
        for (std::size_t i = 0; i < ta.records.size(); ++i)
            CHECK(ta.records[i].price == tb.records[i].price);
    }
}

TEST_CASE("resample") {
    SUBCASE("previous-tick rule") {
        const TickSeries t = make_ticks({{0, 100.0, 1.0}, {7 * 60, 101.0, 1.0}});
        const PriceGrid g = resample(t, 5, 1);
        REQUIRE(g.days.size() == 1);
        REQUIRE(g.days[0].prices.size() == 289); // M+1 at delta_t = 5
        CHECK(g.days[0].prices[0] == 100.0);
        CHECK(g.days[0].prices[1] == 100.0); // 00:05, before the 00:07 tick
        CHECK(g.days[0].prices[2] == 101.0); // 00:10
        CHECK(g.days[0].prices.back() == 101.0);
        CHECK(g.days[0].epoch_day == 0);
    }
    SUBCASE("day below the tick-count filter is dropped") {
        std::vector<Tick> recs;
        for (int i = 0; i < 500; ++i) recs.push_back({i * 60, 100.0, 1.0});
        recs.push_back({seconds_per_day + 3600, 50.0, 1.0}); // lone tick next day
        const PriceGrid g = resample(make_ticks(recs), 5, 100);
        REQUIRE(g.days.size() == 1);
        CHECK(g.days[0].epoch_day == 0);
        CHECK(g.dropped_days == 1);
    }
    SUBCASE("no surviving day is an error") {
        const TickSeries t = make_ticks({{0, 100.0, 1.0}});
        CHECK_THROWS_AS(resample(t, 5, 100), data_error);
    }
    SUBCASE("delta_t must divide 1440") {
        const TickSeries t = make_ticks({{0, 100.0, 1.0}});
        CHECK_THROWS_WITH_AS(resample(t, 7, 1), doctest::Contains("divide 1440"),
                             validation_error);
    }
    SUBCASE("opening point carries over the previous day's last tick") {
        std::vector<Tick> recs;
        for (int i = 0; i < 144; ++i) recs.push_back({i * 600, 100.0 + i, 1.0});
        const std::int64_t d1 = seconds_per_day;
        for (int i = 0; i < 144; ++i) recs.push_back({d1 + 120 + i * 600, 500.0, 1.0});
        const PriceGrid g = resample(make_ticks(recs), 60, 100);
        REQUIRE(g.days.size() == 2);
        // Day 2 opens on the last day-1 price until its first tick at 00:02.
        CHECK(g.days[1].prices[0] == 243.0);
        CHECK(g.days[1].prices[1] == 500.0);
    }
}

TEST_CASE("intraday_returns and daily_rv") {
    SUBCASE("constant prices give zero returns and zero rv") {
        PriceGrid g;
        g.delta_t_minutes = 720;
        g.days.push_back({0, {100.0, 100.0, 100.0}});
        const ReturnGrid r = intraday_returns(g);
        REQUIRE(r.days[0].returns.size() == 2);
        CHECK(r.days[0].returns[0] == 0.0);
        CHECK(r.days[0].returns[1] == 0.0);
        CHECK(daily_rv(r, 720).days[0].rv == 0.0);
    }
    SUBCASE("log-price step of 0.01 comes back exactly") {
        PriceGrid g;
        g.delta_t_minutes = 720;
        g.days.push_back({0, {100.0, 100.0 * std::exp(0.01), 100.0 * std::exp(0.01)}});
        const ReturnGrid r = intraday_returns(g);
        CHECK(r.days[0].returns[0] == doctest::Approx(0.01).epsilon(1e-12));
        CHECK(r.days[0].returns[1] == 0.0);
    }
    SUBCASE("doubling prices leaves returns and rv bit-identical") {
        PriceGrid g;
        g.delta_t_minutes = 360;
        g.days.push_back({0, {100.0, 101.3, 99.8, 102.2, 101.0}});
        PriceGrid g2 = g;
        for (double& p : g2.days[0].prices) p *= 2.0;
        const ReturnGrid r = intraday_returns(g);
        const ReturnGrid r2 = intraday_returns(g2);
        for (std::size_t j = 0; j < r.days[0].returns.size(); ++j)
            CHECK(r.days[0].returns[j] == r2.days[0].returns[j]);
        CHECK(daily_rv(r, 360).days[0].rv == daily_rv(r2, 360).days[0].rv);
    }
    SUBCASE("tripling prices leaves returns equal to rounding") {
        PriceGrid g;
        g.delta_t_minutes = 360;
        g.days.push_back({0, {100.0, 101.3, 99.8, 102.2, 101.0}});
        PriceGrid g3 = g;
        for (double& p : g3.days[0].prices) p *= 3.0;
        const ReturnGrid r = intraday_returns(g);
        const ReturnGrid r3 = intraday_returns(g3);
        for (std::size_t j = 0; j < r.days[0].returns.size(); ++j)
            CHECK(r3.days[0].returns[j] ==
                  doctest::Approx(r.days[0].returns[j]).epsilon(1e-13));
    }
    SUBCASE("rv is the sum of squared returns") {
        ReturnGrid r;
        ReturnDay d;
        d.epoch_day = 0;
        d.returns = {0.01, -0.02};
        d.returns.resize(288, 0.0);
        r.days.push_back(d);
        CHECK(daily_rv(r, 5).days[0].rv == doctest::Approx(5e-4).epsilon(1e-12));
    }
}

TEST_CASE("signature_curve") {
    SUBCASE("single delta_t reduces to the mean rv") {
        const TickSeries t = random_walk_ticks(3, 0.001, 42);
        const auto rows = signature_curve(t, {5}, 100);
        REQUIRE(rows.size() == 1);
        const RVSeries rv = daily_rv(intraday_returns(resample(t, 5, 100)), 5);
        double mean = 0.0;
        for (const RVDay& d : rv.days) mean += d.rv;
        mean /= rv.days.size();
        CHECK(rows[0].mean_rv == doctest::Approx(mean).epsilon(1e-14));
    }
    SUBCASE("constant prices give zero mean rv at every delta_t") {
        std::vector<Tick> recs;
        for (int i = 0; i < 2000; ++i) recs.push_back({i * 60, 42.0, 1.0});
        const auto rows = signature_curve(make_ticks(recs), {1, 5, 10}, 100);
        for (const auto& row : rows) CHECK(row.mean_rv == 0.0);
    }
    SUBCASE("i.i.d. Gaussian prices give a flat signature") {
        // Per-minute log-price steps with sd 0.001: every sampling period has
        // expected daily rv 1440 * 1e-6.
        const TickSeries t = random_walk_ticks(200, 0.001, 7);
        const auto rows = signature_curve(t, {1, 5, 10, 30}, 100);
        const double expected = 1440.0 * 1e-6;
        for (const auto& row : rows)
            CHECK(row.mean_rv == doctest::Approx(expected).epsilon(0.06));
        for (std::size_t i = 1; i < rows.size(); ++i)
            CHECK(rows[i].mean_rv == doctest::Approx(rows[0].mean_rv).epsilon(0.08));
    }
    SUBCASE("empty delta list rejected") {
        const TickSeries t = random_walk_ticks(1, 0.001, 1);
        CHECK_THROWS_AS(signature_curve(t, {}, 1), validation_error);
    }
}
