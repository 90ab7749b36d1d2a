#include "roughvol/market_data.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <set>

#include "roughvol/csv.hpp"
#include "roughvol/dates.hpp"
#include "roughvol/errors.hpp"

namespace roughvol {

TickSeries parse_ticks(std::istream& source, TickFormat format,
                       const std::string& instrument_label) {
    if (format != TickFormat::bitcoincharts_csv)
        throw validation_error("unsupported tick format");
    if (!source)
        throw data_error("unreadable tick source");

    TickSeries out;
    out.instrument_label = instrument_label;

    std::string line;
    while (std::getline(source, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        Tick t;
        if (fields.size() != 3 || !parse_int64(fields[0], t.timestamp) ||
            !parse_double(fields[1], t.price) || !parse_double(fields[2], t.volume)) {
            ++out.malformed_rows;
            continue;
        }
        if (!(t.price > 0.0) || !std::isfinite(t.price)) {
            ++out.rejected_rows;
            continue;
        }
        out.records.push_back(t);
    }

    if (out.records.empty())
        throw data_error("no records");

    for (std::size_t i = 1; i < out.records.size(); ++i)
        if (out.records[i].timestamp < out.records[i - 1].timestamp)
            ++out.out_of_order_rows;
    if (out.out_of_order_rows > 0)
        std::stable_sort(out.records.begin(), out.records.end(),
                         [](const Tick& a, const Tick& b) { return a.timestamp < b.timestamp; });

    return out;
}

PriceGrid resample(const TickSeries& ticks, int delta_t_minutes, int day_min_ticks) {
    if (delta_t_minutes <= 0 || 1440 % delta_t_minutes != 0)
        throw validation_error("delta_t must divide 1440");
    if (ticks.records.empty())
        throw data_error("empty tick series");

    const int m = 1440 / delta_t_minutes;
    const std::int64_t step = static_cast<std::int64_t>(delta_t_minutes) * 60;

    // Raw tick count per UTC day drives the retention filter.
    std::map<int, std::size_t> day_counts;
    for (const Tick& t : ticks.records) ++day_counts[epoch_day_of(t.timestamp)];

    PriceGrid grid;
    grid.delta_t_minutes = delta_t_minutes;

    const auto& recs = ticks.records;
    const std::size_t min_ticks = static_cast<std::size_t>(std::max(1, day_min_ticks));

    for (const auto& [day, count] : day_counts) {
        if (count < min_ticks) {
            ++grid.dropped_days;
            continue;
        }
        const std::int64_t day_start = static_cast<std::int64_t>(day) * seconds_per_day;

        GridDay gd;
        gd.epoch_day = day;
        gd.prices.resize(m + 1);

        // Position of the first tick strictly after day_start.
        std::size_t idx = std::upper_bound(recs.begin(), recs.end(), day_start,
                                           [](std::int64_t ts, const Tick& t) {
                                               return ts < t.timestamp;
                                           }) -
                          recs.begin();
        // Previous-tick seed: last tick at or before midnight, else the
        // day's first tick.
        double last_price;
        if (idx > 0) {
            last_price = recs[idx - 1].price;
        } else {
            std::size_t j = idx;
            while (j < recs.size() && epoch_day_of(recs[j].timestamp) != day) ++j;
            last_price = recs[j].price; // retained day has >= 1 tick
        }

        for (int n = 0; n <= m; ++n) {
            const std::int64_t grid_ts = day_start + n * step;
            while (idx < recs.size() && recs[idx].timestamp <= grid_ts) {
                last_price = recs[idx].price;
                ++idx;
            }
            gd.prices[n] = last_price;
        }
        grid.days.push_back(std::move(gd));
    }

    if (grid.days.empty())
        throw data_error("no day survives the tick-count filter");
    return grid;
}

ReturnGrid intraday_returns(const PriceGrid& grid) {
    ReturnGrid out;
    out.days.reserve(grid.days.size());
    for (const GridDay& gd : grid.days) {
        ReturnDay rd;
        rd.epoch_day = gd.epoch_day;
        rd.returns.resize(gd.prices.size() - 1);
        for (std::size_t j = 1; j < gd.prices.size(); ++j)
            rd.returns[j - 1] = std::log(gd.prices[j] / gd.prices[j - 1]);
        out.days.push_back(std::move(rd));
    }
    return out;
}

RVSeries daily_rv(const ReturnGrid& returns, int delta_t_minutes) {
    RVSeries out;
    out.delta_t_minutes = delta_t_minutes;
    out.days.reserve(returns.days.size());
    for (const ReturnDay& rd : returns.days) {
        double rv = 0.0;
        for (double r : rd.returns) rv += r * r;
        out.days.push_back({rd.epoch_day, rv});
    }
    return out;
}

std::vector<SignatureRow> signature_curve(const TickSeries& ticks,
                                          const std::vector<int>& delta_t_list,
                                          int day_min_ticks) {
    if (delta_t_list.empty())
        throw validation_error("empty delta_t list");

    std::vector<RVSeries> series;
    series.reserve(delta_t_list.size());
    for (int dt : delta_t_list) {
        PriceGrid grid = resample(ticks, dt, day_min_ticks);
        series.push_back(daily_rv(intraday_returns(grid), dt));
    }

    // Intersection of retained days across periods keeps the means comparable.
    std::set<int> common;
    for (const RVDay& d : series[0].days) common.insert(d.epoch_day);
    for (std::size_t i = 1; i < series.size(); ++i) {
        std::set<int> keep;
        for (const RVDay& d : series[i].days)
            if (common.count(d.epoch_day)) keep.insert(d.epoch_day);
        common.swap(keep);
    }
    if (common.empty())
        throw data_error("no day retained at every sampling period");

    std::vector<SignatureRow> rows;
    rows.reserve(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        double sum = 0.0;
        std::size_t n = 0;
        for (const RVDay& d : series[i].days) {
            if (common.count(d.epoch_day)) {
                sum += d.rv;
                ++n;
            }
        }
        rows.push_back({delta_t_list[i], sum / static_cast<double>(n)});
    }
    return rows;
}

} // namespace roughvol
