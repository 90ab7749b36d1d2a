#pragma once
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace roughvol {

// Tick ingestion, previous-tick resampling onto a fixed intraday grid,
// intraday log returns and daily realized volatility.
//
// Conventions: day boundary is UTC midnight; prices must be strictly
// positive; natural logarithms throughout.

struct Tick {
    std::int64_t timestamp = 0; // seconds since epoch, UTC
    double price = 0.0;
    double volume = 0.0;
};

enum class TickFormat { bitcoincharts_csv };

struct TickSeries {
    std::vector<Tick> records; // non-decreasing timestamps
    std::string instrument_label;
    std::size_t malformed_rows = 0;   // unparseable rows, skipped
    std::size_t rejected_rows = 0;    // rows with price <= 0, skipped
    std::size_t out_of_order_rows = 0; // adjacent inversions fixed by the stable sort
};

enum class FillPolicy { previous_tick };

struct GridDay {
    int epoch_day = 0;
    std::vector<double> prices; // M+1 entries, grid instants n*delta_t for n=0..M
};

struct PriceGrid {
    int delta_t_minutes = 5;
    std::vector<GridDay> days;
    FillPolicy fill_policy = FillPolicy::previous_tick;
    std::size_t dropped_days = 0; // days failing the raw-tick-count filter
};

struct ReturnDay {
    int epoch_day = 0;
    std::vector<double> returns; // M entries
};

struct ReturnGrid {
    std::vector<ReturnDay> days;
};

struct RVDay {
    int epoch_day = 0;
    double rv = 0.0;
};

struct RVSeries {
    std::vector<RVDay> days; // strictly increasing by date
    int delta_t_minutes = 5;
};

struct SignatureRow {
    int delta_t_minutes = 0;
    double mean_rv = 0.0;
};

// Parses headerless `timestamp,price,volume` rows. Rows that do not parse or
// carry a non-positive price are counted and skipped; ticks are stably
// sorted by timestamp if the source is out of order.
TickSeries parse_ticks(std::istream& source, TickFormat format,
                       const std::string& instrument_label = "");

// Previous-tick price at each grid instant of every UTC day. The opening
// grid point takes the last tick at or before midnight when one exists,
// otherwise the day's first tick. Days with fewer than day_min_ticks raw
// ticks are dropped and counted.
PriceGrid resample(const TickSeries& ticks, int delta_t_minutes, int day_min_ticks);

ReturnGrid intraday_returns(const PriceGrid& grid);

RVSeries daily_rv(const ReturnGrid& returns, int delta_t_minutes);

// Mean daily RV per sampling period. The day set is the intersection of the
// retained days across all requested periods so the means are comparable.
std::vector<SignatureRow> signature_curve(const TickSeries& ticks,
                                          const std::vector<int>& delta_t_list,
                                          int day_min_ticks);

} // namespace roughvol
