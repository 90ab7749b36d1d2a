#pragma once
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "roughvol/market_data.hpp"

namespace roughvol {

// Log-volatility series, lag increments, shuffle surrogates and
// distributional diagnostics.

struct LogVolDay {
    int epoch_day = 0;
    double logvol = 0.0; // 0.5 * ln(rv)
};

struct LogVolSeries {
    std::vector<LogVolDay> days;
    std::size_t dropped_zero_rv = 0; // rv == 0 days excluded (log undefined)
    std::string origin_label;
};

struct IncrementSeries {
    std::vector<double> values;
    int lag_days = 1;
    std::string origin_label;
};

struct DistributionBin {
    double center = 0.0;
    double density = 0.0;          // histogram density, integrates to 1
    double gaussian_density = 0.0; // N(mean, std^2) evaluated at center
};

struct DistributionSummary {
    double mean = 0.0;
    double stddev = 0.0;   // population std, sqrt(m2)
    double kurtosis = 0.0; // m4 / m2^2, Gaussian = 3
    std::vector<DistributionBin> bins;
};

LogVolSeries log_vol(const RVSeries& rv);

// Lag differences over the retained-day index sequence (index k means the
// k-th retained day, not a calendar offset): values[k-1] = x[k*lag] -
// x[(k-1)*lag] for k = 1..floor((N-1)/lag).
IncrementSeries increments(const LogVolSeries& lv, int lag_days);

// Same values computed directly from RV ratios, 0.5*ln(rv_i/rv_j). Agrees
// with increments(log_vol(rv), lag) to rounding, and is exactly invariant
// under rv -> c*rv for any power-of-two c.
IncrementSeries increments_from_rv(const RVSeries& rv, int lag_days);

// Fisher-Yates permutation driven by std::mt19937_64 seeded with `seed`
// (bounded draws by modulo rejection, so the permutation sequence is fixed
// by the seed alone). Output holds the same multiset of values.
IncrementSeries shuffle(const IncrementSeries& inc, std::uint64_t seed);

// Central-moment summary plus a density-normalized histogram over
// [min, max] with n_bins equal-width bins and a moment-matched Gaussian
// overlay. Requires >= 4 values and nonzero variance.
DistributionSummary distribution_summary(const IncrementSeries& inc, int n_bins);

} // namespace roughvol
