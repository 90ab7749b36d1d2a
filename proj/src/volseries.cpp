#include "roughvol/volseries.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "roughvol/errors.hpp"

namespace roughvol {

LogVolSeries log_vol(const RVSeries& rv) {
    LogVolSeries out;
    out.days.reserve(rv.days.size());
    for (const RVDay& d : rv.days) {
        if (d.rv < 0.0)
            throw data_error("negative rv on " + std::to_string(d.epoch_day));
        if (d.rv == 0.0) {
            ++out.dropped_zero_rv;
            continue;
        }
        out.days.push_back({d.epoch_day, 0.5 * std::log(d.rv)});
    }
    if (out.days.empty())
        throw data_error("all days have rv = 0");
    return out;
}

namespace {

// Usable lag-k differences when the k-th term needs index k*lag: the series
// end is the only cutoff.
std::size_t increment_count(std::size_t n, int lag) {
    return (n - 1) / static_cast<std::size_t>(lag);
}

} // namespace

IncrementSeries increments(const LogVolSeries& lv, int lag_days) {
    if (lag_days < 1)
        throw validation_error("lag must be >= 1");
    if (lv.days.size() < static_cast<std::size_t>(lag_days) + 1)
        throw data_error("series too short for lag " + std::to_string(lag_days));

    IncrementSeries out;
    out.lag_days = lag_days;
    out.origin_label = lv.origin_label;
    const std::size_t count = increment_count(lv.days.size(), lag_days);
    out.values.resize(count);
    for (std::size_t k = 1; k <= count; ++k)
        out.values[k - 1] =
            lv.days[k * lag_days].logvol - lv.days[(k - 1) * lag_days].logvol;
    return out;
}

IncrementSeries increments_from_rv(const RVSeries& rv, int lag_days) {
    if (lag_days < 1)
        throw validation_error("lag must be >= 1");

    std::vector<double> kept;
    kept.reserve(rv.days.size());
    for (const RVDay& d : rv.days) {
        if (d.rv < 0.0)
            throw data_error("negative rv on " + std::to_string(d.epoch_day));
        if (d.rv > 0.0) kept.push_back(d.rv);
    }
    if (kept.size() < static_cast<std::size_t>(lag_days) + 1)
        throw data_error("series too short for lag " + std::to_string(lag_days));

    IncrementSeries out;
    out.lag_days = lag_days;
    const std::size_t count = increment_count(kept.size(), lag_days);
    out.values.resize(count);
    for (std::size_t k = 1; k <= count; ++k)
        out.values[k - 1] = 0.5 * std::log(kept[k * lag_days] / kept[(k - 1) * lag_days]);
    return out;
}

namespace {

// Unbiased bounded draw by modulo rejection, so the sequence depends only on
// the mt19937_64 stream.
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t threshold = (-bound) % bound;
    std::uint64_t r;
    do {
        r = rng();
    } while (r < threshold);
    return r % bound;
}

} // namespace

IncrementSeries shuffle(const IncrementSeries& inc, std::uint64_t seed) {
    if (inc.values.empty())
        throw data_error("cannot shuffle an empty series");

    IncrementSeries out = inc;
    std::mt19937_64 rng(seed);
    for (std::size_t i = out.values.size() - 1; i > 0; --i) {
        std::size_t j = static_cast<std::size_t>(bounded_draw(rng, i + 1));
        std::swap(out.values[i], out.values[j]);
    }
    return out;
}

DistributionSummary distribution_summary(const IncrementSeries& inc, int n_bins) {
    if (inc.values.size() < 4)
        throw data_error("need >= 4 values for a distribution summary");
    if (n_bins < 1)
        throw validation_error("n_bins must be >= 1");

    // Accumulate over a sorted copy so every permutation of the same
    // multiset yields bit-identical moments.
    std::vector<double> v = inc.values;
    std::sort(v.begin(), v.end());

    const double n = static_cast<double>(v.size());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= n;

    double m2 = 0.0, m4 = 0.0;
    for (double x : v) {
        const double d = x - mean;
        const double d2 = d * d;
        m2 += d2;
        m4 += d2 * d2;
    }
    m2 /= n;
    m4 /= n;
    if (m2 == 0.0)
        throw numeric_error("zero variance: kurtosis undefined");

    DistributionSummary out;
    out.mean = mean;
    out.stddev = std::sqrt(m2);
    out.kurtosis = m4 / (m2 * m2);

    const auto [lo_it, hi_it] = std::minmax_element(v.begin(), v.end());
    const double lo = *lo_it, hi = *hi_it;
    const double width = (hi - lo) / n_bins;

    std::vector<std::size_t> counts(n_bins, 0);
    for (double x : v) {
        int b = width > 0.0 ? static_cast<int>((x - lo) / width) : 0;
        if (b < 0) b = 0;
        if (b >= n_bins) b = n_bins - 1; // x == max lands in the last bin
        ++counts[b];
    }

    const double inv_norm = width > 0.0 ? 1.0 / (n * width) : 0.0;
    out.bins.resize(n_bins);
    for (int b = 0; b < n_bins; ++b) {
        const double center = lo + (b + 0.5) * width;
        const double z = (center - mean) / out.stddev;
        out.bins[b].center = center;
        out.bins[b].density = counts[b] * inv_norm;
        out.bins[b].gaussian_density =
            std::exp(-0.5 * z * z) / (out.stddev * std::sqrt(2.0 * M_PI));
    }
    return out;
}

} // namespace roughvol
