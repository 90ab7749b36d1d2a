#include "roughvol/multifractal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <tuple>

#include "roughvol/errors.hpp"
#include "roughvol/parallel.hpp"

namespace roughvol {

SingularitySpectrum singularity_spectrum(const HurstCurve& curve) {
    const auto& pts = curve.points;
    if (pts.size() < 3)
        throw validation_error("need >= 3 h(q) points for a spectrum");

    const double step = pts[1].q - pts[0].q;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const double d = pts[i].q - pts[i - 1].q;
        if (std::abs(d - step) > 1e-9 * std::max(1.0, std::abs(step)))
            throw validation_error("non-uniform q grid: resample before the spectrum");
    }

    SingularitySpectrum out;
    out.points.resize(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double dh;
        if (i == 0)
            dh = (pts[1].h - pts[0].h) / step;
        else if (i == pts.size() - 1)
            dh = (pts[i].h - pts[i - 1].h) / step;
        else
            dh = (pts[i + 1].h - pts[i - 1].h) / (2.0 * step);

        const double q = pts[i].q;
        const double alpha = pts[i].h + q * dh;
        out.points[i] = {q, alpha, q * (alpha - pts[i].h) + 1.0};
    }

    auto [amin, amax] = std::minmax_element(
        out.points.begin(), out.points.end(),
        [](const SpectrumPoint& a, const SpectrumPoint& b) { return a.alpha < b.alpha; });
    out.delta_alpha = amax->alpha - amin->alpha;
    out.delta_h = pts.front().h - pts.back().h;
    return out;
}

ShuffleEnsembleResult shuffle_ensemble(const IncrementSeries& inc, const MfdfaConfig& cfg,
                                       int n_replicates, std::uint64_t base_seed) {
    if (n_replicates < 2)
        throw validation_error("need >= 2 replicates");
    std::vector<std::uint64_t> seeds(n_replicates);
    for (int i = 0; i < n_replicates; ++i) seeds[i] = base_seed + static_cast<std::uint64_t>(i);
    return shuffle_ensemble(inc, cfg, seeds);
}

ShuffleEnsembleResult shuffle_ensemble(const IncrementSeries& inc, const MfdfaConfig& cfg,
                                       const std::vector<std::uint64_t>& seeds) {
    if (seeds.size() < 2)
        throw validation_error("need >= 2 replicates");
    cfg.validate(inc.values.size());

    const std::size_t reps = seeds.size();
    const std::size_t nq = cfg.q_grid.size();

    std::vector<std::vector<double>> h_per_rep(reps);
    std::vector<double> dh(reps), da(reps);

    parallel_for(reps, [&](std::size_t i) {
        try {
            const IncrementSeries surrogate = shuffle(inc, seeds[i]);
            auto [table, curve] = mfdfa_analyze(surrogate.values, cfg);
            const SingularitySpectrum spectrum = singularity_spectrum(curve);
            std::vector<double> h(nq);
            for (std::size_t qi = 0; qi < nq; ++qi) h[qi] = curve.points[qi].h;
            h_per_rep[i] = std::move(h);
            dh[i] = spectrum.delta_h;
            da[i] = spectrum.delta_alpha;
        } catch (const std::exception& e) {
            throw numeric_error("replicate with seed " + std::to_string(seeds[i]) +
                                " failed: " + e.what());
        }
    });

    // Fixed summation order over replicates keeps results bit-reproducible.
    auto mean_std = [reps](auto&& value_at) {
        double mean = 0.0;
        for (std::size_t i = 0; i < reps; ++i) mean += value_at(i);
        mean /= static_cast<double>(reps);
        double ss = 0.0;
        for (std::size_t i = 0; i < reps; ++i) {
            const double d = value_at(i) - mean;
            ss += d * d;
        }
        const double std = std::sqrt(ss / static_cast<double>(reps - 1));
        return std::pair<double, double>(mean, std);
    };

    ShuffleEnsembleResult out;
    out.n_replicates = static_cast<int>(reps);
    out.seeds = seeds;
    out.per_q.resize(nq);
    for (std::size_t qi = 0; qi < nq; ++qi) {
        auto [mean, std] = mean_std([&](std::size_t i) { return h_per_rep[i][qi]; });
        out.per_q[qi] = {cfg.q_grid[qi], mean, std};
    }
    std::tie(out.delta_h_mean, out.delta_h_std) =
        mean_std([&](std::size_t i) { return dh[i]; });
    std::tie(out.delta_alpha_mean, out.delta_alpha_std) =
        mean_std([&](std::size_t i) { return da[i]; });
    return out;
}

std::string format_uncertainty(double value, double std) {
    if (std < 0.0)
        throw validation_error("std must be >= 0");
    const long digits = std::lround(std * 1000.0);
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.3f(%ld)", value, digits);
    return buf;
}

} // namespace roughvol
