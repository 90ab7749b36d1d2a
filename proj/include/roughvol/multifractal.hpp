#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "roughvol/mfdfa.hpp"
#include "roughvol/volseries.hpp"

namespace roughvol {

// Multifractality quantification: singularity spectrum, the strength
// measures dh = h(q_min) - h(q_max) and da = max(alpha) - min(alpha), and
// the shuffle-surrogate ensemble.

struct SpectrumPoint {
    double q = 0.0;
    double alpha = 0.0;   // h(q) + q*h'(q)
    double f_alpha = 0.0; // q*(alpha - h(q)) + 1; equals 1 at q = 0
};

struct SingularitySpectrum {
    std::vector<SpectrumPoint> points; // ordered by q
    double delta_alpha = 0.0;          // max(alpha) - min(alpha)
    double delta_h = 0.0;              // h(q_min) - h(q_max)
};

struct EnsemblePoint {
    double q = 0.0;
    double mean_h = 0.0;
    double std_h = 0.0; // sample std across replicates
};

struct ShuffleEnsembleResult {
    int n_replicates = 0;
    std::vector<EnsemblePoint> per_q;
    double delta_h_mean = 0.0;
    double delta_h_std = 0.0;
    double delta_alpha_mean = 0.0;
    double delta_alpha_std = 0.0;
    std::vector<std::uint64_t> seeds;
};

// h'(q) by central differences on a uniform q grid (one-sided at the ends);
// non-uniform grids are rejected.
SingularitySpectrum singularity_spectrum(const HurstCurve& curve);

// Replicate i shuffles with seed base_seed + i, then runs the full MF-DFA
// and spectrum. dh/da are computed per replicate and then averaged.
ShuffleEnsembleResult shuffle_ensemble(const IncrementSeries& inc, const MfdfaConfig& cfg,
                                       int n_replicates, std::uint64_t base_seed);

// Explicit-seed variant (seeds.size() >= 2); the base_seed overload forwards
// here with seeds base_seed + i.
ShuffleEnsembleResult shuffle_ensemble(const IncrementSeries& inc, const MfdfaConfig& cfg,
                                       const std::vector<std::uint64_t>& seeds);

// "0.515(21)": value at 3 decimals, std in units of the last digit.
std::string format_uncertainty(double value, double std);

} // namespace roughvol
