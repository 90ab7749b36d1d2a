#pragma once
#include <cstddef>
#include <cstdint>
#include <vector>

namespace roughvol {

// Synthetic processes with known scaling exponents, used as estimator
// oracles and exposed through the CLI for calibration studies.

enum class SynthKind { fbm, gaussian_white, binomial_cascade };

// Exact-covariance fractional Gaussian noise (the increments of fBm with
// Hurst exponent H) via circulant embedding of
//   gamma(k) = 0.5*(|k+1|^{2H} - 2|k|^{2H} + |k-1|^{2H}).
// Unit variance, deterministic per seed; n must be a power of two. Should
// the embedding ever come out non-positive-definite, negative eigenvalues
// are clamped to zero and a warning is printed (approximate fallback).
std::vector<double> fbm_increments(double hurst, std::size_t n, std::uint64_t seed);

// i.i.d. standard Gaussian draws, deterministic per seed.
std::vector<double> gaussian_white(std::size_t n, std::uint64_t seed);

// Deterministic binomial measure: start from [1] and replace each weight w
// by (w*a, w*(1-a)) `levels` times. 2^levels positive weights summing to 1.
std::vector<double> binomial_cascade(double a, int levels);

// Closed-form generalized Hurst exponent of the binomial cascade,
//   h(q) = 1/q - ln(a^q + (1-a)^q) / (q ln 2),
// with the q = 0 limit evaluated numerically by averaging q = +-1e-6.
double cascade_hurst_analytic(double a, double q);

} // namespace roughvol
