#include "roughvol/synth.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <random>

#include "roughvol/errors.hpp"

namespace roughvol {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place iterative radix-2 FFT (sizes here are always powers of two).
void fft(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * M_PI / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& z : a) z /= static_cast<double>(n);
}

// Autocovariance of unit-variance fGn.
double fgn_gamma(double hurst, std::size_t k) {
    const double two_h = 2.0 * hurst;
    const double kk = static_cast<double>(k);
    return 0.5 * (std::pow(kk + 1.0, two_h) - 2.0 * std::pow(kk, two_h) +
                  std::pow(std::abs(kk - 1.0), two_h));
}

} // namespace

std::vector<double> fbm_increments(double hurst, std::size_t n, std::uint64_t seed) {
    if (!(hurst > 0.0 && hurst < 1.0))
        throw validation_error("hurst must lie strictly inside (0, 1)");
    if (!is_power_of_two(n) || n < 2)
        throw validation_error("n must be a power of two >= 2");

    const std::size_t m = 2 * n;

    // Circulant first row: gamma(0..n), then mirrored gamma(n-1..1).
    std::vector<std::complex<double>> eig(m);
    for (std::size_t k = 0; k <= n; ++k) eig[k] = fgn_gamma(hurst, k);
    for (std::size_t k = n + 1; k < m; ++k) eig[k] = eig[m - k];
    fft(eig, false);

    double min_eig = 0.0;
    for (auto& z : eig) {
        double lambda = z.real(); // imaginary parts are rounding noise
        min_eig = std::min(min_eig, lambda);
        if (lambda < 0.0) lambda = 0.0;
        z = lambda;
    }
    if (min_eig < -1e-8) {
        // Not expected for fGn with 0 < H < 1; clamped spectrum makes the
        // sample covariance approximate.
        std::fprintf(stderr,
                     "warning: circulant embedding not positive definite "
                     "(min eigenvalue %.3e); using clamped approximation\n",
                     min_eig);
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::vector<std::complex<double>> spec(m);
    spec[0] = std::sqrt(eig[0].real()) * gauss(rng);
    spec[n] = std::sqrt(eig[n].real()) * gauss(rng);
    for (std::size_t k = 1; k < n; ++k) {
        const double u = gauss(rng);
        const double w = gauss(rng);
        const double amp = std::sqrt(eig[k].real()) * inv_sqrt2;
        spec[k] = std::complex<double>(amp * u, amp * w);
        spec[m - k] = std::conj(spec[k]);
    }

    fft(spec, false);

    std::vector<double> out(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    for (std::size_t i = 0; i < n; ++i) out[i] = spec[i].real() * scale;
    return out;
}

std::vector<double> gaussian_white(std::size_t n, std::uint64_t seed) {
    if (n == 0)
        throw validation_error("n must be positive");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> out(n);
    for (double& x : out) x = gauss(rng);
    return out;
}

std::vector<double> binomial_cascade(double a, int levels) {
    if (!(a > 0.0 && a < 1.0))
        throw validation_error("multiplier a must lie strictly inside (0, 1)");
    if (levels < 0)
        throw validation_error("levels must be >= 0");
    if (levels > 26)
        throw validation_error("levels > 26 rejected (memory guard)");

    std::vector<double> weights{1.0};
    for (int level = 0; level < levels; ++level) {
        std::vector<double> next(weights.size() * 2);
        for (std::size_t i = 0; i < weights.size(); ++i) {
            next[2 * i] = weights[i] * a;
            next[2 * i + 1] = weights[i] * (1.0 - a);
        }
        weights.swap(next);
    }
    return weights;
}

double cascade_hurst_analytic(double a, double q) {
    if (!(a > 0.0 && a < 1.0))
        throw validation_error("multiplier a must lie strictly inside (0, 1)");
    if (q == 0.0) {
        const double eps = 1e-6;
        return 0.5 * (cascade_hurst_analytic(a, eps) + cascade_hurst_analytic(a, -eps));
    }
    return 1.0 / q - std::log(std::pow(a, q) + std::pow(1.0 - a, q)) / (q * M_LN2);
}

} // namespace roughvol
