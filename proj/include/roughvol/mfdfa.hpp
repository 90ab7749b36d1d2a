#pragma once
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace roughvol {

// MF-DFA: profile, two-sided segmentation, polynomial detrending, q-th
// order fluctuation functions and the power-law fits giving h(q).

struct MfdfaConfig {
    std::vector<double> q_grid; // ordered; q = 0 uses the log-average limit
    std::vector<int> s_grid;    // ordered segment lengths
    int s_fit_lo = 80;
    int s_fit_hi = 280;
    int poly_order = 3;

    // q in [-25, 25] step 0.5; ~20 geometric s values spanning [16, n/4];
    // fit window [80, 280]; cubic detrending.
    static MfdfaConfig defaults(std::size_t n);

    static std::vector<double> make_q_grid(double q_min, double q_max, double q_step);
    static std::vector<int> make_s_grid(int s_min, int s_max, int n_points);

    void validate(std::size_t n) const; // throws validation_error
};

struct Profile {
    std::vector<double> values; // Y(i) = sum_{j<=i} (x_j - <x>); Y(N) ~ 0
};

struct FluctuationTable {
    std::vector<int> s_values;
    std::vector<double> q_values;
    std::vector<double> f;        // row-major over (s, q), F_q(s) >= 0
    std::vector<int> n_segments;  // per s: 2*Ns

    double at(std::size_t si, std::size_t qi) const { return f[si * q_values.size() + qi]; }
};

enum class EstimatorTag { mfdfa, structure_function };

struct HurstPoint {
    double q = 0.0;
    double h = 0.0;
    double std_err = 0.0;
    double r2 = 0.0;
};

struct HurstCurve {
    std::vector<HurstPoint> points; // ordered by q
    EstimatorTag estimator = EstimatorTag::mfdfa;
    int fit_lo = 0;
    int fit_hi = 0;
};

struct FitResult {
    double slope = 0.0;
    double std_err = 0.0;
    double r2 = 0.0;
};

Profile profile(std::span<const double> x);

// Mean squared residual of a degree-poly_order least-squares fit in each of
// the 2*Ns segments (Ns = floor(N/s)); segments 1..Ns tile from the start,
// Ns+1..2Ns from the end.
std::vector<double> segment_variances(const Profile& p, int s, int poly_order);

// q != 0: { mean over segments of (F^2)^{q/2} }^{1/q}, evaluated in the log
// domain so |q| up to 25 neither overflows nor underflows.
// q == 0: exp of the mean of ln F^2 / 2 (logarithmic-average limit).
// A zero variance is an error for q < 0, identifying the segment.
double fluctuation_function(std::span<const double> variances, double q);

// OLS of ln F_q(s) on ln s over grid points with s_lo <= s <= s_hi.
FitResult hurst_fit(const FluctuationTable& table, double q, int s_lo, int s_hi);

std::pair<FluctuationTable, HurstCurve> mfdfa_analyze(std::span<const double> x,
                                                      const MfdfaConfig& cfg);

} // namespace roughvol
