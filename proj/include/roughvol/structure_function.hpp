#pragma once
#include <cstddef>
#include <vector>

#include "roughvol/mfdfa.hpp"
#include "roughvol/volseries.hpp"

namespace roughvol {

// Structure-function (moment scaling) estimator: m(q,D) ~ c_q * D^{zeta(q)}
// with zeta(q) = q*h(q). Defined for q > 0 only.

struct SfConfig {
    std::vector<double> q_grid; // all q > 0; default (0, 8] step 0.2
    std::vector<int> delta_grid;
    int delta_fit_lo = 1;
    int delta_fit_hi = 40;

    // delta_grid: all lags 1..40 plus a geometric tail up to n/10 for
    // diagnostics; the fit window stays [1, 40].
    static SfConfig defaults(std::size_t n);

    void validate(std::size_t n) const;
};

struct StructureFunctionTable {
    std::vector<int> delta_values;
    std::vector<double> q_values;
    std::vector<double> m;       // row-major over (delta, q)
    std::vector<int> n_terms;    // per delta: floor((N-1)/delta)

    double at(std::size_t di, std::size_t qi) const { return m[di * q_values.size() + qi]; }
};

struct ZetaPoint {
    double q = 0.0;
    double zeta = 0.0;
    double std_err = 0.0;
};

struct ZetaCurve {
    std::vector<ZetaPoint> points;
};

struct SfResult {
    StructureFunctionTable table;
    ZetaCurve zeta;
    HurstCurve hurst; // h(q) = zeta(q)/q, std_err scaled accordingly
};

// m(q,delta) = mean over k of |x[k*delta] - x[(k-1)*delta]|^q with
// k = 1..floor((N-1)/delta), over the retained-day index sequence.
double sf_moments(const LogVolSeries& lv, double q, int delta);

SfResult sf_hurst(const LogVolSeries& lv, const SfConfig& cfg);

} // namespace roughvol
