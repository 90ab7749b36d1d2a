#include "roughvol/structure_function.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "roughvol/errors.hpp"
#include "roughvol/parallel.hpp"

namespace roughvol {

SfConfig SfConfig::defaults(std::size_t n) {
    SfConfig cfg;
    cfg.q_grid = MfdfaConfig::make_q_grid(0.2, 8.0, 0.2);

    for (int d = 1; d <= 40; ++d) cfg.delta_grid.push_back(d);
    // Geometric tail beyond the fit window, diagnostics only.
    int d = 40;
    while (true) {
        d = static_cast<int>(std::lround(d * 1.25));
        if (static_cast<std::size_t>(d) > n / 10) break;
        cfg.delta_grid.push_back(d);
    }
    return cfg;
}

void SfConfig::validate(std::size_t n) const {
    if (q_grid.empty())
        throw validation_error("empty q grid");
    for (double q : q_grid)
        if (!(q > 0.0))
            throw validation_error("structure function q grid must be positive");
    if (!std::is_sorted(q_grid.begin(), q_grid.end()))
        throw validation_error("q grid must be ordered");
    if (delta_grid.empty() || delta_grid.front() < 1)
        throw validation_error("delta grid must hold positive lags");
    if (!std::is_sorted(delta_grid.begin(), delta_grid.end()))
        throw validation_error("delta grid must be ordered");
    if (static_cast<std::size_t>(delta_grid.back()) >= n)
        throw validation_error("max lag exceeds series length");
    if (delta_fit_lo > delta_fit_hi)
        throw validation_error("bad fit range");
}

double sf_moments(const LogVolSeries& lv, double q, int delta) {
    if (!(q > 0.0))
        throw validation_error("q must be > 0");
    if (delta < 1)
        throw validation_error("delta must be >= 1");
    const std::size_t n = lv.days.size();
    if (n < 2 * static_cast<std::size_t>(delta) + 1)
        throw data_error("series too short for lag " + std::to_string(delta));

    const std::size_t n_terms = (n - 1) / static_cast<std::size_t>(delta);
    double sum = 0.0;
    for (std::size_t k = 1; k <= n_terms; ++k) {
        const double d = lv.days[k * delta].logvol - lv.days[(k - 1) * delta].logvol;
        sum += std::pow(std::abs(d), q);
    }
    return sum / static_cast<double>(n_terms);
}

SfResult sf_hurst(const LogVolSeries& lv, const SfConfig& cfg) {
    cfg.validate(lv.days.size());

    SfResult out;
    auto& table = out.table;
    table.delta_values = cfg.delta_grid;
    table.q_values = cfg.q_grid;
    const std::size_t nq = cfg.q_grid.size();
    table.m.assign(cfg.delta_grid.size() * nq, 0.0);
    table.n_terms.resize(cfg.delta_grid.size());

    parallel_for(cfg.delta_grid.size(), [&](std::size_t di) {
        const int delta = cfg.delta_grid[di];
        table.n_terms[di] =
            static_cast<int>((lv.days.size() - 1) / static_cast<std::size_t>(delta));
        for (std::size_t qi = 0; qi < nq; ++qi)
            table.m[di * nq + qi] = sf_moments(lv, cfg.q_grid[qi], delta);
    });

    out.hurst.estimator = EstimatorTag::structure_function;
    out.hurst.fit_lo = cfg.delta_fit_lo;
    out.hurst.fit_hi = cfg.delta_fit_hi;

    for (std::size_t qi = 0; qi < nq; ++qi) {
        const double q = cfg.q_grid[qi];
        std::vector<double> lx, ly;
        for (std::size_t di = 0; di < cfg.delta_grid.size(); ++di) {
            const int delta = cfg.delta_grid[di];
            if (delta < cfg.delta_fit_lo || delta > cfg.delta_fit_hi) continue;
            const double m = table.at(di, qi);
            if (m <= 0.0)
                throw numeric_error("zero moment at delta=" + std::to_string(delta) +
                                    ", q=" + std::to_string(q));
            lx.push_back(std::log(double(delta)));
            ly.push_back(std::log(m));
        }
        if (lx.size() < 3)
            throw validation_error("fewer than 3 lags in fit range");

        const std::size_t n = lx.size();
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            mx += lx[i];
            my += ly[i];
        }
        mx /= n;
        my /= n;
        double sxx = 0.0, sxy = 0.0, syy = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double dx = lx[i] - mx, dy = ly[i] - my;
            sxx += dx * dx;
            sxy += dx * dy;
            syy += dy * dy;
        }
        const double zeta = sxy / sxx;
        double sse = syy - zeta * sxy;
        if (sse < 0.0) sse = 0.0;
        const double se = std::sqrt(sse / (static_cast<double>(n) - 2.0) / sxx);
        const double r2 = syy > 0.0 ? 1.0 - sse / syy : 1.0;

        out.zeta.points.push_back({q, zeta, se});
        out.hurst.points.push_back({q, zeta / q, se / q, r2});
    }
    return out;
}

} // namespace roughvol
