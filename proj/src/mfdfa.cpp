#include "roughvol/mfdfa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "roughvol/errors.hpp"
#include "roughvol/parallel.hpp"

namespace roughvol {

std::vector<double> MfdfaConfig::make_q_grid(double q_min, double q_max, double q_step) {
    if (!(q_step > 0.0))
        throw validation_error("q_step must be > 0");
    if (!(q_max > q_min))
        throw validation_error("q_max must exceed q_min");
    const int count = static_cast<int>(std::round((q_max - q_min) / q_step)) + 1;
    std::vector<double> grid(count);
    for (int i = 0; i < count; ++i) {
        double q = q_min + i * q_step;
        if (std::abs(q) < q_step * 1e-9) q = 0.0;
        grid[i] = q;
    }
    return grid;
}

std::vector<int> MfdfaConfig::make_s_grid(int s_min, int s_max, int n_points) {
    if (s_min < 2 || s_max < s_min)
        throw validation_error("bad s grid bounds");
    if (n_points < 2)
        throw validation_error("need at least 2 s grid points");
    std::vector<int> grid;
    grid.reserve(n_points);
    const double ratio = std::log(double(s_max) / double(s_min));
    for (int k = 0; k < n_points; ++k) {
        const double s = s_min * std::exp(ratio * k / (n_points - 1));
        const int si = static_cast<int>(std::lround(s));
        if (grid.empty() || si > grid.back()) grid.push_back(si);
    }
    return grid;
}

MfdfaConfig MfdfaConfig::defaults(std::size_t n) {
    if (n < 64)
        throw validation_error("series too short for default MF-DFA grids (need >= 64)");
    MfdfaConfig cfg;
    cfg.q_grid = make_q_grid(-25.0, 25.0, 0.5);
    cfg.s_grid = make_s_grid(16, static_cast<int>(n / 4), 20);
    return cfg;
}

void MfdfaConfig::validate(std::size_t n) const {
    if (q_grid.empty())
        throw validation_error("empty q grid");
    if (!std::is_sorted(q_grid.begin(), q_grid.end()))
        throw validation_error("q grid must be ordered");
    if (s_grid.empty())
        throw validation_error("empty s grid");
    if (!std::is_sorted(s_grid.begin(), s_grid.end()))
        throw validation_error("s grid must be ordered");
    if (poly_order < 0)
        throw validation_error("poly_order must be >= 0");
    if (s_grid.front() < poly_order + 2)
        throw validation_error("s grid entries must be >= poly_order + 2");
    if (static_cast<std::size_t>(s_grid.back()) > n)
        throw validation_error("max segment length exceeds series length");
    if (s_fit_lo > s_fit_hi)
        throw validation_error("bad fit range");
    if (s_fit_lo < s_grid.front() || s_fit_hi > s_grid.back())
        throw validation_error("fit range must lie within the s grid span");
}

Profile profile(std::span<const double> x) {
    if (x.size() < 2)
        throw validation_error("profile needs at least 2 points");
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());

    Profile p;
    p.values.resize(x.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += x[i] - mean;
        p.values[i] = acc;
    }
    return p;
}

namespace {

// Least-squares polynomial detrending shared by all segments of one length:
// the abscissa (scaled to [-1,1]) and hence the Gram matrix are identical,
// so the normal-equations factorization is done once per s.
class SegmentDetrender {
public:
    SegmentDetrender(int s, int order) : s_(s), order_(order), x_(s) {
        for (int i = 0; i < s; ++i)
            x_[i] = s > 1 ? -1.0 + 2.0 * i / (s - 1.0) : 0.0;

        const int dim = order + 1;
        std::vector<double> power_sums(2 * order + 1, 0.0);
        for (int i = 0; i < s; ++i) {
            double pw = 1.0;
            for (int p = 0; p <= 2 * order; ++p) {
                power_sums[p] += pw;
                pw *= x_[i];
            }
        }
        gram_.assign(dim * dim, 0.0);
        for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b) gram_[a * dim + b] = power_sums[a + b];
        cholesky(dim);
    }

    // Mean squared residual of the fit over points y[0..s).
    double residual_variance(const double* y) const {
        const int dim = order_ + 1;
        std::vector<double> rhs(dim, 0.0);
        for (int i = 0; i < s_; ++i) {
            double pw = 1.0;
            for (int a = 0; a < dim; ++a) {
                rhs[a] += y[i] * pw;
                pw *= x_[i];
            }
        }
        std::vector<double> beta = solve(rhs);

        double rss = 0.0;
        for (int i = 0; i < s_; ++i) {
            double fit = beta[dim - 1];
            for (int a = dim - 2; a >= 0; --a) fit = fit * x_[i] + beta[a];
            const double r = y[i] - fit;
            rss += r * r;
        }
        return rss / s_;
    }

private:
    void cholesky(int dim) {
        chol_ = gram_;
        for (int j = 0; j < dim; ++j) {
            for (int k = 0; k < j; ++k) {
                const double ljk = chol_[j * dim + k];
                for (int i = j; i < dim; ++i)
                    chol_[i * dim + j] -= chol_[i * dim + k] * ljk;
            }
            const double d = chol_[j * dim + j];
            if (!(d > 0.0))
                throw numeric_error("detrending normal equations not positive definite");
            const double inv = 1.0 / std::sqrt(d);
            for (int i = j; i < dim; ++i) chol_[i * dim + j] *= inv;
        }
    }

    std::vector<double> solve(const std::vector<double>& rhs) const {
        const int dim = order_ + 1;
        std::vector<double> y(dim), b(dim);
        for (int i = 0; i < dim; ++i) {
            double v = rhs[i];
            for (int k = 0; k < i; ++k) v -= chol_[i * dim + k] * y[k];
            y[i] = v / chol_[i * dim + i];
        }
        for (int i = dim - 1; i >= 0; --i) {
            double v = y[i];
            for (int k = i + 1; k < dim; ++k) v -= chol_[k * dim + i] * b[k];
            b[i] = v / chol_[i * dim + i];
        }
        return b;
    }

    int s_;
    int order_;
    std::vector<double> x_;
    std::vector<double> gram_;
    std::vector<double> chol_; // lower-triangular factor, row-major
};

} // namespace

std::vector<double> segment_variances(const Profile& p, int s, int poly_order) {
    const std::size_t n = p.values.size();
    if (poly_order < 0)
        throw validation_error("poly_order must be >= 0");
    if (s < poly_order + 2)
        throw validation_error("segment length " + std::to_string(s) +
                               " too small for polynomial order " +
                               std::to_string(poly_order));
    if (static_cast<std::size_t>(s) > n)
        throw validation_error("segment length exceeds series length");

    const std::size_t n_s = n / static_cast<std::size_t>(s);
    SegmentDetrender detrender(s, poly_order);

    std::vector<double> variances(2 * n_s);
    const double* y = p.values.data();
    for (std::size_t v = 0; v < n_s; ++v)
        variances[v] = detrender.residual_variance(y + v * s);
    for (std::size_t v = 0; v < n_s; ++v)
        variances[n_s + v] = detrender.residual_variance(y + n - (v + 1) * s);
    return variances;
}

double fluctuation_function(std::span<const double> variances, double q) {
    if (variances.empty())
        throw validation_error("no segment variances");

    const std::size_t k = variances.size();

    if (q < 0.0) {
        for (std::size_t v = 0; v < k; ++v)
            if (variances[v] <= 0.0)
                throw numeric_error("zero variance in segment " + std::to_string(v + 1) +
                                    " (q < 0 undefined)");
    }

    if (q == 0.0) {
        double sum_log = 0.0;
        for (double v : variances) {
            if (v <= 0.0) return 0.0;
            sum_log += std::log(v);
        }
        return std::exp(sum_log / (2.0 * static_cast<double>(k)));
    }

    // Log-domain generalized mean keeps |q| up to 25 in range.
    std::vector<double> a(k);
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t v = 0; v < k; ++v) {
        a[v] = variances[v] > 0.0 ? 0.5 * q * std::log(variances[v])
                                  : -std::numeric_limits<double>::infinity();
        peak = std::max(peak, a[v]);
    }
    if (!std::isfinite(peak)) return 0.0; // all variances zero, q > 0

    double sum = 0.0;
    for (double av : a) sum += std::exp(av - peak);
    const double log_mean = peak + std::log(sum / static_cast<double>(k));
    return std::exp(log_mean / q);
}

FitResult hurst_fit(const FluctuationTable& table, double q, int s_lo, int s_hi) {
    std::size_t qi = table.q_values.size();
    for (std::size_t i = 0; i < table.q_values.size(); ++i) {
        if (std::abs(table.q_values[i] - q) < 1e-9) {
            qi = i;
            break;
        }
    }
    if (qi == table.q_values.size())
        throw validation_error("q not present in fluctuation table");

    std::vector<double> lx, ly;
    for (std::size_t si = 0; si < table.s_values.size(); ++si) {
        const int s = table.s_values[si];
        if (s < s_lo || s > s_hi) continue;
        const double f = table.at(si, qi);
        if (!std::isfinite(f) || f <= 0.0)
            throw numeric_error("non-positive fluctuation at s=" + std::to_string(s) +
                                ", q=" + std::to_string(q));
        lx.push_back(std::log(double(s)));
        ly.push_back(std::log(f));
    }
    const std::size_t n = lx.size();
    if (n < 3)
        throw validation_error("fewer than 3 s grid points in fit range [" +
                               std::to_string(s_lo) + ", " + std::to_string(s_hi) + "]");

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

    FitResult fit;
    fit.slope = sxy / sxx;
    double sse = syy - fit.slope * sxy;
    if (sse < 0.0) sse = 0.0;
    fit.std_err = std::sqrt(sse / (static_cast<double>(n) - 2.0) / sxx);
    fit.r2 = syy > 0.0 ? 1.0 - sse / syy : 1.0;
    return fit;
}

std::pair<FluctuationTable, HurstCurve> mfdfa_analyze(std::span<const double> x,
                                                      const MfdfaConfig& cfg) {
    cfg.validate(x.size());

    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    if (*lo == *hi)
        throw data_error("constant series has no fluctuations to analyze");

    const Profile p = profile(x);

    FluctuationTable table;
    table.s_values = cfg.s_grid;
    table.q_values = cfg.q_grid;
    const std::size_t nq = cfg.q_grid.size();
    table.f.assign(cfg.s_grid.size() * nq, 0.0);
    table.n_segments.assign(cfg.s_grid.size(), 0);

    parallel_for(cfg.s_grid.size(), [&](std::size_t si) {
        const std::vector<double> variances =
            segment_variances(p, cfg.s_grid[si], cfg.poly_order);
        table.n_segments[si] = static_cast<int>(variances.size());
        for (std::size_t qi = 0; qi < nq; ++qi)
            table.f[si * nq + qi] = fluctuation_function(variances, cfg.q_grid[qi]);
    });

    HurstCurve curve;
    curve.estimator = EstimatorTag::mfdfa;
    curve.fit_lo = cfg.s_fit_lo;
    curve.fit_hi = cfg.s_fit_hi;
    curve.points.reserve(nq);
    for (double q : cfg.q_grid) {
        const FitResult fit = hurst_fit(table, q, cfg.s_fit_lo, cfg.s_fit_hi);
        curve.points.push_back({q, fit.slope, fit.std_err, fit.r2});
    }
    return {std::move(table), std::move(curve)};
}

} // namespace roughvol
