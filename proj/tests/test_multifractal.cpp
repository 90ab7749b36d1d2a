#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "roughvol/errors.hpp"
#include "roughvol/multifractal.hpp"
#include "roughvol/synth.hpp"

using namespace roughvol;

namespace {

HurstCurve curve_from(const std::vector<double>& q_grid,
                      const std::vector<double>& h_values) {
    HurstCurve c;
    for (std::size_t i = 0; i < q_grid.size(); ++i)
        c.points.push_back({q_grid[i], h_values[i], 0.0, 1.0});
    return c;
}

HurstCurve analytic_cascade_curve(double a) {
    const auto q_grid = MfdfaConfig::make_q_grid(-25.0, 25.0, 0.5);
    std::vector<double> h(q_grid.size());
    for (std::size_t i = 0; i < q_grid.size(); ++i)
        h[i] = cascade_hurst_analytic(a, q_grid[i]);
    return curve_from(q_grid, h);
}

MfdfaConfig small_config(std::size_t n) {
    MfdfaConfig cfg = MfdfaConfig::defaults(n);
    cfg.q_grid = MfdfaConfig::make_q_grid(-5.0, 5.0, 0.5);
    cfg.s_fit_lo = 16;
    cfg.s_fit_hi = static_cast<int>(n / 4);
    return cfg;
}

} // namespace

TEST_CASE("singularity_spectrum") {
    SUBCASE("constant h collapses to a point") {
        const auto q_grid = MfdfaConfig::make_q_grid(-10.0, 10.0, 0.5);
        const SingularitySpectrum s =
            singularity_spectrum(curve_from(q_grid, std::vector<double>(q_grid.size(), 0.37)));
        for (const SpectrumPoint& p : s.points) {
            CHECK(p.alpha == 0.37);
            CHECK(p.f_alpha == 1.0);
        }
        CHECK(s.delta_alpha == 0.0);
        CHECK(s.delta_h == 0.0);
    }
    SUBCASE("apex: f = 1 exactly at q = 0") {
        const SingularitySpectrum s = singularity_spectrum(analytic_cascade_curve(0.6));
        bool found = false;
        for (const SpectrumPoint& p : s.points) {
            if (p.q == 0.0) {
                CHECK(std::abs(p.f_alpha - 1.0) < 1e-12);
                found = true;
            }
            CHECK(p.f_alpha <= 1.0 + 1e-12);
        }
        CHECK(found);
    }
    SUBCASE("cascade spectrum endpoints approach the analytic limits") {
        const SingularitySpectrum s = singularity_spectrum(analytic_cascade_curve(0.6));
        const auto [lo, hi] = std::minmax_element(
            s.points.begin(), s.points.end(),
            [](const SpectrumPoint& x, const SpectrumPoint& y) { return x.alpha < y.alpha; });
        CHECK(std::abs(lo->alpha - (-std::log2(0.6))) < 0.01);
        CHECK(std::abs(hi->alpha - (-std::log2(0.4))) < 0.01);
        CHECK(s.delta_h == doctest::Approx(0.5049).epsilon(0.01));
        CHECK(s.delta_alpha == doctest::Approx(hi->alpha - lo->alpha).epsilon(1e-12));
    }
    SUBCASE("non-uniform grids are rejected") {
        HurstCurve c = curve_from({0.5, 1.0, 2.5}, {0.5, 0.5, 0.5});
        CHECK_THROWS_AS(singularity_spectrum(c), validation_error);
    }
    SUBCASE("needs 3 points") {
        HurstCurve c = curve_from({1.0, 2.0}, {0.5, 0.5});
        CHECK_THROWS_AS(singularity_spectrum(c), validation_error);
    }
}

TEST_CASE("format_uncertainty") {
    CHECK(format_uncertainty(0.5154, 0.0212) == "0.515(21)");
    CHECK(format_uncertainty(0.5, 0.0) == "0.500(0)");
    CHECK(format_uncertainty(0.1337, 0.0049) == "0.134(5)");
    CHECK_THROWS_AS(format_uncertainty(0.5, -0.1), validation_error);
}

TEST_CASE("shuffle_ensemble") {
    IncrementSeries inc;
    inc.values = gaussian_white(2048, 55);
    const MfdfaConfig cfg = small_config(inc.values.size());

    SUBCASE("equal seeds give zero spread") {
        const ShuffleEnsembleResult r = shuffle_ensemble(inc, cfg, {7, 7});
        for (const EnsemblePoint& p : r.per_q) CHECK(p.std_h == 0.0);
        CHECK(r.delta_h_std == 0.0);
        CHECK(r.delta_alpha_std == 0.0);
    }
    SUBCASE("bit-reproducible for a fixed base seed") {
        const ShuffleEnsembleResult a = shuffle_ensemble(inc, cfg, 4, 1000);
        const ShuffleEnsembleResult b = shuffle_ensemble(inc, cfg, 4, 1000);
        REQUIRE(a.per_q.size() == b.per_q.size());
        for (std::size_t i = 0; i < a.per_q.size(); ++i) {
            CHECK(a.per_q[i].mean_h == b.per_q[i].mean_h);
            CHECK(a.per_q[i].std_h == b.per_q[i].std_h);
        }
        CHECK(a.delta_h_mean == b.delta_h_mean);
        CHECK(a.delta_alpha_mean == b.delta_alpha_mean);
        CHECK(a.seeds == std::vector<std::uint64_t>{1000, 1001, 1002, 1003});
    }
    SUBCASE("needs at least 2 replicates") {
        CHECK_THROWS_AS(shuffle_ensemble(inc, cfg, 1, 5), validation_error);
    }
    SUBCASE("shuffling fGn moves h(2) to 1/2") {
        IncrementSeries fgn;
        fgn.values = fbm_increments(0.2, 1 << 13, 303);
        MfdfaConfig c2 = small_config(fgn.values.size());
        const ShuffleEnsembleResult r = shuffle_ensemble(fgn, c2, 6, 42);
        for (const EnsemblePoint& p : r.per_q)
            if (p.q == 2.0) CHECK(p.mean_h == doctest::Approx(0.5).epsilon(0.12));
    }
    SUBCASE("shuffled cascade keeps distributional multifractality") {
        IncrementSeries cascade;
        cascade.values = binomial_cascade(0.6, 13);
        MfdfaConfig c3 = small_config(cascade.values.size());
        const ShuffleEnsembleResult r = shuffle_ensemble(cascade, c3, 6, 99);
        CHECK(r.delta_h_mean > 0.05);
        for (const EnsemblePoint& p : r.per_q)
            if (p.q == 2.0) CHECK(p.mean_h == doctest::Approx(0.5).epsilon(0.12));
    }
}
