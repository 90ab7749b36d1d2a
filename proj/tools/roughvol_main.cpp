// roughvol: realized-volatility roughness and multifractality toolkit.
//
// Exit codes: 0 success, 1 usage/validation, 2 data error, 3 numeric failure.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "roughvol/dates.hpp"
#include "roughvol/errors.hpp"
#include "roughvol/io.hpp"
#include "roughvol/market_data.hpp"
#include "roughvol/mfdfa.hpp"
#include "roughvol/multifractal.hpp"
#include "roughvol/structure_function.hpp"
#include "roughvol/synth.hpp"
#include "roughvol/version.hpp"
#include "roughvol/volseries.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace roughvol;

namespace {

struct GlobalOpts {
    std::string output_dir = ".";
    std::uint64_t seed = 12345;
    std::string precision = "6";
};

NumberFormat parse_precision(const std::string& p) {
    if (p == "full") return NumberFormat::full();
    int digits = 0;
    try {
        digits = std::stoi(p);
    } catch (...) {
        throw validation_error("--precision expects 'full' or a digit count");
    }
    if (digits < 1 || digits > 17)
        throw validation_error("--precision digits must be in [1, 17]");
    return NumberFormat{digits};
}

// Run manifest: resolved flags, input digests, tool version, seeds and a
// timestamp, written next to the outputs it describes.
class Manifest {
public:
    Manifest(const std::string& command, const GlobalOpts& global)
        : dir_(global.output_dir) {
        j_["tool"] = "roughvol";
        j_["version"] = version;
        j_["command"] = command;
        j_["seed"] = global.seed;
        j_["precision"] = global.precision;
        j_["output_dir"] = global.output_dir;
        j_["flags"] = json::object();
        j_["inputs"] = json::array();
        j_["outputs"] = json::array();
    }

    template <typename T>
    void flag(const std::string& name, const T& value) {
        j_["flags"][name] = value;
    }

    void input(const std::string& path) {
        j_["inputs"].push_back({{"path", path}, {"fnv1a64", fnv1a64_file(path)}});
    }

    void output(const std::string& path) { j_["outputs"].push_back(path); }

    void seeds(const std::vector<std::uint64_t>& s) { j_["seeds"] = s; }

    void write() {
        const auto now = std::chrono::system_clock::now();
        const std::time_t t = std::chrono::system_clock::to_time_t(now);
        char buf[32];
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
        j_["created_utc"] = buf;
        std::ofstream out(fs::path(dir_) / "manifest.json", std::ios::binary);
        out << j_.dump(2) << '\n';
    }

private:
    std::string dir_;
    json j_;
};

std::string out_path(const GlobalOpts& g, const std::string& name) {
    return (fs::path(g.output_dir) / name).string();
}

void ensure_output_dir(const GlobalOpts& g) {
    std::error_code ec;
    fs::create_directories(g.output_dir, ec);
    if (ec) throw data_error("cannot create output dir '" + g.output_dir + "'");
}

std::pair<int, int> parse_range(const std::string& text, const char* flag) {
    const auto pos = text.find(':');
    int lo = 0, hi = 0;
    try {
        if (pos == std::string::npos) throw std::invalid_argument("");
        lo = std::stoi(text.substr(0, pos));
        hi = std::stoi(text.substr(pos + 1));
    } catch (...) {
        throw validation_error(std::string(flag) + " expects LO:HI");
    }
    return {lo, hi};
}

enum class InputKind { rv, series };

InputKind sniff_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open '" + path + "'");
    std::string header;
    std::getline(in, header);
    if (!header.empty() && header.back() == '\r') header.pop_back();
    if (header == "date,rv") return InputKind::rv;
    if (header == "index,value") return InputKind::series;
    throw data_error("'" + path + "': unrecognized header '" + header +
                     "' (expected 'date,rv' or 'index,value')");
}

// --- rv ---------------------------------------------------------------

struct RvArgs {
    std::string ticks_path;
    int delta_t = 5;
    int min_ticks = 100;
    std::string signature; // comma list of delta_t values
};

int run_rv(const GlobalOpts& g, const RvArgs& a) {
    ensure_output_dir(g);
    const NumberFormat fmt = parse_precision(g.precision);

    std::ifstream in(a.ticks_path, std::ios::binary);
    if (!in) throw data_error("cannot open '" + a.ticks_path + "'");
    const TickSeries ticks = parse_ticks(in, TickFormat::bitcoincharts_csv,
                                         fs::path(a.ticks_path).stem().string());
    if (ticks.malformed_rows || ticks.rejected_rows || ticks.out_of_order_rows)
        std::cerr << "note: skipped " << ticks.malformed_rows << " malformed and "
                  << ticks.rejected_rows << " non-positive-price rows; re-sorted "
                  << ticks.out_of_order_rows << " out-of-order rows\n";

    const PriceGrid grid = resample(ticks, a.delta_t, a.min_ticks);
    if (grid.dropped_days)
        std::cerr << "note: dropped " << grid.dropped_days << " days below "
                  << a.min_ticks << " ticks\n";
    const RVSeries rv = daily_rv(intraday_returns(grid), a.delta_t);

    Manifest manifest("rv", g);
    manifest.flag("delta_t", a.delta_t);
    manifest.flag("min_ticks", a.min_ticks);
    manifest.input(a.ticks_path);

    write_rv_csv(out_path(g, "rv.csv"), rv, fmt);
    manifest.output(out_path(g, "rv.csv"));
    std::cout << "rv.csv: " << rv.days.size() << " days at delta_t=" << a.delta_t
              << "min\n";

    if (!a.signature.empty()) {
        std::vector<int> dts;
        for (const auto& tok : split_csv_line(a.signature)) {
            std::int64_t v = 0;
            if (!parse_int64(tok, v) || v <= 0)
                throw validation_error("--signature expects positive integers");
            dts.push_back(static_cast<int>(v));
        }
        const auto rows = signature_curve(ticks, dts, a.min_ticks);
        write_signature_csv(out_path(g, "signature.csv"), rows, fmt);
        manifest.output(out_path(g, "signature.csv"));
        manifest.flag("signature", a.signature);
        std::cout << "signature.csv: " << rows.size() << " sampling periods\n";
    }

    manifest.write();
    return 0;
}

// --- mfdfa ------------------------------------------------------------

struct MfdfaArgs {
    std::string input_path;
    double q_min = -25.0, q_max = 25.0, q_step = 0.5;
    std::string s_fit = "80:280";
    int poly_order = 3;
    int delta = 1;
};

MfdfaConfig build_mfdfa_config(std::size_t n, double q_min, double q_max, double q_step,
                               const std::string& s_fit, int poly_order) {
    MfdfaConfig cfg = MfdfaConfig::defaults(n);
    cfg.q_grid = MfdfaConfig::make_q_grid(q_min, q_max, q_step);
    std::tie(cfg.s_fit_lo, cfg.s_fit_hi) = parse_range(s_fit, "--s-fit");
    cfg.poly_order = poly_order;
    return cfg;
}

IncrementSeries load_increments(const std::string& path, int delta) {
    if (sniff_input(path) == InputKind::rv)
        return increments_from_rv(read_rv_csv(path), delta);
    IncrementSeries inc;
    inc.values = read_series_csv(path);
    inc.lag_days = delta;
    inc.origin_label = path;
    return inc;
}

int run_mfdfa(const GlobalOpts& g, const MfdfaArgs& a) {
    ensure_output_dir(g);
    const NumberFormat fmt = parse_precision(g.precision);

    const IncrementSeries inc = load_increments(a.input_path, a.delta);
    const MfdfaConfig cfg = build_mfdfa_config(inc.values.size(), a.q_min, a.q_max,
                                               a.q_step, a.s_fit, a.poly_order);
    auto [table, curve] = mfdfa_analyze(inc.values, cfg);

    Manifest manifest("mfdfa", g);
    manifest.flag("q_min", a.q_min);
    manifest.flag("q_max", a.q_max);
    manifest.flag("q_step", a.q_step);
    manifest.flag("s_fit", a.s_fit);
    manifest.flag("poly_order", a.poly_order);
    manifest.flag("delta", a.delta);
    manifest.input(a.input_path);

    write_fq_csv(out_path(g, "fq.csv"), table, fmt);
    write_hurst_csv(out_path(g, "hurst_mfdfa.csv"), curve, fmt);
    manifest.output(out_path(g, "fq.csv"));
    manifest.output(out_path(g, "hurst_mfdfa.csv"));
    manifest.write();

    for (const HurstPoint& p : curve.points)
        if (p.q == 2.0)
            std::cout << "h(2) = " << format_number(p.h, fmt) << " (stderr "
                      << format_number(p.std_err, fmt) << ")\n";
    std::cout << "hurst_mfdfa.csv: " << curve.points.size() << " q values\n";
    return 0;
}

// --- sf ---------------------------------------------------------------

struct SfArgs {
    std::string input_path;
    double q_max = 8.0, q_step = 0.2;
    std::string delta_fit = "1:40";
};

int run_sf(const GlobalOpts& g, const SfArgs& a) {
    ensure_output_dir(g);
    const NumberFormat fmt = parse_precision(g.precision);

    if (sniff_input(a.input_path) != InputKind::rv)
        throw data_error("sf requires an rv CSV (header 'date,rv')");
    const RVSeries rv = read_rv_csv(a.input_path);
    const LogVolSeries lv = log_vol(rv);
    if (lv.dropped_zero_rv)
        std::cerr << "note: dropped " << lv.dropped_zero_rv << " zero-rv days\n";

    SfConfig cfg = SfConfig::defaults(lv.days.size());
    cfg.q_grid = MfdfaConfig::make_q_grid(a.q_step, a.q_max, a.q_step);
    std::tie(cfg.delta_fit_lo, cfg.delta_fit_hi) = parse_range(a.delta_fit, "--delta-fit");

    const SfResult result = sf_hurst(lv, cfg);

    Manifest manifest("sf", g);
    manifest.flag("q_max", a.q_max);
    manifest.flag("q_step", a.q_step);
    manifest.flag("delta_fit", a.delta_fit);
    manifest.input(a.input_path);

    write_sf_moments_csv(out_path(g, "sf_moments.csv"), result.table, fmt);
    write_hurst_sf_csv(out_path(g, "hurst_sf.csv"), result.zeta, result.hurst, fmt);
    manifest.output(out_path(g, "sf_moments.csv"));
    manifest.output(out_path(g, "hurst_sf.csv"));
    manifest.write();

    std::cout << "hurst_sf.csv: " << result.hurst.points.size() << " q values\n";
    return 0;
}

// --- spectrum ---------------------------------------------------------

struct SpectrumArgs {
    std::string input_path;
};

int run_spectrum(const GlobalOpts& g, const SpectrumArgs& a) {
    ensure_output_dir(g);
    const NumberFormat fmt = parse_precision(g.precision);

    const HurstCurve curve = read_hurst_csv(a.input_path);
    const SingularitySpectrum spectrum = singularity_spectrum(curve);

    Manifest manifest("spectrum", g);
    manifest.input(a.input_path);
    write_spectrum_csv(out_path(g, "spectrum.csv"), spectrum, fmt);
    write_spectrum_summary_csv(out_path(g, "spectrum_summary.csv"), spectrum, fmt);
    manifest.output(out_path(g, "spectrum.csv"));
    manifest.output(out_path(g, "spectrum_summary.csv"));
    manifest.write();

    std::cout << "delta_h = " << format_number(spectrum.delta_h, fmt)
              << ", delta_alpha = " << format_number(spectrum.delta_alpha, fmt) << '\n';
    return 0;
}

// --- shuffle ----------------------------------------------------------

struct ShuffleArgs {
    std::string input_path;
    int replicates = 20;
    double q_min = -25.0, q_max = 25.0, q_step = 0.5;
    std::string s_fit = "80:280";
    int poly_order = 3;
    int delta = 1;
};

int run_shuffle(const GlobalOpts& g, const ShuffleArgs& a) {
    ensure_output_dir(g);
    const NumberFormat fmt = parse_precision(g.precision);

    if (a.replicates < 2)
        throw validation_error("--replicates must be >= 2 (std needs two replicates)");

    const IncrementSeries inc = load_increments(a.input_path, a.delta);
    const MfdfaConfig cfg = build_mfdfa_config(inc.values.size(), a.q_min, a.q_max,
                                               a.q_step, a.s_fit, a.poly_order);
    const ShuffleEnsembleResult result = shuffle_ensemble(inc, cfg, a.replicates, g.seed);

    Manifest manifest("shuffle", g);
    manifest.flag("replicates", a.replicates);
    manifest.flag("q_min", a.q_min);
    manifest.flag("q_max", a.q_max);
    manifest.flag("q_step", a.q_step);
    manifest.flag("s_fit", a.s_fit);
    manifest.flag("poly_order", a.poly_order);
    manifest.flag("delta", a.delta);
    manifest.seeds(result.seeds);
    manifest.input(a.input_path);

    write_ensemble_csv(out_path(g, "ensemble.csv"), result, fmt);
    write_ensemble_summary_csv(out_path(g, "ensemble_summary.csv"), result, fmt);
    manifest.output(out_path(g, "ensemble.csv"));
    manifest.output(out_path(g, "ensemble_summary.csv"));
    manifest.write();

    // Paper-style table: shuffled h(q) as value(std) at a few q.
    std::cout << "shuffled h(q) over " << a.replicates << " replicates:\n";
    for (const EnsemblePoint& p : result.per_q) {
        for (double q : {-1.0, 0.0, 1.0, 2.0, 3.0, 4.0}) {
            if (p.q == q)
                std::cout << "  h(" << format_number(p.q, fmt)
                          << ") = " << format_uncertainty(p.mean_h, p.std_h) << '\n';
        }
    }
    std::cout << "  delta_h = "
              << format_uncertainty(result.delta_h_mean, result.delta_h_std)
              << ", delta_alpha = "
              << format_uncertainty(result.delta_alpha_mean, result.delta_alpha_std)
              << '\n';
    return 0;
}

// --- synth ------------------------------------------------------------

struct SynthArgs {
    double hurst = 0.5;
    std::size_t n = 65536;
    double a = 0.6;
    int levels = 16;
};

int run_synth(const GlobalOpts& g, const std::string& kind, const SynthArgs& a) {
    ensure_output_dir(g);
    const NumberFormat fmt = parse_precision(g.precision);

    std::vector<double> series;
    Manifest manifest("synth " + kind, g);
    if (kind == "fbm") {
        series = fbm_increments(a.hurst, a.n, g.seed);
        manifest.flag("hurst", a.hurst);
        manifest.flag("n", a.n);
    } else if (kind == "white") {
        series = gaussian_white(a.n, g.seed);
        manifest.flag("n", a.n);
    } else {
        series = binomial_cascade(a.a, a.levels);
        manifest.flag("a", a.a);
        manifest.flag("levels", a.levels);
    }

    write_series_csv(out_path(g, "series.csv"), series, fmt);
    manifest.output(out_path(g, "series.csv"));
    manifest.write();
    std::cout << "series.csv: " << series.size() << " values\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Roughness and multifractality of realized log-volatility"};
    app.fallthrough();
    app.require_subcommand(1);

    GlobalOpts global;
    app.add_option("--output-dir", global.output_dir, "Directory for output files");
    app.add_option("--seed", global.seed, "Base seed for stochastic commands");
    app.add_option("--precision", global.precision,
                   "CSV significant digits (1-17) or 'full'");

    RvArgs rv_args;
    auto* rv_cmd = app.add_subcommand("rv", "Daily realized volatility from tick data");
    rv_cmd->add_option("ticks", rv_args.ticks_path, "Tick CSV: timestamp,price,volume")
        ->required();
    rv_cmd->add_option("--delta-t", rv_args.delta_t, "Sampling period in minutes");
    rv_cmd->add_option("--min-ticks", rv_args.min_ticks, "Minimum raw ticks per day");
    rv_cmd->add_option("--signature", rv_args.signature,
                       "Comma list of delta_t for a signature curve");

    MfdfaArgs mfdfa_args;
    auto* mfdfa_cmd = app.add_subcommand("mfdfa", "MF-DFA generalized Hurst exponents");
    mfdfa_cmd->add_option("input", mfdfa_args.input_path, "rv.csv or increments CSV")
        ->required();
    mfdfa_cmd->add_option("--q-min", mfdfa_args.q_min, "Lowest q");
    mfdfa_cmd->add_option("--q-max", mfdfa_args.q_max, "Highest q");
    mfdfa_cmd->add_option("--q-step", mfdfa_args.q_step, "q grid step");
    mfdfa_cmd->add_option("--s-fit", mfdfa_args.s_fit, "Fit window LO:HI in s");
    mfdfa_cmd->add_option("--poly-order", mfdfa_args.poly_order, "Detrending order");
    mfdfa_cmd->add_option("--delta", mfdfa_args.delta, "Increment lag for rv input");

    SfArgs sf_args;
    auto* sf_cmd = app.add_subcommand("sf", "Structure-function Hurst exponents");
    sf_cmd->add_option("input", sf_args.input_path, "rv.csv")->required();
    sf_cmd->add_option("--q-max", sf_args.q_max, "Highest q (grid starts at q-step)");
    sf_cmd->add_option("--q-step", sf_args.q_step, "q grid step");
    sf_cmd->add_option("--delta-fit", sf_args.delta_fit, "Fit window LO:HI in delta");

    SpectrumArgs spectrum_args;
    auto* spectrum_cmd =
        app.add_subcommand("spectrum", "Singularity spectrum and strength measures");
    spectrum_cmd->add_option("input", spectrum_args.input_path, "Hurst curve CSV")
        ->required();

    ShuffleArgs shuffle_args;
    auto* shuffle_cmd =
        app.add_subcommand("shuffle", "Shuffle-surrogate ensemble analysis");
    shuffle_cmd->add_option("input", shuffle_args.input_path, "rv.csv or increments CSV")
        ->required();
    shuffle_cmd->add_option("--replicates", shuffle_args.replicates, "Ensemble size");
    shuffle_cmd->add_option("--q-min", shuffle_args.q_min, "Lowest q");
    shuffle_cmd->add_option("--q-max", shuffle_args.q_max, "Highest q");
    shuffle_cmd->add_option("--q-step", shuffle_args.q_step, "q grid step");
    shuffle_cmd->add_option("--s-fit", shuffle_args.s_fit, "Fit window LO:HI in s");
    shuffle_cmd->add_option("--poly-order", shuffle_args.poly_order, "Detrending order");
    shuffle_cmd->add_option("--delta", shuffle_args.delta, "Increment lag for rv input");

    SynthArgs synth_args;
    auto* synth_cmd = app.add_subcommand("synth", "Synthetic oracle series");
    synth_cmd->require_subcommand(1);
    synth_cmd->fallthrough();
    auto* fbm_cmd = synth_cmd->add_subcommand("fbm", "Fractional Gaussian noise");
    fbm_cmd->add_option("--hurst", synth_args.hurst, "Hurst exponent in (0,1)")->required();
    fbm_cmd->add_option("--n", synth_args.n, "Length (power of two)");
    auto* white_cmd = synth_cmd->add_subcommand("white", "i.i.d. standard Gaussian");
    white_cmd->add_option("--n", synth_args.n, "Length");
    auto* cascade_cmd = synth_cmd->add_subcommand("cascade", "Binomial cascade weights");
    cascade_cmd->add_option("--a", synth_args.a, "Multiplier in (0,1)");
    cascade_cmd->add_option("--levels", synth_args.levels, "Recursion depth (<= 26)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (rv_cmd->parsed()) return run_rv(global, rv_args);
        if (mfdfa_cmd->parsed()) return run_mfdfa(global, mfdfa_args);
        if (sf_cmd->parsed()) return run_sf(global, sf_args);
        if (spectrum_cmd->parsed()) return run_spectrum(global, spectrum_args);
        if (shuffle_cmd->parsed()) return run_shuffle(global, shuffle_args);
        if (synth_cmd->parsed()) {
            if (fbm_cmd->parsed()) return run_synth(global, "fbm", synth_args);
            if (white_cmd->parsed()) return run_synth(global, "white", synth_args);
            return run_synth(global, "cascade", synth_args);
        }
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const data_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const numeric_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
