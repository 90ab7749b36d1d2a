#include "roughvol/io.hpp"

#include <fstream>

#include "roughvol/dates.hpp"
#include "roughvol/errors.hpp"

namespace roughvol {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary); // \n endings everywhere
    if (!out) throw data_error("cannot open '" + path + "' for writing");
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open '" + path + "'");
    return in;
}

std::string next_line(std::ifstream& in) {
    std::string line;
    if (!std::getline(in, line)) return {};
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

} // namespace

RVSeries read_rv_csv(const std::string& path) {
    auto in = open_in(path);
    std::string header = next_line(in);
    if (header != "date,rv")
        throw data_error("'" + path + "': expected header 'date,rv'");

    RVSeries rv;
    rv.delta_t_minutes = 0; // unknown for precomputed series
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        double value = 0.0;
        if (fields.size() != 2 || !parse_double(fields[1], value))
            throw data_error("'" + path + "' line " + std::to_string(line_no) +
                             ": expected 'date,rv'");
        const int day = parse_iso_date(fields[0]);
        if (value < 0.0)
            throw data_error("'" + path + "' line " + std::to_string(line_no) +
                             ": negative rv");
        if (!rv.days.empty() && day <= rv.days.back().epoch_day)
            throw data_error("'" + path + "' line " + std::to_string(line_no) +
                             ": dates must be strictly increasing");
        rv.days.push_back({day, value});
    }
    if (rv.days.empty())
        throw data_error("'" + path + "': no rows");
    return rv;
}

std::vector<double> read_series_csv(const std::string& path) {
    auto in = open_in(path);
    std::string header = next_line(in);
    if (header != "index,value")
        throw data_error("'" + path + "': expected header 'index,value'");

    std::vector<double> values;
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        double value = 0.0;
        if (fields.size() != 2 || !parse_double(fields[1], value))
            throw data_error("'" + path + "' line " + std::to_string(line_no) +
                             ": expected 'index,value'");
        values.push_back(value);
    }
    if (values.empty())
        throw data_error("'" + path + "': no rows");
    return values;
}

HurstCurve read_hurst_csv(const std::string& path) {
    auto in = open_in(path);
    std::string header = next_line(in);
    const bool mfdfa_layout = header == "q,h,stderr,r2";
    const bool sf_layout = header == "q,zeta,h,stderr";
    if (!mfdfa_layout && !sf_layout)
        throw data_error("'" + path +
                         "': expected header 'q,h,stderr,r2' or 'q,zeta,h,stderr'");

    HurstCurve curve;
    curve.estimator = mfdfa_layout ? EstimatorTag::mfdfa : EstimatorTag::structure_function;
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 4)
            throw data_error("'" + path + "' line " + std::to_string(line_no) +
                             ": expected 4 columns");
        double v[4];
        for (int i = 0; i < 4; ++i)
            if (!parse_double(fields[i], v[i]))
                throw data_error("'" + path + "' line " + std::to_string(line_no) +
                                 ": bad number");
        HurstPoint p;
        if (mfdfa_layout) {
            p = {v[0], v[1], v[2], v[3]};
        } else {
            p = {v[0], v[2], v[3], 0.0};
        }
        curve.points.push_back(p);
    }
    if (curve.points.empty())
        throw data_error("'" + path + "': no rows");
    return curve;
}

void write_rv_csv(const std::string& path, const RVSeries& rv, const NumberFormat& fmt) {
    auto out = open_out(path);
    out << "date,rv\n";
    for (const RVDay& d : rv.days)
        out << iso_date(d.epoch_day) << ',' << format_number(d.rv, fmt) << '\n';
}

void write_signature_csv(const std::string& path, const std::vector<SignatureRow>& rows,
                         const NumberFormat& fmt) {
    auto out = open_out(path);
    out << "delta_t_minutes,mean_rv\n";
    for (const SignatureRow& r : rows)
        out << r.delta_t_minutes << ',' << format_number(r.mean_rv, fmt) << '\n';
}

void write_series_csv(const std::string& path, const std::vector<double>& values,
                      const NumberFormat& fmt) {
    auto out = open_out(path);
    out << "index,value\n";
    for (std::size_t i = 0; i < values.size(); ++i)
        out << i << ',' << format_number(values[i], fmt) << '\n';
}

void write_fq_csv(const std::string& path, const FluctuationTable& table,
                  const NumberFormat& fmt) {
    auto out = open_out(path);
    out << "s,q,F\n";
    for (std::size_t si = 0; si < table.s_values.size(); ++si)
        for (std::size_t qi = 0; qi < table.q_values.size(); ++qi)
            out << table.s_values[si] << ',' << format_number(table.q_values[qi], fmt)
                << ',' << format_number(table.at(si, qi), fmt) << '\n';
}

void write_hurst_csv(const std::string& path, const HurstCurve& curve,
                     const NumberFormat& fmt) {
    auto out = open_out(path);
    out << "q,h,stderr,r2\n";
    for (const HurstPoint& p : curve.points)
        out << format_number(p.q, fmt) << ',' << format_number(p.h, fmt) << ','
            << format_number(p.std_err, fmt) << ',' << format_number(p.r2, fmt) << '\n';
}

void write_sf_moments_csv(const std::string& path, const StructureFunctionTable& table,
                          const NumberFormat& fmt) {
    auto out = open_out(path);
    out << "delta,q,m\n";
    for (std::size_t di = 0; di < table.delta_values.size(); ++di)
        for (std::size_t qi = 0; qi < table.q_values.size(); ++qi)
            out << table.delta_values[di] << ',' << format_number(table.q_values[qi], fmt)
                << ',' << format_number(table.at(di, qi), fmt) << '\n';
}

void write_hurst_sf_csv(const std::string& path, const ZetaCurve& zeta,
                        const HurstCurve& hurst, const NumberFormat& fmt) {
    auto out = open_out(path);
    out << "q,zeta,h,stderr\n";
    for (std::size_t i = 0; i < zeta.points.size(); ++i)
        out << format_number(zeta.points[i].q, fmt) << ','
            << format_number(zeta.points[i].zeta, fmt) << ','
            << format_number(hurst.points[i].h, fmt) << ','
            << format_number(hurst.points[i].std_err, fmt) << '\n';
}

void write_spectrum_csv(const std::string& path, const SingularitySpectrum& spectrum,
                        const NumberFormat& fmt) {
    auto out = open_out(path);
    out << "q,alpha,f_alpha\n";
    for (const SpectrumPoint& p : spectrum.points)
        out << format_number(p.q, fmt) << ',' << format_number(p.alpha, fmt) << ','
            << format_number(p.f_alpha, fmt) << '\n';
}

void write_spectrum_summary_csv(const std::string& path, const SingularitySpectrum& spectrum,
                                const NumberFormat& fmt) {
    auto out = open_out(path);
    out << "metric,value\n";
    out << "delta_h," << format_number(spectrum.delta_h, fmt) << '\n';
    out << "delta_alpha," << format_number(spectrum.delta_alpha, fmt) << '\n';
}

void write_ensemble_csv(const std::string& path, const ShuffleEnsembleResult& result,
                        const NumberFormat& fmt) {
    auto out = open_out(path);
    out << "q,mean_h,std_h\n";
    for (const EnsemblePoint& p : result.per_q)
        out << format_number(p.q, fmt) << ',' << format_number(p.mean_h, fmt) << ','
            << format_number(p.std_h, fmt) << '\n';
}

void write_ensemble_summary_csv(const std::string& path, const ShuffleEnsembleResult& result,
                                const NumberFormat& fmt) {
    auto out = open_out(path);
    out << "metric,mean,std,formatted\n";
    out << "delta_h," << format_number(result.delta_h_mean, fmt) << ','
        << format_number(result.delta_h_std, fmt) << ','
        << format_uncertainty(result.delta_h_mean, result.delta_h_std) << '\n';
    out << "delta_alpha," << format_number(result.delta_alpha_mean, fmt) << ','
        << format_number(result.delta_alpha_std, fmt) << ','
        << format_uncertainty(result.delta_alpha_mean, result.delta_alpha_std) << '\n';
}

void write_distribution_csv(const std::string& path, const DistributionSummary& summary,
                            const NumberFormat& fmt) {
    auto out = open_out(path);
    out << "bin_center,density,gaussian_density\n";
    for (const DistributionBin& b : summary.bins)
        out << format_number(b.center, fmt) << ',' << format_number(b.density, fmt) << ','
            << format_number(b.gaussian_density, fmt) << '\n';
}

} // namespace roughvol
