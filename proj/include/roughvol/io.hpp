#pragma once
#include <string>
#include <vector>

#include "roughvol/csv.hpp"
#include "roughvol/market_data.hpp"
#include "roughvol/mfdfa.hpp"
#include "roughvol/multifractal.hpp"
#include "roughvol/structure_function.hpp"
#include "roughvol/volseries.hpp"

namespace roughvol {

// CSV schemas shared by the CLI and the file-based tests. All writers emit
// `\n` line endings and format numbers through NumberFormat.

RVSeries read_rv_csv(const std::string& path);                 // header: date,rv
std::vector<double> read_series_csv(const std::string& path);  // header: index,value
HurstCurve read_hurst_csv(const std::string& path);            // q,h,stderr,r2 | q,zeta,h,stderr

void write_rv_csv(const std::string& path, const RVSeries& rv, const NumberFormat& fmt);
void write_signature_csv(const std::string& path, const std::vector<SignatureRow>& rows,
                         const NumberFormat& fmt);
void write_series_csv(const std::string& path, const std::vector<double>& values,
                      const NumberFormat& fmt);
void write_fq_csv(const std::string& path, const FluctuationTable& table,
                  const NumberFormat& fmt);
void write_hurst_csv(const std::string& path, const HurstCurve& curve,
                     const NumberFormat& fmt);
void write_sf_moments_csv(const std::string& path, const StructureFunctionTable& table,
                          const NumberFormat& fmt);
void write_hurst_sf_csv(const std::string& path, const ZetaCurve& zeta,
                        const HurstCurve& hurst, const NumberFormat& fmt);
void write_spectrum_csv(const std::string& path, const SingularitySpectrum& spectrum,
                        const NumberFormat& fmt);
void write_spectrum_summary_csv(const std::string& path, const SingularitySpectrum& spectrum,
                                const NumberFormat& fmt);
void write_ensemble_csv(const std::string& path, const ShuffleEnsembleResult& result,
                        const NumberFormat& fmt);
void write_ensemble_summary_csv(const std::string& path, const ShuffleEnsembleResult& result,
                                const NumberFormat& fmt);
void write_distribution_csv(const std::string& path, const DistributionSummary& summary,
                            const NumberFormat& fmt);

} // namespace roughvol
