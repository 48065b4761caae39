#pragma once

#include <filesystem>
#include <vector>

#include "spdc/io/config.hpp"
#include "spdc/io/scan_data.hpp"
#include "spdc/schmidt.hpp"

namespace spdc::io {

/// Batch entry points behind the CLI verbs. Every command writes its outputs
/// plus an effective_config.json echo into out_dir and returns the computed
/// values so callers (and tests) can assert on them directly.

struct TuningCommandResult {
  TuningCurve curve;
  double t_deg_c = 0.0;
  std::vector<std::filesystem::path> files;
};
TuningCommandResult cmd_tuning_curve(const RunConfig& cfg, double t_start_c,
                                     double t_stop_c, double t_step_c,
                                     const std::filesystem::path& out_dir);

struct SpectrumCommandResult {
  std::vector<SpectralCurve> theory;
  std::vector<SpectralCurve> instrument; // filled when with_instrument
  std::vector<std::filesystem::path> files;
};
SpectrumCommandResult cmd_spectrum(const RunConfig& cfg,
                                   const std::vector<double>& temps_c,
                                   bool with_instrument, bool raw,
                                   const std::filesystem::path& out_dir);

struct FarfieldCommandResult {
  std::vector<IntensityProfile> radial; // one per temperature
  std::vector<Image2D> images;
  std::vector<std::filesystem::path> files;
};
FarfieldCommandResult cmd_farfield(const RunConfig& cfg,
                                   const std::vector<double>& temps_c, bool raw,
                                   const std::filesystem::path& out_dir);

enum class ScanPlaneSel { FarField, NearField, Both };

struct ScanCommandResult {
  FarFieldScan far_field;   // singles + coincidences (FarField / Both)
  Image2D nf_singles;       // NearField / Both
  std::vector<std::filesystem::path> files;
};
ScanCommandResult cmd_scan(const RunConfig& cfg, double temperature_c,
                           ScanPlaneSel plane, bool with_noise, bool raw,
                           const std::filesystem::path& out_dir);

struct SchmidtCommandResult {
  SchmidtSweep sweep;
  std::vector<std::filesystem::path> files;
};
SchmidtCommandResult cmd_schmidt(const RunConfig& cfg, bool with_svd,
                                 const std::filesystem::path& out_dir);

struct AnalyzeScanResult {
  double k = 0.0;
  double sigma_k = 0.0;
  double factor_nf = 0.0; // (sum I mu)^2 / (sum I^2 mu) per plane
  double factor_ff = 0.0;
  std::vector<std::filesystem::path> files;
};
/// Schmidt number from measured near- and far-field scans via the dim-2
/// intensity estimator, detector coordinates converted to physical ones
/// (r = x / M_NF, q = x k / (M_FF f1)); uncertainty from Poisson counting
/// statistics by first-order propagation.
AnalyzeScanResult cmd_analyze_scan(const RunConfig& cfg,
                                   const std::filesystem::path& nf_file,
                                   const std::filesystem::path& ff_file,
                                   bool subtract_background,
                                   const std::filesystem::path& out_dir);

} // namespace spdc::io
