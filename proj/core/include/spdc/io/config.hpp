#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "spdc/biphoton.hpp"
#include "spdc/instrument.hpp"

namespace spdc::io {

/// Full run configuration. Defaults reproduce the reference apparatus:
/// 40 mm MgO:ppLN with 19.2 um poling, cw pump near 775 nm focused to an
/// 80 um waist, f1 = 200 mm Fourier lens, M_FF = 0.03 / M_NF = 0.75
/// imaging, 10.4 um fiber mode, 21-point 10 um scans, 0.6 nm WDM channels
/// at 1548.52 / 1551.72 nm and a 1.25 nm grating filter.
///
/// The pump wavelength default is calibrated (within the nominal
/// 775.0 +- 0.5 nm) so the degenerate collinear temperature lands near 84 C
/// for the default crystal.
struct RunConfig {
  CrystalConfig crystal;
  PumpBeam pump;
  DetectionGeometry geometry;
  ScanProtocol scan;

  int grid_n = 512;
  double grid_q_max = 0.0; // 0 = derive from the sweep (4x largest ring)

  double t_start_c = 80.0;
  double t_stop_c = 90.0;
  double t_step_c = 0.5;

  double wdm_signal_nm = 1548.52;
  double wdm_idler_nm = 1551.72;
  double wdm_fwhm_nm = 0.6;

  FilterSpec grating{1550.0, 1.25, FilterShape::Gaussian};
  double grating_dispersion_nm_per_mrad = 1.46;

  double spectrum_lo_nm = 1400.0;
  double spectrum_hi_nm = 1750.0;
  double spectrum_step_nm = 0.2;

  double detector_efficiency = 0.8;
  double peak_singles_hz = 1.0e5;
  double peak_coincidences_hz = 1.0e4;

  std::uint64_t seed = 1;
  std::string output_dir = "out";

  void validate() const;

  double wdm_signal_um() const { return wdm_signal_nm * 1.0e-3; }
  double wdm_idler_um() const { return wdm_idler_nm * 1.0e-3; }

  /// Grid for joint-amplitude computations: explicit q_max if configured,
  /// otherwise derived from the sweep range.
  TransverseGrid make_grid() const;
  TransverseGrid make_grid(int n_override) const;
};

/// Strict JSON load: unknown keys are rejected by name, all component
/// invariants validated, omitted fields take the defaults above.
RunConfig load_config(const std::filesystem::path& path);
RunConfig config_from_json_text(const std::string& text, const std::string& origin);

/// Effective-configuration echo; load_config(echo) reproduces the config.
std::string config_to_json_text(const RunConfig& cfg);

/// Sellmeier set from the documented JSON schema
/// { "name", "coefficients": {a1..a6, b1..b4}, "lambda_range_um", "temp_range_c" }.
SellmeierSet load_sellmeier(const std::filesystem::path& path);

} // namespace spdc::io
