#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spdc/biphoton.hpp"
#include "spdc/prng.hpp"
#include "spdc/profile.hpp"

namespace spdc {

/// Imaging chain from the crystal to the fiber tips: Fourier lens, near- and
/// far-field magnifications, fiber mode.
struct DetectionGeometry {
  double f1_mm = 200.0;       // Fourier-lens focal length
  double mag_ff = 0.03;       // far-field magnification
  double mag_nf = 0.75;       // near-field magnification
  double fiber_mfd_um = 10.4; // 1/e^2 intensity diameter of the fiber mode

  void validate() const;
  double f1_um() const { return f1_mm * 1.0e3; }
  /// Intensity sigma of the Gaussian fiber-mode kernel.
  double blur_sigma_um() const { return fiber_mfd_um / 4.0; }
};

/// Stepwise fiber-scan settings.
struct ScanProtocol {
  int points = 21;           // per axis, odd so the center sample exists
  double step_um = 10.0;
  double dwell_s = 1.0;
  double coincidence_window_ps = 200.0;
  double dark_rate_hz = 100.0;

  void validate() const;
  double half_window_um() const { return 0.5 * (points - 1) * step_um; }
};

enum class FilterShape { Gaussian, Rectangular };

/// Spectral bandpass (WDM channel or grating response).
struct FilterSpec {
  double center_nm = 1550.0;
  double fwhm_nm = 0.6;
  FilterShape shape = FilterShape::Gaussian;

  void validate() const;
};

/// Far-field mapping: transverse wavevector to detector-plane position,
/// x_det = M_FF f1 q / k(lambda, T). Strictly monotone and invertible.
double q_to_detector_ff(double q, double lambda_um, Temperature t,
                        const DetectionGeometry& geom, const SellmeierSet& s);
double detector_to_q_ff(double x_det_um, double lambda_um, Temperature t,
                        const DetectionGeometry& geom, const SellmeierSet& s);

/// Near-field mapping: crystal-plane position to detector, x_det = M_NF r.
double r_to_detector_nf(double r_um, const DetectionGeometry& geom);
double detector_to_r_nf(double x_det_um, const DetectionGeometry& geom);

/// Convolution of a detector-plane line intensity with the fiber-mode
/// intensity (Gaussian, 1/e^2 diameter = MFD). Total intensity preserved;
/// requires sampling finer than MFD/2.
IntensityProfile fiber_blur(const IntensityProfile& profile,
                            const DetectionGeometry& geom);

/// Transmission weight of a spectral filter at lambda (nm), in [0, 1].
double wdm_weight(double lambda_nm, const FilterSpec& filter);

/// Accidental coincidence rate singles_1 * singles_2 * tau.
double accidental_rate(double singles_1_hz, double singles_2_hz, double tau_ps);

/// Grating angular dispersion: wavelength selected after rotating by
/// delta_mrad from a position centered at center_nm.
double grating_rotation_to_wavelength(double center_nm, double delta_mrad,
                                      double dispersion_nm_per_mrad = 1.46);

/// Convolve a (uniformly sampled) spectrum with the filter response and
/// renormalize to peak 1. Requires sampling finer than FWHM/2.
SpectralCurve convolve_spectrum(const SpectralCurve& in, const FilterSpec& filter);

/// Full grating-spectrometer simulation: collinear spectral density sampled
/// at step_nm bins over [lambda_lo, lambda_hi] nm after convolution with the
/// grating response.
SpectralCurve simulate_spectrum_scan(Temperature t, const CrystalConfig& crystal,
                                     const PumpSpec& pump, const FilterSpec& grating,
                                     double lambda_lo_nm, double lambda_hi_nm,
                                     double step_nm);

/// Integer counts map with the scan-grid geometry of the rate map.
struct CountsMap {
  int n = 0;
  double half_extent = 0.0;
  std::vector<std::int64_t> v;
};

/// Independent Poisson draws with mean (rate + dark) * dwell per cell, from
/// a counter-based stream per cell: reproducible for a fixed seed under any
/// evaluation order.
CountsMap poisson_counts(const Image2D& rates, double dwell_s, double dark_rate_hz,
                         std::uint64_t seed);

struct FarFieldScan {
  Image2D singles;       // (x, y) detector um, idler arm, peak-normalized
  Image2D coincidences;  // (x_i, x_s) detector um, y = 0, peak-normalized
  std::vector<std::string> warnings;
};

/// Simulate the stepwise far-field scan at a fixed WDM wavelength pair:
/// singles from the revolved exact radial profile, coincidences from the
/// joint slice; both mapped to detector coordinates, fiber-blurred and
/// sampled at the protocol grid.
FarFieldScan simulate_far_field_scan(Temperature t, const CrystalConfig& crystal,
                                     const PumpBeam& pump,
                                     const DetectionGeometry& geom,
                                     const ScanProtocol& protocol,
                                     double lambda_s_um, double lambda_i_um,
                                     const TransverseGrid& grid,
                                     int n_radial = 257, int n_quad = 200);

/// Near-field singles scan: the joint-matrix marginal revolved under
/// rotational symmetry, mapped through M_NF, blurred and sampled.
Image2D simulate_near_field_scan(Temperature t, const CrystalConfig& crystal,
                                 const PumpBeam& pump, const DetectionGeometry& geom,
                                 const ScanProtocol& protocol, double lambda_s_um,
                                 const TransverseGrid& grid);

/// Fine-grained (unsampled) forward model used by the scan simulations:
/// detector-plane blurred intensity image for one plane. Exposed so analyses
/// can be validated against the exact field they observe.
Image2D detector_plane_image(Plane plane, Temperature t, const CrystalConfig& crystal,
                             const PumpBeam& pump, const DetectionGeometry& geom,
                             double lambda_um, const TransverseGrid& grid,
                             double half_extent_um, double step_um,
                             int n_radial = 257, int n_quad = 200);

} // namespace spdc
