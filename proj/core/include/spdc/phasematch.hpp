#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spdc/crystal.hpp"

namespace spdc {

/// Monochromatic cw pump. The default wavelength is calibrated inside the
/// nominal 775.0 +- 0.5 nm band so that the degenerate collinear emission of
/// the default crystal occurs near 84 C.
struct PumpSpec {
  double wavelength_um = 0.77521;

  double degenerate_wavelength_um() const { return 2.0 * wavelength_um; }
};

/// One phase-matched point of the collinear tuning curve. Signal is the
/// shorter wavelength by convention; 1/lambda_s + 1/lambda_i = 1/lambda_p
/// holds exactly because the idler is constructed from energy conservation.
struct TuningPoint {
  double temperature_c = 0.0;
  double lambda_s_um = 0.0;
  double lambda_i_um = 0.0;
  double residual_rad = 0.0;
};

struct TuningCurve {
  std::vector<TuningPoint> points;
  std::vector<std::string> diagnostics; // one entry per omitted temperature
};

/// Normalized spectral samples at a fixed crystal temperature.
struct SpectralCurve {
  std::vector<double> lambda_um;  // strictly increasing
  std::vector<double> intensity;  // max-normalized to 1
  double temperature_c = 0.0;
  double step_um = 0.0;
  double raw_peak = 1.0;          // pre-normalization peak, for --raw output
};

/// Idler wavelength from energy conservation, 1/lambda_i = 1/lambda_p - 1/lambda_s.
/// Requires lambda_s > lambda_p.
double idler_wavelength(double lambda_s_um, const PumpSpec& pump);

/// Collinear phase mismatch
///   phi(T, lambda_s) = (L/2) [k_p - k_s - k_i - k_m]   [rad],
/// with the idler wavelength derived from energy conservation and all indices
/// extraordinary (type-0). phi is the argument of the sinc phase-matching
/// function; the collinear spectral density is sinc^2(phi).
double collinear_mismatch(double lambda_s_um, Temperature t,
                          const CrystalConfig& crystal, const PumpSpec& pump);

/// Temperature at which phi(lambda_s, T) = 0, by bisection (converged far
/// below the 0.001 C contract). Throws SolverError (with the endpoint
/// values) if phi does not change sign on the bracket.
Temperature collinear_temperature(double lambda_s_um, const CrystalConfig& crystal,
                                  const PumpSpec& pump,
                                  double t_lo_c, double t_hi_c);

/// Root of phi(2 lambda_p, T) = 0: the degenerate collinear temperature.
Temperature degeneracy_temperature(const CrystalConfig& crystal, const PumpSpec& pump,
                                   double t_lo_c = 30.0, double t_hi_c = 150.0);

/// Collinear tuning curve over [t_start, t_stop] in steps of t_step.
/// Above the degeneracy temperature each T contributes the signal/idler root
/// pair of phi(lambda, T) = 0; at degeneracy the degenerate point; below it
/// no collinear root exists and the temperature is recorded as a diagnostic.
TuningCurve tuning_curve(const CrystalConfig& crystal, const PumpSpec& pump,
                         double t_start_c, double t_stop_c, double t_step_c);

/// Transverse wavevector of the emission ring, |q| = sqrt(-phi k_p / L),
/// present in the ring regime phi < 0 and zero exactly at the collinear
/// boundary phi = 0. Beyond collinearity (phi > 0) the emission is a
/// central spot and the result is empty.
std::optional<double> ring_wavevector(double lambda_s_um, Temperature t,
                                      const CrystalConfig& crystal,
                                      const PumpSpec& pump);

/// External emission angle theta = arctan(|q| / k_z), k_z = sqrt(k_s^2 - q^2);
/// zero in the collinear regime.
double emission_angle(double lambda_s_um, Temperature t,
                      const CrystalConfig& crystal, const PumpSpec& pump);

/// sinc(x) = sin(x)/x, sinc(0) = 1 (unnormalized; used everywhere).
double sinc(double x);

/// Collinear spectral density sinc^2(phi(lambda, T)), in [0, 1].
double spectral_density(double lambda_um, Temperature t,
                        const CrystalConfig& crystal, const PumpSpec& pump);

/// Spectral density sampled over [lambda_lo, lambda_hi], max-normalized.
SpectralCurve spectral_curve(const CrystalConfig& crystal, const PumpSpec& pump,
                             Temperature t, double lambda_lo_um,
                             double lambda_hi_um, double step_um);

/// Per-lobe full widths at half maximum, in nm, ascending in wavelength.
/// Lobes are contiguous runs above half of the global maximum; each lobe is
/// measured against half of its own peak with linear interpolation at the
/// crossings. Throws AnalysisError on flat or empty curves.
std::vector<double> spectrum_fwhm(const SpectralCurve& curve);

} // namespace spdc
