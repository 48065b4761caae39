#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "spdc/grid.hpp"
#include "spdc/phasematch.hpp"
#include "spdc/profile.hpp"

namespace spdc {

/// Gaussian cw pump beam; waist is the 1/e^2 intensity radius of the field
/// at the crystal center.
struct PumpBeam {
  PumpSpec spec;
  double waist_um = 80.0;
};

/// Gaussian angular spectrum of the pump, exp(-w^2 |q_sum|^2 / 4), peak 1 at
/// q_sum = 0.
double pump_angular_spectrum(double q_sum, const PumpBeam& pump);

/// Joint signal/idler amplitude on one transverse axis (q_y = 0), sampled on
/// the grid for both arguments:
///   phi[j,k] = E_p(q_j + q_k) sinc( L/(4 k_p) (q_j - q_k)^2 + phi(T, lambda_s) ).
/// Row index j is the signal transverse wavevector, column k the idler.
struct BiphotonMatrix {
  Eigen::MatrixXcd phi;
  TransverseGrid grid;
  double lambda_s_um = 0.0;
  double lambda_i_um = 0.0;
  double temperature_c = 0.0;
};

BiphotonMatrix biphoton_matrix(double lambda_s_um, Temperature t,
                               const CrystalConfig& crystal, const PumpBeam& pump,
                               const TransverseGrid& grid);

/// Position-space joint amplitude: centered unitary 2D Fourier transform of
/// the momentum-space matrix; samples live on the conjugate x-grid.
struct NearFieldMatrix {
  Eigen::MatrixXcd psi;
  TransverseGrid grid; // x coordinates via grid.x(i)
  double lambda_s_um = 0.0;
  double lambda_i_um = 0.0;
  double temperature_c = 0.0;
};

NearFieldMatrix nearfield_matrix(const BiphotonMatrix& phi);

/// Single-photon intensity along the first (signal) index:
/// I[j] = sum_k |M[j,k]|^2 * sum_cell. The resulting line profile carries
/// own_cell as its per-sample measure.
IntensityProfile marginal_intensity(const Eigen::MatrixXcd& m, Plane plane,
                                    const std::vector<double>& coord,
                                    double sum_cell, double own_cell);

IntensityProfile farfield_marginal(const BiphotonMatrix& phi);
IntensityProfile nearfield_marginal(const NearFieldMatrix& psi);

/// Near-field marginal evaluated at arbitrary positions (finer than the
/// conjugate grid spacing) through a partial transform of the momentum
/// matrix.
IntensityProfile nearfield_marginal_at(const BiphotonMatrix& phi,
                                       const std::vector<double>& x_um);

/// Rotationally exact far-field single-photon radial intensity,
///   I(|q_s|) = integral |Phi(q_s, q_i)|^2 d^2 q_i,  q_s on the x-axis,
/// by tensor-product Gauss-Legendre quadrature over q_i (n_quad^2 nodes on a
/// square of half-size >= 4 max(ring radius, pump spectral width)).
/// Normalized to peak 1. If the integrand at the quadrature-domain boundary
/// exceeds 1e-3 of its peak, a warning is appended to *domain_warning.
IntensityProfile farfield_radial_profile(double lambda_s_um, Temperature t,
                                         const CrystalConfig& crystal,
                                         const PumpBeam& pump, int n_radial,
                                         int n_quad, double q_radial_max,
                                         std::string* domain_warning = nullptr,
                                         double quad_half_domain = 0.0);

/// Square image sampled on [-half_extent, half_extent]^2, row-major
/// v[ix * n + iy], coordinates x(i) = (i - (n-1)/2) * 2 half_extent/(n-1).
struct Image2D {
  int n = 0;
  double half_extent = 0.0;
  std::vector<double> v;

  double coord(int i) const { return (i - 0.5 * (n - 1)) * step(); }
  double step() const { return 2.0 * half_extent / (n - 1); }
  double at(int ix, int iy) const { return v[static_cast<std::size_t>(ix) * n + iy]; }
  double& at(int ix, int iy) { return v[static_cast<std::size_t>(ix) * n + iy]; }
};

/// Revolution of a radial profile into a square map; the profile must cover
/// the image diagonal.
Image2D farfield_image(const IntensityProfile& radial, int n_pixels,
                       double half_extent);

/// |phi[j,k]|^2 for an explicit wavelength pair, normalized to peak 1.
/// The pair must satisfy energy conservation with the pump to 1e-3 relative.
struct CoincidenceSlice {
  Eigen::MatrixXd intensity; // row: signal q, column: idler q
  TransverseGrid grid;
  double lambda_s_um = 0.0;
  double lambda_i_um = 0.0;
  double temperature_c = 0.0;
};

CoincidenceSlice coincidence_slice(double lambda_s_um, double lambda_i_um,
                                   Temperature t, const CrystalConfig& crystal,
                                   const PumpBeam& pump, const TransverseGrid& grid);

/// Default grid for a temperature sweep: q_max is four times the largest
/// emission-ring wavevector over the sweep range (computed, never
/// hard-coded), with a floor of four times the pump spectral width plus the
/// phase-matching width for ring-free sweeps.
TransverseGrid default_sweep_grid(int n, double lambda_s_um,
                                  const CrystalConfig& crystal, const PumpBeam& pump,
                                  double t_start_c, double t_stop_c, double t_step_c);

} // namespace spdc
