#include "spdc/biphoton.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spdc/fourier.hpp"

namespace spdc {

double pump_angular_spectrum(double q_sum, const PumpBeam& pump) {
  const double w2 = pump.waist_um * pump.waist_um;
  return std::exp(-w2 * q_sum * q_sum / 4.0);
}

BiphotonMatrix biphoton_matrix(double lambda_s_um, Temperature t,
                               const CrystalConfig& crystal, const PumpBeam& pump,
                               const TransverseGrid& grid) {
  grid.validate();
  if (!(pump.waist_um > 0.0))
    throw ValidationError("PumpBeam: waist must be positive");

  BiphotonMatrix out;
  out.grid = grid;
  out.lambda_s_um = lambda_s_um;
  out.lambda_i_um = idler_wavelength(lambda_s_um, pump.spec);
  out.temperature_c = t.celsius;

  const double phi0 = collinear_mismatch(lambda_s_um, t, crystal, pump.spec);
  const double k_p = wavenumber(pump.spec.wavelength_um, t, crystal.sellmeier);
  const double c_pm = crystal.length_um() / (4.0 * k_p); // um^2

  const int n = grid.n;
  out.phi.resize(n, n);
  for (int j = 0; j < n; ++j) {
    const double qs = grid.q(j);
    for (int k = 0; k < n; ++k) {
      const double qi = grid.q(k);
      const double d = qs - qi;
      out.phi(j, k) = pump_angular_spectrum(qs + qi, pump) *
                      sinc(c_pm * d * d + phi0);
    }
  }
  return out;
}

NearFieldMatrix nearfield_matrix(const BiphotonMatrix& phi) {
  NearFieldMatrix out;
  out.grid = phi.grid;
  out.lambda_s_um = phi.lambda_s_um;
  out.lambda_i_um = phi.lambda_i_um;
  out.temperature_c = phi.temperature_c;
  out.psi = centered_fourier_2d(phi.phi, phi.grid);
  return out;
}

IntensityProfile marginal_intensity(const Eigen::MatrixXcd& m, Plane plane,
                                    const std::vector<double>& coord,
                                    double sum_cell, double own_cell) {
  if (static_cast<Eigen::Index>(coord.size()) != m.rows())
    throw ValidationError("marginal_intensity: coordinate count mismatch");
  IntensityProfile p;
  p.plane = plane;
  p.measure_dim = 1;
  p.coord = coord;
  p.intensity.resize(coord.size());
  p.cell.assign(coord.size(), own_cell);
  for (Eigen::Index j = 0; j < m.rows(); ++j)
    p.intensity[static_cast<std::size_t>(j)] = m.row(j).squaredNorm() * sum_cell;
  return p;
}

namespace {

std::vector<double> grid_coords_q(const TransverseGrid& g) {
  std::vector<double> c(static_cast<std::size_t>(g.n));
  for (int i = 0; i < g.n; ++i) c[static_cast<std::size_t>(i)] = g.q(i);
  return c;
}

std::vector<double> grid_coords_x(const TransverseGrid& g) {
  std::vector<double> c(static_cast<std::size_t>(g.n));
  for (int i = 0; i < g.n; ++i) c[static_cast<std::size_t>(i)] = g.x(i);
  return c;
}

} // namespace

IntensityProfile farfield_marginal(const BiphotonMatrix& phi) {
  return marginal_intensity(phi.phi, Plane::FarField, grid_coords_q(phi.grid),
                            phi.grid.dq(), phi.grid.dq());
}

IntensityProfile nearfield_marginal(const NearFieldMatrix& psi) {
  return marginal_intensity(psi.psi, Plane::NearField, grid_coords_x(psi.grid),
                            psi.grid.dx(), psi.grid.dx());
}

IntensityProfile nearfield_marginal_at(const BiphotonMatrix& phi,
                                       const std::vector<double>& x_um) {
  const Eigen::MatrixXcd half = partial_fourier_rows(phi.phi, phi.grid, x_um);
  IntensityProfile p;
  p.plane = Plane::NearField;
  p.measure_dim = 1;
  p.coord = x_um;
  p.intensity.resize(x_um.size());
  const double spacing = x_um.size() > 1 ? x_um[1] - x_um[0] : phi.grid.dx();
  p.cell.assign(x_um.size(), spacing);
  for (Eigen::Index j = 0; j < half.rows(); ++j)
    p.intensity[static_cast<std::size_t>(j)] =
        half.row(j).squaredNorm() * phi.grid.dq();
  return p;
}

namespace {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on the
// Legendre recurrence.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(static_cast<std::size_t>(n));
  w.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1.0e-15) break;
    }
    x[static_cast<std::size_t>(i)] = t;
    w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
}

} // namespace

IntensityProfile farfield_radial_profile(double lambda_s_um, Temperature t,
                                         const CrystalConfig& crystal,
                                         const PumpBeam& pump, int n_radial,
                                         int n_quad, double q_radial_max,
                                         std::string* domain_warning,
                                         double quad_half_domain) {
  if (n_radial < 2 || n_quad < 8)
    throw ValidationError("farfield_radial_profile: n_radial >= 2 and n_quad >= 8 required");
  if (!(q_radial_max > 0.0))
    throw ValidationError("farfield_radial_profile: q_radial_max must be positive");

  const double phi0 = collinear_mismatch(lambda_s_um, t, crystal, pump.spec);
  const double k_p = wavenumber(pump.spec.wavelength_um, t, crystal.sellmeier);
  const double c_pm = crystal.length_um() / (4.0 * k_p);
  const double w2 = pump.waist_um * pump.waist_um;

  const double ring = phi0 < 0.0 ? std::sqrt(-phi0 * k_p / crystal.length_um()) : 0.0;
  const double pump_width = 2.0 / pump.waist_um;
  const double half_domain =
      quad_half_domain > 0.0
          ? quad_half_domain
          : 4.0 * std::max(ring, pump_width) + q_radial_max;

  std::vector<double> gx, gw;
  gauss_legendre(n_quad, gx, gw);

  const auto integrand = [&](double qs, double qix, double qiy) {
    const double sum2 = (qs + qix) * (qs + qix) + qiy * qiy;
    const double dif2 = (qs - qix) * (qs - qix) + qiy * qiy;
    const double s = sinc(c_pm * dif2 + phi0);
    return std::exp(-w2 * sum2 / 2.0) * s * s;
  };

  IntensityProfile p;
  p.plane = Plane::FarField;
  p.measure_dim = 2;
  p.coord.resize(static_cast<std::size_t>(n_radial));
  p.intensity.resize(static_cast<std::size_t>(n_radial));
  const double dr = q_radial_max / (n_radial - 1);

  double peak = 0.0;
  for (int i = 0; i < n_radial; ++i) {
    const double qs = i * dr;
    double acc = 0.0;
    for (int a = 0; a < n_quad; ++a) {
      const double qix = half_domain * gx[static_cast<std::size_t>(a)];
      double row = 0.0;
      for (int b = 0; b < n_quad; ++b) {
        const double qiy = half_domain * gx[static_cast<std::size_t>(b)];
        row += gw[static_cast<std::size_t>(b)] * integrand(qs, qix, qiy);
      }
      acc += gw[static_cast<std::size_t>(a)] * row;
    }
    p.coord[static_cast<std::size_t>(i)] = qs;
    p.intensity[static_cast<std::size_t>(i)] = acc * half_domain * half_domain;
    peak = std::max(peak, p.intensity[static_cast<std::size_t>(i)]);
  }

  // Annular cells; the on-axis sample carries the central disk.
  p.cell.resize(static_cast<std::size_t>(n_radial));
  for (int i = 0; i < n_radial; ++i) {
    const double r = p.coord[static_cast<std::size_t>(i)];
    p.cell[static_cast<std::size_t>(i)] =
        i == 0 ? M_PI * 0.25 * dr * dr : 2.0 * M_PI * r * dr;
  }

  if (domain_warning) {
    // Boundary check at the worst case: largest |q_s| against the domain edge.
    double boundary_peak = 0.0;
    double field_peak = 0.0;
    const double qs_max = q_radial_max;
    for (int a = 0; a < n_quad; ++a) {
      const double u = half_domain * gx[static_cast<std::size_t>(a)];
      boundary_peak = std::max({boundary_peak,
                                integrand(qs_max, u, half_domain),
                                integrand(qs_max, half_domain, u),
                                integrand(qs_max, u, -half_domain),
                                integrand(qs_max, -half_domain, u)});
      field_peak = std::max(field_peak, integrand(qs_max, u, 0.0));
    }
    field_peak = std::max(field_peak, 1.0e-300);
    if (boundary_peak > 1.0e-3 * field_peak) {
      std::ostringstream os;
      os << "quadrature domain too small: boundary integrand reaches "
         << boundary_peak / field_peak << " of the field peak";
      *domain_warning = os.str();
    }
  }

  if (peak > 0.0) {
    for (double& v : p.intensity) v /= peak;
    p.raw_peak = peak;
  }
  return p;
}

Image2D farfield_image(const IntensityProfile& radial, int n_pixels,
                       double half_extent) {
  radial.validate();
  if (n_pixels < 2)
    throw ValidationError("farfield_image: need at least 2 pixels per axis");
  const double diag = half_extent * std::sqrt(2.0);
  if (radial.coord.back() + 1.0e-12 < diag)
    throw ValidationError("farfield_image: radial profile does not cover the image diagonal");

  Image2D img;
  img.n = n_pixels;
  img.half_extent = half_extent;
  img.v.resize(static_cast<std::size_t>(n_pixels) * n_pixels);
  for (int ix = 0; ix < n_pixels; ++ix) {
    const double x = img.coord(ix);
    for (int iy = 0; iy < n_pixels; ++iy) {
      const double y = img.coord(iy);
      const double r = std::hypot(x, y);
      // linear interpolation on the radial grid
      const auto it = std::lower_bound(radial.coord.begin(), radial.coord.end(), r);
      double val;
      if (it == radial.coord.begin()) {
        val = radial.intensity.front();
      } else if (it == radial.coord.end()) {
        val = radial.intensity.back();
      } else {
        const std::size_t hi = static_cast<std::size_t>(it - radial.coord.begin());
        const double r0 = radial.coord[hi - 1], r1 = radial.coord[hi];
        const double f = (r - r0) / (r1 - r0);
        val = (1.0 - f) * radial.intensity[hi - 1] + f * radial.intensity[hi];
      }
      img.at(ix, iy) = val;
    }
  }
  return img;
}

CoincidenceSlice coincidence_slice(double lambda_s_um, double lambda_i_um,
                                   Temperature t, const CrystalConfig& crystal,
                                   const PumpBeam& pump, const TransverseGrid& grid) {
  const double inv_p = 1.0 / pump.spec.wavelength_um;
  const double mismatch =
      std::abs(1.0 / lambda_s_um + 1.0 / lambda_i_um - inv_p) / inv_p;
  if (mismatch > 1.0e-3) {
    std::ostringstream os;
    os << "wavelength pair (" << lambda_s_um << ", " << lambda_i_um
       << ") um violates energy conservation with the pump by " << mismatch
       << " relative (limit 1e-3)";
    throw DomainError(os.str());
  }

  const BiphotonMatrix m = biphoton_matrix(lambda_s_um, t, crystal, pump, grid);
  CoincidenceSlice out;
  out.grid = grid;
  out.lambda_s_um = lambda_s_um;
  out.lambda_i_um = lambda_i_um;
  out.temperature_c = t.celsius;
  out.intensity = m.phi.cwiseAbs2();
  const double peak = out.intensity.maxCoeff();
  if (peak > 0.0) out.intensity /= peak;
  return out;
}

TransverseGrid default_sweep_grid(int n, double lambda_s_um,
                                  const CrystalConfig& crystal, const PumpBeam& pump,
                                  double t_start_c, double t_stop_c, double t_step_c) {
  if (!(t_step_c > 0.0) || t_stop_c < t_start_c)
    throw ValidationError("default_sweep_grid: invalid temperature range");

  double ring_max = 0.0;
  const long steps = static_cast<long>(std::floor((t_stop_c - t_start_c) / t_step_c + 0.5));
  for (long i = 0; i <= steps; ++i) {
    const Temperature t{t_start_c + static_cast<double>(i) * t_step_c};
    if (const auto q = ring_wavevector(lambda_s_um, t, crystal, pump.spec))
      ring_max = std::max(ring_max, *q);
  }
  if (ring_max > 0.0) return TransverseGrid(n, 4.0 * ring_max);

  // No ring anywhere in the range: fall back to the pump spectral width plus
  // the collinear phase-matching width.
  const Temperature t_mid{0.5 * (t_start_c + t_stop_c)};
  const double k_p = wavenumber(pump.spec.wavelength_um, t_mid, crystal.sellmeier);
  const double q_pm = std::sqrt(M_PI * k_p / crystal.length_um());
  return TransverseGrid(n, 4.0 * (2.0 / pump.waist_um + q_pm));
}

} // namespace spdc
