#include "spdc/instrument.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace spdc {

void DetectionGeometry::validate() const {
  if (!(f1_mm > 0.0) || !(mag_ff > 0.0) || !(mag_nf > 0.0) || !(fiber_mfd_um > 0.0))
    throw ValidationError("DetectionGeometry: all parameters must be positive");
}

void ScanProtocol::validate() const {
  if (points < 1 || points % 2 == 0)
    throw ValidationError("ScanProtocol: points must be odd so the center sample exists");
  if (!(step_um > 0.0))
    throw ValidationError("ScanProtocol: step must be positive");
  if (!(dwell_s > 0.0))
    throw ValidationError("ScanProtocol: dwell must be positive");
  if (!(coincidence_window_ps > 0.0) || dark_rate_hz < 0.0)
    throw ValidationError("ScanProtocol: invalid window or dark rate");
}

void FilterSpec::validate() const {
  if (!(fwhm_nm > 0.0))
    throw ValidationError("FilterSpec: FWHM must be positive");
}

double q_to_detector_ff(double q, double lambda_um, Temperature t,
                        const DetectionGeometry& geom, const SellmeierSet& s) {
  const double k = wavenumber(lambda_um, t, s);
  if (!(std::abs(q) < k)) {
    std::ostringstream os;
    os << "transverse wavevector " << q << " rad/um is evanescent at lambda = "
       << lambda_um << " um (k = " << k << " rad/um)";
    throw DomainError(os.str());
  }
  return geom.mag_ff * geom.f1_um() * q / k;
}

double detector_to_q_ff(double x_det_um, double lambda_um, Temperature t,
                        const DetectionGeometry& geom, const SellmeierSet& s) {
  const double k = wavenumber(lambda_um, t, s);
  return x_det_um * k / (geom.mag_ff * geom.f1_um());
}

double r_to_detector_nf(double r_um, const DetectionGeometry& geom) {
  return geom.mag_nf * r_um;
}

double detector_to_r_nf(double x_det_um, const DetectionGeometry& geom) {
  return x_det_um / geom.mag_nf;
}

namespace {

// Gaussian kernel on a uniform grid, sigma in grid units of `step`.
std::vector<double> gaussian_kernel(double sigma, double step) {
  const int half = std::max(1, static_cast<int>(std::ceil(6.0 * sigma / step)));
  std::vector<double> ker(static_cast<std::size_t>(2 * half + 1));
  double sum = 0.0;
  for (int i = -half; i <= half; ++i) {
    const double t = i * step;
    const double v = std::exp(-t * t / (2.0 * sigma * sigma));
    ker[static_cast<std::size_t>(i + half)] = v;
    sum += v;
  }
  for (double& v : ker) v /= sum;
  return ker;
}

// Convolution with kernel mass renormalized inside the window, so constants
// stay constant at the edges and interior totals are preserved.
std::vector<double> convolve_renorm(const std::vector<double>& in,
                                    const std::vector<double>& ker) {
  const int n = static_cast<int>(in.size());
  const int half = static_cast<int>(ker.size() / 2);
  std::vector<double> out(in.size());
  for (int i = 0; i < n; ++i) {
    double acc = 0.0, mass = 0.0;
    const int j0 = std::max(-half, -i);
    const int j1 = std::min(half, n - 1 - i);
    for (int j = j0; j <= j1; ++j) {
      const double w = ker[static_cast<std::size_t>(j + half)];
      acc += w * in[static_cast<std::size_t>(i + j)];
      mass += w;
    }
    out[static_cast<std::size_t>(i)] = acc / mass;
  }
  return out;
}

void blur_image_separable(Image2D& img, double sigma_um) {
  const std::vector<double> ker = gaussian_kernel(sigma_um, img.step());
  const int n = img.n;
  std::vector<double> line(static_cast<std::size_t>(n));
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) line[static_cast<std::size_t>(ix)] = img.at(ix, iy);
    const std::vector<double> b = convolve_renorm(line, ker);
    for (int ix = 0; ix < n; ++ix) img.at(ix, iy) = b[static_cast<std::size_t>(ix)];
  }
  for (int ix = 0; ix < n; ++ix) {
    for (int iy = 0; iy < n; ++iy) line[static_cast<std::size_t>(iy)] = img.at(ix, iy);
    const std::vector<double> b = convolve_renorm(line, ker);
    for (int iy = 0; iy < n; ++iy) img.at(ix, iy) = b[static_cast<std::size_t>(iy)];
  }
}

void normalize_peak(Image2D& img) {
  double peak = 0.0;
  for (double v : img.v) peak = std::max(peak, v);
  if (peak > 0.0)
    for (double& v : img.v) v /= peak;
}

double interp_radial(const IntensityProfile& radial, double r) {
  const auto it = std::lower_bound(radial.coord.begin(), radial.coord.end(), r);
  if (it == radial.coord.begin()) return radial.intensity.front();
  if (it == radial.coord.end()) return radial.intensity.back();
  const std::size_t hi = static_cast<std::size_t>(it - radial.coord.begin());
  const double r0 = radial.coord[hi - 1], r1 = radial.coord[hi];
  const double f = (r - r0) / (r1 - r0);
  return (1.0 - f) * radial.intensity[hi - 1] + f * radial.intensity[hi];
}

} // namespace

IntensityProfile fiber_blur(const IntensityProfile& profile,
                            const DetectionGeometry& geom) {
  profile.validate();
  if (profile.coord.size() < 2)
    throw ValidationError("fiber_blur: need at least two samples");
  const double spacing = profile.coord[1] - profile.coord[0];
  if (!(spacing < 0.5 * geom.fiber_mfd_um)) {
    std::ostringstream os;
    os << "fiber_blur: profile spacing " << spacing
       << " um is coarser than half the fiber mode field diameter ("
       << 0.5 * geom.fiber_mfd_um << " um)";
    throw ValidationError(os.str());
  }

  IntensityProfile out = profile;
  out.intensity = convolve_renorm(profile.intensity,
                                  gaussian_kernel(geom.blur_sigma_um(), spacing));
  return out;
}

double wdm_weight(double lambda_nm, const FilterSpec& filter) {
  filter.validate();
  const double d = lambda_nm - filter.center_nm;
  if (filter.shape == FilterShape::Rectangular)
    return std::abs(d) <= 0.5 * filter.fwhm_nm ? 1.0 : 0.0;
  return std::exp(-4.0 * M_LN2 * d * d / (filter.fwhm_nm * filter.fwhm_nm));
}

double accidental_rate(double singles_1_hz, double singles_2_hz, double tau_ps) {
  if (singles_1_hz < 0.0 || singles_2_hz < 0.0 || tau_ps < 0.0)
    throw ValidationError("accidental_rate: rates and window must be nonnegative");
  return singles_1_hz * singles_2_hz * tau_ps * 1.0e-12;
}

double grating_rotation_to_wavelength(double center_nm, double delta_mrad,
                                      double dispersion_nm_per_mrad) {
  return center_nm + dispersion_nm_per_mrad * delta_mrad;
}

SpectralCurve convolve_spectrum(const SpectralCurve& in, const FilterSpec& filter) {
  filter.validate();
  if (in.lambda_um.size() < 2 || !(in.step_um > 0.0))
    throw ValidationError("convolve_spectrum: need a uniformly sampled curve");
  const double fwhm_um = filter.fwhm_nm * 1.0e-3;
  if (!(in.step_um <= 0.5 * fwhm_um)) {
    std::ostringstream os;
    os << "convolve_spectrum: sampling step " << in.step_um * 1.0e3
       << " nm undersamples the " << filter.fwhm_nm << " nm filter response";
    throw ValidationError(os.str());
  }

  SpectralCurve out = in;
  if (filter.shape == FilterShape::Gaussian) {
    const double sigma = fwhm_um / (2.0 * std::sqrt(2.0 * M_LN2));
    out.intensity = convolve_renorm(in.intensity, gaussian_kernel(sigma, in.step_um));
  } else {
    const int half = static_cast<int>(std::floor(0.5 * fwhm_um / in.step_um));
    std::vector<double> ker(static_cast<std::size_t>(2 * half + 1),
                            1.0 / (2 * half + 1));
    out.intensity = convolve_renorm(in.intensity, ker);
  }
  const double peak = *std::max_element(out.intensity.begin(), out.intensity.end());
  if (peak > 0.0) {
    for (double& v : out.intensity) v /= peak;
    out.raw_peak = peak * in.raw_peak;
  }
  return out;
}

SpectralCurve simulate_spectrum_scan(Temperature t, const CrystalConfig& crystal,
                                     const PumpSpec& pump, const FilterSpec& grating,
                                     double lambda_lo_nm, double lambda_hi_nm,
                                     double step_nm) {
  grating.validate();
  if (!(step_nm > 0.0) || !(lambda_hi_nm > lambda_lo_nm))
    throw ValidationError("simulate_spectrum_scan: invalid wavelength range");
  if (!(step_nm <= 0.5 * grating.fwhm_nm)) {
    std::ostringstream os;
    os << "simulate_spectrum_scan: bin step " << step_nm
       << " nm undersamples the " << grating.fwhm_nm << " nm grating response";
    throw ValidationError(os.str());
  }

  // Internal grid: an integer refinement of the requested bins, extended by
  // the kernel support so every output bin sees the full response.
  const int subdiv = std::max(1, static_cast<int>(std::ceil(step_nm / (grating.fwhm_nm / 10.0))));
  const double fine_nm = step_nm / subdiv;
  const double pad_nm = 4.0 * grating.fwhm_nm;
  const long n_bins = static_cast<long>(std::floor((lambda_hi_nm - lambda_lo_nm) / step_nm + 0.5)) + 1;
  const long pad_samples = static_cast<long>(std::ceil(pad_nm / fine_nm));
  const long n_fine = (n_bins - 1) * subdiv + 1 + 2 * pad_samples;

  SpectralCurve fine;
  fine.temperature_c = t.celsius;
  fine.step_um = fine_nm * 1.0e-3;
  fine.lambda_um.resize(static_cast<std::size_t>(n_fine));
  fine.intensity.resize(static_cast<std::size_t>(n_fine));
  for (long i = 0; i < n_fine; ++i) {
    const double lam_nm = lambda_lo_nm + (i - pad_samples) * fine_nm;
    const double lam_um = lam_nm * 1.0e-3;
    fine.lambda_um[static_cast<std::size_t>(i)] = lam_um;
    fine.intensity[static_cast<std::size_t>(i)] =
        spectral_density(lam_um, t, crystal, pump);
  }

  const SpectralCurve conv = convolve_spectrum(fine, grating);

  SpectralCurve out;
  out.temperature_c = t.celsius;
  out.step_um = step_nm * 1.0e-3;
  out.lambda_um.resize(static_cast<std::size_t>(n_bins));
  out.intensity.resize(static_cast<std::size_t>(n_bins));
  double peak = 0.0;
  for (long b = 0; b < n_bins; ++b) {
    const long i = pad_samples + b * subdiv;
    out.lambda_um[static_cast<std::size_t>(b)] = conv.lambda_um[static_cast<std::size_t>(i)];
    out.intensity[static_cast<std::size_t>(b)] = conv.intensity[static_cast<std::size_t>(i)];
    peak = std::max(peak, out.intensity[static_cast<std::size_t>(b)]);
  }
  if (peak > 0.0) {
    for (double& v : out.intensity) v /= peak;
    out.raw_peak = peak * conv.raw_peak;
  }
  return out;
}

CountsMap poisson_counts(const Image2D& rates, double dwell_s, double dark_rate_hz,
                         std::uint64_t seed) {
  if (!(dwell_s > 0.0) || dark_rate_hz < 0.0)
    throw ValidationError("poisson_counts: invalid dwell or dark rate");
  CountsMap out;
  out.n = rates.n;
  out.half_extent = rates.half_extent;
  out.v.resize(rates.v.size());
  for (std::size_t i = 0; i < rates.v.size(); ++i) {
    if (!(rates.v[i] >= 0.0))
      throw ValidationError("poisson_counts: negative rate");
    CounterRng rng(seed, static_cast<std::uint64_t>(i));
    out.v[i] = poisson_sample(rng, (rates.v[i] + dark_rate_hz) * dwell_s);
  }
  return out;
}

namespace {

Image2D sample_scan_grid(const Image2D& fine, const ScanProtocol& protocol) {
  Image2D out;
  out.n = protocol.points;
  out.half_extent = protocol.half_window_um();
  out.v.resize(static_cast<std::size_t>(out.n) * out.n);
  for (int a = 0; a < out.n; ++a) {
    for (int b = 0; b < out.n; ++b) {
      const double x = out.coord(a), y = out.coord(b);
      // bilinear sample of the fine image
      const double fx = (x + fine.half_extent) / fine.step();
      const double fy = (y + fine.half_extent) / fine.step();
      const int ix = std::clamp(static_cast<int>(std::floor(fx)), 0, fine.n - 2);
      const int iy = std::clamp(static_cast<int>(std::floor(fy)), 0, fine.n - 2);
      const double tx = std::clamp(fx - ix, 0.0, 1.0);
      const double ty = std::clamp(fy - iy, 0.0, 1.0);
      out.at(a, b) = (1 - tx) * (1 - ty) * fine.at(ix, iy) +
                     tx * (1 - ty) * fine.at(ix + 1, iy) +
                     (1 - tx) * ty * fine.at(ix, iy + 1) +
                     tx * ty * fine.at(ix + 1, iy + 1);
    }
  }
  return out;
}

} // namespace

Image2D detector_plane_image(Plane plane, Temperature t, const CrystalConfig& crystal,
                             const PumpBeam& pump, const DetectionGeometry& geom,
                             double lambda_um, const TransverseGrid& grid,
                             double half_extent_um, double step_um,
                             int n_radial, int n_quad) {
  geom.validate();

  Image2D img;
  img.n = static_cast<int>(std::floor(2.0 * half_extent_um / step_um + 0.5)) + 1;
  img.half_extent = 0.5 * (img.n - 1) * step_um;
  img.v.resize(static_cast<std::size_t>(img.n) * img.n);

  const double diag = img.half_extent * std::sqrt(2.0) + 1.0;
  if (plane == Plane::FarField) {
    const double q_rmax = detector_to_q_ff(diag, lambda_um, t, geom, crystal.sellmeier);
    const IntensityProfile radial = farfield_radial_profile(
        lambda_um, t, crystal, pump, n_radial, n_quad, q_rmax);
    const double scale = q_to_detector_ff(1.0e-6, lambda_um, t, geom, crystal.sellmeier) / 1.0e-6;
    for (int ix = 0; ix < img.n; ++ix)
      for (int iy = 0; iy < img.n; ++iy)
        img.at(ix, iy) =
            interp_radial(radial, std::hypot(img.coord(ix), img.coord(iy)) / scale);
  } else {
    // Near-field marginal on a fine physical axis, revolved radially.
    const double r_max = detector_to_r_nf(diag, geom);
    const int n_r = std::max(64, img.n);
    std::vector<double> r(static_cast<std::size_t>(n_r));
    for (int i = 0; i < n_r; ++i)
      r[static_cast<std::size_t>(i)] = r_max * i / (n_r - 1);
    const BiphotonMatrix phi = biphoton_matrix(lambda_um, t, crystal, pump, grid);
    IntensityProfile marg = nearfield_marginal_at(phi, r);
    for (int ix = 0; ix < img.n; ++ix)
      for (int iy = 0; iy < img.n; ++iy)
        img.at(ix, iy) = interp_radial(
            marg, detector_to_r_nf(std::hypot(img.coord(ix), img.coord(iy)), geom));
  }

  blur_image_separable(img, geom.blur_sigma_um());
  normalize_peak(img);
  return img;
}

FarFieldScan simulate_far_field_scan(Temperature t, const CrystalConfig& crystal,
                                     const PumpBeam& pump,
                                     const DetectionGeometry& geom,
                                     const ScanProtocol& protocol,
                                     double lambda_s_um, double lambda_i_um,
                                     const TransverseGrid& grid,
                                     int n_radial, int n_quad) {
  geom.validate();
  protocol.validate();

  FarFieldScan scan;

  // Singles, idler arm: fine blurred detector image sampled on the scan grid.
  const int subdiv = std::max(1, static_cast<int>(std::ceil(
                         8.0 * protocol.step_um / geom.fiber_mfd_um)));
  const double fine_step = protocol.step_um / subdiv;
  const double margin = 8.0 * geom.blur_sigma_um();
  const Image2D fine = detector_plane_image(
      Plane::FarField, t, crystal, pump, geom, lambda_i_um, grid,
      protocol.half_window_um() + margin, fine_step, n_radial, n_quad);
  scan.singles = sample_scan_grid(fine, protocol);
  normalize_peak(scan.singles);

  // Coincidences on the (x_i, x_s) plane from the joint slice.
  const CoincidenceSlice slice =
      coincidence_slice(lambda_s_um, lambda_i_um, t, crystal, pump, grid);
  const double scale_s =
      q_to_detector_ff(1.0e-6, lambda_s_um, t, geom, crystal.sellmeier) / 1.0e-6;
  const double scale_i =
      q_to_detector_ff(1.0e-6, lambda_i_um, t, geom, crystal.sellmeier) / 1.0e-6;

  const double q_window = protocol.half_window_um() / std::min(scale_s, scale_i);
  if (q_window > grid.q_max) {
    std::ostringstream os;
    os << "scan window corresponds to |q| up to " << q_window
       << " rad/um, beyond the computed field extent q_max = " << grid.q_max;
    scan.warnings.push_back(os.str());
  }

  // Blur along each axis in its own detector units, then sample.
  Eigen::MatrixXd blurred = slice.intensity;
  {
    const double dq = grid.dq();
    std::vector<double> line(static_cast<std::size_t>(grid.n));
    const std::vector<double> ker_s =
        gaussian_kernel(geom.blur_sigma_um() / scale_s, dq);
    for (int k = 0; k < grid.n; ++k) {
      for (int j = 0; j < grid.n; ++j) line[static_cast<std::size_t>(j)] = blurred(j, k);
      const std::vector<double> b = convolve_renorm(line, ker_s);
      for (int j = 0; j < grid.n; ++j) blurred(j, k) = b[static_cast<std::size_t>(j)];
    }
    const std::vector<double> ker_i =
        gaussian_kernel(geom.blur_sigma_um() / scale_i, dq);
    for (int j = 0; j < grid.n; ++j) {
      for (int k = 0; k < grid.n; ++k) line[static_cast<std::size_t>(k)] = blurred(j, k);
      const std::vector<double> b = convolve_renorm(line, ker_i);
      for (int k = 0; k < grid.n; ++k) blurred(j, k) = b[static_cast<std::size_t>(k)];
    }
  }

  Image2D coinc;
  coinc.n = protocol.points;
  coinc.half_extent = protocol.half_window_um();
  coinc.v.resize(static_cast<std::size_t>(coinc.n) * coinc.n);
  const double c = grid.center();
  const double dq = grid.dq();
  for (int a = 0; a < coinc.n; ++a) {   // row: x_i
    const double q_i = coinc.coord(a) / scale_i;
    for (int b = 0; b < coinc.n; ++b) { // column: x_s
      const double q_s = coinc.coord(b) / scale_s;
      const double fj = q_s / dq + c;   // signal = matrix row
      const double fk = q_i / dq + c;
      const int j = std::clamp(static_cast<int>(std::floor(fj)), 0, grid.n - 2);
      const int k = std::clamp(static_cast<int>(std::floor(fk)), 0, grid.n - 2);
      const double tj = std::clamp(fj - j, 0.0, 1.0);
      const double tk = std::clamp(fk - k, 0.0, 1.0);
      coinc.at(a, b) = (1 - tj) * (1 - tk) * blurred(j, k) +
                       tj * (1 - tk) * blurred(j + 1, k) +
                       (1 - tj) * tk * blurred(j, k + 1) +
                       tj * tk * blurred(j + 1, k + 1);
    }
  }
  normalize_peak(coinc);
  scan.coincidences = coinc;
  return scan;
}

Image2D simulate_near_field_scan(Temperature t, const CrystalConfig& crystal,
                                 const PumpBeam& pump, const DetectionGeometry& geom,
                                 const ScanProtocol& protocol, double lambda_s_um,
                                 const TransverseGrid& grid) {
  geom.validate();
  protocol.validate();
  const int subdiv = std::max(1, static_cast<int>(std::ceil(
                         8.0 * protocol.step_um / geom.fiber_mfd_um)));
  const double fine_step = protocol.step_um / subdiv;
  const double margin = 8.0 * geom.blur_sigma_um();
  const Image2D fine = detector_plane_image(
      Plane::NearField, t, crystal, pump, geom, lambda_s_um, grid,
      protocol.half_window_um() + margin, fine_step);
  Image2D out = sample_scan_grid(fine, protocol);
  normalize_peak(out);
  return out;
}

} // namespace spdc
