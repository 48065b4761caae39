#include "spdc/phasematch.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace spdc {

double idler_wavelength(double lambda_s_um, const PumpSpec& pump) {
  if (!(lambda_s_um > pump.wavelength_um)) {
    std::ostringstream os;
    os << "signal wavelength " << lambda_s_um
       << " um must exceed the pump wavelength " << pump.wavelength_um
       << " um (idler frequency would be non-positive)";
    throw DomainError(os.str());
  }
  return 1.0 / (1.0 / pump.wavelength_um - 1.0 / lambda_s_um);
}

double collinear_mismatch(double lambda_s_um, Temperature t,
                          const CrystalConfig& crystal, const PumpSpec& pump) {
  const double lambda_i = idler_wavelength(lambda_s_um, pump);
  const SellmeierSet& s = crystal.sellmeier;
  const double k_p = wavenumber(pump.wavelength_um, t, s);
  const double k_s = wavenumber(lambda_s_um, t, s);
  const double k_i = wavenumber(lambda_i, t, s);
  const double k_m = grating_wavevector(crystal, t);
  return 0.5 * crystal.length_um() * (k_p - k_s - k_i - k_m);
}

namespace {

// Bisection for a continuous f with a sign change on [lo, hi].
template <typename F>
double bisect(F&& f, double lo, double hi, double f_lo, double f_hi,
              double x_tol, const char* what) {
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    std::ostringstream os;
    os << what << ": no sign change on bracket [" << lo << ", " << hi
       << "], f(lo) = " << f_lo << ", f(hi) = " << f_hi;
    throw SolverError(os.str());
  }
  while (hi - lo > x_tol) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

} // namespace

Temperature collinear_temperature(double lambda_s_um, const CrystalConfig& crystal,
                                  const PumpSpec& pump,
                                  double t_lo_c, double t_hi_c) {
  const auto f = [&](double t) {
    return collinear_mismatch(lambda_s_um, Temperature{t}, crystal, pump);
  };
  // Bisect well past the 0.001 C contract so the re-substituted mismatch
  // is far below 1e-4 rad.
  const double root = bisect(f, t_lo_c, t_hi_c, f(t_lo_c), f(t_hi_c), 1.0e-9,
                             "collinear_temperature");
  return Temperature{root};
}

Temperature degeneracy_temperature(const CrystalConfig& crystal, const PumpSpec& pump,
                                   double t_lo_c, double t_hi_c) {
  return collinear_temperature(pump.degenerate_wavelength_um(), crystal, pump,
                               t_lo_c, t_hi_c);
}

TuningCurve tuning_curve(const CrystalConfig& crystal, const PumpSpec& pump,
                         double t_start_c, double t_stop_c, double t_step_c) {
  if (!(t_step_c > 0.0) || t_stop_c < t_start_c)
    throw ValidationError("tuning_curve: require t_start <= t_stop and t_step > 0");

  TuningCurve out;
  const double lambda_deg = pump.degenerate_wavelength_um();
  const double lambda_lo_limit = crystal.sellmeier.lambda_range_um()[0];
  const double step_out = 1.0e-3; // 1 nm outward bracket search

  const long n = static_cast<long>(std::floor((t_stop_c - t_start_c) / t_step_c + 0.5)) + 1;
  for (long i = 0; i < n; ++i) {
    const Temperature t{t_start_c + static_cast<double>(i) * t_step_c};
    const auto phi_at = [&](double lam) {
      return collinear_mismatch(lam, t, crystal, pump);
    };
    const double phi_deg = phi_at(lambda_deg);
    if (phi_deg < 0.0) {
      std::ostringstream os;
      os << "T = " << t.celsius
         << " C: no collinear root (phi at degeneracy = " << phi_deg
         << " rad, ring regime)";
      out.diagnostics.push_back(os.str());
      continue;
    }

    // Walk outward from the degenerate wavelength on the signal branch in
    // 1 nm steps until phi changes sign, then bisect.
    double hi = lambda_deg;
    double f_hi = phi_deg;
    double lo = hi;
    double f_lo = f_hi;
    bool bracketed = (f_hi == 0.0);
    while (!bracketed) {
      lo = hi - step_out;
      if (lo <= std::max(pump.wavelength_um, lambda_lo_limit)) break;
      f_lo = phi_at(lo);
      if ((f_lo > 0.0) != (f_hi > 0.0) || f_lo == 0.0) {
        bracketed = true;
      } else {
        hi = lo;
        f_hi = f_lo;
      }
    }
    if (!bracketed && phi_deg > 0.0) {
      std::ostringstream os;
      os << "T = " << t.celsius
         << " C: no sign change found on the signal branch down to " << lo
         << " um";
      out.diagnostics.push_back(os.str());
      continue;
    }

    double lambda_s = lambda_deg;
    if (phi_deg > 0.0)
      lambda_s = bisect([&](double lam) { return phi_at(lam); }, lo, hi, f_lo,
                        f_hi, 1.0e-10, "tuning_curve");

    TuningPoint p;
    p.temperature_c = t.celsius;
    p.lambda_s_um = lambda_s;
    p.lambda_i_um = idler_wavelength(lambda_s, pump);
    p.residual_rad = std::abs(phi_at(lambda_s));
    out.points.push_back(p);
  }
  return out;
}

std::optional<double> ring_wavevector(double lambda_s_um, Temperature t,
                                      const CrystalConfig& crystal,
                                      const PumpSpec& pump) {
  const double phi = collinear_mismatch(lambda_s_um, t, crystal, pump);
  if (phi > 0.0) return std::nullopt; // beyond-collinear: central-spot emission
  const double k_p = wavenumber(pump.wavelength_um, t, crystal.sellmeier);
  return std::sqrt(-phi * k_p / crystal.length_um());
}

double emission_angle(double lambda_s_um, Temperature t,
                      const CrystalConfig& crystal, const PumpSpec& pump) {
  const auto q = ring_wavevector(lambda_s_um, t, crystal, pump);
  if (!q) return 0.0;
  const double k_s = wavenumber(lambda_s_um, t, crystal.sellmeier);
  if (!(*q < k_s)) {
    std::ostringstream os;
    os << "ring wavevector " << *q << " rad/um is evanescent (k_s = " << k_s
       << " rad/um)";
    throw DomainError(os.str());
  }
  const double k_z = std::sqrt(k_s * k_s - *q * *q);
  return std::atan2(*q, k_z);
}

double sinc(double x) {
  if (x == 0.0) return 1.0;
  return std::sin(x) / x;
}

double spectral_density(double lambda_um, Temperature t,
                        const CrystalConfig& crystal, const PumpSpec& pump) {
  const double s = sinc(collinear_mismatch(lambda_um, t, crystal, pump));
  return s * s;
}

SpectralCurve spectral_curve(const CrystalConfig& crystal, const PumpSpec& pump,
                             Temperature t, double lambda_lo_um,
                             double lambda_hi_um, double step_um) {
  if (!(step_um > 0.0) || !(lambda_hi_um > lambda_lo_um))
    throw ValidationError("spectral_curve: require lambda_lo < lambda_hi and step > 0");

  SpectralCurve c;
  c.temperature_c = t.celsius;
  c.step_um = step_um;
  const long n = static_cast<long>(std::floor((lambda_hi_um - lambda_lo_um) / step_um + 0.5)) + 1;
  c.lambda_um.reserve(n);
  c.intensity.reserve(n);
  double peak = 0.0;
  for (long i = 0; i < n; ++i) {
    const double lam = lambda_lo_um + static_cast<double>(i) * step_um;
    const double v = spectral_density(lam, t, crystal, pump);
    c.lambda_um.push_back(lam);
    c.intensity.push_back(v);
    peak = std::max(peak, v);
  }
  if (peak > 0.0) {
    for (double& v : c.intensity) v /= peak;
    c.raw_peak = peak;
  }
  return c;
}

namespace {

// Linearly interpolated abscissa where the curve crosses `level` between
// samples i and i+1.
double cross(const SpectralCurve& c, std::size_t i, double level) {
  const double y0 = c.intensity[i], y1 = c.intensity[i + 1];
  const double t = (level - y0) / (y1 - y0);
  return c.lambda_um[i] + t * (c.lambda_um[i + 1] - c.lambda_um[i]);
}

} // namespace

std::vector<double> spectrum_fwhm(const SpectralCurve& curve) {
  const std::size_t n = curve.lambda_um.size();
  if (n < 2 || curve.intensity.size() != n)
    throw AnalysisError("spectrum_fwhm: curve must hold at least two samples");

  const double peak = *std::max_element(curve.intensity.begin(), curve.intensity.end());
  const double trough = *std::min_element(curve.intensity.begin(), curve.intensity.end());
  if (!(peak > 0.0) || peak == trough)
    throw AnalysisError("spectrum_fwhm: flat curve has no half-maximum width");

  const double global_half = 0.5 * peak;
  std::vector<double> widths;
  std::size_t i = 0;
  while (i < n) {
    if (curve.intensity[i] < global_half) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && curve.intensity[j + 1] >= global_half) ++j;

    // Lobe measured against half of its own maximum; walk outward past the
    // identification region until the curve drops below that level.
    double lobe_peak = 0.0;
    for (std::size_t k = i; k <= j; ++k)
      lobe_peak = std::max(lobe_peak, curve.intensity[k]);
    const double half = 0.5 * lobe_peak;

    std::size_t a = i;
    while (a > 0 && curve.intensity[a - 1] >= half) --a;
    std::size_t b = j;
    while (b + 1 < n && curve.intensity[b + 1] >= half) ++b;
    if (a == 0 || b == n - 1)
      throw AnalysisError("spectrum_fwhm: lobe is cut by the curve boundary");

    const double left = cross(curve, a - 1, half);
    const double right = cross(curve, b, half);
    widths.push_back((right - left) * 1.0e3); // um -> nm
    i = b + 1;
  }
  if (widths.empty())
    throw AnalysisError("spectrum_fwhm: no samples above half maximum");
  return widths;
}

} // namespace spdc
