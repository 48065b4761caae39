// Collinear phase matching: tuning curves, rings, emission angles, spectra.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "spdc/phasematch.hpp"

using namespace spdc;

namespace {

const CrystalConfig kCrystal{};
const PumpSpec kPump{};

// Independent bisection oracle (test-side) for roots of f on [lo, hi].
template <typename F>
double bisect_oracle(F&& f, double lo, double hi, double tol) {
  double flo = f(lo), fhi = f(hi);
  REQUIRE(((flo > 0) != (fhi > 0)));
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if ((f(mid) > 0) == (flo > 0)) {
      lo = mid;
      flo = f(mid);
    } else {
      hi = mid;
      fhi = f(mid);
    }
  }
  return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("idler wavelength from energy conservation") {
  // degenerate: signal at twice the pump -> idler equals it
  const double deg = 2.0 * kPump.wavelength_um;
  CHECK(idler_wavelength(deg, kPump) == doctest::Approx(deg).epsilon(1e-15));

  // the WDM channel pair quoted for a 775.05 nm pump
  const PumpSpec paper_pump{0.77505};
  const double li = idler_wavelength(1.54852, paper_pump);
  CHECK(std::abs(li - 1.55172) < 1.0e-4);

  // idler frequency would be non-positive
  CHECK_THROWS_AS(idler_wavelength(0.5 * kPump.wavelength_um, kPump), DomainError);
  CHECK_THROWS_AS(idler_wavelength(kPump.wavelength_um, kPump), DomainError);
}

TEST_CASE("degeneracy temperature sits in the expected band") {
  const Temperature t_deg = degeneracy_temperature(kCrystal, kPump);
  CHECK(t_deg.celsius > 82.0);
  CHECK(t_deg.celsius < 86.0);

  // residual at the root
  const double phi = collinear_mismatch(kPump.degenerate_wavelength_um(), t_deg,
                                        kCrystal, kPump);
  CHECK(std::abs(phi) < 1e-6);

  // cross-check against an independent bisection
  const double t_oracle = bisect_oracle(
      [&](double t) {
        return collinear_mismatch(kPump.degenerate_wavelength_um(),
                                  Temperature{t}, kCrystal, kPump);
      },
      30.0, 150.0, 1e-9);
  CHECK(t_deg.celsius == doctest::Approx(t_oracle).epsilon(1e-9));
}

TEST_CASE("solver reports bracket endpoints when there is no sign change") {
  CHECK_THROWS_WITH_AS(
      degeneracy_temperature(kCrystal, kPump, 25.0, 26.0),
      doctest::Contains("no sign change"), SolverError);
  // out-of-validity bracket propagates the dispersion domain error
  CHECK_THROWS_AS(degeneracy_temperature(kCrystal, kPump, 10.0, 11.0), DomainError);
}

TEST_CASE("mismatch changes sign across the degeneracy temperature") {
  const double deg = kPump.degenerate_wavelength_um();
  CHECK(collinear_mismatch(deg, Temperature{80.0}, kCrystal, kPump) < 0.0);
  CHECK(collinear_mismatch(deg, Temperature{88.0}, kCrystal, kPump) > 0.0);
}

TEST_CASE("signal/idler exchange symmetry of the mismatch") {
  std::mt19937 gen(12345);
  std::uniform_real_distribution<double> lam(1.46, 1.55);
  const double scale = 0.5 * kCrystal.length_um() *
                       wavenumber(kPump.wavelength_um, Temperature{85.0},
                                  kCrystal.sellmeier);
  for (int i = 0; i < 100; ++i) {
    const double ls = lam(gen);
    const double li = idler_wavelength(ls, kPump);
    const double a = collinear_mismatch(ls, Temperature{85.0}, kCrystal, kPump);
    const double b = collinear_mismatch(li, Temperature{85.0}, kCrystal, kPump);
    // 1e-12 relative to the magnitude of the summed wavevector terms, which
    // sets the floating-point scale of the cancellation
    CHECK(std::abs(a - b) <= 1e-12 * scale);
  }
}

TEST_CASE("doubling the crystal length doubles phi and keeps the ring") {
  CrystalConfig longer = kCrystal;
  longer.length_mm = 80.0;
  const double ls = 1.54852;
  const Temperature t{81.0};
  const double phi1 = collinear_mismatch(ls, t, kCrystal, kPump);
  const double phi2 = collinear_mismatch(ls, t, longer, kPump);
  REQUIRE(phi1 < 0.0);
  CHECK(phi2 == doctest::Approx(2.0 * phi1).epsilon(1e-12));

  // |q| = sqrt(-phi k/L): the L-dependence cancels at fixed temperature,
  // equivalent to the 1/sqrt(2) scaling of the formula at fixed phi
  const auto q1 = ring_wavevector(ls, t, kCrystal, kPump);
  const auto q2 = ring_wavevector(ls, t, longer, kPump);
  REQUIRE(q1.has_value());
  REQUIRE(q2.has_value());
  CHECK(*q2 == doctest::Approx(*q1).epsilon(1e-12));
  CHECK(std::sqrt(-phi1 * 1.0 / (2.0 * kCrystal.length_um())) ==
        doctest::Approx(std::sqrt(-phi1 * 1.0 / kCrystal.length_um()) / std::sqrt(2.0))
            .epsilon(1e-15));
}

TEST_CASE("tuning curve covers the published branches") {
  const TuningCurve curve = tuning_curve(kCrystal, kPump, 80.0, 90.0, 0.5);

  // temperatures below degeneracy are omitted with diagnostics
  CHECK(!curve.diagnostics.empty());
  for (const TuningPoint& p : curve.points) {
    CHECK(p.lambda_s_um <= p.lambda_i_um);
    CHECK(p.residual_rad < 1e-4);
    const double budget = std::abs(1.0 / p.lambda_s_um + 1.0 / p.lambda_i_um -
                                   1.0 / kPump.wavelength_um);
    CHECK(budget < 1e-12 / kPump.wavelength_um);
    // re-evaluated mismatch stays below the residual budget
    CHECK(std::abs(collinear_mismatch(p.lambda_s_um, Temperature{p.temperature_c},
                                      kCrystal, kPump)) < 1e-4);
  }

  const auto at_88 = std::find_if(curve.points.begin(), curve.points.end(),
                                  [](const TuningPoint& p) {
                                    return std::abs(p.temperature_c - 88.0) < 1e-9;
                                  });
  REQUIRE(at_88 != curve.points.end());
  CHECK(std::abs(at_88->lambda_s_um * 1e3 - 1490.0) < 10.0);
  CHECK(std::abs(at_88->lambda_i_um * 1e3 - 1617.0) < 10.0);
}

TEST_CASE("tuning curve at the degeneracy temperature is degenerate") {
  const Temperature t_deg = degeneracy_temperature(kCrystal, kPump);
  const TuningCurve curve =
      tuning_curve(kCrystal, kPump, t_deg.celsius, t_deg.celsius, 1.0);
  REQUIRE(curve.points.size() == 1);
  const double deg = kPump.degenerate_wavelength_um();
  CHECK(std::abs(curve.points[0].lambda_s_um - deg) < 1e-4);
  CHECK(std::abs(curve.points[0].lambda_i_um - deg) < 1e-4);
}

TEST_CASE("ring wavevector opens below and vanishes above collinearity") {
  const double ls = 1.54852;
  const auto q80 = ring_wavevector(ls, Temperature{80.0}, kCrystal, kPump);
  const auto q82 = ring_wavevector(ls, Temperature{82.0}, kCrystal, kPump);
  const auto q86 = ring_wavevector(ls, Temperature{86.0}, kCrystal, kPump);
  REQUIRE(q80.has_value());
  REQUIRE(q82.has_value());
  CHECK(*q80 > *q82);
  CHECK(*q82 > 0.0);
  CHECK(!q86.has_value());

  // ring shrinks monotonically toward collinearity at the degenerate
  // wavelength, sampled on [80, 84] in 0.5 C steps
  const double deg = kPump.degenerate_wavelength_um();
  double prev = 1e9;
  for (double t = 80.0; t <= 84.0 + 1e-9; t += 0.5) {
    const auto q = ring_wavevector(deg, Temperature{t}, kCrystal, kPump);
    if (!q) break; // collinear reached
    CHECK(*q < prev);
    prev = *q;
  }
}

TEST_CASE("emission angle: small, decreasing, zero past collinearity") {
  const double deg = kPump.degenerate_wavelength_um();
  double prev = 1.0;
  for (double t = 80.0; t <= 83.5 + 1e-9; t += 0.5) {
    const double th = emission_angle(deg, Temperature{t}, kCrystal, kPump);
    CHECK(th > 0.0);
    CHECK(th < 0.1);
    CHECK(th < prev);
    prev = th;
  }
  CHECK(emission_angle(deg, Temperature{86.0}, kCrystal, kPump) == 0.0);

  // angle/ring round trip: tan(theta) k_z == |q|
  const Temperature t{81.0};
  const auto q = ring_wavevector(deg, t, kCrystal, kPump);
  REQUIRE(q.has_value());
  const double th = emission_angle(deg, t, kCrystal, kPump);
  const double ks = wavenumber(deg, t, kCrystal.sellmeier);
  const double kz = std::sqrt(ks * ks - *q * *q);
  CHECK(std::tan(th) * kz == doctest::Approx(*q).epsilon(1e-12));
}

TEST_CASE("WDM channel pair becomes collinear near 85 C") {
  const Temperature t = collinear_temperature(1.54852, kCrystal, kPump, 30.0, 150.0);
  CHECK(std::abs(t.celsius - 85.0) < 1.5);
  CHECK(emission_angle(1.54852, Temperature{t.celsius + 0.1}, kCrystal, kPump) == 0.0);
}

TEST_CASE("evanescent ring raises a domain error") {
  // constant n = 2 with an absurdly short poling period: the QPM deficit is
  // huge, the nominal ring exceeds the signal wavenumber
  const SellmeierSet flat{"n=2 test set",
                          {4.0, 0.0, 0.1, 0.0, 12.0, 0.0},
                          {0.0, 0.0, 0.0, 0.0},
                          {0.5, 4.0},
                          {0.0, 300.0}};
  CrystalConfig c;
  c.sellmeier = flat;
  c.poling_period_um = 0.5;
  CHECK_THROWS_WITH_AS(
      emission_angle(2.0 * kPump.wavelength_um, Temperature{25.0}, c, kPump),
      doctest::Contains("evanescent"), DomainError);
}

TEST_CASE("sinc convention") {
  CHECK(sinc(0.0) == 1.0);
  CHECK(std::abs(sinc(M_PI)) < 1e-15);
  CHECK(sinc(0.5) == doctest::Approx(std::sin(0.5) / 0.5).epsilon(1e-16));
}

TEST_CASE("spectral density: bounds and phase-matched peaks") {
  // at a tuning-curve wavelength the density is 1 (phi = 0 at the root)
  const TuningCurve curve = tuning_curve(kCrystal, kPump, 88.0, 88.0, 1.0);
  REQUIRE(curve.points.size() == 1);
  CHECK(spectral_density(curve.points[0].lambda_s_um, Temperature{88.0}, kCrystal,
                         kPump) > 1.0 - 1e-9);

  // at a test-side bisected first zero of sinc (phi = pi) the density vanishes
  const double lam_pi = bisect_oracle(
      [&](double lam) {
        return collinear_mismatch(lam, Temperature{88.0}, kCrystal, kPump) - M_PI;
      },
      curve.points[0].lambda_s_um, kPump.degenerate_wavelength_um(), 1e-13);
  CHECK(spectral_density(lam_pi, Temperature{88.0}, kCrystal, kPump) < 1e-12);

  for (double lam = 1.45; lam <= 1.66; lam += 0.001) {
    const double v = spectral_density(lam, Temperature{85.0}, kCrystal, kPump);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("spectral curve is normalized with increasing wavelengths") {
  const SpectralCurve c = spectral_curve(kCrystal, kPump, Temperature{86.0},
                                         1.45, 1.66, 5e-5);
  double peak = 0.0;
  for (std::size_t i = 0; i < c.lambda_um.size(); ++i) {
    if (i) CHECK(c.lambda_um[i] > c.lambda_um[i - 1]);
    peak = std::max(peak, c.intensity[i]);
  }
  CHECK(peak == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("spectrum FWHM on a constructed triangle is exact") {
  SpectralCurve tri;
  tri.step_um = 1e-3;
  for (int i = 0; i <= 40; ++i) {
    const double lam = 1.540 + i * 1e-3; // 1 nm steps around 1560
    tri.lambda_um.push_back(lam);
    tri.intensity.push_back(std::max(0.0, 1.0 - std::abs(i - 20.0) / 10.0));
  }
  const std::vector<double> w = spectrum_fwhm(tri);
  REQUIRE(w.size() == 1);
  CHECK(w[0] == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("spectrum shapes: broad hump at degeneracy, two narrow lobes at 90 C") {
  const Temperature t_deg = degeneracy_temperature(kCrystal, kPump);
  const SpectralCurve near_deg =
      spectral_curve(kCrystal, kPump, t_deg, 1.40, 1.78, 2e-5);
  const std::vector<double> w_deg = spectrum_fwhm(near_deg);
  REQUIRE(w_deg.size() == 1);
  CHECK(w_deg[0] > 45.0);
  CHECK(w_deg[0] < 75.0);

  const SpectralCurve hot =
      spectral_curve(kCrystal, kPump, Temperature{90.0}, 1.40, 1.78, 2e-5);
  const std::vector<double> w_hot = spectrum_fwhm(hot);
  REQUIRE(w_hot.size() == 2);
  for (double w : w_hot) {
    CHECK(w > 8.0);
    CHECK(w < 16.0);
  }

  const SpectralCurve mid =
      spectral_curve(kCrystal, kPump, Temperature{82.5}, 1.40, 1.78, 2e-5);
  CHECK(spectrum_fwhm(mid).size() == 1); // single broad hump below degeneracy
}

TEST_CASE("spectrum FWHM rejects degenerate input") {
  SpectralCurve flat;
  flat.lambda_um = {1.5, 1.55, 1.6};
  flat.intensity = {0.4, 0.4, 0.4};
  CHECK_THROWS_AS(spectrum_fwhm(flat), AnalysisError);

  SpectralCurve empty;
  CHECK_THROWS_AS(spectrum_fwhm(empty), AnalysisError);
}
