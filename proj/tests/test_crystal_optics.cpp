// Dispersion of 5% MgO-doped congruent ppLN, extraordinary index.
//
// Reference values are pinned against an independent single-expression
// evaluation of the published Sellmeier formula (Gayer et al., Appl. Phys. B
// 91, 343 (2008)), both inline below and as constants computed with a
// standalone script.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "spdc/crystal.hpp"

using namespace spdc;

namespace {

// Independent one-expression oracle for the Gayer extraordinary index.
double gayer_ne_oracle(double lam, double t) {
  const double f = (t - 24.5) * (t + 570.82);
  return std::sqrt(5.756 + 2.860e-6 * f +
                   (0.0983 + 4.700e-8 * f) /
                       (lam * lam - (0.2020 + 6.113e-8 * f) * (0.2020 + 6.113e-8 * f)) +
                   (189.32 + 1.516e-4 * f) / (lam * lam - 12.52 * 12.52) -
                   1.32e-2 * lam * lam);
}

} // namespace

TEST_CASE("extraordinary index at the degenerate telecom wavelength") {
  const SellmeierSet& s = SellmeierSet::mgo_ppln_e();
  const double n = refractive_index(1.5501, Temperature{84.0}, s);
  CHECK(n > 2.0);
  CHECK(n < 2.3);
  CHECK(n == doctest::Approx(gayer_ne_oracle(1.5501, 84.0)).epsilon(1e-14));
  // frozen from the standalone evaluation of the published formula
  CHECK(n == doctest::Approx(2.147853130807243).epsilon(1e-12));
}

TEST_CASE("normal dispersion: pump index above telecom index at equal T") {
  const SellmeierSet& s = SellmeierSet::mgo_ppln_e();
  const double n_pump = refractive_index(0.775, Temperature{84.0}, s);
  const double n_tele = refractive_index(1.5501, Temperature{84.0}, s);
  CHECK(n_pump > n_tele);
  CHECK(n_pump == doctest::Approx(gayer_ne_oracle(0.775, 84.0)).epsilon(1e-14));
}

TEST_CASE("evaluation is deterministic") {
  const SellmeierSet& s = SellmeierSet::mgo_ppln_e();
  const double a = refractive_index(1.333077, Temperature{67.89}, s);
  const double b = refractive_index(1.333077, Temperature{67.89}, s);
  CHECK(a == b); // bit-identical
}

TEST_CASE("out-of-range arguments raise domain errors naming the bound") {
  const SellmeierSet& s = SellmeierSet::mgo_ppln_e();
  CHECK_THROWS_WITH_AS(refractive_index(0.4, Temperature{84.0}, s),
                       doctest::Contains("wavelength"), DomainError);
  CHECK_THROWS_WITH_AS(refractive_index(1.55, Temperature{250.0}, s),
                       doctest::Contains("temperature"), DomainError);
  CHECK_THROWS_WITH_AS(refractive_index(1.55, Temperature{10.0}, s),
                       doctest::Contains("temperature"), DomainError);
}

TEST_CASE("wavenumber follows the definition k = 2 pi n / lambda") {
  // constant-index set: n^2 = 4 exactly
  const SellmeierSet flat{"n=2 test set",
                          {4.0, 0.0, 0.1, 0.0, 12.0, 0.0},
                          {0.0, 0.0, 0.0, 0.0},
                          {0.5, 4.0},
                          {0.0, 300.0}};
  CHECK(wavenumber(1.0, Temperature{25.0}, flat) ==
        doctest::Approx(4.0 * M_PI).epsilon(1e-15));

  const SellmeierSet& s = SellmeierSet::mgo_ppln_e();
  const double n = gayer_ne_oracle(1.5501, 84.0);
  CHECK(wavenumber(1.5501, Temperature{84.0}, s) ==
        doctest::Approx(2.0 * M_PI * n / 1.5501).epsilon(1e-14));
}

TEST_CASE("wavenumber decreases with wavelength over the telecom band") {
  const SellmeierSet& s = SellmeierSet::mgo_ppln_e();
  double prev = wavenumber(1.45, Temperature{84.0}, s);
  for (int i = 1; i <= 200; ++i) {
    const double lam = 1.45 + 0.2 * i / 200.0;
    const double k = wavenumber(lam, Temperature{84.0}, s);
    CHECK(k < prev);
    prev = k;
  }
}

TEST_CASE("grating wavevector and thermal expansion flag") {
  CrystalConfig c;
  CHECK(c.length_mm == 40.0);
  CHECK(c.poling_period_um == 19.2);

  const double km = grating_wavevector(c, Temperature{84.0});
  CHECK(km == doctest::Approx(2.0 * M_PI / 19.2).epsilon(1e-15));
  CHECK(km == doctest::Approx(0.32724923474893675).epsilon(1e-12));

  // expansion off: identical at any temperature
  CHECK(grating_wavevector(c, Temperature{30.0}) ==
        grating_wavevector(c, Temperature{90.0}));

  c.thermal_expansion = true;
  CHECK(grating_wavevector(c, Temperature{90.0}) <
        grating_wavevector(c, Temperature{80.0}));
  CHECK(c.poling_period_at(Temperature{25.0}) == doctest::Approx(19.2));
}

TEST_CASE("crystal invariants rejected on validation") {
  CrystalConfig c;
  c.length_mm = -1.0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c.length_mm = 40.0;
  c.poling_period_um = 0.0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
}

TEST_CASE("index stays physical and smooth over the working window") {
  const SellmeierSet& s = SellmeierSet::mgo_ppln_e();
  for (double t = 20.0; t <= 200.0; t += 20.0) {
    double prev = 0.0, prev_step = 0.0;
    for (int i = 0; i <= 400; ++i) {
      const double lam = 0.7 + 1.0 * i / 400.0;
      const double n = refractive_index(lam, Temperature{t}, s);
      CHECK(n > 1.0);
      CHECK(n < 3.0);
      if (i >= 2) {
        // no step larger than 10x the local linear extrapolation
        const double step = std::abs(n - prev);
        CHECK(step <= 10.0 * prev_step + 1e-12);
      }
      if (i >= 1) prev_step = std::abs(n - prev);
      prev = n;
    }
  }
}

TEST_CASE("wavenumber times lambda over 2 pi reproduces the index") {
  const SellmeierSet& s = SellmeierSet::mgo_ppln_e();
  for (double lam = 0.7; lam <= 1.7; lam += 0.05) {
    for (double t = 20.0; t <= 200.0; t += 30.0) {
      const double n = refractive_index(lam, Temperature{t}, s);
      const double k = wavenumber(lam, Temperature{t}, s);
      CHECK(k * lam / (2.0 * M_PI) == doctest::Approx(n).epsilon(1e-14));
    }
  }
}
