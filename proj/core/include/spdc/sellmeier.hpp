#pragma once

#include <array>
#include <string>

#include "spdc/error.hpp"

namespace spdc {

/// Crystal temperature in degrees Celsius. Wrapped so it cannot be confused
/// with a wavelength in call sites that take both.
struct Temperature {
  double celsius = 25.0;
};

// Unit conventions used throughout the library:
//   wavelengths lambda  [um]
//   temperatures        [deg C]
//   wavevectors k, q    [rad/um]
//   transverse position [um]

/// Coefficients of the temperature-dependent Sellmeier expansion for the
/// extraordinary index,
///
///   n^2 = a1 + b1 f + (a2 + b2 f)/(lambda^2 - (a3 + b3 f)^2)
///       + (a4 + b4 f)/(lambda^2 - a5^2) - a6 lambda^2,
///   f   = (T - 24.5)(T + 570.82),  lambda in um, T in deg C.
///
/// The set is immutable after construction and carries its validity ranges;
/// evaluation outside them raises DomainError naming the violated bound.
class SellmeierSet {
public:
  SellmeierSet(std::string name,
               std::array<double, 6> a, std::array<double, 4> b,
               std::array<double, 2> lambda_range_um,
               std::array<double, 2> temp_range_c);

  /// Extraordinary refractive index set for 5% MgO-doped congruent LiNbO3,
  /// coefficients from Gayer et al., Appl. Phys. B 91, 343 (2008).
  static const SellmeierSet& mgo_ppln_e();

  double index(double lambda_um, Temperature t) const;

  const std::string& name() const { return name_; }
  const std::array<double, 6>& a() const { return a_; }
  const std::array<double, 4>& b() const { return b_; }
  const std::array<double, 2>& lambda_range_um() const { return lambda_range_; }
  const std::array<double, 2>& temp_range_c() const { return temp_range_; }

private:
  std::string name_;
  std::array<double, 6> a_;
  std::array<double, 4> b_;
  std::array<double, 2> lambda_range_;
  std::array<double, 2> temp_range_;
};

/// n_e(lambda, T); deterministic and smooth inside the validity ranges.
double refractive_index(double lambda_um, Temperature t, const SellmeierSet& s);

/// k = 2 pi n_e(lambda, T) / lambda  [rad/um].
double wavenumber(double lambda_um, Temperature t, const SellmeierSet& s);

} // namespace spdc
