#pragma once

#include "spdc/sellmeier.hpp"

namespace spdc {

/// Periodically poled nonlinear crystal: geometry plus dispersion model.
struct CrystalConfig {
  double length_mm = 40.0;
  double poling_period_um = 19.2;
  SellmeierSet sellmeier = SellmeierSet::mgo_ppln_e();
  /// Linear thermal expansion of the poling period, off by default.
  bool thermal_expansion = false;
  double expansion_coeff_per_c = 1.54e-5; // a-axis, used only when flag set

  CrystalConfig() = default;

  double length_um() const { return length_mm * 1.0e3; }

  /// Poling period at temperature T: Lambda (1 + alpha (T - 25 C)) when
  /// expansion is enabled, Lambda otherwise.
  double poling_period_at(Temperature t) const;

  void validate() const;
};

/// Grating wave vector k_m = 2 pi / Lambda(T)  [rad/um].
double grating_wavevector(const CrystalConfig& crystal, Temperature t);

} // namespace spdc
