#include "spdc/crystal.hpp"

#include <cmath>
#include <sstream>

namespace spdc {

double CrystalConfig::poling_period_at(Temperature t) const {
  if (!thermal_expansion) return poling_period_um;
  return poling_period_um * (1.0 + expansion_coeff_per_c * (t.celsius - 25.0));
}

void CrystalConfig::validate() const {
  if (!(length_mm > 0.0)) {
    std::ostringstream os;
    os << "crystal length must be positive, got " << length_mm << " mm";
    throw ValidationError(os.str());
  }
  if (!(poling_period_um > 0.0)) {
    std::ostringstream os;
    os << "poling period must be positive, got " << poling_period_um << " um";
    throw ValidationError(os.str());
  }
}

double grating_wavevector(const CrystalConfig& crystal, Temperature t) {
  return 2.0 * M_PI / crystal.poling_period_at(t);
}

} // namespace spdc
