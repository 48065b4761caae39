#include "spdc/sellmeier.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace spdc {

SellmeierSet::SellmeierSet(std::string name,
                           std::array<double, 6> a, std::array<double, 4> b,
                           std::array<double, 2> lambda_range_um,
                           std::array<double, 2> temp_range_c)
    : name_(std::move(name)), a_(a), b_(b),
      lambda_range_(lambda_range_um), temp_range_(temp_range_c) {
  if (lambda_range_[0] <= 0.0 || lambda_range_[1] <= lambda_range_[0])
    throw ValidationError("SellmeierSet '" + name_ + "': invalid wavelength range");
  if (temp_range_[1] <= temp_range_[0])
    throw ValidationError("SellmeierSet '" + name_ + "': invalid temperature range");
}

const SellmeierSet& SellmeierSet::mgo_ppln_e() {
  static const SellmeierSet set{
      "Gayer et al., Appl. Phys. B 91, 343 (2008); 5% MgO-doped congruent "
      "LiNbO3, extraordinary index",
      {5.756, 0.0983, 0.2020, 189.32, 12.52, 1.32e-2},
      {2.860e-6, 4.700e-8, 6.113e-8, 1.516e-4},
      {0.5, 4.0},
      {20.0, 200.0}};
  return set;
}

double SellmeierSet::index(double lambda_um, Temperature t) const {
  if (!(lambda_um >= lambda_range_[0] && lambda_um <= lambda_range_[1])) {
    std::ostringstream os;
    os << "wavelength " << lambda_um << " um outside validity range ["
       << lambda_range_[0] << ", " << lambda_range_[1] << "] um of Sellmeier set '"
       << name_ << "'";
    throw DomainError(os.str());
  }
  if (!(t.celsius >= temp_range_[0] && t.celsius <= temp_range_[1])) {
    std::ostringstream os;
    os << "temperature " << t.celsius << " C outside validity range ["
       << temp_range_[0] << ", " << temp_range_[1] << "] C of Sellmeier set '"
       << name_ << "'";
    throw DomainError(os.str());
  }

  const double f = (t.celsius - 24.5) * (t.celsius + 570.82);
  const double l2 = lambda_um * lambda_um;
  const double res1 = a_[2] + b_[2] * f;
  const double n2 = a_[0] + b_[0] * f
                  + (a_[1] + b_[1] * f) / (l2 - res1 * res1)
                  + (a_[3] + b_[3] * f) / (l2 - a_[4] * a_[4])
                  - a_[5] * l2;
  if (!(n2 > 0.0)) {
    std::ostringstream os;
    os << "Sellmeier set '" << name_ << "' yields non-physical n^2 = " << n2
       << " at lambda = " << lambda_um << " um, T = " << t.celsius << " C";
    throw DomainError(os.str());
  }
  return std::sqrt(n2);
}

double refractive_index(double lambda_um, Temperature t, const SellmeierSet& s) {
  return s.index(lambda_um, t);
}

double wavenumber(double lambda_um, Temperature t, const SellmeierSet& s) {
  return 2.0 * M_PI * s.index(lambda_um, t) / lambda_um;
}

} // namespace spdc
