#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "spdc/error.hpp"

namespace spdc {

/// Which optical plane an intensity lives in. Near field is the crystal
/// plane (position, um); far field is the Fourier plane (transverse
/// wavevector, rad/um).
enum class Plane { NearField, FarField };

/// Sampled nonnegative intensity with physical coordinates and per-sample
/// cell measures. measure_dim distinguishes line profiles (cells are
/// lengths) from 2D intensities stored as flat sample lists (cells are
/// areas); radial profiles of rotationally symmetric 2D fields use annular
/// cells 2 pi r dr.
struct IntensityProfile {
  Plane plane = Plane::FarField;
  int measure_dim = 1;
  std::vector<double> coord;      // strictly increasing for line/radial data
  std::vector<double> intensity;  // >= 0
  std::vector<double> cell;       // > 0, same length
  double raw_peak = 1.0;          // pre-normalization peak, for --raw output

  void validate() const {
    if (coord.size() != intensity.size() || coord.size() != cell.size())
      throw ValidationError("IntensityProfile: field lengths differ");
    if (coord.empty())
      throw ValidationError("IntensityProfile: empty profile");
    if (measure_dim != 1 && measure_dim != 2)
      throw ValidationError("IntensityProfile: measure_dim must be 1 or 2");
    for (std::size_t i = 0; i < coord.size(); ++i) {
      if (!(intensity[i] >= 0.0))
        throw ValidationError("IntensityProfile: negative intensity");
      if (!(cell[i] > 0.0))
        throw ValidationError("IntensityProfile: non-positive cell measure");
    }
  }

  double total() const {
    double s = 0.0;
    for (std::size_t i = 0; i < intensity.size(); ++i) s += intensity[i] * cell[i];
    return s;
  }

  void scale_to_peak_one() {
    double peak = 0.0;
    for (double v : intensity) peak = std::max(peak, v);
    if (peak > 0.0)
      for (double& v : intensity) v /= peak;
  }
};

/// Line profile with uniform spacing; the cell measure is the spacing.
IntensityProfile make_line_profile(Plane plane, std::vector<double> coord,
                                   std::vector<double> intensity);

/// Radial profile of a rotationally symmetric 2D intensity; cells are the
/// annuli 2 pi r dr (measure_dim = 2).
IntensityProfile make_radial_profile(Plane plane, std::vector<double> radius,
                                     std::vector<double> intensity);

} // namespace spdc
