#pragma once

#include <filesystem>
#include <vector>

#include "spdc/biphoton.hpp"
#include "spdc/profile.hpp"

namespace spdc::io {

/// One recorded singles scan: a rectangular (x, y) grid of count rates in a
/// single plane, in detector coordinates unless flagged otherwise.
struct MeasuredScan {
  Plane plane = Plane::FarField;
  bool detector_coords = true;
  double dwell_s = 1.0;
  double temperature_c = 0.0;
  double lambda_nm = 0.0;

  int points = 0;     // per axis
  double step_um = 0.0;
  std::vector<double> x_um, y_um, rate_cps; // row-major over the grid

  double counts(std::size_t i) const { return rate_cps[i] * dwell_s; }
};

/// Schema `scan-singles`: metadata (domain, detector_coords, dwell_s,
/// temperature_c, lambda_nm) + columns x_um,y_um,singles_cps. The samples
/// must form a complete rectangular grid.
MeasuredScan load_measured_scan(const std::filesystem::path& path);

void save_measured_scan(const std::filesystem::path& path, const MeasuredScan& scan,
                        const std::vector<std::pair<std::string, std::string>>& extra_meta = {});

/// Convert a singles scan image (detector coordinates) to a MeasuredScan.
MeasuredScan scan_from_image(const Image2D& img, Plane plane, double dwell_s,
                             double temperature_c, double lambda_nm);

} // namespace spdc::io
