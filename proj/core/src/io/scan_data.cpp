#include "spdc/io/scan_data.hpp"

#include <cmath>
#include <sstream>

#include "spdc/io/csv.hpp"

namespace spdc::io {

MeasuredScan load_measured_scan(const std::filesystem::path& path) {
  const CsvTable t = read_csv(path);
  if (t.schema != "scan-singles")
    throw ValidationError(path.string() + ": expected schema 'scan-singles', got '" +
                          t.schema + "'");
  if (t.columns != std::vector<std::string>{"x_um", "y_um", "singles_cps"})
    throw ValidationError(path.string() + ": unexpected columns for scan-singles");

  MeasuredScan s;
  const std::string domain = t.meta_value("domain");
  if (domain == "NF")
    s.plane = Plane::NearField;
  else if (domain == "FF")
    s.plane = Plane::FarField;
  else
    throw ValidationError(path.string() + ": metadata 'domain' must be NF or FF");

  const auto meta_num = [&](const std::string& key, bool required, double fallback) {
    const std::string v = t.meta_value(key);
    if (v.empty()) {
      if (required)
        throw ValidationError(path.string() + ": missing metadata '" + key + "'");
      return fallback;
    }
    return std::stod(v);
  };
  s.dwell_s = meta_num("dwell_s", true, 0.0);
  s.temperature_c = meta_num("temperature_c", true, 0.0);
  s.lambda_nm = meta_num("lambda_nm", true, 0.0);
  s.detector_coords = meta_num("detector_coords", false, 1.0) != 0.0;
  if (!(s.dwell_s > 0.0))
    throw ValidationError(path.string() + ": dwell_s must be positive");

  if (t.rows.empty())
    throw ValidationError(path.string() + ": no samples");
  const std::size_t n_total = t.rows.size();
  const int points = static_cast<int>(std::llround(std::sqrt(static_cast<double>(n_total))));
  if (static_cast<std::size_t>(points) * points != n_total)
    throw ValidationError(path.string() + ": samples do not form a square grid");

  s.points = points;
  s.x_um.reserve(n_total);
  s.y_um.reserve(n_total);
  s.rate_cps.reserve(n_total);
  for (const auto& r : t.rows) {
    if (!(r[2] >= 0.0) || !std::isfinite(r[2]))
      throw ValidationError(path.string() + ": negative or non-finite count rate");
    s.x_um.push_back(r[0]);
    s.y_um.push_back(r[1]);
    s.rate_cps.push_back(r[2]);
  }

  // Rectangularity: row-major (x outer, y inner), uniform spacing.
  const double x0 = s.x_um[0], y0 = s.y_um[0];
  const double step = points > 1 ? s.y_um[1] - s.y_um[0] : 1.0;
  if (!(step > 0.0))
    throw ValidationError(path.string() + ": grid must be ordered with increasing y");
  for (int a = 0; a < points; ++a) {
    for (int b = 0; b < points; ++b) {
      const std::size_t i = static_cast<std::size_t>(a) * points + b;
      const double ex = x0 + a * step, ey = y0 + b * step;
      if (std::abs(s.x_um[i] - ex) > 1.0e-6 || std::abs(s.y_um[i] - ey) > 1.0e-6)
        throw ValidationError(path.string() + ": samples do not form a rectangular grid");
    }
  }
  s.step_um = step;
  return s;
}

void save_measured_scan(const std::filesystem::path& path, const MeasuredScan& scan,
                        const std::vector<std::pair<std::string, std::string>>& extra_meta) {
  CsvFile f(path, "scan-singles");
  f.meta("domain", scan.plane == Plane::NearField ? "NF" : "FF");
  f.meta("detector_coords", scan.detector_coords ? 1.0 : 0.0);
  f.meta("dwell_s", scan.dwell_s);
  f.meta("temperature_c", scan.temperature_c);
  f.meta("lambda_nm", scan.lambda_nm);
  for (const auto& [k, v] : extra_meta) f.meta(k, v);
  f.header({"x_um", "y_um", "singles_cps"});
  for (std::size_t i = 0; i < scan.rate_cps.size(); ++i)
    f.row({scan.x_um[i], scan.y_um[i], scan.rate_cps[i]});
}

MeasuredScan scan_from_image(const Image2D& img, Plane plane, double dwell_s,
                             double temperature_c, double lambda_nm) {
  MeasuredScan s;
  s.plane = plane;
  s.dwell_s = dwell_s;
  s.temperature_c = temperature_c;
  s.lambda_nm = lambda_nm;
  s.points = img.n;
  s.step_um = img.step();
  for (int a = 0; a < img.n; ++a)
    for (int b = 0; b < img.n; ++b) {
      s.x_um.push_back(img.coord(a));
      s.y_um.push_back(img.coord(b));
      s.rate_cps.push_back(img.at(a, b));
    }
  return s;
}

} // namespace spdc::io
