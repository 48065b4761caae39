#include "spdc/io/config.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace spdc::io {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& msg) {
  throw ValidationError(origin + ": " + msg);
}

// Reject keys that no reader claimed; catches typos like "lenght_mm".
class StrictObject {
public:
  StrictObject(const json& j, std::string path, const std::string& origin)
      : j_(j), path_(std::move(path)), origin_(origin) {
    if (!j.is_object()) fail(origin_, path_ + " must be a JSON object");
  }

  /// Call after all reads: rejects keys no reader claimed.
  void reject_unknown() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key()))
        fail(origin_, "unknown key '" + path_ + it.key() + "'");
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key);
  }

  double number(const std::string& key, double fallback) {
    if (!has(key)) return fallback;
    if (!j_.at(key).is_number())
      fail(origin_, "'" + path_ + key + "' must be a number");
    return j_.at(key).get<double>();
  }

  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    if (!j_.at(key).is_boolean())
      fail(origin_, "'" + path_ + key + "' must be a boolean");
    return j_.at(key).get<bool>();
  }

  std::string text(const std::string& key, const std::string& fallback) {
    if (!has(key)) return fallback;
    if (!j_.at(key).is_string())
      fail(origin_, "'" + path_ + key + "' must be a string");
    return j_.at(key).get<std::string>();
  }

  const json* object(const std::string& key) {
    if (!has(key)) return nullptr;
    return &j_.at(key);
  }

  std::string child_path(const std::string& key) const { return path_ + key + "."; }

private:
  const json& j_;
  std::string path_;
  const std::string& origin_;
  std::set<std::string> seen_;
};

std::array<double, 2> range_pair(const json& j, const std::string& name,
                                 const std::string& origin) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(origin, "'" + name + "' must be [lo, hi]");
  return {j[0].get<double>(), j[1].get<double>()};
}

SellmeierSet sellmeier_from_json(const json& j, const std::string& path,
                                 const std::string& origin) {
  StrictObject o(j, path, origin);
  const std::string name = o.text("name", "unnamed");
  const json* coeff = o.object("coefficients");
  if (!coeff) fail(origin, "'" + path + "coefficients' is required");
  std::array<double, 6> a{};
  std::array<double, 4> b{};
  {
    StrictObject c(*coeff, path + "coefficients.", origin);
    const char* an[] = {"a1", "a2", "a3", "a4", "a5", "a6"};
    const char* bn[] = {"b1", "b2", "b3", "b4"};
    for (int i = 0; i < 6; ++i) {
      if (!c.has(an[i])) fail(origin, std::string("missing coefficient '") + an[i] + "'");
      a[static_cast<std::size_t>(i)] = c.number(an[i], 0.0);
    }
    for (int i = 0; i < 4; ++i) {
      if (!c.has(bn[i])) fail(origin, std::string("missing coefficient '") + bn[i] + "'");
      b[static_cast<std::size_t>(i)] = c.number(bn[i], 0.0);
    }
    c.reject_unknown();
  }
  const json* lr = o.object("lambda_range_um");
  const json* tr = o.object("temp_range_c");
  if (!lr || !tr)
    fail(origin, "'" + path + "lambda_range_um' and '" + path + "temp_range_c' are required");
  o.reject_unknown();
  return SellmeierSet(name, a, b, range_pair(*lr, path + "lambda_range_um", origin),
                      range_pair(*tr, path + "temp_range_c", origin));
}

RunConfig parse_config(const json& root, const std::string& origin) {
  RunConfig cfg;
  StrictObject top(root, "", origin);

  if (const json* jc = top.object("crystal")) {
    StrictObject o(*jc, top.child_path("crystal"), origin);
    cfg.crystal.length_mm = o.number("length_mm", cfg.crystal.length_mm);
    cfg.crystal.poling_period_um =
        o.number("poling_period_um", cfg.crystal.poling_period_um);
    cfg.crystal.thermal_expansion =
        o.boolean("thermal_expansion", cfg.crystal.thermal_expansion);
    cfg.crystal.expansion_coeff_per_c =
        o.number("expansion_coeff_per_c", cfg.crystal.expansion_coeff_per_c);
    if (const json* js = o.object("sellmeier"))
      cfg.crystal.sellmeier =
          sellmeier_from_json(*js, o.child_path("sellmeier"), origin);
    o.reject_unknown();
  }
  if (const json* jp = top.object("pump")) {
    StrictObject o(*jp, top.child_path("pump"), origin);
    cfg.pump.spec.wavelength_um =
        o.number("wavelength_nm", cfg.pump.spec.wavelength_um * 1.0e3) * 1.0e-3;
    cfg.pump.waist_um = o.number("waist_um", cfg.pump.waist_um);
    o.reject_unknown();
  }
  if (const json* jg = top.object("geometry")) {
    StrictObject o(*jg, top.child_path("geometry"), origin);
    cfg.geometry.f1_mm = o.number("f1_mm", cfg.geometry.f1_mm);
    cfg.geometry.mag_ff = o.number("mag_ff", cfg.geometry.mag_ff);
    cfg.geometry.mag_nf = o.number("mag_nf", cfg.geometry.mag_nf);
    cfg.geometry.fiber_mfd_um = o.number("fiber_mfd_um", cfg.geometry.fiber_mfd_um);
    o.reject_unknown();
  }
  if (const json* js = top.object("scan")) {
    StrictObject o(*js, top.child_path("scan"), origin);
    cfg.scan.points = static_cast<int>(o.number("points", cfg.scan.points));
    cfg.scan.step_um = o.number("step_um", cfg.scan.step_um);
    cfg.scan.dwell_s = o.number("dwell_s", cfg.scan.dwell_s);
    cfg.scan.coincidence_window_ps =
        o.number("coincidence_window_ps", cfg.scan.coincidence_window_ps);
    cfg.scan.dark_rate_hz = o.number("dark_rate_hz", cfg.scan.dark_rate_hz);
    cfg.peak_singles_hz = o.number("peak_singles_hz", cfg.peak_singles_hz);
    cfg.peak_coincidences_hz =
        o.number("peak_coincidences_hz", cfg.peak_coincidences_hz);
    o.reject_unknown();
  }
  if (const json* jg = top.object("grid")) {
    StrictObject o(*jg, top.child_path("grid"), origin);
    cfg.grid_n = static_cast<int>(o.number("n", cfg.grid_n));
    cfg.grid_q_max = o.number("q_max", cfg.grid_q_max);
    o.reject_unknown();
  }
  if (const json* jt = top.object("temperature")) {
    StrictObject o(*jt, top.child_path("temperature"), origin);
    cfg.t_start_c = o.number("start_c", cfg.t_start_c);
    cfg.t_stop_c = o.number("stop_c", cfg.t_stop_c);
    cfg.t_step_c = o.number("step_c", cfg.t_step_c);
    o.reject_unknown();
  }
  if (const json* jw = top.object("wdm")) {
    StrictObject o(*jw, top.child_path("wdm"), origin);
    cfg.wdm_signal_nm = o.number("signal_nm", cfg.wdm_signal_nm);
    cfg.wdm_idler_nm = o.number("idler_nm", cfg.wdm_idler_nm);
    cfg.wdm_fwhm_nm = o.number("fwhm_nm", cfg.wdm_fwhm_nm);
    o.reject_unknown();
  }
  if (const json* jg = top.object("grating")) {
    StrictObject o(*jg, top.child_path("grating"), origin);
    cfg.grating.center_nm = o.number("center_nm", cfg.grating.center_nm);
    cfg.grating.fwhm_nm = o.number("fwhm_nm", cfg.grating.fwhm_nm);
    const std::string shape = o.text("shape", "gaussian");
    if (shape == "gaussian")
      cfg.grating.shape = FilterShape::Gaussian;
    else if (shape == "rectangular")
      cfg.grating.shape = FilterShape::Rectangular;
    else
      fail(origin, "grating.shape must be 'gaussian' or 'rectangular'");
    cfg.grating_dispersion_nm_per_mrad =
        o.number("dispersion_nm_per_mrad", cfg.grating_dispersion_nm_per_mrad);
    o.reject_unknown();
  }
  if (const json* js = top.object("spectrum")) {
    StrictObject o(*js, top.child_path("spectrum"), origin);
    cfg.spectrum_lo_nm = o.number("lambda_lo_nm", cfg.spectrum_lo_nm);
    cfg.spectrum_hi_nm = o.number("lambda_hi_nm", cfg.spectrum_hi_nm);
    cfg.spectrum_step_nm = o.number("step_nm", cfg.spectrum_step_nm);
    o.reject_unknown();
  }
  cfg.detector_efficiency = top.number("detector_efficiency", cfg.detector_efficiency);
  cfg.seed = static_cast<std::uint64_t>(top.number("seed", static_cast<double>(cfg.seed)));
  cfg.output_dir = top.text("output_dir", cfg.output_dir);
  top.reject_unknown();

  cfg.validate();
  return cfg;
}

} // namespace

void RunConfig::validate() const {
  crystal.validate();
  geometry.validate();
  scan.validate();
  grating.validate();
  if (!(pump.spec.wavelength_um > 0.0))
    throw ValidationError("pump.wavelength_nm must be positive");
  if (!(pump.waist_um > 0.0))
    throw ValidationError("pump.waist_um must be positive");
  if (grid_n < 32 || (grid_n & (grid_n - 1)) != 0)
    throw ValidationError("grid.n must be a power of two >= 32");
  if (grid_q_max < 0.0)
    throw ValidationError("grid.q_max must be >= 0 (0 = derived)");
  if (!(t_step_c > 0.0) || t_stop_c < t_start_c)
    throw ValidationError("temperature range requires start <= stop and step > 0");
  if (!(wdm_signal_nm > 0.0) || !(wdm_idler_nm > 0.0) || !(wdm_fwhm_nm > 0.0))
    throw ValidationError("wdm channel wavelengths and width must be positive");
  if (wdm_signal_nm > wdm_idler_nm)
    throw ValidationError("wdm.signal_nm must be the shorter wavelength");
  if (!(spectrum_step_nm > 0.0) || spectrum_hi_nm <= spectrum_lo_nm)
    throw ValidationError("spectrum range requires lambda_lo < lambda_hi and step > 0");
  if (!(detector_efficiency > 0.0) || detector_efficiency > 1.0)
    throw ValidationError("detector_efficiency must be in (0, 1]");
  if (peak_singles_hz < 0.0 || peak_coincidences_hz < 0.0)
    throw ValidationError("peak rates must be nonnegative");
}

TransverseGrid RunConfig::make_grid() const { return make_grid(grid_n); }

TransverseGrid RunConfig::make_grid(int n_override) const {
  if (grid_q_max > 0.0) return TransverseGrid(n_override, grid_q_max);
  return default_sweep_grid(n_override, wdm_signal_um(), crystal, pump,
                            t_start_c, t_stop_c, t_step_c);
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError("cannot open config file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return config_from_json_text(buf.str(), path.string());
}

RunConfig config_from_json_text(const std::string& text, const std::string& origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(origin + ": JSON parse error: " + e.what());
  }
  return parse_config(root, origin);
}

std::string config_to_json_text(const RunConfig& cfg) {
  json j;
  j["crystal"]["length_mm"] = cfg.crystal.length_mm;
  j["crystal"]["poling_period_um"] = cfg.crystal.poling_period_um;
  j["crystal"]["thermal_expansion"] = cfg.crystal.thermal_expansion;
  j["crystal"]["expansion_coeff_per_c"] = cfg.crystal.expansion_coeff_per_c;
  {
    json s;
    s["name"] = cfg.crystal.sellmeier.name();
    const auto& a = cfg.crystal.sellmeier.a();
    const auto& b = cfg.crystal.sellmeier.b();
    const char* an[] = {"a1", "a2", "a3", "a4", "a5", "a6"};
    const char* bn[] = {"b1", "b2", "b3", "b4"};
    for (int i = 0; i < 6; ++i) s["coefficients"][an[i]] = a[static_cast<std::size_t>(i)];
    for (int i = 0; i < 4; ++i) s["coefficients"][bn[i]] = b[static_cast<std::size_t>(i)];
    s["lambda_range_um"] = cfg.crystal.sellmeier.lambda_range_um();
    s["temp_range_c"] = cfg.crystal.sellmeier.temp_range_c();
    j["crystal"]["sellmeier"] = s;
  }
  j["pump"]["wavelength_nm"] = cfg.pump.spec.wavelength_um * 1.0e3;
  j["pump"]["waist_um"] = cfg.pump.waist_um;
  j["geometry"]["f1_mm"] = cfg.geometry.f1_mm;
  j["geometry"]["mag_ff"] = cfg.geometry.mag_ff;
  j["geometry"]["mag_nf"] = cfg.geometry.mag_nf;
  j["geometry"]["fiber_mfd_um"] = cfg.geometry.fiber_mfd_um;
  j["scan"]["points"] = cfg.scan.points;
  j["scan"]["step_um"] = cfg.scan.step_um;
  j["scan"]["dwell_s"] = cfg.scan.dwell_s;
  j["scan"]["coincidence_window_ps"] = cfg.scan.coincidence_window_ps;
  j["scan"]["dark_rate_hz"] = cfg.scan.dark_rate_hz;
  j["scan"]["peak_singles_hz"] = cfg.peak_singles_hz;
  j["scan"]["peak_coincidences_hz"] = cfg.peak_coincidences_hz;
  j["grid"]["n"] = cfg.grid_n;
  j["grid"]["q_max"] = cfg.grid_q_max;
  j["temperature"]["start_c"] = cfg.t_start_c;
  j["temperature"]["stop_c"] = cfg.t_stop_c;
  j["temperature"]["step_c"] = cfg.t_step_c;
  j["wdm"]["signal_nm"] = cfg.wdm_signal_nm;
  j["wdm"]["idler_nm"] = cfg.wdm_idler_nm;
  j["wdm"]["fwhm_nm"] = cfg.wdm_fwhm_nm;
  j["grating"]["center_nm"] = cfg.grating.center_nm;
  j["grating"]["fwhm_nm"] = cfg.grating.fwhm_nm;
  j["grating"]["shape"] =
      cfg.grating.shape == FilterShape::Gaussian ? "gaussian" : "rectangular";
  j["grating"]["dispersion_nm_per_mrad"] = cfg.grating_dispersion_nm_per_mrad;
  j["spectrum"]["lambda_lo_nm"] = cfg.spectrum_lo_nm;
  j["spectrum"]["lambda_hi_nm"] = cfg.spectrum_hi_nm;
  j["spectrum"]["step_nm"] = cfg.spectrum_step_nm;
  j["detector_efficiency"] = cfg.detector_efficiency;
  j["seed"] = cfg.seed;
  j["output_dir"] = cfg.output_dir;
  return j.dump(2) + "\n";
}

SellmeierSet load_sellmeier(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError("cannot open Sellmeier file: " + path.string());
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": JSON parse error: " + e.what());
  }
  return sellmeier_from_json(root, "", path.string());
}

} // namespace spdc::io
