#include "spdc/commands.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "spdc/instrument.hpp"
#include "spdc/io/csv.hpp"
#include "spdc/io/pgm.hpp"

namespace spdc::io {

namespace {

std::filesystem::path prepare_out_dir(const RunConfig& cfg,
                                      const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::ofstream echo(out_dir / "effective_config.json");
  if (!echo)
    throw ValidationError("cannot write to output directory: " + out_dir.string());
  echo << config_to_json_text(cfg);
  return out_dir;
}

std::string temp_tag(double t_c) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "T%.2f", t_c);
  return buf;
}

void write_spectrum_csv(const std::filesystem::path& path, const SpectralCurve& c,
                        const RunConfig& cfg, bool raw) {
  CsvFile f(path, "spectrum");
  f.meta("temperature_c", c.temperature_c);
  f.meta("pump_wavelength_nm", cfg.pump.spec.wavelength_um * 1.0e3);
  f.meta("step_nm", c.step_um * 1.0e3);
  f.meta("normalized", raw ? 0.0 : 1.0);
  f.header({"lambda_nm", "intensity"});
  const double scale = raw ? c.raw_peak : 1.0;
  for (std::size_t i = 0; i < c.lambda_um.size(); ++i)
    f.row({c.lambda_um[i] * 1.0e3, c.intensity[i] * scale});
}

} // namespace

TuningCommandResult cmd_tuning_curve(const RunConfig& cfg, double t_start_c,
                                     double t_stop_c, double t_step_c,
                                     const std::filesystem::path& out_dir) {
  cfg.validate();
  if (!(t_step_c > 0.0) || t_stop_c < t_start_c)
    throw ValidationError("tuning-curve: require t_start <= t_stop and t_step > 0");
  prepare_out_dir(cfg, out_dir);

  TuningCommandResult res;
  res.curve = tuning_curve(cfg.crystal, cfg.pump.spec, t_start_c, t_stop_c, t_step_c);
  res.t_deg_c = degeneracy_temperature(cfg.crystal, cfg.pump.spec).celsius;

  const std::filesystem::path csv_path = out_dir / "tuning_curve.csv";
  {
    CsvFile f(csv_path, "tuning-curve");
    f.meta("pump_wavelength_nm", cfg.pump.spec.wavelength_um * 1.0e3);
    f.meta("crystal_length_mm", cfg.crystal.length_mm);
    f.meta("poling_period_um", cfg.crystal.poling_period_um);
    f.meta("degeneracy_temperature_c", res.t_deg_c);
    f.header({"T_c", "lambda_s_nm", "lambda_i_nm", "residual_rad"});
    for (const TuningPoint& p : res.curve.points)
      f.row({p.temperature_c, p.lambda_s_um * 1.0e3, p.lambda_i_um * 1.0e3,
             p.residual_rad});
  }
  res.files.push_back(csv_path);

  const std::filesystem::path summary_path = out_dir / "tuning_summary.json";
  {
    nlohmann::json j;
    j["degeneracy_temperature_c"] = res.t_deg_c;
    j["degenerate_wavelength_nm"] = cfg.pump.spec.degenerate_wavelength_um() * 1.0e3;
    j["points"] = res.curve.points.size();
    j["omitted"] = res.curve.diagnostics;
    std::ofstream out(summary_path);
    out << j.dump(2) << "\n";
  }
  res.files.push_back(summary_path);
  return res;
}

SpectrumCommandResult cmd_spectrum(const RunConfig& cfg,
                                   const std::vector<double>& temps_c,
                                   bool with_instrument, bool raw,
                                   const std::filesystem::path& out_dir) {
  cfg.validate();
  if (temps_c.empty())
    throw ValidationError("spectrum: at least one temperature required");
  prepare_out_dir(cfg, out_dir);

  SpectrumCommandResult res;
  for (double t : temps_c) {
    const SpectralCurve theory =
        spectral_curve(cfg.crystal, cfg.pump.spec, Temperature{t},
                       cfg.spectrum_lo_nm * 1.0e-3, cfg.spectrum_hi_nm * 1.0e-3,
                       cfg.spectrum_step_nm * 1.0e-3);
    const std::filesystem::path p = out_dir / ("spectrum_" + temp_tag(t) + ".csv");
    write_spectrum_csv(p, theory, cfg, raw);
    res.theory.push_back(theory);
    res.files.push_back(p);

    if (with_instrument) {
      const SpectralCurve conv = simulate_spectrum_scan(
          Temperature{t}, cfg.crystal, cfg.pump.spec, cfg.grating,
          cfg.spectrum_lo_nm, cfg.spectrum_hi_nm, cfg.spectrum_step_nm);
      const std::filesystem::path pi =
          out_dir / ("spectrum_" + temp_tag(t) + "_instrument.csv");
      write_spectrum_csv(pi, conv, cfg, raw);
      res.instrument.push_back(conv);
      res.files.push_back(pi);
    }
  }
  return res;
}

FarfieldCommandResult cmd_farfield(const RunConfig& cfg,
                                   const std::vector<double>& temps_c, bool raw,
                                   const std::filesystem::path& out_dir) {
  cfg.validate();
  if (temps_c.empty())
    throw ValidationError("farfield: at least one temperature required");
  prepare_out_dir(cfg, out_dir);

  const TransverseGrid grid = cfg.make_grid();
  const double q_radial_max = grid.q_max;
  const double img_half = q_radial_max / std::sqrt(2.0);
  const int n_radial = 321, n_quad = 200, n_px = 201;

  FarfieldCommandResult res;
  for (double t : temps_c) {
    std::string warning;
    const IntensityProfile radial = farfield_radial_profile(
        cfg.wdm_signal_um(), Temperature{t}, cfg.crystal, cfg.pump, n_radial,
        n_quad, q_radial_max, &warning);

    const std::filesystem::path csv_path =
        out_dir / ("farfield_radial_" + temp_tag(t) + ".csv");
    {
      CsvFile f(csv_path, "farfield-radial");
      f.meta("temperature_c", t);
      f.meta("lambda_s_nm", cfg.wdm_signal_nm);
      f.meta("normalized", raw ? 0.0 : 1.0);
      if (!warning.empty()) f.meta("warning", warning);
      f.header({"q_rad_per_um", "intensity"});
      const double scale = raw ? radial.raw_peak : 1.0;
      for (std::size_t i = 0; i < radial.coord.size(); ++i)
        f.row({radial.coord[i], radial.intensity[i] * scale});
    }
    res.files.push_back(csv_path);

    Image2D img = farfield_image(radial, n_px, img_half);
    const std::filesystem::path pgm_path =
        out_dir / ("farfield_" + temp_tag(t) + ".pgm");
    char comment[128];
    std::snprintf(comment, sizeof(comment),
                  "far-field intensity, T = %.2f C, half extent %.6g rad/um", t,
                  img_half);
    write_pgm16(pgm_path, img, comment);
    res.files.push_back(pgm_path);

    res.radial.push_back(radial);
    res.images.push_back(std::move(img));
  }
  return res;
}

namespace {

void write_coincidence_csv(const std::filesystem::path& path, const Image2D& map,
                           const RunConfig& cfg, double t_c, bool counts_data) {
  CsvFile f(path, "scan-coincidences");
  f.meta("domain", "FF");
  f.meta("detector_coords", 1.0);
  f.meta("dwell_s", cfg.scan.dwell_s);
  f.meta("temperature_c", t_c);
  f.meta("lambda_s_nm", cfg.wdm_signal_nm);
  f.meta("lambda_i_nm", cfg.wdm_idler_nm);
  f.meta("coincidence_window_ps", cfg.scan.coincidence_window_ps);
  f.meta("poisson_counts", counts_data ? 1.0 : 0.0);
  f.header({"xi_um", "xs_um", "coincidences_cps"});
  for (int a = 0; a < map.n; ++a)
    for (int b = 0; b < map.n; ++b)
      f.row({map.coord(a), map.coord(b), map.at(a, b)});
}

Image2D scaled_rates(const Image2D& normalized, double peak_rate) {
  Image2D r = normalized;
  for (double& v : r.v) v *= peak_rate;
  return r;
}

Image2D counts_to_rates(const CountsMap& counts, double dwell_s) {
  Image2D r;
  r.n = counts.n;
  r.half_extent = counts.half_extent;
  r.v.resize(counts.v.size());
  for (std::size_t i = 0; i < counts.v.size(); ++i)
    r.v[i] = static_cast<double>(counts.v[i]) / dwell_s;
  return r;
}

} // namespace

ScanCommandResult cmd_scan(const RunConfig& cfg, double temperature_c,
                           ScanPlaneSel plane, bool with_noise, bool raw,
                           const std::filesystem::path& out_dir) {
  cfg.validate();
  prepare_out_dir(cfg, out_dir);

  const Temperature t{temperature_c};
  const TransverseGrid grid = cfg.make_grid();
  ScanCommandResult res;
  const double eta = cfg.detector_efficiency;

  const auto emit_singles = [&](const Image2D& map, Plane p, double lambda_nm,
                                const std::string& stem, std::uint64_t stream_salt) {
    Image2D out_map = map; // normalized
    double dark = 0.0;
    if (with_noise || raw) {
      const double peak = cfg.peak_singles_hz * eta;
      out_map = scaled_rates(map, peak);
    }
    if (with_noise) {
      dark = cfg.scan.dark_rate_hz;
      const CountsMap counts =
          poisson_counts(out_map, cfg.scan.dwell_s, dark, cfg.seed + stream_salt);
      out_map = counts_to_rates(counts, cfg.scan.dwell_s);
    }
    MeasuredScan s = scan_from_image(out_map, p, cfg.scan.dwell_s, temperature_c,
                                     lambda_nm);
    const std::filesystem::path path = out_dir / (stem + ".csv");
    save_measured_scan(path, s,
                       {{"seed", with_noise ? std::to_string(cfg.seed) : "none"},
                        {"poisson_counts", with_noise ? "1" : "0"}});
    res.files.push_back(path);
  };

  if (plane == ScanPlaneSel::FarField || plane == ScanPlaneSel::Both) {
    res.far_field = simulate_far_field_scan(
        t, cfg.crystal, cfg.pump, cfg.geometry, cfg.scan, cfg.wdm_signal_um(),
        cfg.wdm_idler_um(), grid);
    emit_singles(res.far_field.singles, Plane::FarField, cfg.wdm_idler_nm,
                 "scan_ff_singles_" + temp_tag(temperature_c), 0x10);

    Image2D coinc = res.far_field.coincidences; // normalized
    if (with_noise || raw)
      coinc = scaled_rates(coinc, cfg.peak_coincidences_hz * eta * eta);
    if (with_noise) {
      const CountsMap counts =
          poisson_counts(coinc, cfg.scan.dwell_s, 0.0, cfg.seed + 0x20);
      coinc = counts_to_rates(counts, cfg.scan.dwell_s);
    }
    const std::filesystem::path cpath =
        out_dir / ("scan_ff_coincidences_" + temp_tag(temperature_c) + ".csv");
    write_coincidence_csv(cpath, coinc, cfg, temperature_c, with_noise);
    res.files.push_back(cpath);
  }

  if (plane == ScanPlaneSel::NearField || plane == ScanPlaneSel::Both) {
    res.nf_singles = simulate_near_field_scan(t, cfg.crystal, cfg.pump,
                                              cfg.geometry, cfg.scan,
                                              cfg.wdm_signal_um(), grid);
    emit_singles(res.nf_singles, Plane::NearField, cfg.wdm_signal_nm,
                 "scan_nf_singles_" + temp_tag(temperature_c), 0x30);
  }
  return res;
}

SchmidtCommandResult cmd_schmidt(const RunConfig& cfg, bool with_svd,
                                 const std::filesystem::path& out_dir) {
  cfg.validate();
  prepare_out_dir(cfg, out_dir);

  SchmidtCommandResult res;
  res.sweep = schmidt_sweep(cfg.crystal, cfg.pump, cfg.make_grid(),
                            cfg.wdm_signal_um(), cfg.t_start_c, cfg.t_stop_c,
                            cfg.t_step_c, with_svd);

  const std::filesystem::path path = out_dir / "schmidt.csv";
  {
    CsvFile f(path, "schmidt-sweep");
    f.meta("lambda_s_nm", cfg.wdm_signal_nm);
    f.meta("grid_n", cfg.grid_n);
    f.meta("svd_oracle", with_svd ? 1.0 : 0.0);
    f.header({"T_c", "K_per_axis", "K_full2d", "K_svd_per_axis"});
    for (const SchmidtSweepPoint& p : res.sweep.points)
      f.row({p.temperature_c, p.k_per_axis, p.k_full_2d, p.k_svd_per_axis});
  }
  res.files.push_back(path);
  return res;
}

AnalyzeScanResult cmd_analyze_scan(const RunConfig& cfg,
                                   const std::filesystem::path& nf_file,
                                   const std::filesystem::path& ff_file,
                                   bool subtract_background,
                                   const std::filesystem::path& out_dir) {
  cfg.validate();
  prepare_out_dir(cfg, out_dir);

  MeasuredScan nf = load_measured_scan(nf_file);
  MeasuredScan ff = load_measured_scan(ff_file);
  if (nf.plane != Plane::NearField)
    throw ValidationError(nf_file.string() + ": expected a near-field scan (domain NF)");
  if (ff.plane != Plane::FarField)
    throw ValidationError(ff_file.string() + ": expected a far-field scan (domain FF)");

  const auto background = [&](MeasuredScan& s) {
    double mn = s.rate_cps[0];
    for (double v : s.rate_cps) mn = std::min(mn, v);
    for (double& v : s.rate_cps) v = std::max(0.0, v - mn);
    return mn;
  };
  double bg_nf = 0.0, bg_ff = 0.0;
  if (subtract_background) {
    bg_nf = background(nf);
    bg_ff = background(ff);
  }

  // Detector coordinates -> physical coordinates.
  const double nf_cell_1d =
      nf.detector_coords ? detector_to_r_nf(nf.step_um, cfg.geometry) : nf.step_um;
  const double k_ff = wavenumber(ff.lambda_nm * 1.0e-3, Temperature{ff.temperature_c},
                                 cfg.crystal.sellmeier);
  const double ff_cell_1d =
      ff.detector_coords
          ? ff.step_um * k_ff / (cfg.geometry.mag_ff * cfg.geometry.f1_um())
          : ff.step_um;

  const auto to_profile = [](const MeasuredScan& s, Plane plane, double cell_1d) {
    IntensityProfile p;
    p.plane = plane;
    p.measure_dim = 2;
    p.coord.resize(s.rate_cps.size());
    p.intensity = s.rate_cps;
    p.cell.assign(s.rate_cps.size(), cell_1d * cell_1d);
    for (std::size_t i = 0; i < s.rate_cps.size(); ++i)
      p.coord[i] = std::hypot(s.x_um[i], s.y_um[i]);
    return p;
  };
  const IntensityProfile nf_prof = to_profile(nf, Plane::NearField, nf_cell_1d);
  const IntensityProfile ff_prof = to_profile(ff, Plane::FarField, ff_cell_1d);

  const SchmidtResult k = schmidt_from_intensities(nf_prof, ff_prof, 2);

  // First-order Poisson propagation through K = (2 pi)^-2 A_NF A_FF with
  // A = S1^2 / S2, S1 = sum c mu, S2 = sum c^2 mu, Var(c) = c.
  const auto plane_terms = [](const MeasuredScan& s, double mu, double& factor) {
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < s.rate_cps.size(); ++i) {
      const double c = s.counts(i);
      s1 += c * mu;
      s2 += c * c * mu;
    }
    factor = s1 * s1 / s2;
    double acc = 0.0;
    for (std::size_t i = 0; i < s.rate_cps.size(); ++i) {
      const double c = s.counts(i);
      const double dlogA = 2.0 * mu / s1 - 2.0 * c * mu / s2;
      acc += dlogA * dlogA * c;
    }
    return acc; // sum (dlnA/dc)^2 Var(c)
  };
  double f_nf = 0.0, f_ff = 0.0;
  const double var_log_nf = plane_terms(nf, nf_cell_1d * nf_cell_1d, f_nf);
  const double var_log_ff = plane_terms(ff, ff_cell_1d * ff_cell_1d, f_ff);
  const double sigma_k = k.k * std::sqrt(var_log_nf + var_log_ff);

  AnalyzeScanResult res;
  res.k = k.k;
  res.sigma_k = sigma_k;
  res.factor_nf = f_nf; // (sum c mu)^2 / (sum c^2 mu) is scale-invariant in c
  res.factor_ff = f_ff;

  const std::filesystem::path path = out_dir / "analyze_scan.json";
  {
    nlohmann::json j;
    j["k"] = res.k;
    j["sigma_k"] = res.sigma_k;
    j["method"] = "intensity-estimator";
    j["dim"] = 2;
    j["nf_file"] = nf_file.string();
    j["ff_file"] = ff_file.string();
    j["background_subtracted"] = subtract_background;
    j["background_nf_cps"] = bg_nf;
    j["background_ff_cps"] = bg_ff;
    j["temperature_c_nf"] = nf.temperature_c;
    j["temperature_c_ff"] = ff.temperature_c;
    std::ofstream out(path);
    out << j.dump(2) << "\n";
  }
  res.files.push_back(path);
  return res;
}

} // namespace spdc::io
