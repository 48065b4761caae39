// spdc: temperature-tuned type-0 SPDC source simulator and scan analysis.
//
// Verbs: tuning-curve, spectrum, farfield, scan, schmidt, analyze-scan.
// Exit codes: 0 success, 1 usage, 2 validation, 3 numerical failure.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>
#include <vector>

#include "spdc/commands.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct GlobalOpts {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool raw = false;
  bool instrument = false;
};

spdc::io::RunConfig effective_config(const GlobalOpts& g) {
  spdc::io::RunConfig cfg;
  if (!g.config_path.empty()) cfg = spdc::io::load_config(g.config_path);
  if (g.seed_set) cfg.seed = g.seed;
  if (!g.out_dir.empty()) cfg.output_dir = g.out_dir;
  return cfg;
}

void report_files(const std::vector<std::filesystem::path>& files) {
  for (const auto& f : files) std::cout << "wrote " << f.string() << "\n";
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Type-0 quasi-phase-matched SPDC source simulator"};
  app.require_subcommand(1);
  app.fallthrough(); // global flags may follow the verb

  GlobalOpts g;
  app.add_option("--config", g.config_path, "JSON configuration file");
  app.add_option("--out", g.out_dir, "output directory (default from config)");
  app.add_option("--seed", g.seed, "random seed for noise simulation")
      ->each([&g](const std::string&) { g.seed_set = true; });
  app.add_flag("--raw", g.raw, "emit unnormalized values");
  app.add_flag("--instrument", g.instrument,
               "also apply the instrument response where applicable");

  // tuning-curve
  auto* sc_tuning = app.add_subcommand(
      "tuning-curve", "collinear signal/idler wavelengths vs temperature");
  double t_start = 80.0, t_stop = 90.0, t_step = 0.5;
  bool range_set = false;
  sc_tuning->add_option("--t-start", t_start, "range start, C")
      ->each([&](const std::string&) { range_set = true; });
  sc_tuning->add_option("--t-stop", t_stop, "range stop, C")
      ->each([&](const std::string&) { range_set = true; });
  sc_tuning->add_option("--t-step", t_step, "range step, C");

  // spectrum
  auto* sc_spectrum =
      app.add_subcommand("spectrum", "emission spectra at given temperatures");
  std::vector<double> sp_temps;
  sc_spectrum->add_option("--temps", sp_temps, "temperatures, C")->delimiter(',');

  // farfield
  auto* sc_farfield = app.add_subcommand(
      "farfield", "far-field radial profiles and ring images");
  std::vector<double> ff_temps;
  sc_farfield->add_option("--temps", ff_temps, "temperatures, C")->delimiter(',');

  // scan
  auto* sc_scan =
      app.add_subcommand("scan", "simulate the stepwise fiber scan at one temperature");
  double scan_temp = 85.0;
  std::string scan_plane = "ff";
  bool scan_noise = false;
  sc_scan->add_option("--temp", scan_temp, "crystal temperature, C")->required();
  sc_scan->add_option("--plane", scan_plane, "ff | nf | both")
      ->check(CLI::IsMember({"ff", "nf", "both"}));
  sc_scan->add_flag("--noise", scan_noise, "apply Poisson counting noise");

  // schmidt
  auto* sc_schmidt = app.add_subcommand(
      "schmidt", "Schmidt number vs temperature at the WDM pair");
  bool schmidt_svd_flag = false;
  sc_schmidt->add_flag("--svd", schmidt_svd_flag,
                       "also compute the singular-value oracle per temperature");

  // analyze-scan
  auto* sc_analyze = app.add_subcommand(
      "analyze-scan", "Schmidt number from measured near-/far-field scans");
  std::string nf_file, ff_file;
  bool subtract_bg = false;
  sc_analyze->add_option("--nf", nf_file, "near-field scan CSV")->required();
  sc_analyze->add_option("--ff", ff_file, "far-field scan CSV")->required();
  sc_analyze->add_flag("--subtract-background", subtract_bg,
                       "subtract the per-file minimum before analysis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    const spdc::io::RunConfig cfg = effective_config(g);
    const std::filesystem::path out_dir = cfg.output_dir;

    if (sc_tuning->parsed()) {
      if (!range_set) {
        t_start = cfg.t_start_c;
        t_stop = cfg.t_stop_c;
        t_step = cfg.t_step_c;
      }
      const auto res = spdc::io::cmd_tuning_curve(cfg, t_start, t_stop, t_step, out_dir);
      std::printf("degeneracy temperature: %.3f C (degenerate wavelength %.2f nm)\n",
                  res.t_deg_c, cfg.pump.spec.degenerate_wavelength_um() * 1.0e3);
      std::printf("%zu tuning points, %zu temperatures without a collinear root\n",
                  res.curve.points.size(), res.curve.diagnostics.size());
      report_files(res.files);
    } else if (sc_spectrum->parsed()) {
      if (sp_temps.empty()) sp_temps = {82.5, 84.5, 86.5, 88.5, 90.0};
      const auto res = spdc::io::cmd_spectrum(cfg, sp_temps, g.instrument, g.raw, out_dir);
      report_files(res.files);
    } else if (sc_farfield->parsed()) {
      if (ff_temps.empty()) ff_temps = {80.0, 82.0, 85.0, 88.0};
      const auto res = spdc::io::cmd_farfield(cfg, ff_temps, g.raw, out_dir);
      report_files(res.files);
    } else if (sc_scan->parsed()) {
      const auto plane = scan_plane == "ff"   ? spdc::io::ScanPlaneSel::FarField
                         : scan_plane == "nf" ? spdc::io::ScanPlaneSel::NearField
                                              : spdc::io::ScanPlaneSel::Both;
      const auto res = spdc::io::cmd_scan(cfg, scan_temp, plane, scan_noise, g.raw, out_dir);
      for (const std::string& w : res.far_field.warnings)
        std::cerr << "warning: " << w << "\n";
      report_files(res.files);
    } else if (sc_schmidt->parsed()) {
      const auto res = spdc::io::cmd_schmidt(cfg, schmidt_svd_flag, out_dir);
      for (const std::string& d : res.sweep.diagnostics)
        std::cerr << "note: " << d << "\n";
      report_files(res.files);
    } else if (sc_analyze->parsed()) {
      const auto res =
          spdc::io::cmd_analyze_scan(cfg, nf_file, ff_file, subtract_bg, out_dir);
      std::printf("K = %.6g +- %.3g (dim-2 intensity estimator)\n", res.k, res.sigma_k);
      report_files(res.files);
    }
    return 0;
  } catch (const spdc::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const spdc::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const spdc::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const spdc::AnalysisError& e) {
    std::cerr << "analysis error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
