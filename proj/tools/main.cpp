// cptloc command line tool: computes steady states, point spread functions,
// modulation harmonics and resolution tables, and writes plot-ready CSV/JSON.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cptloc/scenarios.hpp"
#include "cptloc/version.hpp"

namespace {

// Exit codes: 0 ok, 2 config error, 3 numerical non-convergence, 4 unknown tag/flag.
constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kNoConvergence = 3;
constexpr int kUnknownTag = 4;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sub-wavelength localization toolkit for driven three-level atoms"};
  app.set_version_flag("--version", cptloc::kVersion);

  std::string scenario, ratio, drive, probe, modulation, grid, out, format, config_path,
      tag, position, harmonics, omega_p, delta, gamma_s;
  app.add_option("--scenario", scenario, "steady | psf | modulate | figure | sweep");
  app.add_option("--ratio", ratio, "drive/probe intensity ratio R (comma list for sweep)");
  app.add_option("--drive", drive, "standing | lg | 2d-standing");
  app.add_option("--probe", probe, "uniform | gaussian");
  app.add_option("--modulation", modulation, "none | full:NU | pert:A,NU");
  app.add_option("--grid", grid, "sampling grid LO:HI:N");
  app.add_option("--out", out, "output path (stdout when omitted)");
  app.add_option("--format", format, "csv | json");
  app.add_option("--config", config_path, "key=value config file; flags override");
  app.add_option("--tag", tag, "figure preset: fig1b fig2a fig2b fig3 fig5a fig5b");
  app.add_option("--position", position, "probe position kx for the modulate scenario");
  app.add_option("--harmonics", harmonics, "comma list of harmonics to demodulate");
  app.add_option("--omega-p", omega_p, "probe Rabi frequency (units gamma_p)");
  app.add_option("--delta", delta, "common one-photon detuning");
  app.add_option("--gamma-s", gamma_s, "drive-branch decay rate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ExtrasError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUnknownTag;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    cptloc::RunConfig run;
    if (!config_path.empty()) run = cptloc::parse_config_file(config_path);

    auto apply = [&](const char* key, const std::string& value) {
      if (!value.empty()) cptloc::apply_key_value(run, key, value);
    };
    apply("scenario", scenario);
    apply("ratio", ratio);
    apply("drive", drive);
    apply("probe", probe);
    apply("modulation", modulation);
    apply("grid", grid);
    apply("out", out);
    apply("format", format);
    apply("tag", tag);
    apply("position", position);
    apply("harmonics", harmonics);
    apply("omega_p", omega_p);
    apply("delta", delta);
    apply("gamma_s", gamma_s);

    run.validate();
    const cptloc::CommandOutput output = cptloc::run_scenario(run);
    cptloc::write_output(output, run);
    return kOk;
  } catch (const cptloc::UnknownTag& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUnknownTag;
  } catch (const cptloc::NoConvergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNoConvergence;
  } catch (const cptloc::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
}
