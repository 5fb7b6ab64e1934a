#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cptloc/field_profiles.hpp"
#include "cptloc/psf.hpp"
#include "cptloc/table.hpp"

namespace cptloc {

enum class Scenario { steady, psf, modulate, figure, sweep };
enum class DriveKind { standing, lg, standing_2d };
enum class ProbeKind { uniform, gaussian };

struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  int n = 0;
};

// Everything a run needs, assembled from config file plus flag overrides.
struct RunConfig {
  Scenario scenario = Scenario::steady;
  std::vector<double> ratios = {1000.0};  // drive/probe intensity ratios R
  bool ratios_explicit = false;           // user-supplied vs figure-preset default
  DriveKind drive = DriveKind::standing;
  ProbeKind probe = ProbeKind::uniform;
  ModulationSpec modulation = ModulationSpec::none();
  std::optional<GridSpec> grid;           // default derived from R when absent
  std::string tag;                        // figure preset name
  std::optional<double> position;         // kx for the modulate scenario
  std::vector<int> harmonics = {0, 1, 2, 3, 4};
  std::string out;                        // empty -> stdout
  std::string format = "csv";
  double omega_p = 1.0;                   // probe Rabi scale (units gamma_p)
  double delta = 0.0;
  double gamma_s = 1.0;

  double ratio() const { return ratios.front(); }
  void validate() const;  // throws ConfigError
};

// Flat key=value file, '#' comments; keys mirror the CLI flags.
RunConfig parse_config_file(const std::string& path);
void apply_key_value(RunConfig& config, const std::string& key, const std::string& value);

// PSF families measurable by the sweep/figure machinery.
enum class PsfFamily { unmodulated, f0, f2, f4, pert1, pert2, coupled_lambda };
const char* family_name(PsfFamily family);

// Local drive/probe field-ratio profile s(x) = |drive(x)| / |probe(x)| for
// the configured beam geometry (positions in kx or x/w0 units).
std::function<double(double)> local_field_ratio(const FieldProfile& drive,
                                                const FieldProfile& probe);

// Position-space PSF for one family over a given field-ratio profile.
PsfFunction make_psf(PsfFamily family, std::function<double(double)> s_of_x);

// Samples over the default grid (4001 points, +-5 expected widths seeded by
// 2/sqrt(R)) and measures the central feature with function refinement.
FeatureWidth family_width(PsfFamily family, const std::function<double(double)>& s_of_x,
                          double ratio_seed);

struct CommandOutput {
  // (table name, table); single-table commands use the scenario name.
  std::vector<std::pair<std::string, ResultTable>> tables;
};

CommandOutput cmd_steady(const RunConfig& config);
CommandOutput cmd_psf(const RunConfig& config);
CommandOutput cmd_modulate(const RunConfig& config);
CommandOutput cmd_figure(const RunConfig& config);  // throws UnknownTag
CommandOutput cmd_sweep(const RunConfig& config);
CommandOutput run_scenario(const RunConfig& config);

// Writes each table to <out stem>_<table name>.<ext> (single table: the path
// as given), or to stdout when no output path is set.
void write_output(const CommandOutput& output, const RunConfig& config);

}  // namespace cptloc
