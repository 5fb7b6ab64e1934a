#include "cptloc/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "cptloc/cpt_analytic.hpp"
#include "cptloc/lindblad.hpp"
#include "cptloc/modulation.hpp"
#include "cptloc/version.hpp"

namespace cptloc {

namespace {

const char* scenario_name(Scenario s) {
  switch (s) {
    case Scenario::steady: return "steady";
    case Scenario::psf: return "psf";
    case Scenario::modulate: return "modulate";
    case Scenario::figure: return "figure";
    case Scenario::sweep: return "sweep";
  }
  return "?";
}

const char* drive_name(DriveKind d) {
  switch (d) {
    case DriveKind::standing: return "standing";
    case DriveKind::lg: return "lg";
    case DriveKind::standing_2d: return "2d-standing";
  }
  return "?";
}

const char* probe_name(ProbeKind p) {
  return p == ProbeKind::uniform ? "uniform" : "gaussian";
}

std::string modulation_string(const ModulationSpec& m) {
  std::ostringstream out;
  switch (m.kind) {
    case ModulationSpec::Kind::none: return "none";
    case ModulationSpec::Kind::full: out << "full:" << m.nu; break;
    case ModulationSpec::Kind::perturbative: out << "pert:" << m.a << "," << m.nu; break;
  }
  return out.str();
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, sep)) parts.push_back(item);
  return parts;
}

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse " + what + " value '" + text + "'");
  }
}

int parse_int(const std::string& text, const std::string& what) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse " + what + " value '" + text + "'");
  }
}

FieldProfile make_probe(const RunConfig& c) {
  return c.probe == ProbeKind::uniform ? FieldProfile::uniform(c.omega_p)
                                       : FieldProfile::gaussian(c.omega_p, 1.0);
}

FieldProfile make_drive(const RunConfig& c, double ratio) {
  const double amplitude = std::sqrt(ratio) * c.omega_p;
  switch (c.drive) {
    case DriveKind::standing: return FieldProfile::standing_wave(amplitude, 1.0);
    case DriveKind::lg: return FieldProfile::lg_donut(amplitude, 1.0);
    case DriveKind::standing_2d:
      return FieldProfile::sum_2d(FieldProfile::standing_wave(amplitude, 1.0),
                                  FieldProfile::standing_wave(amplitude, 1.0));
  }
  throw ConfigError("unknown drive kind");
}

double safe_ratio(double drive_amp, double probe_amp) {
  const double d = std::abs(drive_amp);
  const double p = std::abs(probe_amp);
  if (p == 0.0) return d == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return d / p;
}

// Field-ratio profile along the measurement axis; 2D composite drives are
// sliced through the node at y = 0.
std::function<double(double)> ratio_profile(const RunConfig& c, double ratio) {
  const FieldProfile probe = make_probe(c);
  const FieldProfile drive = make_drive(c, ratio);
  if (c.drive == DriveKind::standing_2d) {
    return [probe, drive](double x) {
      return safe_ratio(drive.evaluate(x, 0.0), probe.evaluate(x, 0.0));
    };
  }
  return [probe, drive](double x) {
    return safe_ratio(drive.evaluate(x), probe.evaluate(x));
  };
}

GridSpec default_grid(const RunConfig& c, double ratio_seed) {
  if (c.grid) return *c.grid;
  if (c.scenario == Scenario::steady) return {-M_PI / 8.0, M_PI / 8.0, 101};
  const double w = 2.0 / std::sqrt(std::max(ratio_seed, 1.0));
  return {-5.0 * w, 5.0 * w, 4001};
}

ResultTable make_table(const RunConfig& c, const std::string& name,
                       std::vector<std::string> columns) {
  ResultTable t(std::move(columns));
  t.add_meta("cptloc", kVersion);
  t.add_meta("table", name);
  t.add_meta("scenario", scenario_name(c.scenario));
  {
    std::ostringstream rs;
    for (std::size_t i = 0; i < c.ratios.size(); ++i) rs << (i ? "," : "") << c.ratios[i];
    t.add_meta("ratio", rs.str());
  }
  t.add_meta("drive", drive_name(c.drive));
  t.add_meta("probe", probe_name(c.probe));
  t.add_meta("modulation", modulation_string(c.modulation));
  if (c.scenario == Scenario::figure) t.add_meta("tag", c.tag);
  if (c.grid) {
    std::ostringstream gs;
    gs << c.grid->lo << ":" << c.grid->hi << ":" << c.grid->n;
    t.add_meta("grid", gs.str());
  } else {
    t.add_meta("grid", "auto");
  }
  if (c.position) {
    t.add_meta("position", ResultTable::format_value(*c.position));
  }
  {
    std::ostringstream ps;
    ps << "omega_p=" << c.omega_p << " delta=" << c.delta << " gamma_s=" << c.gamma_s;
    t.add_meta("atom", ps.str());
  }
  return t;
}

struct MeasuredFamily {
  PsfFamily family;
  double ratio;
  FeatureWidth width;
};

MeasuredFamily measure_family(const RunConfig& c, PsfFamily family, double ratio) {
  const auto s_of_x = ratio_profile(c, ratio);
  return {family, ratio, family_width(family, s_of_x, ratio)};
}

void append_width_columns(std::vector<std::string>& names, std::vector<double>& row,
                          const MeasuredFamily& m, const MeasuredFamily* unmod_ref,
                          bool with_rayleigh) {
  const std::string fam = family_name(m.family);
  names.push_back("fwhm_" + fam);
  row.push_back(m.width.width);
  if (with_rayleigh) {
    names.push_back("impr_" + fam + "_vs_rayleigh");
    row.push_back(improvement_factor(m.width, RayleighReference{}));
  }
  if (unmod_ref) {
    names.push_back("impr_" + fam + "_vs_unmodulated");
    row.push_back(improvement_factor(m.width, unmod_ref->width.width));
  }
}

ResultTable widths_table(const RunConfig& c, const std::string& name,
                         const std::vector<MeasuredFamily>& families,
                         const MeasuredFamily* unmod_ref, bool with_rayleigh) {
  std::vector<std::string> names{"ratio"};
  std::vector<double> row{c.ratio()};
  for (const auto& m : families) {
    const bool is_ref = unmod_ref && m.family == unmod_ref->family && m.ratio == unmod_ref->ratio;
    append_width_columns(names, row, m, is_ref ? nullptr : unmod_ref, with_rayleigh);
  }
  ResultTable t = make_table(c, name, names);
  t.add_row(row);
  return t;
}

// --- figure presets ------------------------------------------------------

CommandOutput figure_fig1b(const RunConfig& base) {
  RunConfig c = base;
  c.drive = DriveKind::standing;
  c.probe = ProbeKind::uniform;

  const double ratio = c.ratio();
  const GridSpec g = default_grid(c, ratio);
  ResultTable curves = make_table(c, "curves", {"kx", "rho22_unmodulated"});
  const auto s_of_x = ratio_profile(c, ratio);
  for (int i = 0; i < g.n; ++i) {
    const double x = g.lo + i * (g.hi - g.lo) / (g.n - 1);
    const double s = s_of_x(x);
    curves.add_row({x, 1.0 / (1.0 + s * s)});
  }

  const MeasuredFamily unmod = measure_family(c, PsfFamily::unmodulated, ratio);
  ResultTable widths = widths_table(c, "widths", {unmod}, &unmod, true);
  return {{{"curves", std::move(curves)}, {"widths", std::move(widths)}}};
}

CommandOutput figure_fig2a(const RunConfig& base) {
  RunConfig c = base;
  c.drive = DriveKind::standing;
  c.probe = ProbeKind::uniform;

  const double ratio = c.ratio();        // time-averaged probe: R doubled
  const double ratio_unmod = ratio / 2.0;  // continuous-probe baseline
  const GridSpec g = default_grid(c, ratio_unmod);

  ResultTable curves =
      make_table(c, "curves", {"kx", "rho22_unmodulated", "f0", "f2", "f4"});
  const auto s_mod = ratio_profile(c, ratio);
  const auto s_unmod = ratio_profile(c, ratio_unmod);
  for (int i = 0; i < g.n; ++i) {
    const double x = g.lo + i * (g.hi - g.lo) / (g.n - 1);
    const double su = s_unmod(x);
    const double sm = s_mod(x);
    curves.add_row({x, 1.0 / (1.0 + su * su), f_coeff_closed(0, sm),
                    f_coeff_closed(1, sm), f_coeff_closed(2, sm)});
  }

  const MeasuredFamily unmod = measure_family(c, PsfFamily::unmodulated, ratio_unmod);
  const std::vector<MeasuredFamily> families{
      unmod,
      measure_family(c, PsfFamily::f0, ratio),
      measure_family(c, PsfFamily::f2, ratio),
      measure_family(c, PsfFamily::f4, ratio),
  };
  ResultTable widths = widths_table(c, "widths", families, &unmod, true);
  widths.add_meta("note", "unmodulated baseline at ratio/2 (time-averaged probe intensity)");
  return {{{"curves", std::move(curves)}, {"widths", std::move(widths)}}};
}

CommandOutput figure_2d(const RunConfig& base, bool perturbative_orders) {
  RunConfig c = base;
  c.drive = DriveKind::standing_2d;
  c.probe = ProbeKind::uniform;

  const double ratio = c.ratio();
  const GridSpec g1 = default_grid(c, ratio);
  const int n2 = c.grid ? c.grid->n : 201;

  const FieldProfile probe = make_probe(c);
  const FieldProfile drive = make_drive(c, ratio);
  auto s_2d = [&](double x, double y) {
    return safe_ratio(drive.evaluate(x, y), probe.evaluate(x, y));
  };

  std::vector<std::string> value_columns =
      perturbative_orders ? std::vector<std::string>{"order1", "order2"}
                          : std::vector<std::string>{"f0", "f2", "f4"};
  auto value_of = [&](const std::string& col, double s) {
    if (col == "f0") return f_coeff_closed(0, s);
    if (col == "f2") return f_coeff_closed(1, s);
    if (col == "f4") return f_coeff_closed(2, s);
    if (col == "order1") return perturbative_coeff(1, s);
    return perturbative_coeff(2, s);
  };

  std::vector<std::string> columns{"kx", "ky", "drive_intensity"};
  columns.insert(columns.end(), value_columns.begin(), value_columns.end());
  ResultTable surface = make_table(c, "surface", columns);
  for (int j = 0; j < n2; ++j) {
    const double y = g1.lo + j * (g1.hi - g1.lo) / (n2 - 1);
    for (int i = 0; i < n2; ++i) {
      const double x = g1.lo + i * (g1.hi - g1.lo) / (n2 - 1);
      const double amp = drive.evaluate(x, y);
      std::vector<double> row{x, y, amp * amp};
      const double s = s_2d(x, y);
      for (const auto& col : value_columns) row.push_back(value_of(col, s));
      surface.add_row(row);
    }
  }

  // Per-axis widths through the node; the axis slices reduce to the 1D case.
  std::vector<std::string> width_names{"ratio"};
  std::vector<double> width_row{ratio};
  for (const auto& col : value_columns) {
    auto psf2d = [&](double x, double y) { return value_of(col, s_2d(x, y)); };
    const PsfSurface sampled =
        sample_psf_2d(psf2d, g1.lo, g1.hi, 801, g1.lo, g1.hi, 801);
    const AxisWidths axis = measure_widths_2d(sampled, psf2d, 0.0, 0.0);
    width_names.push_back("fwhm_" + col + "_x");
    width_row.push_back(axis.x.width);
    width_names.push_back("fwhm_" + col + "_y");
    width_row.push_back(axis.y.width);
  }
  ResultTable widths = make_table(c, "widths", width_names);
  widths.add_row(width_row);
  return {{{"surface", std::move(surface)}, {"widths", std::move(widths)}}};
}

CommandOutput figure_fig3(const RunConfig& base) {
  RunConfig c = base;
  c.drive = DriveKind::lg;
  c.probe = ProbeKind::gaussian;

  const double ratio = c.ratio();
  const GridSpec g = default_grid(c, ratio);
  const FieldProfile probe = make_probe(c);
  const FieldProfile drive = make_drive(c, ratio);
  const auto s_of_x = ratio_profile(c, ratio);

  ResultTable curves = make_table(
      c, "curves",
      {"x", "probe_amplitude", "drive_amplitude", "rho22_unmodulated", "f0", "f2", "f4"});
  for (int i = 0; i < g.n; ++i) {
    const double x = g.lo + i * (g.hi - g.lo) / (g.n - 1);
    const double s = s_of_x(x);
    curves.add_row({x, probe.evaluate(x), drive.evaluate(x), 1.0 / (1.0 + s * s),
                    f_coeff_closed(0, s), f_coeff_closed(1, s), f_coeff_closed(2, s)});
  }

  const MeasuredFamily unmod = measure_family(c, PsfFamily::unmodulated, ratio);
  const std::vector<MeasuredFamily> families{
      unmod,
      measure_family(c, PsfFamily::f0, ratio),
      measure_family(c, PsfFamily::f2, ratio),
      measure_family(c, PsfFamily::f4, ratio),
  };
  // Positions are in x/w0 units here, so the Rayleigh reference (kx units)
  // does not apply without a waist-to-wavelength convention.
  ResultTable widths = widths_table(c, "widths", families, &unmod, false);
  return {{{"curves", std::move(curves)}, {"widths", std::move(widths)}}};
}

CommandOutput figure_fig5a(const RunConfig& base) {
  RunConfig c = base;
  c.drive = DriveKind::standing;
  c.probe = ProbeKind::uniform;

  const double ratio = c.ratio();
  const GridSpec g = default_grid(c, ratio);
  const auto s_of_x = ratio_profile(c, ratio);

  ResultTable curves = make_table(c, "curves", {"kx", "order0", "order1", "order2"});
  for (int i = 0; i < g.n; ++i) {
    const double x = g.lo + i * (g.hi - g.lo) / (g.n - 1);
    const double s = s_of_x(x);
    curves.add_row({x, perturbative_coeff(0, s), perturbative_coeff(1, s),
                    perturbative_coeff(2, s)});
  }

  const MeasuredFamily unmod = measure_family(c, PsfFamily::unmodulated, ratio);
  const std::vector<MeasuredFamily> families{
      unmod,
      measure_family(c, PsfFamily::pert1, ratio),
      measure_family(c, PsfFamily::pert2, ratio),
  };
  ResultTable widths = widths_table(c, "widths", families, &unmod, true);
  return {{{"curves", std::move(curves)}, {"widths", std::move(widths)}}};
}

}  // namespace

void RunConfig::validate() const {
  if (ratios.empty()) throw ConfigError("at least one ratio is required");
  for (double r : ratios) {
    if (!std::isfinite(r) || r < 0.0) throw ConfigError("ratios must be finite and >= 0");
    if (r == 0.0 && scenario != Scenario::steady) {
      throw ConfigError("ratio 0 is only meaningful for the steady scenario");
    }
  }
  if (!(omega_p > 0.0) || !std::isfinite(omega_p)) {
    throw ConfigError("omega_p must be positive");
  }
  if (!(gamma_s > 0.0)) throw ConfigError("gamma_s must be positive");
  if (!std::isfinite(delta)) throw ConfigError("delta must be finite");
  if (grid) {
    if (!(grid->lo < grid->hi) || grid->n < 9) {
      throw ConfigError("grid must satisfy lo < hi and n >= 9");
    }
  }
  if (format != "csv" && format != "json") {
    throw ConfigError("format must be csv or json");
  }
  if (scenario == Scenario::figure && tag.empty()) {
    throw ConfigError("figure scenario requires a tag");
  }
  for (int h : harmonics) {
    if (h < 0) throw ConfigError("harmonics must be >= 0");
  }
}

void apply_key_value(RunConfig& config, const std::string& key, const std::string& value) {
  if (key == "scenario") {
    if (value == "steady") config.scenario = Scenario::steady;
    else if (value == "psf") config.scenario = Scenario::psf;
    else if (value == "modulate") config.scenario = Scenario::modulate;
    else if (value == "figure") config.scenario = Scenario::figure;
    else if (value == "sweep") config.scenario = Scenario::sweep;
    else throw ConfigError("unknown scenario '" + value + "'");
  } else if (key == "ratio") {
    config.ratios.clear();
    for (const auto& part : split(value, ',')) {
      config.ratios.push_back(parse_double(part, "ratio"));
    }
    if (config.ratios.empty()) throw ConfigError("ratio list is empty");
    config.ratios_explicit = true;
  } else if (key == "drive") {
    if (value == "standing") config.drive = DriveKind::standing;
    else if (value == "lg") config.drive = DriveKind::lg;
    else if (value == "2d-standing") config.drive = DriveKind::standing_2d;
    else throw ConfigError("unknown drive '" + value + "'");
  } else if (key == "probe") {
    if (value == "uniform") config.probe = ProbeKind::uniform;
    else if (value == "gaussian") config.probe = ProbeKind::gaussian;
    else throw ConfigError("unknown probe '" + value + "'");
  } else if (key == "modulation") {
    if (value == "none") {
      config.modulation = ModulationSpec::none();
    } else if (value.rfind("full:", 0) == 0) {
      try {
        config.modulation = ModulationSpec::full(parse_double(value.substr(5), "nu"));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    } else if (value.rfind("pert:", 0) == 0) {
      const auto parts = split(value.substr(5), ',');
      if (parts.size() != 2) throw ConfigError("pert modulation needs A,NU");
      try {
        config.modulation = ModulationSpec::perturbative(parse_double(parts[0], "a"),
                                                         parse_double(parts[1], "nu"));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    } else {
      throw ConfigError("modulation must be none, full:NU or pert:A,NU");
    }
  } else if (key == "grid") {
    const auto parts = split(value, ':');
    if (parts.size() != 3) throw ConfigError("grid must be LO:HI:N");
    GridSpec g{parse_double(parts[0], "grid lo"), parse_double(parts[1], "grid hi"),
               parse_int(parts[2], "grid n")};
    config.grid = g;
  } else if (key == "tag") {
    config.tag = value;
  } else if (key == "position") {
    config.position = parse_double(value, "position");
  } else if (key == "harmonics") {
    config.harmonics.clear();
    for (const auto& part : split(value, ',')) {
      config.harmonics.push_back(parse_int(part, "harmonic"));
    }
  } else if (key == "out") {
    config.out = value;
  } else if (key == "format") {
    config.format = value;
  } else if (key == "omega_p") {
    config.omega_p = parse_double(value, "omega_p");
  } else if (key == "delta") {
    config.delta = parse_double(value, "delta");
  } else if (key == "gamma_s") {
    config.gamma_s = parse_double(value, "gamma_s");
  } else {
    throw ConfigError("unknown configuration key '" + key + "'");
  }
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  RunConfig config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    apply_key_value(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return config;
}

const char* family_name(PsfFamily family) {
  switch (family) {
    case PsfFamily::unmodulated: return "unmodulated";
    case PsfFamily::f0: return "f0";
    case PsfFamily::f2: return "f2";
    case PsfFamily::f4: return "f4";
    case PsfFamily::pert1: return "pert1";
    case PsfFamily::pert2: return "pert2";
    case PsfFamily::coupled_lambda: return "coupled_lambda";
  }
  return "?";
}

std::function<double(double)> local_field_ratio(const FieldProfile& drive,
                                                const FieldProfile& probe) {
  return [drive, probe](double x) { return safe_ratio(drive.evaluate(x), probe.evaluate(x)); };
}

PsfFunction make_psf(PsfFamily family, std::function<double(double)> s_of_x) {
  switch (family) {
    case PsfFamily::unmodulated:
      return [s_of_x](double x) {
        const double s = s_of_x(x);
        const double q = s * s;
        return std::isinf(q) ? 0.0 : 1.0 / (1.0 + q);
      };
    case PsfFamily::coupled_lambda:
      return [s_of_x](double x) {
        const double s = s_of_x(x);
        const double q = s * s;
        const double v = std::isinf(q) ? 0.0 : 1.0 / (1.0 + q);
        return v * v;
      };
    case PsfFamily::f0:
      return [s_of_x](double x) { return f_coeff_closed(0, s_of_x(x)); };
    case PsfFamily::f2:
      return [s_of_x](double x) { return f_coeff_closed(1, s_of_x(x)); };
    case PsfFamily::f4:
      return [s_of_x](double x) { return f_coeff_closed(2, s_of_x(x)); };
    case PsfFamily::pert1:
      return [s_of_x](double x) { return perturbative_coeff(1, s_of_x(x)); };
    case PsfFamily::pert2:
      return [s_of_x](double x) { return perturbative_coeff(2, s_of_x(x)); };
  }
  throw ConfigError("unknown PSF family");
}

FeatureWidth family_width(PsfFamily family, const std::function<double(double)>& s_of_x,
                          double ratio_seed) {
  const double w = 2.0 / std::sqrt(std::max(ratio_seed, 1.0));
  const PsfFunction psf = make_psf(family, s_of_x);
  PsfCurve curve = normalize_orientation(sample_psf(psf, -5.0 * w, 5.0 * w, 4001));
  return measure_width(curve, 0.0, psf);
}

CommandOutput cmd_steady(const RunConfig& config) {
  RunConfig c = config;
  c.scenario = Scenario::steady;
  c.validate();

  const double ratio = c.ratio();
  const GridSpec g = default_grid(c, ratio);
  const FieldProfile probe = make_probe(c);
  const FieldProfile drive = make_drive(c, ratio);
  const auto s_of_x = ratio_profile(c, ratio);

  ResultTable table =
      make_table(c, "steady", {"kx", "rho22_analytic", "rho22_lindblad", "abs_error"});
  const DensityMatrix rho0 = DensityMatrix::pure(2);
  for (int i = 0; i < g.n; ++i) {
    const double x = g.lo + i * (g.hi - g.lo) / (g.n - 1);
    const double s = s_of_x(x);
    const double analytic = std::isinf(s * s) ? 0.0 : 1.0 / (1.0 + s * s);

    LambdaConfig atom;
    atom.omega_p = std::abs(c.drive == DriveKind::standing_2d ? probe.evaluate(x, 0.0)
                                                              : probe.evaluate(x));
    atom.omega_s = std::abs(c.drive == DriveKind::standing_2d ? drive.evaluate(x, 0.0)
                                                              : drive.evaluate(x));
    atom.delta = c.delta;
    atom.gamma_s = c.gamma_s;
    const double numeric = steady_state(rho0, atom).rho22();
    table.add_row({x, analytic, numeric, std::abs(analytic - numeric)});
  }
  return {{{"steady", std::move(table)}}};
}

CommandOutput cmd_psf(const RunConfig& config) {
  RunConfig c = config;
  c.scenario = Scenario::psf;
  c.validate();

  const double ratio = c.ratio();
  const GridSpec g = default_grid(c, ratio);
  const auto s_of_x = ratio_profile(c, ratio);

  std::vector<PsfFamily> families;
  switch (c.modulation.kind) {
    case ModulationSpec::Kind::none:
      families = {PsfFamily::unmodulated, PsfFamily::coupled_lambda};
      break;
    case ModulationSpec::Kind::full:
      families = {PsfFamily::f0, PsfFamily::f2, PsfFamily::f4};
      break;
    case ModulationSpec::Kind::perturbative:
      families = {PsfFamily::pert1, PsfFamily::pert2};
      break;
  }

  std::vector<std::string> columns{"x"};
  for (auto f : families) columns.emplace_back(family_name(f));
  ResultTable table = make_table(c, "psf", columns);
  std::vector<PsfFunction> fns;
  for (auto f : families) fns.push_back(make_psf(f, s_of_x));
  for (int i = 0; i < g.n; ++i) {
    const double x = g.lo + i * (g.hi - g.lo) / (g.n - 1);
    std::vector<double> row{x};
    for (const auto& fn : fns) row.push_back(fn(x));
    table.add_row(row);
  }
  return {{{"psf", std::move(table)}}};
}

CommandOutput cmd_modulate(const RunConfig& config) {
  RunConfig c = config;
  c.scenario = Scenario::modulate;
  c.validate();
  if (c.modulation.kind != ModulationSpec::Kind::full) {
    throw ConfigError(
        "modulate scenario compares against the cos(2l nu t) closed forms and "
        "requires --modulation full:NU");
  }

  const double ratio = c.ratio();
  // Default position: local field ratio s = 1.
  double kx;
  if (c.position) {
    kx = *c.position;
  } else if (c.drive == DriveKind::lg) {
    kx = 1.0 / std::sqrt(ratio);
  } else {
    kx = std::asin(std::min(1.0, 1.0 / std::sqrt(ratio)));
  }

  const FieldProfile probe = make_probe(c);
  const FieldProfile drive = make_drive(c, ratio);
  LambdaConfig atom;
  atom.omega_p = std::abs(c.drive == DriveKind::standing_2d ? probe.evaluate(kx, 0.0)
                                                            : probe.evaluate(kx));
  atom.omega_s = std::abs(c.drive == DriveKind::standing_2d ? drive.evaluate(kx, 0.0)
                                                            : drive.evaluate(kx));
  atom.delta = c.delta;
  atom.gamma_s = c.gamma_s;
  const double s = atom.omega_p > 0.0 ? atom.omega_s / atom.omega_p : 0.0;

  const ModulatedTrace trace =
      evolve_modulated(DensityMatrix::pure(2), atom, c.modulation, 4, 512);

  ResultTable table = make_table(
      c, "modulate",
      {"harmonic", "coeff_demodulated", "coeff_closed_or_quadrature", "rel_error"});
  table.add_meta("local_s", ResultTable::format_value(s));
  if (trace.adiabaticity_warning) {
    table.add_meta("adiabaticity_warning",
                   "nu exceeds 0.1 * pumping rate; quasi-static comparison degraded");
  }
  for (int h : c.harmonics) {
    const double demod = demodulate(trace.rho22, c.modulation.nu, h);
    double reference = 0.0;
    if (h % 2 == 0) {
      const int l = h / 2;
      reference = l <= 2 ? f_coeff_closed(l, s) : f_coeff_quadrature(l, s);
    }
    const double denom = std::abs(reference) > 1e-9 ? std::abs(reference) : 1.0;
    table.add_row({static_cast<double>(h), demod, reference,
                   std::abs(demod - reference) / denom});
  }
  return {{{"modulate", std::move(table)}}};
}

CommandOutput cmd_figure(const RunConfig& config) {
  RunConfig c = config;
  c.scenario = Scenario::figure;
  if (c.tag.empty()) throw ConfigError("figure scenario requires a tag");
  c.validate();

  // Preset ratios follow the source figures unless overridden.
  if (c.tag == "fig1b") {
    return figure_fig1b(c);
  } else if (c.tag == "fig2a") {
    if (!c.ratios_explicit) c.ratios = {2000.0};
    return figure_fig2a(c);
  } else if (c.tag == "fig2b") {
    if (!c.ratios_explicit) c.ratios = {2000.0};
    return figure_2d(c, false);
  } else if (c.tag == "fig3") {
    return figure_fig3(c);
  } else if (c.tag == "fig5a") {
    return figure_fig5a(c);
  } else if (c.tag == "fig5b") {
    return figure_2d(c, true);
  }
  throw UnknownTag("unknown figure tag '" + c.tag + "'");
}

CommandOutput cmd_sweep(const RunConfig& config) {
  RunConfig c = config;
  c.scenario = Scenario::sweep;
  c.validate();

  const std::vector<PsfFamily> families{
      PsfFamily::unmodulated, PsfFamily::f0,    PsfFamily::f2,           PsfFamily::f4,
      PsfFamily::pert1,       PsfFamily::pert2, PsfFamily::coupled_lambda};

  std::vector<std::string> columns{"ratio"};
  for (auto f : families) columns.push_back(std::string("w_") + family_name(f));
  ResultTable table = make_table(c, "sweep", columns);

  std::vector<std::vector<double>> widths(families.size());
  for (double ratio : c.ratios) {
    const auto s_of_x = ratio_profile(c, ratio);
    std::vector<double> row{ratio};
    for (std::size_t i = 0; i < families.size(); ++i) {
      const double w = family_width(families[i], s_of_x, ratio).width;
      widths[i].push_back(w);
      row.push_back(w);
    }
    table.add_row(row);
  }

  // Verify the monotone width decrease with R when the list is ascending.
  bool monotone = true;
  for (std::size_t i = 0; i < families.size(); ++i) {
    for (std::size_t r = 1; r < c.ratios.size(); ++r) {
      if (c.ratios[r] > c.ratios[r - 1] && !(widths[i][r] < widths[i][r - 1])) {
        monotone = false;
      }
    }
  }
  table.add_meta("monotone_width_decrease", monotone ? "yes" : "no");
  return {{{"sweep", std::move(table)}}};
}

CommandOutput run_scenario(const RunConfig& config) {
  switch (config.scenario) {
    case Scenario::steady: return cmd_steady(config);
    case Scenario::psf: return cmd_psf(config);
    case Scenario::modulate: return cmd_modulate(config);
    case Scenario::figure: return cmd_figure(config);
    case Scenario::sweep: return cmd_sweep(config);
  }
  throw ConfigError("unknown scenario");
}

void write_output(const CommandOutput& output, const RunConfig& config) {
  const std::string ext = config.format == "json" ? "json" : "csv";
  if (config.out.empty()) {
    for (const auto& [name, table] : output.tables) {
      std::cout << (config.format == "json" ? table.to_json() : table.to_csv());
      std::cout << "\n";
    }
    return;
  }
  if (output.tables.size() == 1) {
    output.tables.front().second.write_file(config.out, config.format);
    return;
  }
  std::string stem = config.out;
  const auto dot = stem.find_last_of('.');
  std::string suffix;
  if (dot != std::string::npos && stem.find('/', dot) == std::string::npos) {
    suffix = stem.substr(dot);
    stem.erase(dot);
  }
  if (suffix.empty()) suffix = "." + ext;
  for (const auto& [name, table] : output.tables) {
    table.write_file(stem + "_" + name + suffix, config.format);
  }
}

}  // namespace cptloc
