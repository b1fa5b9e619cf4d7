#include "config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "trhom/errors.hpp"
#include "trhom/io.hpp"

namespace trhom {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& where, const std::string& v) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw InvalidInput("config: " + where + " expects a number, got '" + v + "'");
  return out;
}

std::size_t to_count(const std::string& where, const std::string& v) {
  std::size_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw InvalidInput("config: " + where + " expects a non-negative integer, got '" +
                       v + "'");
  return out;
}

std::vector<double> to_double_list(const std::string& where,
                                   const std::string& v) {
  std::vector<double> out;
  std::istringstream iss(v);
  std::string tok;
  while (iss >> tok) out.push_back(to_double(where, tok));
  return out;
}

// Pops `key` from the section's leftover map if present.
std::optional<std::string> take(std::map<std::string, std::string>& sec,
                                const std::string& key) {
  auto it = sec.find(key);
  if (it == sec.end()) return std::nullopt;
  std::string v = it->second;
  sec.erase(it);
  return v;
}

}  // namespace

RunConfig make_default_config() {
  RunConfig cfg;
  cfg.sweep.x_min_um = -40.0;
  cfg.sweep.x_max_um = 40.0;
  cfg.sweep.x_steps = 201;
  cfg.sweep.tau_min_fs = -300.0;
  cfg.sweep.tau_max_fs = 300.0;
  cfg.sweep.tau_steps = 1201;
  cfg.sweep.filter_fwhm = 0.0;
  return cfg;
}

void apply_paper_preset(RunConfig& cfg) {
  cfg.center_wavelength_nm = 782.0;
  // 74.5 fs intensity-FWHM Gaussian pulse: |E(t)|^2 = exp(-t^2 (sigma_w)^2 ...)
  // transform-limited width sigma = 2 sqrt(ln 2) / fwhm_t.
  cfg.sigma = 2.0 * std::sqrt(std::log(2.0)) / 74.5;
  cfg.spectrum_file.clear();
  cfg.n_points = 1024;
  cfg.span_factor = 10.0;
  // dip fwhm ~ 31.6 um, envelope ~ 44.7 um for this sigma; axes scaled up
  cfg.sweep.x_min_um = -80.0;
  cfg.sweep.x_max_um = 80.0;
  cfg.sweep.x_steps = 321;
  cfg.sweep.tau_min_fs = -600.0;
  cfg.sweep.tau_max_fs = 600.0;
  cfg.sweep.tau_steps = 2401;
}

IniData parse_ini_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoFailure("cannot open config file " + path);
  IniData data;
  std::string line, section;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    // strip comments, full-line or trailing
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw InvalidInput("config: unterminated section header at line " +
                           std::to_string(line_no));
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw InvalidInput("config: empty section name at line " +
                           std::to_string(line_no));
      data.try_emplace(section);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidInput("config: expected key = value at line " +
                         std::to_string(line_no));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw InvalidInput("config: empty key at line " + std::to_string(line_no));
    if (section.empty())
      throw InvalidInput("config: key '" + key + "' outside any [section] at line " +
                         std::to_string(line_no));
    auto [it, inserted] = data[section].try_emplace(key, value);
    if (!inserted)
      throw InvalidInput("config: duplicate key '" + key + "' in [" + section +
                         "]");
  }
  return data;
}

void apply_ini(RunConfig& cfg, const IniData& ini, bool require_sweep) {
  IniData rest = ini;  // keys are consumed; leftovers are errors

  if (auto* sec = rest.count("pulse") ? &rest["pulse"] : nullptr) {
    if (auto v = take(*sec, "center_wavelength_nm"))
      cfg.center_wavelength_nm = to_double("pulse.center_wavelength_nm", *v);
    const auto sig = take(*sec, "sigma");
    const auto file = take(*sec, "spectrum_file");
    if (sig && file)
      throw InvalidInput(
          "config: [pulse] sigma and spectrum_file are mutually exclusive");
    if (sig) {
      cfg.sigma = to_double("pulse.sigma", *sig);
      cfg.spectrum_file.clear();
    }
    if (file) cfg.spectrum_file = *file;
  }

  if (auto* sec = rest.count("grid") ? &rest["grid"] : nullptr) {
    if (auto v = take(*sec, "n_points"))
      cfg.n_points = to_count("grid.n_points", *v);
    if (auto v = take(*sec, "span_factor"))
      cfg.span_factor = to_double("grid.span_factor", *v);
    if (auto v = take(*sec, "span_rad_fs"))
      cfg.span_rad_fs = to_double("grid.span_rad_fs", *v);
  }

  if (auto* sec = rest.count("dispersion") ? &rest["dispersion"] : nullptr) {
    if (auto v = take(*sec, "phi")) cfg.phi = to_double_list("dispersion.phi", *v);
    if (auto v = take(*sec, "omega_ref_rad_fs"))
      cfg.omega_ref = to_double("dispersion.omega_ref_rad_fs", *v);
  }

  {
    auto* sec = rest.count("sweep") ? &rest["sweep"] : nullptr;
    static const char* const required[] = {"x_min_um",   "x_max_um",
                                           "x_steps",    "tau_min_fs",
                                           "tau_max_fs", "tau_steps"};
    if (require_sweep) {
      if (!sec)
        throw InvalidInput(
            "config: missing [sweep] section (x_min_um, x_max_um, x_steps, "
            "tau_min_fs, tau_max_fs, tau_steps)");
      for (const char* key : required)
        if (!sec->count(key))
          throw InvalidInput("config: missing required field '" +
                             std::string(key) + "' in [sweep]");
    }
    if (sec) {
      if (auto v = take(*sec, "x_min_um"))
        cfg.sweep.x_min_um = to_double("sweep.x_min_um", *v);
      if (auto v = take(*sec, "x_max_um"))
        cfg.sweep.x_max_um = to_double("sweep.x_max_um", *v);
      if (auto v = take(*sec, "x_steps"))
        cfg.sweep.x_steps = to_count("sweep.x_steps", *v);
      if (auto v = take(*sec, "tau_min_fs"))
        cfg.sweep.tau_min_fs = to_double("sweep.tau_min_fs", *v);
      if (auto v = take(*sec, "tau_max_fs"))
        cfg.sweep.tau_max_fs = to_double("sweep.tau_max_fs", *v);
      if (auto v = take(*sec, "tau_steps"))
        cfg.sweep.tau_steps = to_count("sweep.tau_steps", *v);
      if (auto v = take(*sec, "filter_fwhm"))
        cfg.sweep.filter_fwhm = to_double("sweep.filter_fwhm", *v);
    }
  }

  if (auto* sec = rest.count("run") ? &rest["run"] : nullptr) {
    if (auto v = take(*sec, "mode")) {
      if (*v == "cross_only")
        cfg.selection = TermSelection::CrossOnly;
      else if (*v == "cross_plus_auto")
        cfg.selection = TermSelection::CrossPlusAuto;
      else
        throw InvalidInput(
            "config: run.mode must be cross_only or cross_plus_auto, got '" +
            *v + "'");
    }
    if (auto v = take(*sec, "workers"))
      cfg.workers = to_count("run.workers", *v);
    if (auto v = take(*sec, "seed"))
      cfg.seed = static_cast<std::uint64_t>(to_count("run.seed", *v));
  }

  if (auto* sec = rest.count("oracle") ? &rest["oracle"] : nullptr) {
    if (auto v = take(*sec, "n_modes"))
      cfg.oracle_n_modes = to_count("oracle.n_modes", *v);
    if (auto v = take(*sec, "trials"))
      cfg.oracle_trials = to_count("oracle.trials", *v);
    if (auto v = take(*sec, "delta_factor"))
      cfg.oracle_delta_factor = to_double("oracle.delta_factor", *v);
    if (auto v = take(*sec, "x_max_um"))
      cfg.oracle_x_max_um = to_double("oracle.x_max_um", *v);
    if (auto v = take(*sec, "x_steps"))
      cfg.oracle_x_steps = to_count("oracle.x_steps", *v);
    if (auto v = take(*sec, "phi2_fs2"))
      cfg.oracle_phi2_fs2 = to_double("oracle.phi2_fs2", *v);
  }

  if (auto* sec = rest.count("compare") ? &rest["compare"] : nullptr) {
    if (auto v = take(*sec, "target_broadening"))
      cfg.target_broadening = to_double("compare.target_broadening", *v);
    if (auto v = take(*sec, "broadening_rel_tol"))
      cfg.broadening_rel_tol = to_double("compare.broadening_rel_tol", *v);
  }

  static const char* const known_sections[] = {
      "pulse", "grid", "dispersion", "sweep", "run", "oracle", "compare"};
  for (const auto& [section, keys] : rest) {
    bool known = false;
    for (const char* s : known_sections) known = known || section == s;
    if (!known)
      throw InvalidInput("config: unknown section [" + section + "]");
    if (!keys.empty())
      throw InvalidInput("config: unknown key '" + keys.begin()->first +
                         "' in [" + section + "]");
  }
}

PreparedInput prepare_input(const RunConfig& cfg) {
  if (!(cfg.center_wavelength_nm > 0.0) ||
      !std::isfinite(cfg.center_wavelength_nm))
    throw InvalidInput("config: center_wavelength_nm must be positive");
  const double w0 = cfg.omega0();

  double span = cfg.span_rad_fs;
  if (!cfg.spectrum_file.empty()) {
    if (!(span > 0.0))
      throw InvalidInput(
          "config: tabulated spectra need an explicit grid.span_rad_fs");
  } else {
    if (!(cfg.sigma > 0.0) || !std::isfinite(cfg.sigma))
      throw InvalidInput("config: pulse.sigma must be positive");
    if (span <= 0.0) span = cfg.span_factor * cfg.sigma;
  }
  if (!(span > 0.0) || !std::isfinite(span))
    throw InvalidInput("config: grid span must be positive");
  if (cfg.n_points < 64 || cfg.n_points % 2 != 0)
    throw InvalidInput("config: grid.n_points must be even and >= 64");

  const double delta = span / static_cast<double>(cfg.n_points);
  const double declared =
      cfg.spectrum_file.empty() ? cfg.sigma : 0.0;
  FrequencyGrid grid(w0, delta, cfg.n_points, declared);

  ComplexSpectrum pulse =
      cfg.spectrum_file.empty()
          ? make_gaussian_spectrum(grid, w0, cfg.sigma)
          : tabulated_spectrum(grid, read_two_column_table(cfg.spectrum_file));

  DispersionModel model(cfg.phi, cfg.omega_ref.value_or(w0));
  ComplexSpectrum transfer = transfer_function(grid, model);
  return PreparedInput{grid, std::move(pulse), std::move(transfer),
                       std::move(model)};
}

}  // namespace trhom
