#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trhom/grid.hpp"
#include "trhom/sfg.hpp"

namespace trhom {

// Flat INI-style run configuration. Precedence, lowest to highest:
// built-in defaults < --preset paper < --config file < command-line flags.
struct RunConfig {
  // [pulse] either a Gaussian width or a tabulated spectrum file
  double center_wavelength_nm = 782.0;
  double sigma = 0.05;  // rad/fs, Gaussian amplitude width
  std::string spectrum_file;

  // [grid]
  std::size_t n_points = 1024;
  double span_factor = 10.0;  // span = span_factor * sigma
  double span_rad_fs = 0.0;   // explicit span override (required for tables)

  // [dispersion]
  std::vector<double> phi;         // rad * fs^m, applied to the fixed arm
  std::optional<double> omega_ref; // defaults to the pulse center frequency

  // [sweep]
  SweepConfig sweep;  // defaults set in make_default_config()

  // [run]
  TermSelection selection = TermSelection::CrossOnly;
  std::size_t workers = 0;  // 0 = all hardware threads
  std::uint64_t seed = 42;

  // [oracle]
  std::size_t oracle_n_modes = 8;
  std::size_t oracle_trials = 100;
  double oracle_delta_factor = 0.4;
  double oracle_x_max_um = 24.0;
  std::size_t oracle_x_steps = 97;
  double oracle_phi2_fs2 = 600.0;

  // [compare]
  double target_broadening = 1.8;
  double broadening_rel_tol = 1e-3;

  double omega0() const {
    return kTwoPi * kSpeedOfLight / (center_wavelength_nm * 1e-3);
  }
};

RunConfig make_default_config();

// 782 nm center, 74.5 fs FWHM pulse: sigma = 2 sqrt(ln 2) / fwhm_t, with
// sweep axes rescaled for the narrower bandwidth.
void apply_paper_preset(RunConfig& cfg);

// Parsed INI file: section -> key -> value, with duplicate keys rejected.
using IniData = std::map<std::string, std::map<std::string, std::string>>;
IniData parse_ini_file(const std::string& path);

// Overlays `ini` onto `cfg`. Unknown sections or keys and malformed values
// raise InvalidInput naming the offender. `require_sweep` additionally
// demands the full [sweep] block (subcommands that sweep an axis).
void apply_ini(RunConfig& cfg, const IniData& ini, bool require_sweep);

// Builds the working grid + pulse spectrum + transfer function from the
// config. The grid is centered on omega0 with span max(8 sigma_eq,
// requested); tabulated pulses require an explicit span_rad_fs.
struct PreparedInput {
  FrequencyGrid grid;
  ComplexSpectrum pulse;
  ComplexSpectrum transfer;
  DispersionModel dispersion;
};
PreparedInput prepare_input(const RunConfig& cfg);

}  // namespace trhom
