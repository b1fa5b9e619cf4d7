#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "config.hpp"
#include "trhom/analysis.hpp"
#include "trhom/errors.hpp"
#include "trhom/io.hpp"
#include "trhom/quantum.hpp"
#include "trhom/sfg.hpp"
#include "trhom/whitelight.hpp"

namespace fs = std::filesystem;

namespace {

using namespace trhom;

const char* kPlotScript = R"PY(#!/usr/bin/env python3
"""Render the CSV files next to this script to PNGs (needs matplotlib)."""
import csv
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt


def read(path):
    with open(path, newline="") as f:
        rows = csv.reader(f)
        header = next(rows)
        cols = {h: [] for h in header}
        for row in rows:
            for h, v in zip(header, row):
                cols[h].append(float(v))
    return cols


base = os.path.dirname(os.path.abspath(__file__))
made = []

path = os.path.join(base, "s_of_x.csv")
if os.path.exists(path):
    d = read(path)
    plt.figure(figsize=(6.4, 4.2))
    plt.plot(d["x_um"], d["S_normalized"], lw=1.2)
    plt.xlabel("delay-line offset x (um)")
    plt.ylabel("S(x) / baseline")
    plt.grid(alpha=0.3)
    out = os.path.join(base, "s_of_x.png")
    plt.tight_layout(); plt.savefig(out, dpi=150); plt.close()
    made.append(out)

path = os.path.join(base, "map.csv")
if os.path.exists(path):
    d = read(path)
    xs = sorted(set(d["x_um"]))
    taus = sorted(set(d["tau_fs"]))
    grid = [[0.0] * len(taus) for _ in xs]
    xi = {v: i for i, v in enumerate(xs)}
    ti = {v: i for i, v in enumerate(taus)}
    for x, t, v in zip(d["x_um"], d["tau_fs"], d["intensity"]):
        grid[xi[x]][ti[t]] = v
    plt.figure(figsize=(6.4, 4.8))
    plt.imshow(grid, aspect="auto", origin="lower",
               extent=[taus[0], taus[-1], xs[0], xs[-1]], cmap="inferno")
    plt.colorbar(label="filtered intensity")
    plt.xlabel("pulse delay tau (fs)")
    plt.ylabel("delay-line offset x (um)")
    out = os.path.join(base, "map.png")
    plt.tight_layout(); plt.savefig(out, dpi=150); plt.close()
    made.append(out)

path = os.path.join(base, "fringes.csv")
if os.path.exists(path):
    d = read(path)
    plt.figure(figsize=(6.4, 4.2))
    plt.plot(d["x_um"], d["intensity"], lw=0.6, label="intensity")
    base_level = sum(d["intensity"]) / len(d["intensity"])
    env_hi = [base_level + e for e in d["envelope"]]
    env_lo = [base_level - e for e in d["envelope"]]
    plt.plot(d["x_um"], env_hi, "r--", lw=1.0, label="envelope")
    plt.plot(d["x_um"], env_lo, "r--", lw=1.0)
    plt.xlabel("path offset x (um)")
    plt.ylabel("detected intensity")
    plt.legend()
    out = os.path.join(base, "fringes.png")
    plt.tight_layout(); plt.savefig(out, dpi=150); plt.close()
    made.append(out)

if made:
    print("wrote " + ", ".join(made))
else:
    print("no known CSV files found next to the script")
)PY";

void write_plot_script(const fs::path& out_dir) {
  write_text_file(out_dir / "plot.py", kPlotScript);
}

std::vector<double> linspace(double lo, double hi, std::size_t steps) {
  std::vector<double> v(steps);
  const double d = (hi - lo) / static_cast<double>(steps - 1);
  for (std::size_t i = 0; i < steps; ++i)
    v[i] = lo + static_cast<double>(i) * d;
  return v;
}

ComplexSpectrum unit_transfer(const FrequencyGrid& grid) {
  return transfer_function(grid, DispersionModel());
}

int cmd_hom(const RunConfig& cfg, const fs::path& out_dir) {
  const PreparedInput in = prepare_input(cfg);
  const InterferogramMap map = interferogram_map(in.pulse, in.transfer,
                                                 cfg.sweep, cfg.selection,
                                                 cfg.workers);
  const Interferogram s = integrate_tau(map);
  const DipMetrics m = dip_metrics(s);

  write_map_csv(out_dir / "map.csv", map);
  write_curve_csv(out_dir / "s_of_x.csv", s, m.baseline);
  write_metrics(out_dir / "metrics.txt",
                {{"fwhm_um", format_double(m.fwhm)},
                 {"visibility", format_double(m.visibility)},
                 {"center_um", format_double(m.center)},
                 {"baseline", format_double(m.baseline)},
                 {"min_value", format_double(m.min_value)}});
  write_plot_script(out_dir);

  std::cout << "hom: dip fwhm " << format_double(m.fwhm) << " um, visibility "
            << format_double(m.visibility) << ", center "
            << format_double(m.center) << " um\n"
            << "wrote " << (out_dir / "map.csv").string() << ", "
            << (out_dir / "s_of_x.csv").string() << ", "
            << (out_dir / "metrics.txt").string() << "\n";
  return 0;
}

int cmd_whitelight(const RunConfig& cfg, const fs::path& out_dir) {
  const PreparedInput in = prepare_input(cfg);
  const FringePattern fringes =
      whitelight_interferogram(in.pulse, in.transfer, cfg.sweep.x_axis());
  const double env_fwhm = fwhm_of_peak(fringes.envelope_curve());

  write_fringes_csv(out_dir / "fringes.csv", fringes);
  write_metrics(out_dir / "metrics.txt",
                {{"envelope_fwhm_um", format_double(env_fwhm)},
                 {"baseline", format_double(fringes.baseline())}});
  write_plot_script(out_dir);

  std::cout << "whitelight: envelope fwhm " << format_double(env_fwhm)
            << " um, baseline " << format_double(fringes.baseline()) << "\n"
            << "wrote " << (out_dir / "fringes.csv").string() << ", "
            << (out_dir / "metrics.txt").string() << "\n";
  return 0;
}

int cmd_compare(const RunConfig& cfg, const fs::path& out_dir) {
  const PreparedInput in = prepare_input(cfg);
  const double w0 = cfg.omega0();
  const double sigma_eq = gaussian_equivalent_sigma(in.pulse);
  const double env0 = 4.0 * (kSpeedOfLight / sigma_eq) * std::sqrt(std::log(2.0));
  const double dip0 =
      2.0 * (kSpeedOfLight / sigma_eq) * std::sqrt(2.0 * std::log(2.0));

  // Dispersion under test: explicit phi from the config if any, otherwise
  // the quadratic phase giving the requested white-light broadening.
  bool user_phi = false;
  for (double c : cfg.phi) user_phi = user_phi || c != 0.0;
  double phi2 = 0.0;
  DispersionModel disp;
  if (user_phi) {
    disp = in.dispersion;
  } else {
    // The bracket search can probe phi2 at up to twice the root, where the
    // envelope reaches sqrt(1 + 4 (t^2 - 1)) times its undispersed width;
    // the measurement axis has to keep even that curve within five widths.
    const double t = cfg.target_broadening;
    const double probe_max = std::sqrt(1.0 + 4.0 * (t * t - 1.0));
    const double bisect_half = 2.6 * probe_max * env0;
    const std::size_t bisect_steps =
        2 * static_cast<std::size_t>(std::ceil(bisect_half / (env0 / 100.0))) +
        1;
    phi2 = phi2_for_broadening(
        in.pulse, cfg.target_broadening,
        linspace(-bisect_half, bisect_half, bisect_steps),
        cfg.broadening_rel_tol);
    disp = DispersionModel({0.0, 0.0, phi2}, w0);
  }
  const ComplexSpectrum h_unit = unit_transfer(in.grid);
  const ComplexSpectrum h_disp = transfer_function(in.grid, disp);

  // White-light envelope widths with and without the dispersive arm.
  const double group_delay_um =
      cfg.phi.size() > 1 ? std::abs(kSpeedOfLight * cfg.phi[1]) : 0.0;
  const double wl_half = 3.25 * cfg.target_broadening * env0 + group_delay_um;
  const std::size_t wl_steps =
      2 * static_cast<std::size_t>(std::ceil(wl_half / 0.1)) + 1;
  const std::vector<double> wl_axis = linspace(-wl_half, wl_half, wl_steps);
  const FringePattern wl0 = whitelight_interferogram(in.pulse, h_unit, wl_axis);
  const FringePattern wl1 = whitelight_interferogram(in.pulse, h_disp, wl_axis);
  const double wl_fwhm0 = fwhm_of_peak(wl0.envelope_curve());
  const double wl_fwhm1 = fwhm_of_peak(wl1.envelope_curve());
  const double wl_broadening =
      broadening_factor(wl1.envelope_curve(), wl0.envelope_curve(),
                        CurveKind::Peak);

  // Dip widths from the delay-integrated closed form on a fine axis.
  const double dip_half = 3.25 * dip0 + group_delay_um;
  const std::size_t dip_steps =
      2 * static_cast<std::size_t>(std::ceil(dip_half / (dip0 / 200.0))) + 1;
  const std::vector<double> dip_axis = linspace(-dip_half, dip_half, dip_steps);
  const Interferogram s0 = closed_form_S(in.pulse, h_unit, dip_axis);
  const Interferogram s1 = closed_form_S(in.pulse, h_disp, dip_axis);
  const double dip_fwhm0 = fwhm_of_dip(s0);
  const double dip_fwhm1 = fwhm_of_dip(s1);
  const double hom_broadening = broadening_factor(s1, s0, CurveKind::Dip);
  const double ratio = width_ratio(wl0.envelope_curve(), s0);

  write_fringes_csv(out_dir / "wl_fringes.csv", wl0);
  write_fringes_csv(out_dir / "wl_fringes_dispersed.csv", wl1);
  write_curve_csv(out_dir / "s_of_x.csv", s0, baseline_outer_mean(s0));
  write_curve_csv(out_dir / "s_of_x_dispersed.csv", s1,
                  baseline_outer_mean(s1));
  write_metrics(out_dir / "report.txt",
                {{"phi2_fs2", user_phi ? std::string("user_supplied")
                                       : format_double(phi2)},
                 {"wl_envelope_fwhm_um", format_double(wl_fwhm0)},
                 {"wl_envelope_fwhm_dispersed_um", format_double(wl_fwhm1)},
                 {"wl_broadening", format_double(wl_broadening)},
                 {"hom_dip_fwhm_um", format_double(dip_fwhm0)},
                 {"hom_dip_fwhm_dispersed_um", format_double(dip_fwhm1)},
                 {"hom_broadening", format_double(hom_broadening)},
                 {"width_ratio", format_double(ratio)}});
  write_plot_script(out_dir);

  std::cout << "compare: white-light broadening "
            << format_double(wl_broadening) << ", dip broadening "
            << format_double(hom_broadening) << ", envelope/dip width ratio "
            << format_double(ratio) << "\n"
            << "wrote " << (out_dir / "report.txt").string() << "\n";
  return 0;
}

int cmd_oracle(const RunConfig& cfg, const fs::path& out_dir) {
  OracleSuiteParams params;
  params.n_modes = cfg.oracle_n_modes;
  params.omega0 = cfg.omega0();
  params.sigma = cfg.sigma;
  params.delta_factor = cfg.oracle_delta_factor;
  params.trials = cfg.oracle_trials;
  params.seed = cfg.seed;
  params.x_max_um = cfg.oracle_x_max_um;
  params.x_steps = cfg.oracle_x_steps;
  params.phi2_fs2 = cfg.oracle_phi2_fs2;
  const OracleReport rep = run_oracle_suite(params);

  write_metrics(
      out_dir / "oracle_report.txt",
      {{"trials", std::to_string(rep.trials)},
       {"identity_max_abs_dev", format_double(rep.identity_max_abs_dev)},
       {"fwdrev_pearson", format_double(rep.fwdrev_pearson)},
       {"fwdrev_max_rel_dev", format_double(rep.fwdrev_max_rel_dev)},
       {"even_order_max_rel_dev", format_double(rep.even_order_max_rel_dev)},
       {"passed", rep.passed ? "true" : "false"}});

  std::cout << "oracle: reversal identity max |dP| = "
            << format_double(rep.identity_max_abs_dev) << " over "
            << rep.trials << " random instances\n"
            << "oracle: tau-summed reversed vs forward: pearson "
            << format_double(rep.fwdrev_pearson) << ", max rel dev "
            << format_double(rep.fwdrev_max_rel_dev) << "\n"
            << "oracle: even-order dispersion invariance: max rel dev "
            << format_double(rep.even_order_max_rel_dev) << "\n"
            << (rep.passed ? "oracle: PASS\n" : "oracle: FAIL\n");
  if (!rep.passed) {
    std::cerr << "oracle suite failed; see "
              << (out_dir / "oracle_report.txt").string() << "\n";
    return 2;
  }
  return 0;
}

int cmd_selfcheck() {
  bool ok = true;
  const double sigma = 0.05;
  const double w0 = 2.4;

  {  // delay-integrated closed form against the analytic Gaussian result
    const std::size_t n = 512;
    const FrequencyGrid grid(w0, 10.0 * sigma / static_cast<double>(n), n,
                             sigma);
    const ComplexSpectrum e = make_gaussian_spectrum(grid, w0, sigma);
    // Reach out to +-60 um so the outer-sample baseline window sits where
    // the dip term has decayed below 1e-14; at +-40 it still biases the
    // normalization by ~7e-8, swamping the quadrature error under test.
    const std::vector<double> axis = linspace(-60.0, 60.0, 241);
    const Interferogram s = closed_form_S(e, unit_transfer(grid), axis);
    const double baseline = baseline_outer_mean(s);
    double max_dev = 0.0;
    for (std::size_t i = 0; i < axis.size(); ++i) {
      const double arg = sigma * axis[i] / kSpeedOfLight;
      const double ref = 1.0 - std::exp(-0.5 * arg * arg);
      max_dev = std::max(max_dev, std::abs(s.values()[i] / baseline - ref));
    }
    const bool pass = max_dev < 1e-8;
    ok = ok && pass;
    std::cout << (pass ? "PASS" : "FAIL")
              << " closed-form curve vs analytic Gaussian: max dev "
              << format_double(max_dev) << " (tol 1e-08)\n";
  }

  {  // FFT convolution path against the direct quadrature path
    const std::size_t n = 128;
    const FrequencyGrid grid(w0, 10.0 * sigma / static_cast<double>(n), n,
                             sigma);
    const ComplexSpectrum e = make_gaussian_spectrum(grid, w0, sigma);
    const ComplexSpectrum h =
        transfer_function(grid, DispersionModel({0.0, 50.0, 300.0, 4000.0}, w0));
    double max_dev = 0.0, scale = 0.0;
    for (const TermSelection sel :
         {TermSelection::CrossOnly, TermSelection::CrossPlusAuto}) {
      const ComplexSpectrum fast = sfg_spectrum(e, h, 7.3, -41.2, sel);
      const ComplexSpectrum slow = sfg_spectrum_direct(e, h, 7.3, -41.2, sel);
      for (std::size_t k = 0; k < n; ++k) {
        max_dev = std::max(max_dev, std::abs(fast[k] - slow[k]));
        scale = std::max(scale, std::abs(slow[k]));
      }
    }
    const bool pass = max_dev < 1e-9 * scale;
    ok = ok && pass;
    std::cout << (pass ? "PASS" : "FAIL")
              << " FFT vs direct convolution: max rel dev "
              << format_double(scale > 0.0 ? max_dev / scale : 0.0)
              << " (tol 1e-09)\n";
  }

  {  // sweep-integrated signal against the closed form, dispersive arm
    const std::size_t n = 256;
    const FrequencyGrid grid(w0, 10.0 * sigma / static_cast<double>(n), n,
                             sigma);
    const ComplexSpectrum e = make_gaussian_spectrum(grid, w0, sigma);
    const ComplexSpectrum h =
        transfer_function(grid, DispersionModel({0.0, 0.0, 200.0}, w0));
    SweepConfig sweep;
    sweep.x_min_um = -15.0;
    sweep.x_max_um = 15.0;
    sweep.x_steps = 31;
    sweep.tau_min_fs = -250.0;
    sweep.tau_max_fs = 250.0;
    sweep.tau_steps = 1001;
    const Interferogram swept = integrate_tau(
        interferogram_map(e, h, sweep, TermSelection::CrossOnly, 0));
    const Interferogram closed = closed_form_S(e, h, sweep.x_axis());
    // The two routes share the curve shape but not the absolute scale (the
    // sweep carries the tau measure): match by least squares, then compare.
    double num = 0.0, den = 0.0, peak = 0.0;
    for (std::size_t i = 0; i < swept.size(); ++i) {
      num += swept.values()[i] * closed.values()[i];
      den += swept.values()[i] * swept.values()[i];
      peak = std::max(peak, closed.values()[i]);
    }
    const double scale = num / den;
    double max_dev = 0.0;
    for (std::size_t i = 0; i < swept.size(); ++i)
      max_dev = std::max(max_dev, std::abs(scale * swept.values()[i] -
                                           closed.values()[i]) / peak);
    const bool pass = max_dev < 5e-3;
    ok = ok && pass;
    std::cout << (pass ? "PASS" : "FAIL")
              << " sweep-integrated vs closed-form curve: max dev "
              << format_double(max_dev) << " of baseline (tol 5e-03)\n";
  }

  std::cout << (ok ? "selfcheck: PASS\n" : "selfcheck: FAIL\n");
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Spectral-domain simulator of a time-reversed two-photon "
      "interferometer: delay sweeps with sum-frequency detection, a "
      "white-light comparison channel, and a finite-dimensional oracle."};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  long long workers = -1;
  long long seed = -1;
  std::string preset;
  app.add_option("--config", config_path, "INI config file (see configs/)");
  app.add_option("--out", out_dir, "output directory")
      ->capture_default_str();
  app.add_option("--workers", workers,
                 "worker threads for the sweep (0 = all cores)");
  app.add_option("--preset", preset,
                 "named parameter set; 'paper' = 782 nm / 74.5 fs pulse")
      ->check(CLI::IsMember({"paper"}));
  app.add_option("--seed", seed, "seed for the oracle random suite");

  CLI::App* hom = app.add_subcommand(
      "hom", "delay-line sweep with filtered sum-frequency detection");
  CLI::App* whitelight = app.add_subcommand(
      "whitelight", "first-order fringe pattern of the same source");
  CLI::App* compare = app.add_subcommand(
      "compare", "dispersion response of both channels, ratio report");
  CLI::App* oracle = app.add_subcommand(
      "oracle", "finite-dimensional reversal-identity suite");
  CLI::App* selfcheck = app.add_subcommand(
      "selfcheck", "built-in analytic cross-checks, nonzero exit on failure");
  for (CLI::App* sub : {hom, whitelight, compare, oracle, selfcheck})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    trhom::RunConfig cfg = trhom::make_default_config();
    if (preset == "paper") trhom::apply_paper_preset(cfg);
    const bool needs_sweep =
        hom->parsed() || whitelight->parsed() || compare->parsed();
    if (!config_path.empty())
      trhom::apply_ini(cfg, trhom::parse_ini_file(config_path), needs_sweep);
    if (workers >= 0) cfg.workers = static_cast<std::size_t>(workers);
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);

    const fs::path out(out_dir);
    if (hom->parsed()) return cmd_hom(cfg, out);
    if (whitelight->parsed()) return cmd_whitelight(cfg, out);
    if (compare->parsed()) return cmd_compare(cfg, out);
    if (oracle->parsed()) return cmd_oracle(cfg, out);
    if (selfcheck->parsed()) return cmd_selfcheck();
    std::cerr << "no subcommand selected\n";
    return 1;
  } catch (const trhom::InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const trhom::NumericFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const trhom::IoFailure& e) {
    std::cerr << "i/o failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "unexpected failure: " << e.what() << "\n";
    return 2;
  }
}
