#include "trhom/sfg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "trhom/errors.hpp"
#include "trhom/parallel.hpp"

namespace trhom {

namespace {

using cd = std::complex<double>;

void check_common_grid(const ComplexSpectrum& E, const ComplexSpectrum& H,
                       const char* who) {
  if (E.grid() != H.grid())
    throw InvalidInput(std::string(who) + ": E and H are on different grids");
}

// out[k] = exp(i * omega_k * rate). Geometric recurrence along the uniform
// grid, re-anchored with an exact polar() every 64 steps to keep the
// accumulated rounding below ~1e-14 rad.
void fill_phase_ramp(std::vector<cd>& out, const FrequencyGrid& g,
                     double rate) {
  const std::size_t n = g.n_points();
  out.resize(n);
  const cd step = std::polar(1.0, g.delta_omega() * rate);
  cd cur = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k % 64 == 0) cur = std::polar(1.0, g.omega(k) * rate);
    out[k] = cur;
    cur *= step;
  }
}

// Scratch for one worker; all buffers sized once per map call.
struct SfgWorkspace {
  std::vector<cd> ramp_x, ramp_tau, b_x, kern_row;  // n
  std::vector<cd> a_tau, b_xtau;                    // n
  std::vector<cd> fat, fbx, fbxtau, acc, acc_auto;  // 2n
  std::vector<cd> spectrum;                         // n
  std::vector<double> integrand;                    // n
};

// Padded forward FFT of `src` into `dst` (size 2n).
void padded_fft(const std::vector<cd>& src, std::vector<cd>& dst) {
  const std::size_t n = src.size();
  dst.assign(2 * n, cd(0.0));
  std::copy(src.begin(), src.end(), dst.begin());
  detail::fft(dst.data(), 2 * n, false);
}

// Shared per-sweep precomputation: kernel factor A = E*H and its padded FFT.
struct SfgShared {
  const ComplexSpectrum& E;
  FrequencyGrid grid;
  FrequencyGrid dgrid;
  TermSelection sel;
  std::vector<cd> A;   // E*H
  std::vector<cd> FA;  // fft(pad(A))

  SfgShared(const ComplexSpectrum& e, const ComplexSpectrum& h,
            TermSelection selection)
      : E(e), grid(e.grid()), dgrid(e.grid().doubled()), sel(selection) {
    const std::size_t n = grid.n_points();
    A.resize(n);
    for (std::size_t k = 0; k < n; ++k) A[k] = e[k] * h[k];
    padded_fft(A, FA);
  }
};

// Full SFG spectrum via the convolution theorem; writes ws.spectrum.
void spectrum_fft(const SfgShared& sh, SfgWorkspace& ws, double tau_fs) {
  const std::size_t n = sh.grid.n_points();
  const std::size_t m = 2 * n;
  const std::size_t half = n / 2;
  const double d = sh.grid.delta_omega();

  fill_phase_ramp(ws.ramp_tau, sh.grid, tau_fs);
  ws.a_tau.resize(n);
  ws.b_xtau.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    ws.a_tau[k] = sh.A[k] * ws.ramp_tau[k];
    ws.b_xtau[k] = ws.b_x[k] * ws.ramp_tau[k];
  }
  padded_fft(ws.a_tau, ws.fat);
  padded_fft(ws.b_x, ws.fbx);
  padded_fft(ws.b_xtau, ws.fbxtau);

  ws.acc.resize(m);
  for (std::size_t k = 0; k < m; ++k)
    ws.acc[k] = ws.fat[k] * ws.fbx[k] - sh.FA[k] * ws.fbxtau[k];
  detail::fft(ws.acc.data(), m, true);

  ws.spectrum.resize(n);
  if (sh.sel == TermSelection::CrossPlusAuto) {
    ws.acc_auto.resize(m);
    for (std::size_t k = 0; k < m; ++k) ws.acc_auto[k] = sh.FA[k] * ws.fbx[k];
    detail::fft(ws.acc_auto.data(), m, true);
    // auto bracket [exp(i W tau) + 1] varies across the output grid
    std::vector<cd>& oramp = ws.a_tau;  // reuse as scratch
    fill_phase_ramp(oramp, sh.dgrid, tau_fs);
    for (std::size_t k = 0; k < n; ++k)
      ws.spectrum[k] =
          d * (ws.acc[k + half] + (oramp[k] + 1.0) * ws.acc_auto[k + half]);
  } else {
    for (std::size_t k = 0; k < n; ++k) ws.spectrum[k] = d * ws.acc[k + half];
  }
}

// Row setup: everything that depends on x but not on tau.
void prepare_row(const SfgShared& sh, SfgWorkspace& ws, double x_um) {
  const std::size_t n = sh.grid.n_points();
  fill_phase_ramp(ws.ramp_x, sh.grid, x_um / kSpeedOfLight);
  ws.b_x.resize(n);
  for (std::size_t k = 0; k < n; ++k) ws.b_x[k] = sh.E[k] * ws.ramp_x[k];
  // kern_row[k] = A[k] * B_x[n-k]: the k-summand of the convolution evaluated
  // at the doubled-grid center (j = n - k; k = 0 falls off the grid).
  ws.kern_row.assign(n, cd(0.0));
  for (std::size_t k = 1; k < n; ++k)
    ws.kern_row[k] = sh.A[k] * ws.b_x[n - k];
}

// Delta-filter intensity at the doubled-grid center, evaluated as the
// convolution sum at that single output frequency (no full-spectrum work).
double intensity_delta(const SfgShared& sh, SfgWorkspace& ws, double tau_fs) {
  const std::size_t n = sh.grid.n_points();
  fill_phase_ramp(ws.ramp_tau, sh.grid, tau_fs);
  cd s1 = 0.0, s2 = 0.0, s3 = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    const cd kern = ws.kern_row[k];
    s1 += kern * ws.ramp_tau[k];
    s2 += kern * ws.ramp_tau[n - k];
    s3 += kern;
  }
  cd acc = s1 - s2;
  if (sh.sel == TermSelection::CrossPlusAuto) {
    const cd auto_phase =
        std::polar(1.0, sh.dgrid.omega_center() * tau_fs) + 1.0;
    acc += auto_phase * s3;
  }
  return std::norm(sh.grid.delta_omega() * acc);
}

double filtered_intensity(const FrequencyGrid& dgrid,
                          const std::vector<cd>& spectrum, double filter_fwhm,
                          std::vector<double>& integrand) {
  const std::size_t n = dgrid.n_points();
  const double c = 4.0 * std::log(2.0) / (filter_fwhm * filter_fwhm);
  integrand.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double off = dgrid.offset(k);
    integrand[k] = std::exp(-c * off * off) * std::norm(spectrum[k]);
  }
  return integrate(std::span<const double>(integrand), QuadratureRule::Trapezoid,
                   dgrid.delta_omega());
}

std::vector<double> linspace(double lo, double hi, std::size_t steps) {
  std::vector<double> v(steps);
  const double d = (hi - lo) / static_cast<double>(steps - 1);
  for (std::size_t i = 0; i < steps; ++i)
    v[i] = lo + static_cast<double>(i) * d;
  return v;
}

}  // namespace

void SweepConfig::validate(const ComplexSpectrum& E) const {
  if (x_steps < 2)
    throw InvalidInput("SweepConfig: x_steps must be >= 2, got " +
                       std::to_string(x_steps));
  if (tau_steps < 2)
    throw InvalidInput("SweepConfig: tau_steps must be >= 2, got " +
                       std::to_string(tau_steps));
  if (!std::isfinite(x_min_um) || !std::isfinite(x_max_um) ||
      !(x_min_um < x_max_um))
    throw InvalidInput("SweepConfig: need finite x_min_um < x_max_um");
  if (!std::isfinite(tau_min_fs) || !std::isfinite(tau_max_fs) ||
      !(tau_min_fs < tau_max_fs))
    throw InvalidInput("SweepConfig: need finite tau_min_fs < tau_max_fs");
  if (!(filter_fwhm >= 0.0) || !std::isfinite(filter_fwhm))
    throw InvalidInput("SweepConfig: filter_fwhm must be >= 0 and finite");
  const double sigma = gaussian_equivalent_sigma(E);
  const double span = tau_max_fs - tau_min_fs;
  if (span < 8.0 / sigma)
    throw InvalidInput("SweepConfig: tau span " + std::to_string(span) +
                       " fs does not cover 8/sigma = " +
                       std::to_string(8.0 / sigma) + " fs of the pulse");
}

std::vector<double> SweepConfig::x_axis() const {
  return linspace(x_min_um, x_max_um, x_steps);
}

std::vector<double> SweepConfig::tau_axis() const {
  return linspace(tau_min_fs, tau_max_fs, tau_steps);
}

Interferogram::Interferogram(std::vector<double> x_axis,
                             std::vector<double> values)
    : x_(std::move(x_axis)), v_(std::move(values)) {
  if (x_.size() != v_.size() || x_.size() < 2)
    throw InvalidInput("Interferogram: need matching axis/value arrays, >= 2 points");
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (!std::isfinite(x_[i]) || !std::isfinite(v_[i]))
      throw InvalidInput("Interferogram: non-finite entry");
    if (i > 0 && !(x_[i] > x_[i - 1]))
      throw InvalidInput("Interferogram: axis must be strictly increasing");
  }
}

InterferogramMap::InterferogramMap(std::vector<double> x_axis,
                                   std::vector<double> tau_axis,
                                   std::vector<double> intensity)
    : x_(std::move(x_axis)), tau_(std::move(tau_axis)),
      intensity_(std::move(intensity)) {
  if (x_.size() < 2 || tau_.size() < 2 ||
      intensity_.size() != x_.size() * tau_.size())
    throw InvalidInput("InterferogramMap: inconsistent dimensions");
  for (std::size_t i = 1; i < x_.size(); ++i)
    if (!(x_[i] > x_[i - 1]))
      throw InvalidInput("InterferogramMap: x axis must be strictly increasing");
  for (std::size_t i = 1; i < tau_.size(); ++i)
    if (!(tau_[i] > tau_[i - 1]))
      throw InvalidInput("InterferogramMap: tau axis must be strictly increasing");
  for (double v : intensity_)
    if (!std::isfinite(v) || v < 0.0)
      throw NumericFailure("InterferogramMap: intensities must be finite and >= 0");
}

ComplexSpectrum sfg_spectrum(const ComplexSpectrum& E, const ComplexSpectrum& H,
                             double x_um, double tau_fs,
                             TermSelection selection) {
  check_common_grid(E, H, "sfg_spectrum");
  if (!std::isfinite(x_um) || !std::isfinite(tau_fs))
    throw InvalidInput("sfg_spectrum: x and tau must be finite");
  SfgShared shared(E, H, selection);
  SfgWorkspace ws;
  prepare_row(shared, ws, x_um);
  spectrum_fft(shared, ws, tau_fs);
  return ComplexSpectrum(shared.dgrid, std::move(ws.spectrum));
}

ComplexSpectrum sfg_spectrum_direct(const ComplexSpectrum& E,
                                    const ComplexSpectrum& H, double x_um,
                                    double tau_fs, TermSelection selection) {
  check_common_grid(E, H, "sfg_spectrum_direct");
  if (!std::isfinite(x_um) || !std::isfinite(tau_fs))
    throw InvalidInput("sfg_spectrum_direct: x and tau must be finite");
  const FrequencyGrid& g = E.grid();
  const FrequencyGrid dg = g.doubled();
  const std::size_t n = g.n_points();
  const std::size_t half = n / 2;
  const double d = g.delta_omega();
  const double rate_x = x_um / kSpeedOfLight;

  std::vector<cd> out(n);
  for (std::size_t m = 0; m < n; ++m) {
    cd cross = 0.0, kern_sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const std::ptrdiff_t js = static_cast<std::ptrdiff_t>(m + half) -
                                static_cast<std::ptrdiff_t>(k);
      if (js < 0 || js >= static_cast<std::ptrdiff_t>(n)) continue;
      const std::size_t j = static_cast<std::size_t>(js);
      const double wk = g.omega(k);
      const double wj = g.omega(j);
      const cd kernel = E[k] * H[k] * E[j] * std::polar(1.0, wj * rate_x);
      cross += kernel *
               (std::polar(1.0, wk * tau_fs) - std::polar(1.0, wj * tau_fs));
      kern_sum += kernel;
    }
    cd acc = cross;
    if (selection == TermSelection::CrossPlusAuto)
      acc += (std::polar(1.0, dg.omega(m) * tau_fs) + 1.0) * kern_sum;
    out[m] = d * acc;
  }
  return ComplexSpectrum(dg, std::move(out));
}

double intensity_at_filter(const ComplexSpectrum& E_sfg, double filter_fwhm) {
  if (!(filter_fwhm >= 0.0) || !std::isfinite(filter_fwhm))
    throw InvalidInput("intensity_at_filter: filter_fwhm must be >= 0 and finite");
  if (filter_fwhm == 0.0)
    return std::norm(E_sfg[E_sfg.grid().center_index()]);
  std::vector<double> integrand;
  return filtered_intensity(E_sfg.grid(), E_sfg.samples(), filter_fwhm,
                            integrand);
}

InterferogramMap interferogram_map(const ComplexSpectrum& E,
                                   const ComplexSpectrum& H,
                                   const SweepConfig& sweep,
                                   TermSelection selection, unsigned workers) {
  check_common_grid(E, H, "interferogram_map");
  sweep.validate(E);

  const std::vector<double> xs = sweep.x_axis();
  const std::vector<double> taus = sweep.tau_axis();
  const std::size_t nx = xs.size();
  const std::size_t ntau = taus.size();
  std::vector<double> intensity(nx * ntau);

  SfgShared shared(E, H, selection);
  const bool delta_filter = sweep.filter_fwhm == 0.0;

  parallel_for(nx, workers, [&](std::size_t row_begin, std::size_t row_end) {
    SfgWorkspace ws;
    for (std::size_t i = row_begin; i < row_end; ++i) {
      prepare_row(shared, ws, xs[i]);
      double* row = intensity.data() + i * ntau;
      for (std::size_t j = 0; j < ntau; ++j) {
        if (delta_filter) {
          row[j] = intensity_delta(shared, ws, taus[j]);
        } else {
          spectrum_fft(shared, ws, taus[j]);
          row[j] = filtered_intensity(shared.dgrid, ws.spectrum,
                                      sweep.filter_fwhm, ws.integrand);
        }
      }
    }
  });

  return InterferogramMap(xs, taus, std::move(intensity));
}

Interferogram integrate_tau(const InterferogramMap& map) {
  const std::size_t nx = map.x_axis().size();
  const std::size_t ntau = map.tau_axis().size();
  const double dt = map.tau_axis()[1] - map.tau_axis()[0];
  std::vector<double> s(nx);
  for (std::size_t i = 0; i < nx; ++i) {
    std::span<const double> row(map.intensity().data() + i * ntau, ntau);
    s[i] = integrate(row, QuadratureRule::Trapezoid, dt);
  }
  return Interferogram(map.x_axis(), std::move(s));
}

Interferogram closed_form_S(const ComplexSpectrum& E, const ComplexSpectrum& H,
                            const std::vector<double>& x_axis) {
  check_common_grid(E, H, "closed_form_S");
  const FrequencyGrid& g = E.grid();
  const std::size_t n = g.n_points();
  const double d = g.delta_omega();

  // The closed form pairs each offset +w with -w; it is only meaningful for
  // a spectrum symmetric about the grid center.
  double asym = 0.0, total = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    asym += std::abs(std::abs(E[k]) - std::abs(E[n - k]));
    total += std::abs(E[k]);
  }
  if (total <= 0.0)
    throw NumericFailure("closed_form_S: spectrum has no power");
  if (asym > 1e-9 * total)
    throw InvalidInput(
        "closed_form_S: |E| is not symmetric about the grid center");

  // Pair weights and dispersion phase products, k paired with n-k (k = 0 has
  // no partner on the grid, matching the convolution's index truncation).
  std::vector<double> w(n, 0.0);
  std::vector<cd> ph(n, cd(0.0));
  double baseline = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    w[k] = std::norm(E[k]) * std::norm(E[n - k]);
    ph[k] = H[k] * std::conj(H[n - k]);
    baseline += w[k];
  }
  baseline *= d;

  std::vector<double> s(x_axis.size());
  for (std::size_t i = 0; i < x_axis.size(); ++i) {
    const double rate = -2.0 * x_axis[i] / kSpeedOfLight;
    cd cross = 0.0;
    for (std::size_t k = 1; k < n; ++k)
      cross += w[k] * ph[k] * std::polar(1.0, g.offset(k) * rate);
    s[i] = baseline - d * cross.real();
  }
  return Interferogram(x_axis, std::move(s));
}

}  // namespace trhom
