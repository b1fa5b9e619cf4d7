#include "trhom/whitelight.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "trhom/analysis.hpp"
#include "trhom/errors.hpp"
#include "trhom/numerics.hpp"

namespace trhom {

namespace {
using cd = std::complex<double>;
}

FringePattern::FringePattern(std::vector<double> x_axis,
                             std::vector<double> intensity,
                             std::vector<double> envelope, double baseline)
    : x_(std::move(x_axis)),
      intensity_(std::move(intensity)),
      envelope_(std::move(envelope)),
      baseline_(baseline) {
  if (x_.size() < 2 || intensity_.size() != x_.size() ||
      envelope_.size() != x_.size())
    throw InvalidInput("FringePattern: inconsistent array sizes");
  if (!(baseline_ > 0.0) || !std::isfinite(baseline_))
    throw NumericFailure("FringePattern: baseline must be positive");
  const double slack = 1e-9 * baseline_;
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (i > 0 && !(x_[i] > x_[i - 1]))
      throw InvalidInput("FringePattern: x axis must be strictly increasing");
    if (!std::isfinite(intensity_[i]) || !std::isfinite(envelope_[i]))
      throw NumericFailure("FringePattern: non-finite sample");
    if (intensity_[i] < -slack || intensity_[i] > 2.0 * baseline_ + slack)
      throw NumericFailure("FringePattern: intensity outside [0, 2*baseline]");
    if (envelope_[i] < std::abs(intensity_[i] - baseline_) - slack)
      throw NumericFailure("FringePattern: envelope below fringe excursion");
  }
}

FringePattern whitelight_interferogram(const ComplexSpectrum& E,
                                       const ComplexSpectrum& H,
                                       const std::vector<double>& x_axis) {
  if (E.grid() != H.grid())
    throw InvalidInput("whitelight_interferogram: E and H on different grids");
  if (x_axis.size() < 2)
    throw InvalidInput("whitelight_interferogram: need >= 2 x samples");

  const FrequencyGrid& g = E.grid();
  const std::size_t n = g.n_points();
  const double d = g.delta_omega();

  std::vector<double> power(n);
  for (std::size_t k = 0; k < n; ++k) power[k] = std::norm(E[k]);
  const double baseline =
      0.5 * integrate(std::span<const double>(power), QuadratureRule::Trapezoid, d);

  std::vector<double> intensity(x_axis.size()), envelope(x_axis.size());
  std::vector<double> ivals(n);
  std::vector<cd> gvals(n);
  for (std::size_t i = 0; i < x_axis.size(); ++i) {
    const double rate = x_axis[i] / kSpeedOfLight;
    for (std::size_t k = 0; k < n; ++k) {
      const cd arm = H[k] * std::polar(1.0, g.omega(k) * rate);
      ivals[k] = power[k] * std::norm(1.0 + arm) * 0.25;
      gvals[k] = power[k] * arm * 0.5;
    }
    intensity[i] =
        integrate(std::span<const double>(ivals), QuadratureRule::Trapezoid, d);
    envelope[i] = std::abs(
        integrate(std::span<const cd>(gvals), QuadratureRule::Trapezoid, d));
  }
  return FringePattern(x_axis, std::move(intensity), std::move(envelope),
                       baseline);
}

double phi2_for_broadening(const ComplexSpectrum& E, double target_factor,
                           const std::vector<double>& x_axis, double rel_tol) {
  if (!(target_factor > 1.0) || !std::isfinite(target_factor))
    throw InvalidInput("phi2_for_broadening: target factor must be > 1");
  if (!(rel_tol > 0.0))
    throw InvalidInput("phi2_for_broadening: rel_tol must be > 0");

  const FrequencyGrid& g = E.grid();
  const auto factor_at = [&](double phi2) {
    const DispersionModel model({0.0, 0.0, phi2}, g.omega_center());
    const ComplexSpectrum H = transfer_function(g, model);
    return fwhm_of_peak(
        whitelight_interferogram(E, H, x_axis).envelope_curve());
  };

  const double ref = factor_at(0.0);

  // The envelope is the transform of |E|^2 H; for a Gaussian pulse of
  // amplitude width sigma the power spectrum has width sigma/sqrt(2), so
  // factor(phi2) = sqrt(1 + phi2^2 sigma^4) and the root sits at
  // sqrt(target^2 - 1) / sigma^2. Seed the bracket there; the doubling loop
  // below still guarantees an overshoot for non-Gaussian pulses.
  const double sigma = gaussian_equivalent_sigma(E);
  double hi = std::sqrt(target_factor * target_factor - 1.0) / (sigma * sigma);
  double lo = 0.0;
  int guard = 0;
  while (factor_at(hi) / ref < target_factor) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 60)
      throw NumericFailure("phi2_for_broadening: bracket search failed");
  }
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double f = factor_at(mid) / ref;
    if (std::abs(f - target_factor) <= rel_tol * target_factor) return mid;
    (f < target_factor ? lo : hi) = mid;
  }
  throw NumericFailure("phi2_for_broadening: bisection did not converge");
}

}  // namespace trhom
