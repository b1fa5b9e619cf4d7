#include "trhom/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "trhom/errors.hpp"

namespace trhom {

FrequencyGrid::FrequencyGrid(double omega_center, double delta_omega,
                             std::size_t n_points, double declared_sigma)
    : omega_center_(omega_center),
      delta_omega_(delta_omega),
      n_points_(n_points),
      declared_sigma_(declared_sigma) {
  if (!(delta_omega > 0.0) || !std::isfinite(delta_omega))
    throw InvalidInput("FrequencyGrid: delta_omega must be positive and finite");
  if (!std::isfinite(omega_center))
    throw InvalidInput("FrequencyGrid: omega_center must be finite");
  if (n_points < 64 || n_points % 2 != 0)
    throw InvalidInput("FrequencyGrid: n_points must be even and >= 64, got " +
                       std::to_string(n_points));
  if (declared_sigma < 0.0 || !std::isfinite(declared_sigma))
    throw InvalidInput("FrequencyGrid: declared sigma must be >= 0");
  if (declared_sigma > 0.0 && span() < 8.0 * declared_sigma)
    throw InvalidInput(
        "FrequencyGrid: span " + std::to_string(span()) +
        " rad/fs is below 8*sigma = " + std::to_string(8.0 * declared_sigma));
}

ComplexSpectrum::ComplexSpectrum(FrequencyGrid grid,
                                 std::vector<std::complex<double>> samples)
    : grid_(grid), samples_(std::move(samples)) {
  if (samples_.size() != grid_.n_points())
    throw InvalidInput("ComplexSpectrum: sample count " +
                       std::to_string(samples_.size()) +
                       " does not match grid n_points " +
                       std::to_string(grid_.n_points()));
  for (const auto& v : samples_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw InvalidInput("ComplexSpectrum: non-finite sample");
  }
}

DispersionModel::DispersionModel(std::vector<double> phi, double omega_ref)
    : phi_(std::move(phi)), omega_ref_(omega_ref) {
  for (double c : phi_) {
    if (!std::isfinite(c))
      throw InvalidInput("DispersionModel: non-finite phase coefficient");
  }
  if (!std::isfinite(omega_ref))
    throw InvalidInput("DispersionModel: non-finite omega_ref");
}

double DispersionModel::phase(double omega) const {
  const double d = omega - omega_ref_;
  double phase = 0.0;
  double power = 1.0;  // d^m built multiplicatively: exact parity in d
  for (double c : phi_) {
    phase += c * power;
    power *= d;
  }
  return phase;
}

ComplexSpectrum make_gaussian_spectrum(const FrequencyGrid& grid, double omega0,
                                       double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw InvalidInput("make_gaussian_spectrum: sigma must be positive");
  if (!std::isfinite(omega0))
    throw InvalidInput("make_gaussian_spectrum: omega0 must be finite");
  if (grid.span() < 8.0 * sigma)
    throw InvalidInput("make_gaussian_spectrum: grid span " +
                       std::to_string(grid.span()) +
                       " rad/fs is below 8*sigma = " +
                       std::to_string(8.0 * sigma));
  std::vector<std::complex<double>> s(grid.n_points());
  for (std::size_t k = 0; k < grid.n_points(); ++k) {
    const double d = grid.omega(k) - omega0;
    s[k] = std::exp(-d * d / (2.0 * sigma * sigma));
  }
  return ComplexSpectrum(grid, std::move(s));
}

ComplexSpectrum transfer_function(const FrequencyGrid& grid,
                                  const DispersionModel& model) {
  std::vector<std::complex<double>> s(grid.n_points());
  for (std::size_t k = 0; k < grid.n_points(); ++k)
    s[k] = std::polar(1.0, model.phase(grid.omega(k)));
  return ComplexSpectrum(grid, std::move(s));
}

ComplexSpectrum tabulated_spectrum(
    const FrequencyGrid& grid,
    const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2)
    throw InvalidInput("tabulated_spectrum: need at least two points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i].first) || !std::isfinite(points[i].second) ||
        points[i].second < 0.0)
      throw InvalidInput("tabulated_spectrum: amplitudes must be finite and >= 0");
    if (i > 0 && points[i].first <= points[i - 1].first)
      throw InvalidInput("tabulated_spectrum: omega values must be strictly increasing");
  }
  std::vector<std::complex<double>> s(grid.n_points());
  std::size_t seg = 0;
  for (std::size_t k = 0; k < grid.n_points(); ++k) {
    const double w = grid.omega(k);
    if (w < points.front().first || w > points.back().first) {
      s[k] = 0.0;
      continue;
    }
    while (seg + 2 < points.size() && points[seg + 1].first < w) ++seg;
    const auto& [w0, a0] = points[seg];
    const auto& [w1, a1] = points[seg + 1];
    const double t = (w - w0) / (w1 - w0);
    s[k] = a0 + t * (a1 - a0);
  }
  return ComplexSpectrum(grid, std::move(s));
}

double rms_bandwidth(const ComplexSpectrum& E) {
  double norm = 0.0, mean = 0.0;
  for (std::size_t k = 0; k < E.size(); ++k) {
    const double w2 = std::norm(E[k]);
    norm += w2;
    mean += w2 * E.grid().omega(k);
  }
  if (norm <= 0.0)
    throw NumericFailure("rms_bandwidth: spectrum has zero total power");
  mean /= norm;
  double var = 0.0;
  for (std::size_t k = 0; k < E.size(); ++k) {
    const double d = E.grid().omega(k) - mean;
    var += std::norm(E[k]) * d * d;
  }
  return std::sqrt(var / norm);
}

double gaussian_equivalent_sigma(const ComplexSpectrum& E) {
  return std::sqrt(2.0) * rms_bandwidth(E);
}

}  // namespace trhom
