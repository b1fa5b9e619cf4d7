#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

namespace trhom {

// Working units throughout the library:
//   angular frequency  rad/fs
//   time               fs
//   length             um
// With these, c is of order 1 and phase arguments like omega*x/c or
// omega*tau stay well conditioned.
inline constexpr double kSpeedOfLight = 0.299792458;  // um/fs

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Uniform angular-frequency grid
//   omega_k = omega_center + (k - n/2) * delta_omega,  k = 0 .. n-1.
// n is even, so the center frequency itself is the sample at k = n/2.
// A grid may carry the bandwidth sigma of the pulse it was built for; when
// sigma > 0 the constructor enforces span >= 8*sigma so that Gaussian tails
// are negligible at the edges.
class FrequencyGrid {
public:
  FrequencyGrid(double omega_center, double delta_omega, std::size_t n_points,
                double declared_sigma = 0.0);

  double omega_center() const { return omega_center_; }
  double delta_omega() const { return delta_omega_; }
  std::size_t n_points() const { return n_points_; }
  double declared_sigma() const { return declared_sigma_; }

  double omega(std::size_t k) const {
    return omega_center_ +
           (static_cast<double>(k) - static_cast<double>(n_points_) / 2.0) *
               delta_omega_;
  }
  // Offset from the center frequency, exact on the integer index.
  double offset(std::size_t k) const {
    return (static_cast<double>(k) - static_cast<double>(n_points_) / 2.0) *
           delta_omega_;
  }
  double span() const { return delta_omega_ * static_cast<double>(n_points_); }
  std::size_t center_index() const { return n_points_ / 2; }

  // Sum-frequency grid: same spacing and point count, centered at twice the
  // center frequency. Used for products of two spectra on this grid.
  FrequencyGrid doubled() const {
    return FrequencyGrid(2.0 * omega_center_, delta_omega_, n_points_);
  }

  bool operator==(const FrequencyGrid& other) const {
    return omega_center_ == other.omega_center_ &&
           delta_omega_ == other.delta_omega_ && n_points_ == other.n_points_;
  }
  bool operator!=(const FrequencyGrid& other) const {
    return !(*this == other);
  }

private:
  double omega_center_;
  double delta_omega_;
  std::size_t n_points_;
  double declared_sigma_;
};

// Complex field amplitude sampled on a FrequencyGrid. Values must be finite.
class ComplexSpectrum {
public:
  ComplexSpectrum(FrequencyGrid grid, std::vector<std::complex<double>> samples);

  const FrequencyGrid& grid() const { return grid_; }
  const std::vector<std::complex<double>>& samples() const { return samples_; }
  std::vector<std::complex<double>>& samples() { return samples_; }
  std::complex<double> operator[](std::size_t k) const { return samples_[k]; }
  std::size_t size() const { return samples_.size(); }

private:
  FrequencyGrid grid_;
  std::vector<std::complex<double>> samples_;
};

// Pure-phase transfer function H(omega) = exp(i * sum_m phi[m] (omega-omega_ref)^m).
// phi[m] has units rad * fs^m. Only the phase is modeled: |H| == 1.
class DispersionModel {
public:
  DispersionModel() : phi_(), omega_ref_(0.0) {}
  DispersionModel(std::vector<double> phi, double omega_ref);

  const std::vector<double>& phi() const { return phi_; }
  double omega_ref() const { return omega_ref_; }

  // Phase polynomial evaluated at omega. Powers are built by repeated
  // multiplication so even orders are exactly symmetric in (omega - omega_ref).
  double phase(double omega) const;

private:
  std::vector<double> phi_;
  double omega_ref_;
};

// Gaussian amplitude E(omega) = exp(-(omega-omega0)^2 / (2 sigma^2)).
// Rejects grids whose span is below 8*sigma.
ComplexSpectrum make_gaussian_spectrum(const FrequencyGrid& grid, double omega0,
                                       double sigma);

// Samples H(omega) of `model` on `grid`; every sample has unit modulus.
ComplexSpectrum transfer_function(const FrequencyGrid& grid,
                                  const DispersionModel& model);

// Real non-negative amplitude table (omega, amplitude), linearly interpolated
// onto `grid`; zero outside the tabulated range. Points must be strictly
// increasing in omega.
ComplexSpectrum tabulated_spectrum(
    const FrequencyGrid& grid,
    const std::vector<std::pair<double, double>>& points);

// RMS width of |E|^2 around its centroid.
double rms_bandwidth(const ComplexSpectrum& E);

// Bandwidth expressed as the sigma of the equivalent Gaussian amplitude:
// for E = exp(-(w-w0)^2/(2 sigma^2)), |E|^2 has RMS width sigma/sqrt(2),
// so sigma = sqrt(2) * rms_bandwidth. Used for span/coverage validation of
// arbitrary (e.g. tabulated) spectra.
double gaussian_equivalent_sigma(const ComplexSpectrum& E);

}  // namespace trhom
