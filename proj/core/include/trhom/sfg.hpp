#pragma once

#include <cstddef>
#include <vector>

#include "trhom/grid.hpp"
#include "trhom/numerics.hpp"

namespace trhom {

// Which interference terms of the sum-frequency field to keep.
//
// CrossOnly models the cross-correlation geometry: the two exchange paths of
// one photon-per-pulse upconversion, with relative delay tau entering as
//   [exp(i w' tau) - exp(i (W - w') tau)].
// This is the configuration in which the delay-integrated signal reproduces
// the two-photon coincidence dip.
//
// CrossPlusAuto additionally keeps the single-pulse autocorrelation paths,
// [exp(i W tau) + 1] times the same kernel, which a collinear (type-I-like)
// geometry would not reject. These add a delay-independent background plus
// carrier-frequency fringes and degrade the dip visibility.
enum class TermSelection { CrossOnly, CrossPlusAuto };

// Delay-line sweep: x is the variable path-length offset (um) in one arm,
// tau the relative delay (fs) between the two input pulses. filter_fwhm is
// the intensity FWHM (rad/fs) of the Gaussian output filter around twice the
// carrier; 0 selects the ideal narrowband (delta) filter.
struct SweepConfig {
  double x_min_um = 0.0;
  double x_max_um = 0.0;
  std::size_t x_steps = 0;
  double tau_min_fs = 0.0;
  double tau_max_fs = 0.0;
  std::size_t tau_steps = 0;
  double filter_fwhm = 0.0;

  // Checks ordering, step counts >= 2, filter sanity, and that the tau span
  // covers at least 8/sigma of the supplied pulse (Gaussian-equivalent
  // sigma), so the delay-integrated signal does not truncate the overlap
  // region. Throws InvalidInput.
  void validate(const ComplexSpectrum& E) const;

  std::vector<double> x_axis() const;
  std::vector<double> tau_axis() const;
};

// A 1D interferometric curve: strictly increasing axis, finite values.
class Interferogram {
public:
  Interferogram(std::vector<double> x_axis, std::vector<double> values);

  const std::vector<double>& x_axis() const { return x_; }
  const std::vector<double>& values() const { return v_; }
  std::size_t size() const { return x_.size(); }

private:
  std::vector<double> x_;
  std::vector<double> v_;
};

// Filtered SFG intensity on the (x, tau) sweep, row-major in x.
class InterferogramMap {
public:
  InterferogramMap(std::vector<double> x_axis, std::vector<double> tau_axis,
                   std::vector<double> intensity);

  const std::vector<double>& x_axis() const { return x_; }
  const std::vector<double>& tau_axis() const { return tau_; }
  const std::vector<double>& intensity() const { return intensity_; }
  double at(std::size_t i, std::size_t j) const {
    return intensity_[i * tau_.size() + j];
  }

private:
  std::vector<double> x_;
  std::vector<double> tau_;
  std::vector<double> intensity_;
};

// Sum-frequency field on the doubled grid for one (x, tau) point:
//   E_sfg(W) = dw * sum_{w'} E(w') E(W-w') H(w') exp(i (W-w') x/c) * brackets,
// with the bracket structure given by `selection`. The production evaluation
// goes through zero-padded FFT convolutions; _direct is the O(n^2) quadrature
// oracle with the same index mapping.
ComplexSpectrum sfg_spectrum(const ComplexSpectrum& E, const ComplexSpectrum& H,
                             double x_um, double tau_fs,
                             TermSelection selection);
ComplexSpectrum sfg_spectrum_direct(const ComplexSpectrum& E,
                                    const ComplexSpectrum& H, double x_um,
                                    double tau_fs, TermSelection selection);

// Detected intensity behind the output filter. filter_fwhm == 0 samples
// |E_sfg|^2 at the grid center (delta filter); filter_fwhm > 0 integrates
// T(W) |E_sfg(W)|^2 with a peak-normalized Gaussian T of that intensity FWHM
// centered on the grid center frequency.
double intensity_at_filter(const ComplexSpectrum& E_sfg, double filter_fwhm);

// Filtered intensity over the whole sweep; workers = 0 uses hardware
// concurrency. Cells are computed independently, so the result is identical
// byte for byte regardless of the worker count.
InterferogramMap interferogram_map(const ComplexSpectrum& E,
                                   const ComplexSpectrum& H,
                                   const SweepConfig& sweep,
                                   TermSelection selection,
                                   unsigned workers = 0);

// S(x): trapezoid of the map over tau, per x row.
Interferogram integrate_tau(const InterferogramMap& map);

// Second, independent route to S(x), evaluated from the delay-integrated
// closed form on the symmetric grid:
//   S(x) = sum_w W(w) - Re sum_w W(w) H(w0+w) conj(H(w0-w)) exp(-2 i w x/c),
//   W(w) = |E(w0+w)|^2 |E(w0-w)|^2,
// where w runs over the grid offsets and w0 is the grid center. Requires |E|
// symmetric about the grid center. Arbitrary overall scale (same as the
// sweep route up to a constant); compare after baseline normalization.
Interferogram closed_form_S(const ComplexSpectrum& E, const ComplexSpectrum& H,
                            const std::vector<double>& x_axis);

}  // namespace trhom
