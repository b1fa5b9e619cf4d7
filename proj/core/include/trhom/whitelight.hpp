#pragma once

#include <vector>

#include "trhom/grid.hpp"
#include "trhom/sfg.hpp"

namespace trhom {

// Spectral-interferometer trace: one arm with transfer function H, one with a
// variable path offset x, recombined 50/50 and detected broadband:
//   I(x)        = integral dw |E|^2 |1 + H exp(i w x/c)|^2 / 4
//   Gamma(x)    = integral dw |E|^2 H exp(i w x/c) / 2
//   baseline    = integral dw |E|^2 / 2
// envelope = |Gamma| bounds the fringe excursion: I = baseline + Re Gamma.
class FringePattern {
public:
  FringePattern(std::vector<double> x_axis, std::vector<double> intensity,
                std::vector<double> envelope, double baseline);

  const std::vector<double>& x_axis() const { return x_; }
  const std::vector<double>& intensity() const { return intensity_; }
  const std::vector<double>& envelope() const { return envelope_; }
  double baseline() const { return baseline_; }

  // Envelope as a curve, for width analysis.
  Interferogram envelope_curve() const { return Interferogram(x_, envelope_); }

private:
  std::vector<double> x_;
  std::vector<double> intensity_;
  std::vector<double> envelope_;
  double baseline_;
};

FringePattern whitelight_interferogram(const ComplexSpectrum& E,
                                       const ComplexSpectrum& H,
                                       const std::vector<double>& x_axis);

// Quadratic phase phi2 (fs^2, applied about the grid center) that broadens
// the white-light envelope FWHM by `target_factor`, found by bisection on
// the simulated envelope width. x_axis must resolve and contain the
// broadened envelope. Converges to |factor - target| <= rel_tol * target.
double phi2_for_broadening(const ComplexSpectrum& E, double target_factor,
                           const std::vector<double>& x_axis,
                           double rel_tol = 1e-3);

}  // namespace trhom
