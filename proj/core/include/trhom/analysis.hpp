#pragma once

#include "trhom/sfg.hpp"

namespace trhom {

// Extracted dip shape parameters. visibility = (baseline - min) / baseline;
// with this definition an additive offset (e.g. an autocorrelation
// background) lowers the visibility even when the modulation depth is
// unchanged, which is the convention used throughout this project.
struct DipMetrics {
  double fwhm;        // full width at half depth, axis units
  double visibility;  // (baseline - min) / baseline
  double center;      // midpoint of the two half-depth crossings
  double baseline;    // mean of the outer 10% of samples on each side
  double min_value;   // value at the dip minimum
};

// Baseline estimator shared by all curve metrics: mean of the outer 10% of
// samples (at least one) on each side of the curve.
double baseline_outer_mean(const Interferogram& curve);

// Half-depth dip analysis with linearly interpolated crossings.
// Fails (NumericFailure) when: the minimum is not below 0.99 * baseline
// ("no dip"); the half-depth level is crossed more than twice (candidates
// are listed in the message); or the axis range spans fewer than 5 widths,
// which would bias the outer-sample baseline.
DipMetrics dip_metrics(const Interferogram& curve);

double fwhm_of_dip(const Interferogram& curve);
double visibility_of_dip(const Interferogram& curve);

// Same machinery for a peaked curve (e.g. a fringe envelope): half level
// between the outer baseline and the maximum.
double fwhm_of_peak(const Interferogram& curve);

// FWHM(envelope peak) / FWHM(dip).
double width_ratio(const Interferogram& envelope, const Interferogram& dip);

enum class CurveKind { Dip, Peak };

// FWHM(with dispersion) / FWHM(without), both curves measured with the same
// metric.
double broadening_factor(const Interferogram& with_dispersion,
                         const Interferogram& without_dispersion,
                         CurveKind kind);

}  // namespace trhom
