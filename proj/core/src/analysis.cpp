#include "trhom/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "trhom/errors.hpp"

namespace trhom {

namespace {

struct HalfWidth {
  double left;
  double right;
};

// Interpolated crossings of `level`, which the curve must cross exactly twice
// (descending into and climbing out of the extremum for a dip; the caller
// negates values for peaks).
HalfWidth half_depth_crossings(const std::vector<double>& x,
                               const std::vector<double>& v, double level) {
  std::vector<double> crossings;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const bool below_i = v[i] < level;
    const bool below_next = v[i + 1] < level;
    if (below_i == below_next) continue;
    const double t = (level - v[i]) / (v[i + 1] - v[i]);
    crossings.push_back(x[i] + t * (x[i + 1] - x[i]));
  }
  if (crossings.size() < 2)
    throw NumericFailure(
        "dip analysis: could not bracket the half-depth level on both sides");
  if (crossings.size() > 2) {
    std::ostringstream msg;
    msg << "dip analysis: half-depth level crossed " << crossings.size()
        << " times; candidate positions:";
    for (double c : crossings) msg << ' ' << c;
    throw NumericFailure(msg.str());
  }
  return {crossings[0], crossings[1]};
}

void check_range_covers(const std::vector<double>& x, double width,
                        const char* what) {
  const double span = x.back() - x.front();
  if (span < 5.0 * width) {
    std::ostringstream msg;
    msg << what << ": axis span " << span << " is below 5 widths ("
        << 5.0 * width << "); outer-sample baseline would be biased";
    throw NumericFailure(msg.str());
  }
}

double outer_mean(const std::vector<double>& v) {
  const std::size_t n = v.size();
  const std::size_t m = std::max<std::size_t>(1, n / 10);
  double acc = 0.0;
  for (std::size_t i = 0; i < m; ++i) acc += v[i] + v[n - 1 - i];
  return acc / static_cast<double>(2 * m);
}

}  // namespace

double baseline_outer_mean(const Interferogram& curve) {
  return outer_mean(curve.values());
}

DipMetrics dip_metrics(const Interferogram& curve) {
  const std::vector<double>& x = curve.x_axis();
  const std::vector<double>& v = curve.values();
  if (x.size() < 10)
    throw InvalidInput("dip_metrics: need at least 10 samples");

  const double baseline = outer_mean(v);
  if (!(baseline > 0.0))
    throw NumericFailure("dip_metrics: baseline is not positive");

  const auto min_it = std::min_element(v.begin(), v.end());
  const double vmin = *min_it;
  if (vmin >= 0.99 * baseline)
    throw NumericFailure(
        "dip_metrics: no dip (minimum is not below 0.99 * baseline)");

  const double level = 0.5 * (baseline + vmin);
  const HalfWidth hw = half_depth_crossings(x, v, level);
  const double fwhm = hw.right - hw.left;
  check_range_covers(x, fwhm, "dip_metrics");

  DipMetrics m;
  m.fwhm = fwhm;
  m.visibility = (baseline - vmin) / baseline;
  m.center = 0.5 * (hw.left + hw.right);
  m.baseline = baseline;
  m.min_value = vmin;
  return m;
}

double fwhm_of_dip(const Interferogram& curve) { return dip_metrics(curve).fwhm; }

double visibility_of_dip(const Interferogram& curve) {
  return dip_metrics(curve).visibility;
}

double fwhm_of_peak(const Interferogram& curve) {
  const std::vector<double>& x = curve.x_axis();
  const std::vector<double>& v = curve.values();
  if (x.size() < 10)
    throw InvalidInput("fwhm_of_peak: need at least 10 samples");

  const double baseline = outer_mean(v);
  const double vmax = *std::max_element(v.begin(), v.end());
  if (!(vmax > baseline) || !((vmax - baseline) > 1e-6 * std::abs(vmax)))
    throw NumericFailure("fwhm_of_peak: no peak above the outer baseline");

  // Same crossing machinery on the negated curve.
  std::vector<double> neg(v.size());
  std::transform(v.begin(), v.end(), neg.begin(), [](double a) { return -a; });
  const double level = -0.5 * (baseline + vmax);
  const HalfWidth hw = half_depth_crossings(x, neg, level);
  const double fwhm = hw.right - hw.left;
  check_range_covers(x, fwhm, "fwhm_of_peak");
  return fwhm;
}

double width_ratio(const Interferogram& envelope, const Interferogram& dip) {
  return fwhm_of_peak(envelope) / fwhm_of_dip(dip);
}

double broadening_factor(const Interferogram& with_dispersion,
                         const Interferogram& without_dispersion,
                         CurveKind kind) {
  switch (kind) {
    case CurveKind::Dip:
      return fwhm_of_dip(with_dispersion) / fwhm_of_dip(without_dispersion);
    case CurveKind::Peak:
      return fwhm_of_peak(with_dispersion) / fwhm_of_peak(without_dispersion);
  }
  throw InvalidInput("broadening_factor: unknown curve kind");
}

}  // namespace trhom
