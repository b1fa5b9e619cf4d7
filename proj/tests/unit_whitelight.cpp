#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "trhom/analysis.hpp"
#include "trhom/errors.hpp"
#include "trhom/whitelight.hpp"

#include "test_util.hpp"

using namespace trhom;

namespace {

constexpr double kSigma = 0.05;
constexpr double kOmega0 = 2.4;

FrequencyGrid working_grid(std::size_t n) {
  return FrequencyGrid(kOmega0, 10.0 * kSigma / static_cast<double>(n), n,
                       kSigma);
}

}  // namespace

TEST_SUITE("whitelight") {

TEST_CASE("zero path difference gives full constructive fringe") {
  const FrequencyGrid g = working_grid(512);
  const ComplexSpectrum E = make_gaussian_spectrum(g, kOmega0, kSigma);
  const ComplexSpectrum H = transfer_function(g, DispersionModel());

  const std::vector<double> xs = testutil::linspace(-2.0, 2.0, 5);
  const FringePattern f = whitelight_interferogram(E, H, xs);

  REQUIRE(f.x_axis().size() == 5);
  const std::size_t mid = 2;  // x = 0
  CHECK(f.envelope()[mid] ==
        doctest::Approx(f.baseline()).epsilon(1e-12));
  CHECK(f.intensity()[mid] ==
        doctest::Approx(2.0 * f.baseline()).epsilon(1e-12));

  // Baseline is half the spectral power: sigma * sqrt(pi) / 2 for this pulse.
  CHECK(f.baseline() ==
        doctest::Approx(0.0443113462726379).epsilon(1e-9));

  // Fringes stay within [0, 2 * baseline] and under the envelope.
  for (std::size_t i = 0; i < f.x_axis().size(); ++i) {
    CHECK(f.intensity()[i] >= -1e-12);
    CHECK(f.intensity()[i] <= 2.0 * f.baseline() + 1e-12);
    CHECK(std::abs(f.intensity()[i] - f.baseline()) <=
          f.envelope()[i] + 1e-12);
  }
}

TEST_CASE("undispersed envelope width matches the analytic value") {
  const FrequencyGrid g = working_grid(512);
  const ComplexSpectrum E = make_gaussian_spectrum(g, kOmega0, kSigma);
  const ComplexSpectrum H = transfer_function(g, DispersionModel());

  const std::vector<double> xs = testutil::linspace(-60.0, 60.0, 1201);
  const FringePattern f = whitelight_interferogram(E, H, xs);
  const double fwhm = fwhm_of_peak(f.envelope_curve());
  // Analytic envelope |Gamma| = baseline * exp(-sigma^2 x^2 / (4 c^2)):
  // FWHM = 4 (c/sigma) sqrt(ln 2).
  CHECK(fwhm == doctest::Approx(19.9674874639).epsilon(2e-4));
}

TEST_CASE("quadratic phase broadens the envelope by the analytic factor") {
  const FrequencyGrid g = working_grid(512);
  const ComplexSpectrum E = make_gaussian_spectrum(g, kOmega0, kSigma);
  const ComplexSpectrum H0 = transfer_function(g, DispersionModel());
  const ComplexSpectrum H2 =
      transfer_function(g, DispersionModel({0.0, 0.0, 300.0}, kOmega0));

  const std::vector<double> xs = testutil::linspace(-95.0, 95.0, 1901);
  const FringePattern f0 = whitelight_interferogram(E, H0, xs);
  const FringePattern f2 = whitelight_interferogram(E, H2, xs);

  const double b = broadening_factor(f2.envelope_curve(), f0.envelope_curve(),
                                     CurveKind::Peak);
  // The envelope transforms the power spectrum (width sigma / sqrt 2), so
  // the chirped-Gaussian factor is sqrt(1 + phi2^2 sigma^4) = 1.25 exactly
  // for phi2 = 300, sigma = 0.05.
  CHECK(b == doctest::Approx(1.25).epsilon(1e-3));
}

TEST_CASE("linear phase walks the envelope peak off zero") {
  const FrequencyGrid g = working_grid(512);
  const ComplexSpectrum E = make_gaussian_spectrum(g, kOmega0, kSigma);
  const ComplexSpectrum H =
      transfer_function(g, DispersionModel({0.0, 100.0}, kOmega0));

  // A group delay of 100 fs in the fixed arm moves the overlap to
  // x = -c * 100 = -29.979... um.
  const std::vector<double> xs = testutil::linspace(-60.0, 0.0, 601);
  const FringePattern f = whitelight_interferogram(E, H, xs);
  const auto& env = f.envelope();
  const std::size_t imax = static_cast<std::size_t>(
      std::max_element(env.begin(), env.end()) - env.begin());
  const double step = xs[1] - xs[0];
  CHECK(std::abs(xs[imax] - (-100.0 * kSpeedOfLight)) <= step + 1e-12);
}

TEST_CASE("bisection finds the phase for a requested broadening") {
  const FrequencyGrid g = working_grid(512);
  const ComplexSpectrum E = make_gaussian_spectrum(g, kOmega0, kSigma);

  // The bracket search may probe phi2 at twice the root, where the envelope
  // reaches sqrt(1 + 4 (target^2 - 1)) ~ 2.45x its undispersed width; the
  // axis has to keep that curve measurable.
  const std::vector<double> xs = testutil::linspace(-130.0, 130.0, 2601);
  const double phi2 = phi2_for_broadening(E, 1.5, xs, 1e-3);
  // Analytic root: sqrt(target^2 - 1) / sigma^2 = 447.2135...
  CHECK(phi2 == doctest::Approx(447.213595499958).epsilon(0.01));

  // Round trip: applying the found phase reproduces the requested factor.
  const ComplexSpectrum H0 = transfer_function(g, DispersionModel());
  const ComplexSpectrum H2 =
      transfer_function(g, DispersionModel({0.0, 0.0, phi2}, kOmega0));
  const FringePattern f0 = whitelight_interferogram(E, H0, xs);
  const FringePattern f2 = whitelight_interferogram(E, H2, xs);
  const double b = broadening_factor(f2.envelope_curve(), f0.envelope_curve(),
                                     CurveKind::Peak);
  CHECK(b == doctest::Approx(1.5).epsilon(2e-3));
}

TEST_CASE("whitelight input validation") {
  const FrequencyGrid g = working_grid(128);
  const ComplexSpectrum E = make_gaussian_spectrum(g, kOmega0, kSigma);
  const ComplexSpectrum H = transfer_function(g, DispersionModel());

  // Mismatched grids are rejected.
  const FrequencyGrid other(kOmega0, 1e-3, 128);
  const ComplexSpectrum Hother = transfer_function(other, DispersionModel());
  CHECK_THROWS_AS(
      whitelight_interferogram(E, Hother, testutil::linspace(-5, 5, 11)),
      InvalidInput);

  // Axis must be a usable curve axis.
  CHECK_THROWS_AS(whitelight_interferogram(E, H, {0.0}), InvalidInput);
  CHECK_THROWS_AS(whitelight_interferogram(E, H, {0.0, 0.0, 1.0}),
                  InvalidInput);

  // Broadening target must exceed 1.
  const std::vector<double> xs = testutil::linspace(-80.0, 80.0, 801);
  CHECK_THROWS_AS(phi2_for_broadening(E, 1.0, xs), InvalidInput);
  CHECK_THROWS_AS(phi2_for_broadening(E, 0.5, xs), InvalidInput);
}

}  // TEST_SUITE
