#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "trhom/errors.hpp"
#include "trhom/numerics.hpp"

using namespace trhom;
using cd = std::complex<double>;

namespace {

constexpr double kPi = kTwoPi / 2.0;

ComplexSpectrum random_spectrum(const FrequencyGrid& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cd> s(g.n_points());
  for (auto& v : s) v = cd(u(rng), u(rng));
  return ComplexSpectrum(g, std::move(s));
}

double max_abs(const ComplexSpectrum& s) {
  double m = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) m = std::max(m, std::abs(s[k]));
  return m;
}

double max_abs_diff(const ComplexSpectrum& a, const ComplexSpectrum& b) {
  REQUIRE(a.size() == b.size());
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

}  // namespace

TEST_SUITE("numerics") {

TEST_CASE("quadrature reproduces known integrals") {
  // integral of sin over [0, pi] is 2
  const std::size_t n = 201;
  const double h = kPi / static_cast<double>(n - 1);
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i)
    s[i] = std::sin(static_cast<double>(i) * h);
  CHECK(std::abs(integrate(std::span<const double>(s), QuadratureRule::Simpson,
                           h) -
                 2.0) < 1e-8);
  CHECK(std::abs(integrate(std::span<const double>(s),
                           QuadratureRule::Trapezoid, h) -
                 2.0) < 1e-3);

  // Simpson is exact on a parabola: x^2 on [0, 2] integrates to 8/3
  const std::vector<double> par = {0.0, 1.0, 4.0};
  CHECK(std::abs(integrate(std::span<const double>(par),
                           QuadratureRule::Simpson, 1.0) -
                 8.0 / 3.0) < 1e-14);

  // trapezoid on a smooth rapidly decaying function converges spectrally:
  // unit-width Gaussian over +-10 sigma vs sqrt(2 pi)
  const std::size_t m = 401;
  const double hg = 20.0 / static_cast<double>(m - 1);
  std::vector<double> g(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double x = -10.0 + static_cast<double>(i) * hg;
    g[i] = std::exp(-0.5 * x * x);
  }
  const double ref = std::sqrt(kTwoPi);
  CHECK(std::abs(integrate(std::span<const double>(g),
                           QuadratureRule::Trapezoid, hg) /
                     ref -
                 1.0) < 1e-12);
}

TEST_CASE("complex quadrature integrates componentwise") {
  // integral of exp(ix) over [0, pi] is 2i
  const std::size_t n = 201;
  const double h = kPi / static_cast<double>(n - 1);
  std::vector<cd> s(n);
  for (std::size_t i = 0; i < n; ++i)
    s[i] = std::polar(1.0, static_cast<double>(i) * h);
  const cd val =
      integrate(std::span<const cd>(s), QuadratureRule::Simpson, h);
  CHECK(std::abs(val - cd(0.0, 2.0)) < 1e-8);
}

TEST_CASE("quadrature rejects bad sample counts and spacing") {
  const std::vector<double> one = {1.0};
  const std::vector<double> four = {1.0, 2.0, 3.0, 4.0};
  CHECK_THROWS_AS(integrate(std::span<const double>(one),
                            QuadratureRule::Trapezoid, 1.0),
                  InvalidInput);
  CHECK_THROWS_AS(integrate(std::span<const double>(four),
                            QuadratureRule::Simpson, 1.0),
                  InvalidInput);
  CHECK_THROWS_AS(integrate(std::span<const double>(four),
                            QuadratureRule::Trapezoid, 0.0),
                  InvalidInput);
  CHECK_THROWS_AS(integrate(std::span<const double>(four),
                            QuadratureRule::Trapezoid, -1.0),
                  InvalidInput);
}

TEST_CASE("fft round trip and Parseval") {
  const std::size_t n = 256;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cd> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = y[i] = cd(u(rng), u(rng));

  detail::fft(y.data(), n, false);
  double pow_t = 0.0, pow_f = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    pow_t += std::norm(x[i]);
    pow_f += std::norm(y[i]);
  }
  // unnormalized forward transform: sum|X|^2 = n sum|x|^2
  CHECK(std::abs(pow_f / (static_cast<double>(n) * pow_t) - 1.0) < 1e-12);

  detail::fft(y.data(), n, true);
  double dev = 0.0;
  for (std::size_t i = 0; i < n; ++i) dev = std::max(dev, std::abs(y[i] - x[i]));
  CHECK(dev < 1e-13);
}

TEST_CASE("convolution with a centered unit-mass impulse returns the other factor") {
  const FrequencyGrid g(2.4, 0.01, 128);
  std::mt19937_64 rng(7);
  const ComplexSpectrum b = random_spectrum(g, rng);
  std::vector<cd> imp(g.n_points(), cd(0.0));
  imp[g.center_index()] = cd(1.0 / g.delta_omega());  // discrete delta
  const ComplexSpectrum a(g, std::move(imp));

  for (const ComplexSpectrum& c :
       {convolve_spectra(a, b), convolve_spectra_direct(a, b)}) {
    CHECK(c.grid() == g.doubled());
    double dev = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k)
      dev = std::max(dev, std::abs(c[k] - b[k]));
    CHECK(dev < 1e-12 * max_abs(b));
  }
}

TEST_CASE("convolution is commutative and linear") {
  const FrequencyGrid g(2.4, 0.01, 128);
  std::mt19937_64 rng(8);
  const ComplexSpectrum a = random_spectrum(g, rng);
  const ComplexSpectrum b = random_spectrum(g, rng);
  const ComplexSpectrum c = random_spectrum(g, rng);

  const ComplexSpectrum ab = convolve_spectra(a, b);
  const ComplexSpectrum ba = convolve_spectra(b, a);
  CHECK(max_abs_diff(ab, ba) < 1e-12 * max_abs(ab));

  const cd alpha(0.7, -0.3);
  std::vector<cd> mix(g.n_points());
  for (std::size_t k = 0; k < g.n_points(); ++k) mix[k] = alpha * a[k] + b[k];
  const ComplexSpectrum mixed = convolve_spectra(ComplexSpectrum(g, mix), c);
  const ComplexSpectrum ac = convolve_spectra(a, c);
  const ComplexSpectrum bc = convolve_spectra(b, c);
  double dev = 0.0, scale = 0.0;
  for (std::size_t k = 0; k < mixed.size(); ++k) {
    dev = std::max(dev, std::abs(mixed[k] - (alpha * ac[k] + bc[k])));
    scale = std::max(scale, std::abs(mixed[k]));
  }
  CHECK(dev < 1e-12 * scale);
}

TEST_CASE("fft convolution matches the direct double sum") {
  const FrequencyGrid g(2.4, 0.01, 128);
  for (const unsigned seed : {11u, 12u, 13u}) {
    std::mt19937_64 rng(seed);
    const ComplexSpectrum a = random_spectrum(g, rng);
    const ComplexSpectrum b = random_spectrum(g, rng);
    const ComplexSpectrum fast = convolve_spectra(a, b);
    const ComplexSpectrum slow = convolve_spectra_direct(a, b);
    CHECK(max_abs_diff(fast, slow) < 1e-12 * max_abs(slow));
  }
}

TEST_CASE("convolution rejects mismatched grids") {
  const FrequencyGrid g1(2.4, 0.01, 128);
  const FrequencyGrid g2(2.5, 0.01, 128);
  std::mt19937_64 rng(5);
  const ComplexSpectrum a = random_spectrum(g1, rng);
  const ComplexSpectrum b = random_spectrum(g2, rng);
  CHECK_THROWS_AS(convolve_spectra(a, b), InvalidInput);
  CHECK_THROWS_AS(convolve_spectra_direct(a, b), InvalidInput);
}

TEST_CASE("spectrum construction rejects bad sample arrays") {
  const FrequencyGrid g(2.4, 0.01, 128);
  CHECK_THROWS_AS(ComplexSpectrum(g, std::vector<cd>(64)), InvalidInput);
  std::vector<cd> bad(g.n_points(), cd(1.0));
  bad[3] = cd(std::nan(""), 0.0);
  CHECK_THROWS_AS(ComplexSpectrum(g, std::move(bad)), InvalidInput);
}

}  // TEST_SUITE("numerics")
