#include "trhom/numerics.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "trhom/errors.hpp"

namespace trhom {

namespace {

template <typename T>
T integrate_impl(std::span<const T> samples, QuadratureRule rule,
                 double spacing) {
  if (!(spacing > 0.0) || !std::isfinite(spacing))
    throw InvalidInput("integrate: spacing must be positive and finite");
  const std::size_t n = samples.size();
  switch (rule) {
    case QuadratureRule::Trapezoid: {
      if (n < 2) throw InvalidInput("integrate: trapezoid needs >= 2 samples");
      T acc = 0.5 * (samples[0] + samples[n - 1]);
      for (std::size_t i = 1; i + 1 < n; ++i) acc += samples[i];
      return acc * spacing;
    }
    case QuadratureRule::Simpson: {
      if (n < 3 || n % 2 == 0)
        throw InvalidInput("integrate: Simpson needs an odd sample count >= 3");
      T acc = samples[0] + samples[n - 1];
      for (std::size_t i = 1; i + 1 < n; ++i)
        acc += samples[i] * ((i % 2 == 1) ? 4.0 : 2.0);
      return acc * (spacing / 3.0);
    }
  }
  throw InvalidInput("integrate: unknown rule");
}

// Plan cache. fftw_execute_dft on a shared plan with per-caller buffers is
// the one FFTW routine documented as thread-safe; creation is serialized.
// FFTW_ESTIMATE keeps planning deterministic, FFTW_UNALIGNED makes the plan
// valid for any buffer alignment.
struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

PlanPair& plans_for(std::size_t n) {
  static std::map<std::size_t, PlanPair> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    std::vector<std::complex<double>> dummy(n);
    auto* p = reinterpret_cast<fftw_complex*>(dummy.data());
    PlanPair pp;
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    pp.forward = fftw_plan_dft_1d(static_cast<int>(n), p, p, FFTW_FORWARD, flags);
    pp.backward = fftw_plan_dft_1d(static_cast<int>(n), p, p, FFTW_BACKWARD, flags);
    it = cache.emplace(n, pp).first;
  }
  return it->second;
}

}  // namespace

double integrate(std::span<const double> samples, QuadratureRule rule,
                 double spacing) {
  return integrate_impl(samples, rule, spacing);
}

std::complex<double> integrate(std::span<const std::complex<double>> samples,
                               QuadratureRule rule, double spacing) {
  return integrate_impl(samples, rule, spacing);
}

namespace detail {

void fft(std::complex<double>* data, std::size_t n, bool inverse) {
  if (n == 0) throw InvalidInput("fft: empty input");
  PlanPair& pp = plans_for(n);
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(inverse ? pp.backward : pp.forward, p, p);
  if (inverse) {
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) data[i] *= scale;
  }
}

}  // namespace detail

namespace {

void check_common_grid(const ComplexSpectrum& A, const ComplexSpectrum& B) {
  if (A.grid() != B.grid())
    throw InvalidInput("convolve_spectra: spectra are on different grids");
}

}  // namespace

ComplexSpectrum convolve_spectra(const ComplexSpectrum& A,
                                 const ComplexSpectrum& B) {
  check_common_grid(A, B);
  const std::size_t n = A.size();
  const std::size_t m = 2 * n;  // >= 2n-1: linear convolution, no wrap
  std::vector<std::complex<double>> fa(m), fb(m);
  for (std::size_t k = 0; k < n; ++k) {
    fa[k] = A[k];
    fb[k] = B[k];
  }
  detail::fft(fa.data(), m, false);
  detail::fft(fb.data(), m, false);
  for (std::size_t k = 0; k < m; ++k) fa[k] *= fb[k];
  detail::fft(fa.data(), m, true);

  const double d = A.grid().delta_omega();
  const std::size_t half = n / 2;
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = d * fa[k + half];
  return ComplexSpectrum(A.grid().doubled(), std::move(out));
}

ComplexSpectrum convolve_spectra_direct(const ComplexSpectrum& A,
                                        const ComplexSpectrum& B) {
  check_common_grid(A, B);
  const std::size_t n = A.size();
  const std::size_t half = n / 2;
  const double d = A.grid().delta_omega();
  std::vector<std::complex<double>> out(n);
  for (std::size_t m = 0; m < n; ++m) {
    std::complex<double> acc = 0.0;
    // c[m] = sum_k a[k] b[j], j = m - k + n/2 restricted to the grid
    for (std::size_t k = 0; k < n; ++k) {
      const std::ptrdiff_t j = static_cast<std::ptrdiff_t>(m + half) -
                               static_cast<std::ptrdiff_t>(k);
      if (j < 0 || j >= static_cast<std::ptrdiff_t>(n)) continue;
      acc += A[k] * B[static_cast<std::size_t>(j)];
    }
    out[m] = d * acc;
  }
  return ComplexSpectrum(A.grid().doubled(), std::move(out));
}

}  // namespace trhom
