#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "trhom/grid.hpp"

namespace trhom {

enum class QuadratureRule { Trapezoid, Simpson };

// Composite quadrature of uniformly spaced samples.
// Trapezoid needs >= 2 samples; Simpson needs an odd count >= 3.
double integrate(std::span<const double> samples, QuadratureRule rule,
                 double spacing);
std::complex<double> integrate(std::span<const std::complex<double>> samples,
                               QuadratureRule rule, double spacing);

namespace detail {
// In-place complex DFT, FFTW backend. inverse == true applies the 1/n factor
// so that fft(fft(x), inverse) == x. Thread-safe; plans are cached per size.
void fft(std::complex<double>* data, std::size_t n, bool inverse);
}  // namespace detail

// Discrete approximation of the convolution integral
//   (A * B)(W) = integral dw A(w) B(W - w)
// for two spectra on the same grid. With a_k, b_k the samples and
// d = delta_omega, the linear convolution
//   c[m] = d * sum_k a[k] b[m - k + n/2]
// is returned on the doubled grid (center 2*omega_center, same spacing and
// point count): output index m corresponds to position m + n/2 of the full
// (2n-1)-long linear convolution of the sample sequences. The production
// path zero-pads both sequences to 2n and multiplies FFTs, which reproduces
// the full linear convolution exactly (2n >= 2n-1, so no circular wrap).
ComplexSpectrum convolve_spectra(const ComplexSpectrum& A,
                                 const ComplexSpectrum& B);

// O(n^2) reference evaluation of the same sum, used as the oracle for the
// FFT path. Identical index mapping and scaling.
ComplexSpectrum convolve_spectra_direct(const ComplexSpectrum& A,
                                        const ComplexSpectrum& B);

}  // namespace trhom
