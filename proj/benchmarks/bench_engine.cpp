#include <benchmark/benchmark.h>

#include <complex>
#include <random>
#include <vector>

#include "trhom/numerics.hpp"
#include "trhom/sfg.hpp"
#include "trhom/whitelight.hpp"

using namespace trhom;
using cd = std::complex<double>;

namespace {

constexpr double kSigma = 0.05;
constexpr double kOmega0 = 2.4;

FrequencyGrid grid_of(std::size_t n) {
  return FrequencyGrid(kOmega0, 10.0 * kSigma / static_cast<double>(n), n,
                       kSigma);
}

ComplexSpectrum pulse(const FrequencyGrid& g) {
  return make_gaussian_spectrum(g, kOmega0, kSigma);
}

ComplexSpectrum dispersed(const FrequencyGrid& g) {
  return transfer_function(g, DispersionModel({0.0, 0.0, 300.0}, kOmega0));
}

ComplexSpectrum random_spectrum(const FrequencyGrid& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cd> s(g.n_points());
  for (auto& v : s) v = cd(u(rng), u(rng));
  return ComplexSpectrum(g, std::move(s));
}

void BM_ConvolveFft(benchmark::State& state) {
  const FrequencyGrid g = grid_of(static_cast<std::size_t>(state.range(0)));
  std::mt19937_64 rng(7);
  const ComplexSpectrum a = random_spectrum(g, rng);
  const ComplexSpectrum b = random_spectrum(g, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(convolve_spectra(a, b));
  }
}
BENCHMARK(BM_ConvolveFft)->Arg(128)->Arg(256)->Arg(512)->Arg(1024);

void BM_ConvolveDirect(benchmark::State& state) {
  const FrequencyGrid g = grid_of(static_cast<std::size_t>(state.range(0)));
  std::mt19937_64 rng(7);
  const ComplexSpectrum a = random_spectrum(g, rng);
  const ComplexSpectrum b = random_spectrum(g, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(convolve_spectra_direct(a, b));
  }
}
BENCHMARK(BM_ConvolveDirect)->Arg(128)->Arg(256)->Arg(512);

void BM_SfgSpectrum(benchmark::State& state) {
  const FrequencyGrid g = grid_of(static_cast<std::size_t>(state.range(0)));
  const ComplexSpectrum e = pulse(g);
  const ComplexSpectrum h = dispersed(g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sfg_spectrum(e, h, 7.3, -41.2, TermSelection::CrossOnly));
  }
}
BENCHMARK(BM_SfgSpectrum)->Arg(256)->Arg(512)->Arg(1024);

void BM_SweepCell(benchmark::State& state) {
  // One map row of 64 delay cells through the production path.
  const FrequencyGrid g = grid_of(256);
  const ComplexSpectrum e = pulse(g);
  const ComplexSpectrum h = dispersed(g);
  SweepConfig sweep;
  sweep.x_min_um = 0.0;
  sweep.x_max_um = 1.0;
  sweep.x_steps = 2;
  sweep.tau_min_fs = -100.0;
  sweep.tau_max_fs = 100.0;
  sweep.tau_steps = 64;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        interferogram_map(e, h, sweep, TermSelection::CrossOnly, 1));
  }
  state.SetItemsProcessed(state.iterations() * 128);  // cells per pass
}
BENCHMARK(BM_SweepCell);

void BM_ClosedForm(benchmark::State& state) {
  const FrequencyGrid g = grid_of(1024);
  const ComplexSpectrum e = pulse(g);
  const ComplexSpectrum h = dispersed(g);
  std::vector<double> xs(201);
  for (std::size_t i = 0; i < xs.size(); ++i)
    xs[i] = -40.0 + static_cast<double>(i) * 0.4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(closed_form_S(e, h, xs));
  }
}
BENCHMARK(BM_ClosedForm);

void BM_Whitelight(benchmark::State& state) {
  const FrequencyGrid g = grid_of(1024);
  const ComplexSpectrum e = pulse(g);
  const ComplexSpectrum h = dispersed(g);
  std::vector<double> xs(1201);
  for (std::size_t i = 0; i < xs.size(); ++i)
    xs[i] = -60.0 + static_cast<double>(i) * 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(whitelight_interferogram(e, h, xs));
  }
}
BENCHMARK(BM_Whitelight);

}  // namespace

BENCHMARK_MAIN();
