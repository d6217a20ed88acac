/*
 * Copyright 2026 The Beurling Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Serial reference vs OpenMP variant of each kernel.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "beurling/kernels.hpp"
#include "beurling/signal.hpp"

using namespace beurling;

namespace {

Signal test_signal() {
  Vector a(3), b(3);
  a << 1.0, Complex(0.0, 0.5), 0.25;
  b << Complex(0.3, -0.2), 0.0, 1.0;
  return Signal{TrigPolynomial(3, {{0.5, a}, {-2.0, b}, {3.0, a + b}})};
}

Matrix random_points(int dim, long count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  Matrix m(dim, count);
  for (long j = 0; j < count; ++j) {
    for (int i = 0; i < dim; ++i) m(i, j) = Complex(n(rng), n(rng));
  }
  return m;
}

void BM_SampleNorms(benchmark::State& state, Execution exec) {
  const Signal sig = test_signal();
  std::vector<double> times(static_cast<std::size_t>(state.range(0)));
  for (std::size_t k = 0; k < times.size(); ++k) times[k] = 0.01 * static_cast<double>(k);
  std::vector<double> out(times.size());
  for (auto _ : state) {
    if (exec == Execution::kSerial) {
      kernels::sample_norms_serial(sig, times, NormKind::kEuclidean, out);
    } else {
      kernels::sample_norms_parallel(sig, times, NormKind::kEuclidean, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_BandEnergies(benchmark::State& state, Execution exec) {
  const Signal sig = test_signal();
  const long count = state.range(0);
  const double step = 0.05;
  std::vector<double> weights(static_cast<std::size_t>(count));
  for (long j = 0; j < count; ++j) {
    const double r = (static_cast<double>(j) - 0.5 * static_cast<double>(count - 1)) / static_cast<double>(count);
    weights[static_cast<std::size_t>(j)] = step * std::exp(-40.0 * r * r);
  }
  std::vector<Matrix> probes;
  for (int p = 0; p < 8; ++p) probes.push_back(kernels::sample_signal(sig, p * 0.7, step, count, Execution::kSerial));
  std::vector<double> freqs;
  for (int m = -50; m <= 50; ++m) freqs.push_back(0.1 * m);
  std::vector<double> out(freqs.size());
  for (auto _ : state) {
    if (exec == Execution::kSerial) {
      kernels::band_energies_serial(weights, step, probes, freqs, NormKind::kEuclidean, out);
    } else {
      kernels::band_energies_parallel(weights, step, probes, freqs, NormKind::kEuclidean, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_WeightedAverages(benchmark::State& state, Execution exec) {
  const Signal sig = test_signal();
  const long count = state.range(0);
  const double h = 0.05;
  const Matrix samples = kernels::sample_signal(sig, 0.0, h, count, Execution::kSerial);
  std::vector<double> weights(static_cast<std::size_t>(count), h);
  std::vector<double> freqs;
  for (int m = 0; m < 32; ++m) freqs.push_back(-3.0 + 0.2 * m);
  Matrix out;
  for (auto _ : state) {
    if (exec == Execution::kSerial) {
      kernels::weighted_averages_serial(weights, 0.0, h, samples, freqs, out);
    } else {
      kernels::weighted_averages_parallel(weights, 0.0, h, samples, freqs, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_NearestDistances(benchmark::State& state, Execution exec) {
  const Matrix a = random_points(4, state.range(0), 1);
  const Matrix b = random_points(4, state.range(0), 2);
  std::vector<double> out(static_cast<std::size_t>(a.cols()));
  for (auto _ : state) {
    if (exec == Execution::kSerial) {
      kernels::nearest_distances_serial(a, b, NormKind::kEuclidean, out);
    } else {
      kernels::nearest_distances_parallel(a, b, NormKind::kEuclidean, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_SampleNorms, serial, Execution::kSerial)->Arg(1 << 16);
BENCHMARK_CAPTURE(BM_SampleNorms, parallel, Execution::kParallel)->Arg(1 << 16);
BENCHMARK_CAPTURE(BM_BandEnergies, serial, Execution::kSerial)->Arg(1 << 13);
BENCHMARK_CAPTURE(BM_BandEnergies, parallel, Execution::kParallel)->Arg(1 << 13);
BENCHMARK_CAPTURE(BM_WeightedAverages, serial, Execution::kSerial)->Arg(1 << 15);
BENCHMARK_CAPTURE(BM_WeightedAverages, parallel, Execution::kParallel)->Arg(1 << 15);
BENCHMARK_CAPTURE(BM_NearestDistances, serial, Execution::kSerial)->Arg(1 << 11);
BENCHMARK_CAPTURE(BM_NearestDistances, parallel, Execution::kParallel)->Arg(1 << 11);

BENCHMARK_MAIN();
