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

#include <algorithm>
#include <vector>

#include "beurling/kernels.hpp"
#include "beurling/signal.hpp"
#include "detail.hpp"

namespace beurling::kernels {

void sample_norms_parallel(const Signal& sig, std::span<const double> times, NormKind norm,
                           std::span<double> out) {
  const auto n = static_cast<long>(times.size());
  detail::ExceptionSlot slot;
#pragma omp parallel
  {
    Vector value(sig.dim());
#pragma omp for schedule(static)
    for (long i = 0; i < n; ++i) {
      slot.run([&] {
        sig.eval_into(times[static_cast<std::size_t>(i)], value);
        out[static_cast<std::size_t>(i)] = banach_norm(value, norm);
      });
    }
  }
  slot.rethrow();
}

Matrix sample_signal(const Signal& sig, double t0, double step, long count, Execution exec) {
  Matrix samples(sig.dim(), count);
  detail::ExceptionSlot slot;
  if (exec == Execution::kSerial) {
    for (long j = 0; j < count; ++j) sig.eval_into(t0 + static_cast<double>(j) * step, samples.col(j));
    return samples;
  }
#pragma omp parallel for schedule(static)
  for (long j = 0; j < count; ++j) {
    slot.run([&] { sig.eval_into(t0 + static_cast<double>(j) * step, samples.col(j)); });
  }
  slot.rethrow();
  return samples;
}

void band_energies_parallel(std::span<const double> weights, double step,
                            std::span<const Matrix> probe_samples, std::span<const double> freqs,
                            NormKind norm, std::span<double> out) {
  const auto n = static_cast<long>(freqs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long m = 0; m < n; ++m) {
    out[static_cast<std::size_t>(m)] =
        detail::band_energy_at(weights, step, probe_samples, freqs[static_cast<std::size_t>(m)], norm);
  }
}

void weighted_averages_parallel(std::span<const double> weights, double t0, double h,
                                Eigen::Ref<const Matrix> samples, std::span<const double> freqs, Matrix& out) {
  out.resize(samples.rows(), static_cast<Eigen::Index>(freqs.size()));
  const auto n = static_cast<long>(freqs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long m = 0; m < n; ++m) {
    detail::weighted_average_at(weights, t0, h, samples, freqs[static_cast<std::size_t>(m)],
                                out.col(static_cast<Eigen::Index>(m)));
  }
}

void nearest_distances_parallel(const Matrix& a, const Matrix& b, NormKind norm,
                                std::span<double> out) {
  const auto n = static_cast<long>(a.cols());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = detail::nearest_distance_at(a, i, b, norm);
  }
}

double hausdorff_distance(const Matrix& a, const Matrix& b, NormKind norm, Execution exec) {
  if (a.cols() == 0 || b.cols() == 0) {
    throw Error(ErrorCode::kInvalidParameter, "hausdorff_distance: empty point set");
  }
  std::vector<double> ab(static_cast<std::size_t>(a.cols()));
  std::vector<double> ba(static_cast<std::size_t>(b.cols()));
  if (exec == Execution::kParallel) {
    nearest_distances_parallel(a, b, norm, ab);
    nearest_distances_parallel(b, a, norm, ba);
  } else {
    nearest_distances_serial(a, b, norm, ab);
    nearest_distances_serial(b, a, norm, ba);
  }
  return std::max(*std::max_element(ab.begin(), ab.end()), *std::max_element(ba.begin(), ba.end()));
}

}  // namespace beurling::kernels
