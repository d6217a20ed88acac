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

#include "beurling/kernels.hpp"

#include "beurling/signal.hpp"
#include "detail.hpp"

namespace beurling::kernels {

void sample_norms_serial(const Signal& sig, std::span<const double> times, NormKind norm,
                         std::span<double> out) {
  Vector value(sig.dim());
  for (std::size_t i = 0; i < times.size(); ++i) {
    sig.eval_into(times[i], value);
    out[i] = banach_norm(value, norm);
  }
}

void band_energies_serial(std::span<const double> weights, double step,
                          std::span<const Matrix> probe_samples, std::span<const double> freqs,
                          NormKind norm, std::span<double> out) {
  for (std::size_t m = 0; m < freqs.size(); ++m) {
    out[m] = detail::band_energy_at(weights, step, probe_samples, freqs[m], norm);
  }
}

void weighted_averages_serial(std::span<const double> weights, double t0, double h,
                              Eigen::Ref<const Matrix> samples, std::span<const double> freqs, Matrix& out) {
  out.resize(samples.rows(), static_cast<Eigen::Index>(freqs.size()));
  for (std::size_t m = 0; m < freqs.size(); ++m) {
    detail::weighted_average_at(weights, t0, h, samples, freqs[m],
                                out.col(static_cast<Eigen::Index>(m)));
  }
}

void nearest_distances_serial(const Matrix& a, const Matrix& b, NormKind norm,
                              std::span<double> out) {
  for (Eigen::Index i = 0; i < a.cols(); ++i) {
    out[static_cast<std::size_t>(i)] = detail::nearest_distance_at(a, i, b, norm);
  }
}

}  // namespace beurling::kernels
