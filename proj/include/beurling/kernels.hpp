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

// Data-parallel inner loops. Every kernel has a plain serial reference and an
// OpenMP variant; the parallel variant only distributes independent output
// slots across threads, so both produce bit-identical results.

#pragma once

#include <span>

#include "beurling/core.hpp"

namespace beurling {
class Signal;
}

namespace beurling::kernels {

/// out[i] = ||sig(times[i])||.
void sample_norms_serial(const Signal& sig, std::span<const double> times, NormKind norm,
                         std::span<double> out);
void sample_norms_parallel(const Signal& sig, std::span<const double> times, NormKind norm,
                           std::span<double> out);

/// samples.col(j) = sig(t0 + j * step), j = 0 .. count-1.
Matrix sample_signal(const Signal& sig, double t0, double step, long count, Execution exec);

/// Band-pass energies of a modulated real window.
///
/// For each frequency f = freqs[m] and each probe p, forms
///   c = sum_j weights[j] * exp(i (j - half) step f) * probe_samples[p].col(j)
/// and stores out[m] = max_p ||c||. `weights` already carries the quadrature
/// rule and the window values at r_j = (j - half) step.
void band_energies_serial(std::span<const double> weights, double step,
                          std::span<const Matrix> probe_samples, std::span<const double> freqs,
                          NormKind norm, std::span<double> out);
void band_energies_parallel(std::span<const double> weights, double step,
                            std::span<const Matrix> probe_samples, std::span<const double> freqs,
                            NormKind norm, std::span<double> out);

/// out.col(m) = sum_j weights[j] exp(-i freqs[m] (t0 + j h)) samples.col(j).
void weighted_averages_serial(std::span<const double> weights, double t0, double h,
                              Eigen::Ref<const Matrix> samples, std::span<const double> freqs, Matrix& out);
void weighted_averages_parallel(std::span<const double> weights, double t0, double h,
                                Eigen::Ref<const Matrix> samples, std::span<const double> freqs, Matrix& out);

/// out[i] = min_j ||a.col(i) - b.col(j)||.
void nearest_distances_serial(const Matrix& a, const Matrix& b, NormKind norm,
                              std::span<double> out);
void nearest_distances_parallel(const Matrix& a, const Matrix& b, NormKind norm,
                                std::span<double> out);

/// Two-sided Hausdorff distance between column point sets.
double hausdorff_distance(const Matrix& a, const Matrix& b, NormKind norm, Execution exec);

}  // namespace beurling::kernels
