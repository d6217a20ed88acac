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

// Per-item bodies shared by the serial and OpenMP kernels.

#pragma once

#include <cmath>
#include <exception>
#include <mutex>

#include "beurling/core.hpp"
#include "beurling/signal.hpp"

namespace beurling::kernels::detail {

// Phasors are advanced by recurrence and re-anchored every kResync steps.
inline constexpr long kResync = 512;

inline double column_norm(const Vector& acc, NormKind norm) { return banach_norm(acc, norm); }

/// max_p || sum_j weights[j] e^{i (j - half) step f} samples_p.col(j) ||
inline double band_energy_at(std::span<const double> weights, double step,
                             std::span<const Matrix> probe_samples, double f, NormKind norm) {
  const long n = static_cast<long>(weights.size());
  const long half = (n - 1) / 2;
  const Complex advance = std::polar(1.0, step * f);
  double best = 0.0;
  for (const Matrix& samples : probe_samples) {
    const Eigen::Index d = samples.rows();
    Vector acc = Vector::Zero(d);
    Complex z;
    for (long j = 0; j < n; ++j) {
      if (j % kResync == 0) {
        z = std::polar(1.0, static_cast<double>(j - half) * step * f);
      }
      const Complex c = weights[static_cast<std::size_t>(j)] * z;
      for (Eigen::Index k = 0; k < d; ++k) acc[k] += c * samples(k, j);
      z *= advance;
    }
    best = std::max(best, column_norm(acc, norm));
  }
  return best;
}

inline void weighted_average_at(std::span<const double> weights, double t0, double h,
                                const Eigen::Ref<const Matrix>& samples, double f, Eigen::Ref<Vector> out) {
  const long n = static_cast<long>(weights.size());
  const Complex advance = std::polar(1.0, -f * h);
  out.setZero();
  Complex z;
  for (long j = 0; j < n; ++j) {
    if (j % kResync == 0) z = std::polar(1.0, -f * (t0 + static_cast<double>(j) * h));
    const Complex c = weights[static_cast<std::size_t>(j)] * z;
    for (Eigen::Index k = 0; k < samples.rows(); ++k) out[k] += c * samples(k, j);
    z *= advance;
  }
}

inline double nearest_distance_at(const Matrix& a, Eigen::Index i, const Matrix& b, NormKind norm) {
  double best = kInf;
  const Eigen::Index d = a.rows();
  for (Eigen::Index j = 0; j < b.cols(); ++j) {
    double acc = 0.0;
    if (norm == NormKind::kEuclidean) {
      for (Eigen::Index k = 0; k < d; ++k) acc += std::norm(a(k, i) - b(k, j));
    } else {
      for (Eigen::Index k = 0; k < d; ++k) acc = std::max(acc, std::norm(a(k, i) - b(k, j)));
    }
    best = std::min(best, acc);
  }
  return std::sqrt(best);
}

/// Captures the first exception thrown inside a parallel region.
class ExceptionSlot {
 public:
  template <class F>
  void run(F&& f) noexcept {
    try {
      f();
    } catch (...) {
      std::lock_guard<std::mutex> lock(mutex_);
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mutex_;
  std::exception_ptr error_;
};

}  // namespace beurling::kernels::detail
