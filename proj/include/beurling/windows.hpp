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

// Band-limited test functions and their convolution with signals.
//
// A Window is a Schwartz function phi whose Fourier transform
//   phi_hat(xi) = integral exp(-i xi t) phi(t) dt
// is given in closed form and vanishes outside a compact interval. phi itself
// is synthesized by Fourier inversion on the uniform grid s_j = j * step,
// |j| <= J, and truncated at R = J * step.

#pragma once

#include <memory>
#include <span>
#include <vector>

#include "beurling/core.hpp"
#include "beurling/signal.hpp"

namespace beurling {

namespace detail {
struct BumpCdf;
}

struct WindowOptions {
  /// Grid spacing of phi; 0 selects 2 pi / (20 W) with W the largest
  /// frequency that must be resolved.
  double time_step = 0.0;
  /// Lower bound for W beyond the window's own support.
  double max_frequency = 0.0;
  /// Minimum Simpson nodes on the frequency interval during synthesis.
  int hat_nodes = 4097;
  /// |phi| below tail_tolerance * max|phi| for tail_run consecutive samples
  /// fixes the truncation radius ...
  double tail_tolerance = 1e-9;
  int tail_run = 100;
  /// ... capped at radius_cap / (transition half-width).
  double radius_cap = 200.0;
};

class Window {
 public:
  /// Peak-normalized C-infinity bump exp(1 - eps^2 / (eps^2 - (xi - center)^2)).
  static Window bump(double center, double half_width, const WindowOptions& options = {});

  /// Smooth indicator: 1 on `set`, 0 outside `set` dilated by `margin`. Built
  /// as the indicator of set + margin/2 convolved with a unit-mass bump of
  /// half-width margin/2. Degenerate intervals (single points) are allowed.
  static Window plateau(std::vector<Interval> set, double margin, const WindowOptions& options = {});

  Interval hat_support() const { return support_; }
  double hat(double xi) const;

  double time_step() const { return step_; }
  double truncation_radius() const { return step_ * static_cast<double>(half_); }
  long half_count() const { return half_; }

  /// phi(j * step) for j = -J .. J (index j + J).
  std::span<const Complex> samples() const { return samples_; }
  Complex phi(long j) const { return samples_[static_cast<std::size_t>(j + half_)]; }

  /// For bumps phi(s) = exp(i s center) g(s) with g real and even; this is g
  /// on the same grid. Empty for plateau windows.
  std::span<const double> envelope() const { return envelope_; }
  double center() const { return center_; }

  /// Simpson weights (already multiplied by step) for the sample grid.
  std::span<const double> quadrature_weights() const { return weights_; }

  double l1_norm() const { return l1_norm_; }
  /// Integral of phi over [-R, R]; approximates hat(0) by Fourier inversion.
  Complex inversion_integral() const;
  /// Extrapolated integral of |phi| outside [-R, R] from the decay of the
  /// last two tenths of the radius.
  double tail_estimate() const { return tail_estimate_; }

  /// exp(i shift s) phi(s); shifts hat_support by `shift`.
  Window modulated(double shift) const;

 private:
  enum class Shape { kBump, kPlateau };

  Window() = default;
  void finalize(const WindowOptions& options);

  Shape shape_ = Shape::kBump;
  Interval support_;
  double center_ = 0.0;
  double half_width_ = 0.0;

  // plateau description
  std::vector<Interval> dilated_;
  std::shared_ptr<const detail::BumpCdf> cdf_;

  double step_ = 0.0;
  long half_ = 0;
  std::vector<Complex> samples_;
  std::vector<double> envelope_;
  std::vector<double> weights_;
  double l1_norm_ = 0.0;
  double tail_estimate_ = 0.0;
};

Window make_bump_window(double center, double half_width, const WindowOptions& options = {});
Window make_plateau_window(std::vector<Interval> set, double margin,
                           const WindowOptions& options = {});

/// (phi * u)(s). Trigonometric polynomials use the exact formula
/// sum_k hat(xi_k) exp(i xi_k s) v_k; every other kind uses quadrature.
Vector convolve(const Window& w, const Signal& sig, double s);

/// Truncated Simpson quadrature of integral_{s-R}^{s+R} phi(s - t) u(t) dt.
Vector convolve_quadrature(const Window& w, const Signal& sig, double s);

/// phi * u as a trigonometric polynomial with coefficients hat(xi_k) v_k.
TrigPolynomial filter(const Window& w, const TrigPolynomial& u);

}  // namespace beurling
