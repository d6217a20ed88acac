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

#include "beurling/windows.hpp"

#include <algorithm>
#include <cmath>

#include "beurling/kernels.hpp"
#include "beurling/quadrature.hpp"

namespace beurling {
namespace {

constexpr long kBlock = 512;
constexpr int kCdfCells = 1024;

// 5-point Gauss-Legendre on [-1, 1].
constexpr double kGlNodes[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                0.5384693101056831, 0.9061798459386640};
constexpr double kGlWeights[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                  0.4786286704993665, 0.2369268850561891};

double bump_profile(double x, double eps) {
  const double d = eps * eps - x * x;
  if (d <= 0.0) return 0.0;
  return std::exp(1.0 - eps * eps / d);
}

}  // namespace

// Cumulative distribution of the unit-mass bump of half-width delta, tabulated
// on kCdfCells cells and interpolated with exact slopes.
struct detail::BumpCdf {
  double delta = 0.0;
  double mass = 0.0;
  std::vector<double> cum;

  explicit BumpCdf(double d) : delta(d), cum(kCdfCells + 1, 0.0) {
    const double h = 2.0 * delta / kCdfCells;
    for (int c = 0; c < kCdfCells; ++c) {
      const double mid = -delta + (c + 0.5) * h;
      double s = 0.0;
      for (int q = 0; q < 5; ++q) s += kGlWeights[q] * bump_profile(mid + 0.5 * h * kGlNodes[q], delta);
      cum[c + 1] = cum[c] + 0.5 * h * s;
    }
    mass = cum.back();
    for (double& v : cum) v /= mass;
    cum.back() = 1.0;
  }

  double operator()(double x) const {
    if (x <= -delta) return 0.0;
    if (x >= delta) return 1.0;
    const double h = 2.0 * delta / kCdfCells;
    const double u = (x + delta) / h;
    const int c = std::min(kCdfCells - 1, static_cast<int>(u));
    const double th = u - c;
    const double x0 = -delta + c * h;
    const double d0 = bump_profile(x0, delta) / mass * h;
    const double d1 = bump_profile(x0 + h, delta) / mass * h;
    const double th2 = th * th;
    const double th3 = th2 * th;
    const double h00 = 2 * th3 - 3 * th2 + 1;
    const double h10 = th3 - 2 * th2 + th;
    const double h01 = -2 * th3 + 3 * th2;
    const double h11 = th3 - th2;
    return h00 * cum[c] + h10 * d0 + h01 * cum[c + 1] + h11 * d1;
  }
};

namespace {

std::vector<Interval> merge_intervals(std::vector<Interval> v) {
  std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> out;
  for (const auto& iv : v) {
    if (!out.empty() && iv.lo <= out.back().hi) {
      out.back().hi = std::max(out.back().hi, iv.hi);
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

double default_step(Interval support, const WindowOptions& opt) {
  if (opt.time_step > 0.0) return opt.time_step;
  const double w = std::max({std::abs(support.lo), std::abs(support.hi), opt.max_frequency, 1.0});
  return 2.0 * kPi / (20.0 * w);
}

}  // namespace

double Window::hat(double xi) const {
  if (shape_ == Shape::kBump) return bump_profile(xi - center_, half_width_);
  if (xi <= support_.lo || xi >= support_.hi) return 0.0;
  const detail::BumpCdf& cdf = *cdf_;
  double v = 0.0;
  for (const auto& iv : dilated_) v += cdf(xi - iv.lo) - cdf(xi - iv.hi);
  return v;
}

Window Window::bump(double center, double half_width, const WindowOptions& options) {
  if (!(half_width > 0.0) || !std::isfinite(half_width) || !std::isfinite(center)) {
    throw Error(ErrorCode::kInvalidParameter, "bump window: half-width must be positive and finite");
  }
  Window w;
  w.shape_ = Shape::kBump;
  w.center_ = center;
  w.half_width_ = half_width;
  w.support_ = {center - half_width, center + half_width};
  w.finalize(options);
  return w;
}

Window Window::plateau(std::vector<Interval> set, double margin, const WindowOptions& options) {
  if (set.empty()) throw Error(ErrorCode::kInvalidParameter, "plateau window: empty set");
  if (!(margin > 0.0) || !std::isfinite(margin)) {
    throw Error(ErrorCode::kInvalidParameter, "plateau window: margin must be positive");
  }
  for (const auto& iv : set) {
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || iv.lo > iv.hi) {
      throw Error(ErrorCode::kInvalidParameter, "plateau window: set must be bounded intervals");
    }
  }
  Window w;
  w.shape_ = Shape::kPlateau;
  const double delta = 0.5 * margin;
  for (auto& iv : set) iv = {iv.lo - delta, iv.hi + delta};
  w.dilated_ = merge_intervals(std::move(set));
  w.half_width_ = delta;
  w.support_ = {w.dilated_.front().lo - delta, w.dilated_.back().hi + delta};
  w.center_ = 0.5 * (w.support_.lo + w.support_.hi);
  w.cdf_ = std::make_shared<const detail::BumpCdf>(delta);
  w.finalize(options);
  return w;
}

void Window::finalize(const WindowOptions& opt) {
  if (opt.hat_nodes < 3 || opt.tail_run < 1 || !(opt.radius_cap > 0.0) || !(opt.tail_tolerance > 0.0)) {
    throw Error(ErrorCode::kInvalidParameter, "window options out of range");
  }
  step_ = default_step(support_, opt);
  const double cap = opt.radius_cap / half_width_;
  const long j_cap = std::max<long>(2, static_cast<long>(std::ceil(cap / step_)));

  // Frequency-side Simpson rule.
  const bool is_bump = shape_ == Shape::kBump;
  const double a = is_bump ? -half_width_ : support_.lo;
  const double b = is_bump ? half_width_ : support_.hi;
  const int intervals = quadrature::even_intervals(
      std::max<double>(opt.hat_nodes - 1, 16.0 * cap * (b - a) / (2.0 * kPi)));
  const double h = (b - a) / intervals;
  std::vector<double> node_w = quadrature::simpson_weights(intervals, h);
  for (int k = 0; k <= intervals; ++k) {
    const double x = a + k * h;
    node_w[static_cast<std::size_t>(k)] *= (is_bump ? bump_profile(x, half_width_) : hat(x)) / (2.0 * kPi);
  }

  // phi(j step) for j >= 0; bumps store the real envelope g.
  auto synth = [&](long j) -> Complex {
    const double s = static_cast<double>(j) * step_;
    const Complex rot = std::polar(1.0, s * h);
    Complex z = std::polar(1.0, s * a);
    Complex acc = 0.0;
    for (int k = 0; k <= intervals; ++k) {
      if (k % 512 == 0) z = std::polar(1.0, s * (a + k * h));
      acc += node_w[static_cast<std::size_t>(k)] * z;
      z *= rot;
    }
    return is_bump ? Complex(acc.real(), 0.0) : acc;
  };

  std::vector<Complex> pos;
  double peak = 0.0;
  long run = 0;
  long last = -1;
  for (long start = 0; last < 0; start += kBlock) {
    const long stop = std::min(start + kBlock, j_cap + 1);
    std::vector<Complex> block(static_cast<std::size_t>(stop - start));
#pragma omp parallel for schedule(static)
    for (long j = start; j < stop; ++j) block[static_cast<std::size_t>(j - start)] = synth(j);
    for (long j = start; j < stop; ++j) {
      const Complex v = block[static_cast<std::size_t>(j - start)];
      pos.push_back(v);
      peak = std::max(peak, std::abs(v));
      run = std::abs(v) < opt.tail_tolerance * peak ? run + 1 : 0;
      if (run >= opt.tail_run || j == j_cap) {
        last = j;
        break;
      }
    }
  }
  half_ = std::max<long>(last, 1);
  pos.resize(static_cast<std::size_t>(half_) + 1);

  const std::size_t n = 2 * static_cast<std::size_t>(half_) + 1;
  samples_.assign(n, 0.0);
  if (is_bump) envelope_.assign(n, 0.0);
  for (long j = -half_; j <= half_; ++j) {
    const Complex base = pos[static_cast<std::size_t>(std::abs(j))];
    const std::size_t idx = static_cast<std::size_t>(j + half_);
    if (is_bump) {
      envelope_[idx] = base.real();
      samples_[idx] = std::polar(1.0, center_ * static_cast<double>(j) * step_) * base.real();
    } else {
      samples_[idx] = j >= 0 ? base : std::conj(base);
    }
  }
  weights_ = quadrature::simpson_weights(static_cast<int>(2 * half_), step_);

  l1_norm_ = 0.0;
  for (std::size_t i = 0; i < n; ++i) l1_norm_ += weights_[i] * std::abs(samples_[i]);

  // Tail extrapolation from the last two tenths of the radius.
  const long j1 = static_cast<long>(0.8 * half_);
  const long j2 = static_cast<long>(0.9 * half_);
  double m1 = 0.0;
  double m2 = 0.0;
  for (long j = j1; j < j2; ++j) m1 = std::max(m1, std::abs(pos[static_cast<std::size_t>(j)]));
  for (long j = j2; j <= half_; ++j) m2 = std::max(m2, std::abs(pos[static_cast<std::size_t>(j)]));
  const double radius = truncation_radius();
  if (m2 == 0.0) {
    tail_estimate_ = 0.0;
  } else if (m2 < m1) {
    const double q = m2 / m1;
    tail_estimate_ = 2.0 * m2 * 0.1 * radius * q / (1.0 - q);
  } else {
    tail_estimate_ = 2.0 * m2 * radius;
  }
}

Complex Window::inversion_integral() const {
  Complex acc = 0.0;
  for (std::size_t i = 0; i < samples_.size(); ++i) acc += weights_[i] * samples_[i];
  return acc;
}

Window Window::modulated(double shift) const {
  Window w = *this;
  w.center_ += shift;
  w.support_ = {support_.lo + shift, support_.hi + shift};
  for (auto& iv : w.dilated_) iv = {iv.lo + shift, iv.hi + shift};
  for (long j = -half_; j <= half_; ++j) {
    const std::size_t idx = static_cast<std::size_t>(j + half_);
    w.samples_[idx] *= std::polar(1.0, shift * static_cast<double>(j) * step_);
  }
  return w;
}

Window make_bump_window(double center, double half_width, const WindowOptions& options) {
  return Window::bump(center, half_width, options);
}

Window make_plateau_window(std::vector<Interval> set, double margin, const WindowOptions& options) {
  return Window::plateau(std::move(set), margin, options);
}

TrigPolynomial filter(const Window& w, const TrigPolynomial& u) {
  std::vector<TrigTerm> terms;
  for (const auto& term : u.terms()) {
    const double g = w.hat(term.freq);
    if (g != 0.0) terms.push_back({term.freq, term.vec * g});
  }
  return TrigPolynomial(u.dim(), std::move(terms));
}

Vector convolve(const Window& w, const Signal& sig, double s) {
  if (const TrigPolynomial* trig = sig.trig()) return filter(w, *trig).eval(s);
  return convolve_quadrature(w, sig, s);
}

Vector convolve_quadrature(const Window& w, const Signal& sig, double s) {
  const long half = w.half_count();
  const double step = w.time_step();
  const Matrix u = kernels::sample_signal(sig, s - w.truncation_radius(), step, 2 * half + 1,
                                          Execution::kParallel);
  const auto weights = w.quadrature_weights();
  const auto phi = w.samples();
  // Column k holds u(s - r) with r = (half - k) step.
  Vector acc = Vector::Zero(sig.dim());
  for (long k = 0; k <= 2 * half; ++k) {
    const std::size_t j = static_cast<std::size_t>(2 * half - k);
    acc += (weights[j] * phi[j]) * u.col(k);
  }
  return acc;
}

}  // namespace beurling
