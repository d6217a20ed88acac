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

#include "beurling/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <memory>
#include <mutex>
#include <tuple>

#include "beurling/kernels.hpp"

namespace beurling {
namespace {

constexpr long kMaxNormSamples = 4'000'000;

void validate(const ScanOptions& o) {
  if (!(o.f_min < o.f_max) || !std::isfinite(o.f_min) || !std::isfinite(o.f_max)) {
    throw Error(ErrorCode::kInvalidParameter, "estimate_spectrum: need f_min < f_max");
  }
  if (!(o.grid_step > 0.0) || !(o.half_width > 0.0) || o.grid_step > o.half_width) {
    throw Error(ErrorCode::kInvalidParameter,
                "estimate_spectrum: need 0 < grid_step <= half_width");
  }
  if (!(o.threshold > 0.0) || o.probes < 1) {
    throw Error(ErrorCode::kInvalidParameter, "estimate_spectrum: threshold and probes must be positive");
  }
}

std::vector<double> scan_grid(const ScanOptions& o) {
  const long n = static_cast<long>(std::floor((o.f_max - o.f_min) / o.grid_step + 1e-9));
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(n) + 1);
  for (long i = 0; i <= n; ++i) g.push_back(o.f_min + static_cast<double>(i) * o.grid_step);
  return g;
}

double refine_parabola(const std::vector<double>& f, const std::vector<double>& e, std::size_t i) {
  if (i == 0 || i + 1 >= f.size()) return f[i];
  const double a = e[i - 1];
  const double b = e[i];
  const double c = e[i + 1];
  const double denom = a - 2.0 * b + c;
  if (!(denom < 0.0)) return f[i];
  const double offset = 0.5 * (a - c) / denom;
  return f[i] + std::clamp(offset, -0.5, 0.5) * (f[i + 1] - f[i]);
}

void summarize(SpectrumEstimate& est) {
  const std::size_t n = est.freqs.size();
  std::size_t i = 0;
  while (i < n) {
    if (!est.detected[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && est.detected[j + 1]) ++j;
    est.detected_intervals.push_back({est.freqs[i], est.freqs[j]});
    std::size_t best = i;
    for (std::size_t k = i; k <= j; ++k) {
      if (est.energies[k] > est.energies[best]) best = k;
      const bool left = k == 0 || est.energies[k] >= est.energies[k - 1];
      const bool right = k + 1 >= n || est.energies[k] > est.energies[k + 1];
      if (left && right) est.peaks.push_back(refine_parabola(est.freqs, est.energies, k));
    }
    est.cluster_centers.push_back(refine_parabola(est.freqs, est.energies, best));
    i = j + 1;
  }
}

// Synthesis dominates the cost of closed-form scans, so recent base windows
// are kept.
std::shared_ptr<const Window> base_window(const ScanOptions& o) {
  WindowOptions wopt = o.window;
  wopt.max_frequency =
      std::max({wopt.max_frequency, std::abs(o.f_min) + o.half_width, std::abs(o.f_max) + o.half_width});
  using Key = std::tuple<double, double, double, int, double, int, double>;
  const Key key{o.half_width, wopt.max_frequency, wopt.time_step, wopt.hat_nodes, wopt.tail_tolerance, wopt.tail_run,
                wopt.radius_cap};
  static std::mutex mutex;
  static std::deque<std::pair<Key, std::shared_ptr<const Window>>> cache;
  {
    std::lock_guard<std::mutex> lock(mutex);
    for (const auto& [k, w] : cache) {
      if (k == key) return w;
    }
  }
  auto w = std::make_shared<const Window>(make_bump_window(0.0, o.half_width, wopt));
  std::lock_guard<std::mutex> lock(mutex);
  cache.emplace_front(key, w);
  if (cache.size() > 8) cache.pop_back();
  return w;
}

}  // namespace

std::vector<double> probe_times(const ScanOptions& o) {
  double lowest = kInf;
  for (double f : scan_grid(o)) {
    if (std::abs(f) > 1e-12 * o.grid_step) lowest = std::min(lowest, std::abs(f));
  }
  const double period = std::isfinite(lowest) ? 2.0 * kPi / lowest : 2.0 * kPi;
  std::vector<double> t;
  t.reserve(static_cast<std::size_t>(o.probes));
  for (int k = 0; k < o.probes; ++k) t.push_back(o.probe_origin + period * k / o.probes);
  return t;
}

Interval scan_support(const ScanOptions& o) {
  validate(o);
  const auto probes = probe_times(o);
  const double radius = base_window(o)->truncation_radius();
  return {probes.front() - radius, probes.back() + radius};
}

double band_energy(const Signal& sig, double center, double eps, std::span<const double> probes,
                   NormKind norm, const WindowOptions& window) {
  if (probes.empty()) throw Error(ErrorCode::kInvalidParameter, "band_energy: no probe times");
  WindowOptions opt = window;
  opt.max_frequency = std::max(opt.max_frequency, std::abs(center) + eps);
  const Window w = make_bump_window(center, eps, opt);
  double best = 0.0;
  for (double s : probes) best = std::max(best, banach_norm(convolve(w, sig, s), norm));
  return best;
}

SpectrumEstimate estimate_spectrum(const Signal& sig, const ScanOptions& o) {
  validate(o);
  SpectrumEstimate est;
  est.freqs = scan_grid(o);
  est.threshold = o.threshold;
  est.half_width = o.half_width;
  est.grid_step = o.grid_step;
  est.energies.assign(est.freqs.size(), 0.0);
  const std::vector<double> probes = probe_times(o);

  const auto base_ptr = base_window(o);
  const Window& base = *base_ptr;
  const double radius = base.truncation_radius();
  const double step = base.time_step();
  const Interval span{probes.front() - radius, probes.back() + radius};

  // Sup norm over the probed range.
  {
    double h = step;
    const double bw = sig.bandwidth_hint(span);
    if (bw > 0.0 && std::isfinite(bw)) h = std::min(h, 2.0 * kPi / (20.0 * bw));
    h = std::max(h, span.width() / static_cast<double>(kMaxNormSamples));
    const auto grid = uniform_grid(span.lo, span.hi, h);
    est.sup_norm = sup_norm(sig, grid, o.norm, o.exec);
  }

  const auto trig = o.method == ScanMethod::kAuto ? trig_form(sig) : std::nullopt;
  if (trig) {
    const auto& terms = trig->terms();
    const long n = static_cast<long>(est.freqs.size());
    auto body = [&](long m) {
      const double f = est.freqs[static_cast<std::size_t>(m)];
      double best = 0.0;
      for (double s : probes) {
        Vector acc = Vector::Zero(trig->dim());
        for (const auto& term : terms) {
          const double x = term.freq - f;
          if (std::abs(x) >= o.half_width) continue;
          acc += (base.hat(x) * std::polar(1.0, term.freq * s)) * term.vec;
        }
        best = std::max(best, banach_norm(acc, o.norm));
      }
      est.energies[static_cast<std::size_t>(m)] = best;
    };
    if (o.exec == Execution::kParallel) {
#pragma omp parallel for schedule(static)
      for (long m = 0; m < n; ++m) body(m);
    } else {
      for (long m = 0; m < n; ++m) body(m);
    }
  } else {
    const long count = 2 * base.half_count() + 1;
    std::vector<Matrix> samples;
    samples.reserve(probes.size());
    for (double s : probes) samples.push_back(kernels::sample_signal(sig, s - radius, step, count, o.exec));
    std::vector<double> weights(static_cast<std::size_t>(count));
    const auto w = base.quadrature_weights();
    const auto g = base.envelope();
    for (std::size_t j = 0; j < weights.size(); ++j) weights[j] = w[j] * g[j];
    // Column j holds u(s + r_j); the kernel's e^{i f r} then realizes the
    // convolution with the bump modulated to -f, hence the sign flip.
    std::vector<double> neg(est.freqs.size());
    for (std::size_t m = 0; m < neg.size(); ++m) neg[m] = -est.freqs[m];
    if (o.exec == Execution::kParallel) {
      kernels::band_energies_parallel(weights, step, samples, neg, o.norm, est.energies);
    } else {
      kernels::band_energies_serial(weights, step, samples, neg, o.norm, est.energies);
    }
  }

  est.detected.assign(est.freqs.size(), false);
  for (std::size_t m = 0; m < est.freqs.size(); ++m) {
    est.detected[m] = est.energies[m] > o.threshold * est.sup_norm;
  }
  summarize(est);
  return est;
}

double spectral_radius(const SpectrumEstimate& est) {
  double r = -1.0;
  for (std::size_t m = 0; m < est.freqs.size(); ++m) {
    if (est.detected[m]) r = std::max(r, std::abs(est.freqs[m]));
  }
  if (r < 0.0) throw Error(ErrorCode::kEmptySpectrum, "spectral_radius: nothing detected");
  return r;
}

bool detected_subset(const SpectrumEstimate& a, const std::vector<Interval>& b, double slack) {
  for (std::size_t m = 0; m < a.freqs.size(); ++m) {
    if (!a.detected[m]) continue;
    const double f = a.freqs[m];
    bool inside = false;
    for (const auto& iv : b) inside = inside || (f >= iv.lo - slack && f <= iv.hi + slack);
    if (!inside) return false;
  }
  return true;
}

}  // namespace beurling
