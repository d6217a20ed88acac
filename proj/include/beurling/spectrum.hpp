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

// Beurling spectrum estimation by band-energy scans.

#pragma once

#include <span>
#include <vector>

#include "beurling/core.hpp"
#include "beurling/signal.hpp"
#include "beurling/windows.hpp"

namespace beurling {

enum class ScanMethod {
  /// Closed-form convolution for trigonometric polynomials and normal matrix
  /// orbits with real spectrum; quadrature for everything else.
  kAuto,
  /// Quadrature for every signal kind.
  kQuadrature,
};

struct ScanOptions {
  double f_min = -5.0;
  double f_max = 5.0;
  double grid_step = 0.1;
  double half_width = 0.25;
  /// Detection threshold relative to the sampled sup norm.
  double threshold = 1e-5;
  int probes = 64;
  double probe_origin = 0.0;
  NormKind norm = NormKind::kEuclidean;
  ScanMethod method = ScanMethod::kAuto;
  Execution exec = Execution::kParallel;
  WindowOptions window;
};

struct SpectrumEstimate {
  std::vector<double> freqs;
  std::vector<double> energies;
  std::vector<bool> detected;
  double threshold = 0.0;
  double half_width = 0.0;
  double grid_step = 0.0;
  /// Sampled sup norm of the signal over the probed time range.
  double sup_norm = 0.0;
  /// Maximal runs of detected grid points as closed intervals.
  std::vector<Interval> detected_intervals;
  /// Strongest point of each run, refined by a parabola through its neighbours.
  std::vector<double> cluster_centers;
  /// Every local maximum of the energy inside a detected run, refined likewise.
  std::vector<double> peaks;

  bool any_detected() const { return !detected_intervals.empty(); }
};

/// Probe times: options.probes points spread over one period of the lowest
/// nonzero |frequency| on the scan grid, starting at options.probe_origin.
std::vector<double> probe_times(const ScanOptions& options);

/// Time range on which estimate_spectrum evaluates the signal.
Interval scan_support(const ScanOptions& options);

/// max over probes of ||(phi * u)(s)|| for the bump of half-width eps at center.
double band_energy(const Signal& sig, double center, double eps, std::span<const double> probes,
                   NormKind norm = NormKind::kEuclidean, const WindowOptions& window = {});

SpectrumEstimate estimate_spectrum(const Signal& sig, const ScanOptions& options = {});

/// max |xi| over detected grid points; throws Error(kEmptySpectrum) when none.
double spectral_radius(const SpectrumEstimate& est);

/// True when every detected point of a lies within slack of some interval in b.
bool detected_subset(const SpectrumEstimate& a, const std::vector<Interval>& b, double slack);

}  // namespace beurling
