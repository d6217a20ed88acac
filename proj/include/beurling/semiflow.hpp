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

// Semiflows on finite-dimensional state spaces, omega-limit sets and the
// almost-automorphy / asymptotic almost-periodicity probes.

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "beurling/bohr.hpp"
#include "beurling/core.hpp"
#include "beurling/delay.hpp"
#include "beurling/signal.hpp"

namespace beurling {

class SemiflowModel {
 public:
  enum class Kind { kLinear, kDelay };

  /// x' = G x, flowed exactly by exp(G t).
  static SemiflowModel linear(Matrix generator, std::string name = "linear");
  /// Planar rotation x' = (-y, x).
  static SemiflowModel rotation();
  /// Contracting spiral x' = (-rate x - y, x - rate y).
  static SemiflowModel spiral(double rate = 0.1);
  /// exp(i A t) with A = diag(1, sqrt 2): a quasi-periodic torus flow.
  static SemiflowModel torus();
  /// exp(i A t).
  static SemiflowModel matrix_orbit(const Matrix& a);
  /// History segments of u'(t) = C u(t - tau) on a grid of `step` dividing tau.
  /// The state stacks node values, then node slopes, over [t - tau, t].
  static SemiflowModel delay(DelaySystem system, double step);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  int state_dim() const;
  /// Dimension of the observable u(t).
  int value_dim() const;
  double dt_internal() const { return dt_; }
  /// Linear flows can be run backward exactly.
  bool invertible() const { return kind_ == Kind::kLinear; }
  const Matrix& generator() const { return generator_; }
  const DelaySystem& delay_system() const;

  /// T(t) x; negative t only for invertible models.
  Vector step(const Vector& x, double t) const;
  /// Columns T(t_k) x for nondecreasing t_k >= 0 (any sign when invertible).
  Matrix trajectory(const Vector& x, std::span<const double> times) const;

  /// u(t) = the current value: x itself for linear flows, the newest node for delays.
  Vector value(const Vector& x) const;
  /// Two plotting coordinates: (x_0, x_1) for linear flows, (u(t), u(t - tau))
  /// of the first component for delays.
  Vector projection(const Vector& x) const;
  /// The orbit's observable t -> u(t) as a signal valid on [0, horizon] at least.
  Signal observable(const Vector& x, double horizon) const;

  /// Delay state sampled from a history f (and f') on [-tau, 0].
  Vector delay_state(const std::function<Vector(double)>& f,
                     const std::function<Vector(double)>& df = {}) const;

 private:
  SemiflowModel() = default;
  long nodes() const;  // delay grid nodes per state
  HistorySegment history(const Vector& x) const;
  Vector state_at(const DelaySolution& sol, double t) const;

  Kind kind_ = Kind::kLinear;
  std::string name_;
  Matrix generator_;
  std::optional<DelaySystem> system_;
  double dt_ = 0.0;
};

struct Orbit {
  std::vector<double> times;
  /// One column per sample.
  Matrix states;
  double max_norm = 0.0;
};

/// States at 0, dt, ..., t_max. Throws Error(kDivergentOrbit) when a state norm
/// exceeds blowup_bound.
Orbit compute_orbit(const SemiflowModel& model, const Vector& v0, double t_max, double sample_dt,
                    double blowup_bound = 1e8, NormKind norm = NormKind::kEuclidean);

struct OmegaLimitSet {
  /// Representatives, one column each.
  Matrix points;
  double cluster_eps = 0.0;
  double tail_start = 0.0;
  long tail_samples = 0;
  /// Two-sided Hausdorff distance between representatives and tail samples.
  double tail_hausdorff = 0.0;
  /// Diameter of the tail samples.
  double diameter = 0.0;
};

struct OmegaOptions {
  double tail_fraction = 0.5;
  /// 0 selects 1e-2 times the diameter of the whole orbit.
  double cluster_eps = 0.0;
  NormKind norm = NormKind::kEuclidean;
  Execution exec = Execution::kParallel;
};

/// Greedy cluster_eps-net over the orbit samples with t >= tail_fraction * t_max.
OmegaLimitSet omega_limit(const Orbit& orbit, const OmegaOptions& options = {});

struct InvarianceCheck {
  double t_probe = 0.0;
  /// Hausdorff distance between T(t_probe) Omega and Omega.
  double residual = 0.0;
  double threshold = 0.0;
  bool passes = false;
};

InvarianceCheck check_invariance(const SemiflowModel& model, const OmegaLimitSet& omega, double t_probe,
                                 NormKind norm = NormKind::kEuclidean, Execution exec = Execution::kParallel);

struct ConnectivityCheck {
  double chain_eps = 0.0;
  int components = 0;
  /// Smallest chain_eps that would connect the set (longest spanning-tree edge).
  double max_gap = 0.0;
  bool connected = false;
};

/// chain_eps = 0 selects 3 * cluster_eps.
ConnectivityCheck check_connected(const OmegaLimitSet& omega, double chain_eps = 0.0,
                                  NormKind norm = NormKind::kEuclidean);

/// First return time of x under the flow, refined by golden section on
/// ||T(t) x - x||^2. A return is a sampled local minimum of ||T(t) x - x||
/// below `tolerance` times the largest earlier excursion; empty when none
/// occurs before t_max.
std::optional<double> estimate_period(const SemiflowModel& model, const Vector& x, double t_max,
                                      double sample_dt, double tolerance);

/// T(-t) on an invariant set: exact for invertible models, T(k P - t) when a
/// period P is known, otherwise the representative whose image under T(t) is
/// nearest.
Matrix backward_flow(const SemiflowModel& model, const Matrix& points, double t,
                     std::optional<double> period = std::nullopt, NormKind norm = NormKind::kEuclidean);

struct AutomorphyOptions {
  int members = 5;
  /// Needed for backward flow on non-invertible models.
  std::optional<double> period;
  NormKind norm = NormKind::kEuclidean;
  /// Candidate limit points tried, evenly spaced over the sequence.
  int candidates = 32;
};

struct AutomorphyProbe {
  /// Index into s_seq of the limit point w = T(s_c) v.
  long center = 0;
  Vector w;
  /// Selected subsequence indices, increasing.
  std::vector<long> subsequence;
  /// Largest ||T(s_k) v - w|| over the subsequence.
  double cluster_radius = 0.0;
  /// max over t_grid and the subsequence of ||g(t - s_k) - u(t)||, g(t) = T(t) w.
  double residual = 0.0;
  /// The subsequence did not converge within cluster_eps.
  bool inconclusive = false;
};

AutomorphyProbe almost_automorphy_probe(const SemiflowModel& model, const OmegaLimitSet& omega, const Vector& v,
                                        std::span<const double> s_seq, std::span<const double> t_grid,
                                        const AutomorphyOptions& options = {});

struct AsymptoticOptions {
  /// Length of each sup window of the decay curve.
  double window = 10.0;
  double tol = 1e-3;
  ScanOptions scan = inclusion_scan_options();
  ReconstructOptions reconstruct;
};

struct AsymptoticProbe {
  /// w fitted on the trailing half of the horizon.
  TrigPolynomial w{1, {}};
  std::vector<double> window_starts;
  std::vector<double> sup_errors;
  /// "consistent" when the curve is nonincreasing until it falls below tol and
  /// ends below tol; "inconsistent" otherwise.
  std::string verdict;
};

AsymptoticProbe asymptotic_ap_probe(const SemiflowModel& model, const Vector& v0, double horizon,
                                    const AsymptoticOptions& options = {});

}  // namespace beurling
