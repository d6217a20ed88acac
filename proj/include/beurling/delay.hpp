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

// Linear delay equations u'(t) = C u(t - tau) solved by the method of steps,
// their real characteristic roots, and spectral-inclusion checks.

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "beurling/core.hpp"
#include "beurling/signal.hpp"
#include "beurling/spectrum.hpp"

namespace beurling {

class DelaySystem {
 public:
  enum class Kind { kScalar, kMatrix };

  /// u'(t) = -u(t - tau) in dimension d.
  static DelaySystem scalar(double tau, int dim = 1);
  /// u'(t) = i A u(t - tau).
  static DelaySystem matrix(double tau, Matrix a);

  Kind kind() const { return kind_; }
  double tau() const { return tau_; }
  int dim() const { return static_cast<int>(coefficient_.rows()); }
  /// A for the matrix form; empty for the scalar form.
  const Matrix& generator() const { return a_; }
  /// C with u'(t) = C u(t - tau).
  const Matrix& coefficient() const { return coefficient_; }

 private:
  DelaySystem(Kind kind, double tau, Matrix a, Matrix coefficient);

  Kind kind_;
  double tau_;
  Matrix a_;
  Matrix coefficient_;
};

/// Initial data on [t0 - tau, t0] as cubic Hermite data on a uniform grid
/// whose step divides tau.
class HistorySegment {
 public:
  /// Samples f (and f' when given; fourth-order differences otherwise).
  static HistorySegment sample(const std::function<Vector(double)>& f, double t0, double tau, double step,
                               const std::function<Vector(double)>& df = {});
  HistorySegment(HermiteGrid grid, double tau);

  const HermiteGrid& grid() const { return grid_; }
  double t0() const { return grid_.t_end(); }
  double tau() const { return tau_; }
  int dim() const { return grid_.dim(); }

 private:
  HermiteGrid grid_;
  double tau_;
};

/// tau / ceil(tau / max_step): the largest step not above max_step dividing tau.
double dividing_step(double tau, double max_step);

/// Method of steps with classical fourth-order integration of the known
/// forcing on each delay interval; dense output is cubic Hermite with the
/// exact slopes C u(t - tau). The result covers [t0 - tau, t_end'] with
/// t_end' >= t_end the first grid node at or after t_end.
DelaySolution solve_delay(const DelaySystem& sys, const HistorySegment& history, double t_end, double step);

/// Real roots in [-1, 1] of 1 + i lambda exp(i lambda tau) = 0, i.e. of
/// cos(lambda tau) = 0 together with lambda sin(lambda tau) = 1.
std::vector<double> characteristic_roots(double tau);

/// Real lambda in [-rho, rho] with |lambda exp(i lambda tau) - mu| < 1e-8 for
/// some eigenvalue mu of a. tau = 0 returns the real eigenvalues themselves.
std::vector<double> characteristic_roots_general(const Matrix& a, double tau, double rho);

struct InclusionReport {
  /// Trailing window [t_end / 2, t_end] of the solution.
  Interval window;
  SpectrumEstimate spectrum;
  std::vector<double> roots;
  /// Cluster centers farther than the grid step from every root.
  std::vector<double> violations;
  bool holds = false;
};

/// Scan parameters sized for delay solutions: half-width 0.5, grid step 0.25.
ScanOptions inclusion_scan_options();

/// Estimates the spectrum of the solution on its trailing window, with probes
/// centered in the window, and checks every detected cluster center against
/// the given roots.
InclusionReport verify_spectral_inclusion(const DelaySystem& sys, const DelaySolution& solution,
                                          std::span<const double> roots,
                                          const ScanOptions& scan = inclusion_scan_options());

}  // namespace beurling
