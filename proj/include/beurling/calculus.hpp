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

// The differentiation operator D, its powers and resolvent, and the two
// spectral-radius limits
//   lim ||D^n u||^{1/n} = rho(u),
//   lim ||(lambda - D)^{-n} u||^{1/n} = sup{|lambda - i xi|^{-1} : xi in Spec(u)}.

#pragma once

#include <span>
#include <vector>

#include "beurling/core.hpp"
#include "beurling/signal.hpp"

namespace beurling {

struct RadiusSequence {
  std::vector<int> n_values;
  /// log ||X^n u||; -inf when the power vanishes identically.
  std::vector<double> log_norms;
  /// ||X^n u||^{1/n}.
  std::vector<double> roots;
  /// ||X^{n+1} u|| / ||X^n u||; one shorter than n_values.
  std::vector<double> ratios;
  double limit = 0.0;
  bool converged = false;
};

struct RadiusOptions {
  NormKind norm = NormKind::kEuclidean;
  /// Pairwise tolerance on the last three ratios, relative to max(1, limit).
  double convergence_tol = 1e-3;
  Execution exec = Execution::kParallel;
};

/// D^n u. Closed form for trigonometric polynomials, matrix orbits, chirps and
/// delay solutions; central differences for interpolants (n <= 2).
Signal derivative(const Signal& sig, int n);

/// Step for central differences of the given order: eps^{1/(order+2)} / max(1, bandwidth),
/// i.e. cbrt(eps) for first derivatives. Interpolants use a quarter of their grid step.
double finite_difference_step(const Signal& sig, Interval window = {}, int order = 1);

/// ||D^n u|| on the grid for n = 1 .. n_max, accumulated in log space.
RadiusSequence derivative_radius(const Signal& sig, int n_max, std::span<const double> grid,
                                 const RadiusOptions& options = {});

/// max over the grid of ||Delta_h^n u / h^n||, with one Richardson level and
/// h = eps^{1/(n+2)} / max(1, bandwidth). Entry k holds order k + 1.
std::vector<double> finite_difference_norms(const Signal& sig, int n_max,
                                            std::span<const double> grid,
                                            NormKind norm = NormKind::kEuclidean);

struct ResolventOptions {
  /// The exponential weight is cut where it drops below this factor.
  double truncation = 1e-12;
  /// Quadrature step times the fastest rate |lambda| + bandwidth.
  double resolution = 0.006;
};

/// (lambda - D)^{-1} u (s) by quadrature of the branch integral
///   Re lambda > 0:  integral_0^inf exp(-lambda t) u(s + t) dt
///   Re lambda < 0: -integral_0^inf exp(lambda t) u(s - t) dt.
/// Throws Error(kOnSpectrum) when Re lambda = 0.
Vector apply_resolvent(const Signal& sig, Complex lambda, double s,
                       const ResolventOptions& options = {});

/// (lambda - D)^{-n} u (s) through the single integral with kernel
/// t^{n-1} exp(-lambda t) / (n-1)! (mirrored for Re lambda < 0).
Vector apply_resolvent_power(const Signal& sig, Complex lambda, int n, double s,
                             const ResolventOptions& options = {});

/// ||(lambda - D)^{-n} u|| on the grid for n = 1 .. n_max. Closed form for
/// trigonometric polynomials and diagonalizable matrix orbits, quadrature of
/// the power kernel otherwise.
RadiusSequence resolvent_radius(const Signal& sig, Complex lambda, int n_max,
                                std::span<const double> grid, const RadiusOptions& options = {},
                                const ResolventOptions& resolvent = {});

/// max over probes of ||lambda w(s) - w'(s) - u(s)|| with w = (lambda - D)^{-1} u
/// computed by quadrature and w' by Richardson-extrapolated central differences.
double verify_resolvent_identity(const Signal& sig, Complex lambda, std::span<const double> probes,
                                 NormKind norm = NormKind::kEuclidean,
                                 const ResolventOptions& options = {});

}  // namespace beurling
