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

// Bohr-Fourier analysis: long-time averages
//   a_lambda(u) = lim_{T -> inf} (1/2T) integral_{c-T}^{c+T} exp(-i lambda t) u(t) dt,
// the almost-periodic spectrum, reconstruction of trigonometric polynomials
// and a numerical almost-periodicity probe.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "beurling/core.hpp"
#include "beurling/signal.hpp"
#include "beurling/spectrum.hpp"

namespace beurling {

enum class AverageMethod {
  /// Exact finite-T averages for trigonometric polynomials and normal matrix
  /// orbits with real spectrum; trapezoid quadrature otherwise.
  kAuto,
  kQuadrature,
};

struct BohrOptions {
  double t_max = 2000.0;
  /// Averaging window is [center - T, center + T].
  double center = 0.0;
  double tol = 1e-3;
  /// Trapezoid nodes per period of the fastest oscillation exp(-i lambda t) u(t).
  double nodes_per_period = 20.0;
  /// Quadrature step; 0 derives it from nodes_per_period and the bandwidth.
  double time_step = 0.0;
  NormKind norm = NormKind::kEuclidean;
  AverageMethod method = AverageMethod::kAuto;
  Execution exec = Execution::kParallel;
};

struct SweepPoint {
  double t = 0.0;
  Vector value;
};

struct BohrCoefficient {
  double lambda = 0.0;
  /// Average at T = t_max.
  Vector value;
  /// Averages at t_max / 8, / 4, / 2 and t_max.
  std::vector<SweepPoint> sweep;
  /// (1/T) max_{T' in [T/2, T]} T' ||a_T'|| at the sweep lengths.
  std::vector<double> envelope;
  /// Log-log slope of the envelope against T; -1 for O(1/T) decay, 0 for a
  /// nonzero limit. NaN when the envelope vanishes.
  double decay_exponent = 0.0;
  double residual = 0.0;
  bool converged = false;
};

BohrCoefficient bohr_coefficient(const Signal& sig, double lambda, const BohrOptions& options = {});

/// Coefficients for several frequencies sharing one pass over the samples.
std::vector<BohrCoefficient> bohr_coefficients(const Signal& sig, std::span<const double> lambdas,
                                               const BohrOptions& options = {});

/// Candidates whose coefficient norm exceeds options.tol.
std::vector<double> ap_spectrum(const Signal& sig, std::span<const double> candidates,
                                const BohrOptions& options = {});

/// Maximizes ||finite-T average|| over lambda0 +- radius with a ladder of
/// averaging lengths (t_max/64, /16, /4, t_max) and a final golden section.
double refine_frequency(const Signal& sig, double lambda0, double radius,
                        const BohrOptions& options = {});

struct ReconstructOptions {
  BohrOptions bohr;
  double reconstruction_tol = 1e-3;
  /// Initial refinement radius; 0 disables refinement.
  double refine_radius = 0.25;
  /// Length of the held-out validation window adjacent to the averaging window.
  double validation_length = 100.0;
};

struct Reconstruction {
  TrigPolynomial polynomial{1, {}};
  /// Refined frequency and bump-tapered coefficient for every candidate.
  std::vector<TrigTerm> candidates;
  Interval validation;
  double error = 0.0;
  bool ok = false;
};

/// Fits sum_k exp(i xi_k t) v_k to u on [center - T, center + T] and reports
/// the sup error on the held-out window. Frequencies are refined as in
/// refine_frequency except that the final golden section maximizes the
/// bump-tapered average, whose peak carries no sidelobe leakage from other
/// terms; coefficients are bump-tapered averages.
Reconstruction reconstruct_trig_polynomial(const Signal& sig, std::span<const double> detected,
                                           const ReconstructOptions& options = {});

enum class ApVerdict { kConsistent, kNotAp, kInconclusive };
const char* to_string(ApVerdict verdict);

struct ApOptions {
  ScanOptions scan;
  ReconstructOptions reconstruct;
  int max_candidates = 8;
};

struct ApDiagnostic {
  ApVerdict verdict = ApVerdict::kInconclusive;
  SpectrumEstimate spectrum;
  bool separated = false;
  std::vector<double> candidates;
  std::vector<double> coefficient_norms;
  std::vector<double> decay_exponents;
  double sup_norm = 0.0;
  double max_reconstruction_error = kInf;
  std::optional<Reconstruction> reconstruction;
};

ApDiagnostic is_almost_periodic(const Signal& sig, const ApOptions& options = {});

}  // namespace beurling
