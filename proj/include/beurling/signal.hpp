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

// Bounded continuous C^d-valued functions on the real line.
//
// Every Signal is immutable after construction and eval() is safe to call
// concurrently. Analytic families (trigonometric polynomials, matrix orbits,
// chirps) evaluate in closed form and serve as oracles for the numerical
// paths in the other modules.

#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "beurling/core.hpp"

namespace beurling {

struct TrigTerm {
  double freq = 0.0;  // rad per unit time
  Vector vec;
};

/// u(t) = sum_k exp(i xi_k t) v_k with distinct frequencies and nonzero v_k.
class TrigPolynomial {
 public:
  /// Terms with equal frequencies are merged and zero vectors dropped, so an
  /// empty term list is the zero function of dimension `dim`.
  TrigPolynomial(int dim, std::vector<TrigTerm> terms);

  int dim() const { return dim_; }
  const std::vector<TrigTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  void eval_into(double t, Eigen::Ref<Vector> out) const;
  Vector eval(double t) const;

  /// sum_k ||v_k||_2, an upper bound for the sup norm under either norm kind.
  double coefficient_bound() const;
  double max_abs_frequency() const;

  TrigPolynomial operator+(const TrigPolynomial& other) const;
  TrigPolynomial operator*(Complex scale) const;
  /// exp(i shift t) u(t).
  TrigPolynomial modulated(double shift) const;

 private:
  int dim_;
  std::vector<TrigTerm> terms_;
};

/// u(t) = exp(iAt) v.
class MatrixOrbit {
 public:
  MatrixOrbit(Matrix a, Vector v);

  const Matrix& generator() const { return a_; }
  const Vector& initial() const { return v_; }
  int dim() const { return static_cast<int>(v_.size()); }

  /// Unitarily diagonalizable within 1e-8 (relative commutator norm).
  bool is_normal() const { return normal_; }
  const Vector& eigenvalues() const { return eig_; }
  double spectral_radius() const;
  bool has_real_spectrum(double tol = 1e-10) const;

  void eval_into(double t, Eigen::Ref<Vector> out) const;

  /// The trigonometric-polynomial form sum_j exp(i mu_j t) P_j v, available
  /// when A is normal with real spectrum.
  std::optional<TrigPolynomial> as_trig_polynomial(double merge_tol = 1e-8) const;

  double sup_bound() const { return sup_bound_; }

 private:
  Matrix a_;
  Vector v_;
  bool normal_ = false;
  Vector eig_;
  Matrix schur_u_;    // unitary factor when normal
  Vector projected_;  // U^* v when normal
  double sup_bound_ = kInf;
};

/// Derivatives of cos(t^2) v. Order 0 is the chirp itself.
class Chirp {
 public:
  explicit Chirp(Vector v, int order = 0);

  const Vector& vec() const { return v_; }
  int order() const { return order_; }
  int dim() const { return static_cast<int>(v_.size()); }

  /// Coefficients of P_n with d^n/dt^n exp(it^2) = P_n(t) exp(it^2), lowest first.
  const std::vector<Complex>& polynomial() const { return poly_; }

  double scalar(double t) const;
  void eval_into(double t, Eigen::Ref<Vector> out) const;

 private:
  Vector v_;
  int order_;
  std::vector<Complex> poly_;
};

/// Piecewise cubic Hermite data on a uniform grid t0 + j h. Each node carries
/// its value and two slopes: the one used by the segment to its left and the
/// one used by the segment to its right (they differ only at breaking points).
class HermiteGrid {
 public:
  HermiteGrid(double t0, double step, Matrix values, Matrix slope_left, Matrix slope_right);

  double t0() const { return t0_; }
  double step() const { return step_; }
  long nodes() const { return static_cast<long>(values_.cols()); }
  int dim() const { return static_cast<int>(values_.rows()); }
  double t_end() const { return t0_ + static_cast<double>(nodes() - 1) * step_; }
  Interval domain() const { return {t0_, t_end()}; }

  const Matrix& values() const { return values_; }
  const Matrix& slope_left() const { return slope_left_; }
  const Matrix& slope_right() const { return slope_right_; }

  void eval_into(double t, Eigen::Ref<Vector> out) const;
  void derivative_into(double t, Eigen::Ref<Vector> out) const;

  /// max node norm plus the Hermite overshoot allowance from the slopes.
  double sup_bound() const;

  /// Fourth-order finite-difference slopes from node values.
  static Matrix finite_difference_slopes(const Matrix& values, double step);

 private:
  long segment(double t) const;

  double t0_;
  double step_;
  Matrix values_;
  Matrix slope_left_;
  Matrix slope_right_;
};

/// Cubic interpolant through uniformly spaced samples.
class Interpolant {
 public:
  /// `values` holds one column per sample.
  Interpolant(double t0, double step, Matrix values, double bandwidth_hint = 0.0);

  const HermiteGrid& grid() const { return grid_; }
  double bandwidth_hint() const { return bandwidth_; }

 private:
  HermiteGrid grid_;
  double bandwidth_;
};

/// Numerical solution of u'(t) = C u(t - tau) produced by the method of steps,
/// or its n-th derivative D^n u(t) = C^n u(t - n tau).
class DelaySolution {
 public:
  DelaySolution(std::shared_ptr<const HermiteGrid> grid, Matrix coefficient, double tau,
                double history_end, int order = 0);

  const HermiteGrid& grid() const { return *grid_; }
  const Matrix& coefficient() const { return coefficient_; }
  double tau() const { return tau_; }
  double history_end() const { return history_end_; }
  int order() const { return order_; }
  int dim() const { return grid_->dim(); }

  Interval domain() const;
  void eval_into(double t, Eigen::Ref<Vector> out) const;
  DelaySolution derivative(int n) const;
  double sup_bound() const;
  double bandwidth_hint() const;

 private:
  std::shared_ptr<const HermiteGrid> grid_;
  Matrix coefficient_;
  double tau_;
  double history_end_;
  int order_;
  Matrix power_;  // coefficient^order
};

class Signal;

/// Central differences with one level of Richardson extrapolation.
struct FiniteDifference {
  std::shared_ptr<const Signal> base;
  int order = 1;
  double step = 0.0;
};

enum class SignalKind {
  kTrigPolynomial,
  kMatrixOrbit,
  kChirp,
  kDelaySolution,
  kInterpolant,
  kFiniteDifference,
};

const char* to_string(SignalKind kind);

class Signal {
 public:
  Signal(TrigPolynomial trig);
  Signal(MatrixOrbit orbit);
  Signal(Chirp chirp);
  Signal(Interpolant interpolant);
  Signal(DelaySolution solution);
  Signal(FiniteDifference difference);

  SignalKind kind() const;
  int dim() const;
  /// Declared bound on sup_t ||u(t)||; +inf when no finite bound is known.
  double sup_bound() const;
  Interval domain() const;
  /// Largest angular frequency expected on `window`; used to pick quadrature steps.
  double bandwidth_hint(Interval window = {}) const;

  /// Throws Error(kOutOfDomain) for grid-based kinds queried outside their support.
  void eval_into(double t, Eigen::Ref<Vector> out) const;
  Vector eval(double t) const;

  const TrigPolynomial* trig() const;
  const MatrixOrbit* matrix_orbit() const;
  const Chirp* chirp() const;
  const Interpolant* interpolant() const;
  const DelaySolution* delay_solution() const;
  const FiniteDifference* finite_difference() const;

 private:
  struct Repr;
  std::shared_ptr<const Repr> repr_;
};

/// The trigonometric-polynomial form of a signal when one is known exactly:
/// trigonometric polynomials themselves and normal matrix orbits with real spectrum.
std::optional<TrigPolynomial> trig_form(const Signal& sig);

Signal constant_signal(const Vector& v);
/// cos(t) v as the trigonometric polynomial (v/2) e^{it} + (v/2) e^{-it}.
Signal cosine_signal(const Vector& v, double freq = 1.0);

/// max over the grid of ||u(t)||; a lower bound for the true sup norm.
double sup_norm(const Signal& sig, std::span<const double> grid, NormKind norm,
                Execution exec = Execution::kParallel);

}  // namespace beurling
