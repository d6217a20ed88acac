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

#include "beurling/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <variant>

#include <unsupported/Eigen/MatrixFunctions>

#include "beurling/kernels.hpp"

namespace beurling {

// ---------------------------------------------------------------------------
// TrigPolynomial

TrigPolynomial::TrigPolynomial(int dim, std::vector<TrigTerm> terms) : dim_(dim) {
  if (dim < 1) throw Error(ErrorCode::kInvalidParameter, "TrigPolynomial: dimension must be >= 1");
  for (const auto& term : terms) {
    if (term.vec.size() != dim) {
      throw Error(ErrorCode::kInvalidParameter, "TrigPolynomial: term vector has wrong dimension");
    }
    if (!std::isfinite(term.freq)) {
      throw Error(ErrorCode::kInvalidParameter, "TrigPolynomial: frequencies must be finite");
    }
  }
  std::stable_sort(terms.begin(), terms.end(),
                   [](const TrigTerm& a, const TrigTerm& b) { return a.freq < b.freq; });
  for (auto& term : terms) {
    if (!terms_.empty() && terms_.back().freq == term.freq) {
      terms_.back().vec += term.vec;
    } else {
      terms_.push_back(std::move(term));
    }
  }
  std::erase_if(terms_, [](const TrigTerm& t) { return t.vec.isZero(0.0); });
}

void TrigPolynomial::eval_into(double t, Eigen::Ref<Vector> out) const {
  out.setZero();
  for (const auto& term : terms_) {
    out += std::polar(1.0, term.freq * t) * term.vec;
  }
}

Vector TrigPolynomial::eval(double t) const {
  Vector out(dim_);
  eval_into(t, out);
  return out;
}

double TrigPolynomial::coefficient_bound() const {
  double s = 0.0;
  for (const auto& term : terms_) s += term.vec.norm();
  return s;
}

double TrigPolynomial::max_abs_frequency() const {
  double m = 0.0;
  for (const auto& term : terms_) m = std::max(m, std::abs(term.freq));
  return m;
}

TrigPolynomial TrigPolynomial::operator+(const TrigPolynomial& other) const {
  if (other.dim_ != dim_) throw Error(ErrorCode::kInvalidParameter, "TrigPolynomial: dimension mismatch");
  std::vector<TrigTerm> all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  return TrigPolynomial(dim_, std::move(all));
}

TrigPolynomial TrigPolynomial::operator*(Complex scale) const {
  std::vector<TrigTerm> scaled = terms_;
  for (auto& term : scaled) term.vec *= scale;
  return TrigPolynomial(dim_, std::move(scaled));
}

TrigPolynomial TrigPolynomial::modulated(double shift) const {
  std::vector<TrigTerm> shifted = terms_;
  for (auto& term : shifted) term.freq += shift;
  return TrigPolynomial(dim_, std::move(shifted));
}

// ---------------------------------------------------------------------------
// MatrixOrbit

MatrixOrbit::MatrixOrbit(Matrix a, Vector v) : a_(std::move(a)), v_(std::move(v)) {
  if (a_.rows() != a_.cols() || a_.rows() != v_.size() || v_.size() < 1) {
    throw Error(ErrorCode::kInvalidParameter, "MatrixOrbit: A must be square and match v");
  }
  const double scale = std::max(1.0, a_.squaredNorm());
  const Matrix commutator = a_ * a_.adjoint() - a_.adjoint() * a_;
  normal_ = commutator.norm() <= 1e-8 * scale;
  if (normal_) {
    Eigen::ComplexSchur<Matrix> schur(a_);
    schur_u_ = schur.matrixU();
    eig_ = schur.matrixT().diagonal();
    projected_ = schur_u_.adjoint() * v_;
  } else {
    Eigen::ComplexEigenSolver<Matrix> solver(a_);
    eig_ = solver.eigenvalues();
  }

  if (normal_ && has_real_spectrum()) {
    sup_bound_ = v_.norm();
  } else if (has_real_spectrum()) {
    Eigen::ComplexEigenSolver<Matrix> solver(a_);
    Eigen::JacobiSVD<Matrix> svd(solver.eigenvectors());
    const auto& sv = svd.singularValues();
    const double cond = sv(0) / sv(sv.size() - 1);
    sup_bound_ = std::isfinite(cond) && cond < 1e12 ? cond * v_.norm() : kInf;
  }
}

double MatrixOrbit::spectral_radius() const {
  double r = 0.0;
  for (Eigen::Index i = 0; i < eig_.size(); ++i) r = std::max(r, std::abs(eig_[i]));
  return r;
}

bool MatrixOrbit::has_real_spectrum(double tol) const {
  for (Eigen::Index i = 0; i < eig_.size(); ++i) {
    if (std::abs(eig_[i].imag()) > tol * std::max(1.0, std::abs(eig_[i]))) return false;
  }
  return true;
}

void MatrixOrbit::eval_into(double t, Eigen::Ref<Vector> out) const {
  if (normal_) {
    Vector phased(projected_.size());
    for (Eigen::Index j = 0; j < phased.size(); ++j) {
      phased[j] = std::exp(Complex(0.0, t) * eig_[j]) * projected_[j];
    }
    out.noalias() = schur_u_ * phased;
  } else {
    const Matrix arg = Complex(0.0, t) * a_;
    out.noalias() = arg.exp() * v_;
  }
}

std::optional<TrigPolynomial> MatrixOrbit::as_trig_polynomial(double merge_tol) const {
  if (!normal_ || !has_real_spectrum()) return std::nullopt;
  std::vector<Eigen::Index> order(static_cast<std::size_t>(eig_.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index a, Eigen::Index b) { return eig_[a].real() < eig_[b].real(); });
  std::vector<TrigTerm> terms;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    double freq_sum = 0.0;
    Vector vec = Vector::Zero(v_.size());
    while (j < order.size() && eig_[order[j]].real() - eig_[order[i]].real() <= merge_tol) {
      freq_sum += eig_[order[j]].real();
      vec += schur_u_.col(order[j]) * projected_[order[j]];
      ++j;
    }
    if (vec.norm() > 1e-14 * std::max(1.0, v_.norm())) {
      terms.push_back({freq_sum / static_cast<double>(j - i), vec});
    }
    i = j;
  }
  return TrigPolynomial(dim(), std::move(terms));
}

// ---------------------------------------------------------------------------
// Chirp

Chirp::Chirp(Vector v, int order) : v_(std::move(v)), order_(order) {
  if (v_.size() < 1) throw Error(ErrorCode::kInvalidParameter, "Chirp: empty vector");
  if (order < 0) throw Error(ErrorCode::kInvalidParameter, "Chirp: negative derivative order");
  // P_{n+1} = P_n' + 2 i t P_n
  poly_ = {Complex(1.0, 0.0)};
  for (int n = 0; n < order; ++n) {
    std::vector<Complex> next(poly_.size() + 1, Complex(0.0, 0.0));
    for (std::size_t k = 1; k < poly_.size(); ++k) next[k - 1] += static_cast<double>(k) * poly_[k];
    for (std::size_t k = 0; k < poly_.size(); ++k) next[k + 1] += Complex(0.0, 2.0) * poly_[k];
    poly_ = std::move(next);
  }
}

double Chirp::scalar(double t) const {
  Complex p(0.0, 0.0);
  for (auto it = poly_.rbegin(); it != poly_.rend(); ++it) p = p * t + *it;
  return (p * std::polar(1.0, t * t)).real();
}

void Chirp::eval_into(double t, Eigen::Ref<Vector> out) const { out = scalar(t) * v_; }

// ---------------------------------------------------------------------------
// HermiteGrid

HermiteGrid::HermiteGrid(double t0, double step, Matrix values, Matrix slope_left, Matrix slope_right)
    : t0_(t0),
      step_(step),
      values_(std::move(values)),
      slope_left_(std::move(slope_left)),
      slope_right_(std::move(slope_right)) {
  if (!(step_ > 0.0) || !std::isfinite(t0_)) {
    throw Error(ErrorCode::kInvalidParameter, "HermiteGrid: need finite t0 and step > 0");
  }
  if (values_.cols() < 2 || values_.rows() < 1) {
    throw Error(ErrorCode::kInvalidParameter, "HermiteGrid: need at least two nodes");
  }
  if (slope_left_.rows() != values_.rows() || slope_left_.cols() != values_.cols() ||
      slope_right_.rows() != values_.rows() || slope_right_.cols() != values_.cols()) {
    throw Error(ErrorCode::kInvalidParameter, "HermiteGrid: slope shape mismatch");
  }
}

long HermiteGrid::segment(double t) const {
  const double s = (t - t0_) / step_;
  const double slack = 1e-9;
  const auto last = static_cast<double>(nodes() - 1);
  if (!(s >= -slack && s <= last + slack)) {
    throw Error(ErrorCode::kOutOfDomain,
                "signal evaluated at t=" + std::to_string(t) + " outside its sampled support [" +
                    std::to_string(t0_) + ", " + std::to_string(t_end()) + "]");
  }
  auto j = static_cast<long>(std::floor(s));
  return std::clamp(j, 0L, nodes() - 2);
}

void HermiteGrid::eval_into(double t, Eigen::Ref<Vector> out) const {
  const long j = segment(t);
  const double x = (t - (t0_ + static_cast<double>(j) * step_)) / step_;
  const double x2 = x * x;
  const double x3 = x2 * x;
  const double h00 = 2.0 * x3 - 3.0 * x2 + 1.0;
  const double h10 = (x3 - 2.0 * x2 + x) * step_;
  const double h01 = -2.0 * x3 + 3.0 * x2;
  const double h11 = (x3 - x2) * step_;
  out = h00 * values_.col(j) + h10 * slope_right_.col(j) + h01 * values_.col(j + 1) +
        h11 * slope_left_.col(j + 1);
}

void HermiteGrid::derivative_into(double t, Eigen::Ref<Vector> out) const {
  const long j = segment(t);
  const double x = (t - (t0_ + static_cast<double>(j) * step_)) / step_;
  const double x2 = x * x;
  const double d00 = (6.0 * x2 - 6.0 * x) / step_;
  const double d10 = 3.0 * x2 - 4.0 * x + 1.0;
  const double d01 = (-6.0 * x2 + 6.0 * x) / step_;
  const double d11 = 3.0 * x2 - 2.0 * x;
  out = d00 * values_.col(j) + d10 * slope_right_.col(j) + d01 * values_.col(j + 1) +
        d11 * slope_left_.col(j + 1);
}

double HermiteGrid::sup_bound() const {
  double vmax = 0.0;
  double smax = 0.0;
  for (long j = 0; j < nodes(); ++j) {
    vmax = std::max(vmax, values_.col(j).norm());
    smax = std::max({smax, slope_left_.col(j).norm(), slope_right_.col(j).norm()});
  }
  // |h10|, |h11| <= 4/27 on [0, 1]
  return vmax + 2.0 * (4.0 / 27.0) * step_ * smax;
}

Matrix HermiteGrid::finite_difference_slopes(const Matrix& values, double step) {
  const long n = static_cast<long>(values.cols());
  Matrix slopes = Matrix::Zero(values.rows(), n);
  if (n < 2) return slopes;
  if (n < 5) {
    for (long j = 0; j < n; ++j) {
      const long a = std::max(0L, j - 1);
      const long b = std::min(n - 1, j + 1);
      slopes.col(j) = (values.col(b) - values.col(a)) / (static_cast<double>(b - a) * step);
    }
    return slopes;
  }
  const double c = 1.0 / (12.0 * step);
  for (long j = 2; j < n - 2; ++j) {
    slopes.col(j) = c * (-values.col(j + 2) + 8.0 * values.col(j + 1) - 8.0 * values.col(j - 1) +
                         values.col(j - 2));
  }
  slopes.col(0) = c * (-25.0 * values.col(0) + 48.0 * values.col(1) - 36.0 * values.col(2) +
                       16.0 * values.col(3) - 3.0 * values.col(4));
  slopes.col(1) = c * (-3.0 * values.col(0) - 10.0 * values.col(1) + 18.0 * values.col(2) -
                       6.0 * values.col(3) + values.col(4));
  slopes.col(n - 1) = c * (25.0 * values.col(n - 1) - 48.0 * values.col(n - 2) +
                           36.0 * values.col(n - 3) - 16.0 * values.col(n - 4) +
                           3.0 * values.col(n - 5));
  slopes.col(n - 2) = c * (3.0 * values.col(n - 1) + 10.0 * values.col(n - 2) -
                           18.0 * values.col(n - 3) + 6.0 * values.col(n - 4) - values.col(n - 5));
  return slopes;
}

// ---------------------------------------------------------------------------
// Interpolant

namespace {

HermiteGrid make_interpolant_grid(double t0, double step, Matrix values) {
  if (!(step > 0.0)) throw Error(ErrorCode::kInvalidParameter, "Interpolant: dt must be positive");
  Matrix slopes = HermiteGrid::finite_difference_slopes(values, step);
  return HermiteGrid(t0, step, std::move(values), slopes, slopes);
}

}  // namespace

Interpolant::Interpolant(double t0, double step, Matrix values, double bandwidth_hint)
    : grid_(make_interpolant_grid(t0, step, std::move(values))),
      bandwidth_(bandwidth_hint > 0.0 ? bandwidth_hint : kPi / step) {}

// ---------------------------------------------------------------------------
// DelaySolution

DelaySolution::DelaySolution(std::shared_ptr<const HermiteGrid> grid, Matrix coefficient, double tau,
                             double history_end, int order)
    : grid_(std::move(grid)),
      coefficient_(std::move(coefficient)),
      tau_(tau),
      history_end_(history_end),
      order_(order) {
  if (!grid_) throw Error(ErrorCode::kInvalidParameter, "DelaySolution: missing grid");
  if (!(tau_ > 0.0)) throw Error(ErrorCode::kInvalidParameter, "DelaySolution: tau must be positive");
  if (order_ < 0) throw Error(ErrorCode::kInvalidParameter, "DelaySolution: negative order");
  if (coefficient_.rows() != grid_->dim() || coefficient_.cols() != grid_->dim()) {
    throw Error(ErrorCode::kInvalidParameter, "DelaySolution: coefficient shape mismatch");
  }
  power_ = Matrix::Identity(grid_->dim(), grid_->dim());
  for (int k = 0; k < order_; ++k) power_ = power_ * coefficient_;
}

Interval DelaySolution::domain() const {
  if (order_ == 0) return grid_->domain();
  return {history_end_ + static_cast<double>(order_ - 1) * tau_, grid_->t_end()};
}

void DelaySolution::eval_into(double t, Eigen::Ref<Vector> out) const {
  if (order_ == 0) {
    grid_->eval_into(t, out);
    return;
  }
  const Interval dom = domain();
  if (t < dom.lo - 1e-9 * grid_->step() || t > dom.hi + 1e-9 * grid_->step()) {
    throw Error(ErrorCode::kOutOfDomain, "delay-solution derivative evaluated outside [" +
                                             std::to_string(dom.lo) + ", " +
                                             std::to_string(dom.hi) + "]");
  }
  Vector base(grid_->dim());
  grid_->eval_into(t - static_cast<double>(order_) * tau_, base);
  out.noalias() = power_ * base;
}

DelaySolution DelaySolution::derivative(int n) const {
  return DelaySolution(grid_, coefficient_, tau_, history_end_, order_ + n);
}

double DelaySolution::sup_bound() const {
  const double base = grid_->sup_bound();
  if (order_ == 0) return base;
  Eigen::JacobiSVD<Matrix> svd(power_);
  return svd.singularValues()(0) * base;
}

double DelaySolution::bandwidth_hint() const {
  Eigen::ComplexEigenSolver<Matrix> solver(coefficient_);
  double r = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    r = std::max(r, std::abs(solver.eigenvalues()[i]));
  }
  return std::max(r, 1e-3);
}

// ---------------------------------------------------------------------------
// Signal

const char* to_string(SignalKind kind) {
  switch (kind) {
    case SignalKind::kTrigPolynomial: return "trig";
    case SignalKind::kMatrixOrbit: return "matrix_orbit";
    case SignalKind::kChirp: return "chirp";
    case SignalKind::kDelaySolution: return "delay_solution";
    case SignalKind::kInterpolant: return "interpolant";
    case SignalKind::kFiniteDifference: return "finite_difference";
  }
  return "unknown";
}

struct Signal::Repr {
  std::variant<TrigPolynomial, MatrixOrbit, Chirp, DelaySolution, Interpolant, FiniteDifference> value;
};

Signal::Signal(TrigPolynomial trig) : repr_(std::make_shared<Repr>(Repr{std::move(trig)})) {}
Signal::Signal(MatrixOrbit orbit) : repr_(std::make_shared<Repr>(Repr{std::move(orbit)})) {}
Signal::Signal(Chirp chirp) : repr_(std::make_shared<Repr>(Repr{std::move(chirp)})) {}
Signal::Signal(Interpolant interpolant)
    : repr_(std::make_shared<Repr>(Repr{std::move(interpolant)})) {}
Signal::Signal(DelaySolution solution) : repr_(std::make_shared<Repr>(Repr{std::move(solution)})) {}
Signal::Signal(FiniteDifference difference) {
  if (!difference.base) throw Error(ErrorCode::kInvalidParameter, "FiniteDifference: missing base");
  if (difference.order < 1 || difference.order > 2) {
    throw Error(ErrorCode::kUnsupportedOrder, "FiniteDifference: order must be 1 or 2");
  }
  if (!(difference.step > 0.0)) {
    throw Error(ErrorCode::kInvalidParameter, "FiniteDifference: step must be positive");
  }
  repr_ = std::make_shared<Repr>(Repr{std::move(difference)});
}

SignalKind Signal::kind() const {
  return static_cast<SignalKind>(repr_->value.index());
}

namespace {
template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;
}  // namespace

int Signal::dim() const {
  return std::visit(Overloaded{
                        [](const Interpolant& s) { return s.grid().dim(); },
                        [](const FiniteDifference& s) { return s.base->dim(); },
                        [](const auto& s) { return s.dim(); },
                    },
                    repr_->value);
}

double Signal::sup_bound() const {
  return std::visit(Overloaded{
                        [](const TrigPolynomial& s) { return s.coefficient_bound(); },
                        [](const MatrixOrbit& s) { return s.sup_bound(); },
                        [](const Chirp& s) { return s.order() == 0 ? s.vec().norm() : kInf; },
                        [](const Interpolant& s) { return s.grid().sup_bound(); },
                        [](const DelaySolution& s) { return s.sup_bound(); },
                        [](const FiniteDifference&) { return kInf; },
                    },
                    repr_->value);
}

Interval Signal::domain() const {
  return std::visit(Overloaded{
                        [](const Interpolant& s) { return s.grid().domain(); },
                        [](const DelaySolution& s) { return s.domain(); },
                        [](const FiniteDifference& s) {
                          Interval d = s.base->domain();
                          return Interval{d.lo + s.step, d.hi - s.step};
                        },
                        [](const auto&) { return Interval{}; },
                    },
                    repr_->value);
}

double Signal::bandwidth_hint(Interval window) const {
  return std::visit(Overloaded{
                        [](const TrigPolynomial& s) { return s.max_abs_frequency(); },
                        [](const MatrixOrbit& s) { return s.spectral_radius(); },
                        [&](const Chirp&) {
                          return 2.0 * std::max(std::abs(window.lo), std::abs(window.hi));
                        },
                        [](const Interpolant& s) { return s.bandwidth_hint(); },
                        [](const DelaySolution& s) { return s.bandwidth_hint(); },
                        [&](const FiniteDifference& s) { return s.base->bandwidth_hint(window); },
                    },
                    repr_->value);
}

void Signal::eval_into(double t, Eigen::Ref<Vector> out) const {
  std::visit(Overloaded{
                 [&](const Interpolant& s) { s.grid().eval_into(t, out); },
                 [&](const FiniteDifference& s) {
                   const int d = s.base->dim();
                   Vector plus(d);
                   Vector minus(d);
                   Vector mid(d);
                   auto stencil = [&](double h) -> Vector {
                     s.base->eval_into(t + h, plus);
                     s.base->eval_into(t - h, minus);
                     if (s.order == 1) return (plus - minus) / (2.0 * h);
                     s.base->eval_into(t, mid);
                     return (plus - 2.0 * mid + minus) / (h * h);
                   };
                   const Vector coarse = stencil(s.step);
                   const Vector fine = stencil(0.5 * s.step);
                   out = (4.0 * fine - coarse) / 3.0;
                 },
                 [&](const auto& s) { s.eval_into(t, out); },
             },
             repr_->value);
}

Vector Signal::eval(double t) const {
  Vector out(dim());
  eval_into(t, out);
  return out;
}

const TrigPolynomial* Signal::trig() const { return std::get_if<TrigPolynomial>(&repr_->value); }
const MatrixOrbit* Signal::matrix_orbit() const { return std::get_if<MatrixOrbit>(&repr_->value); }
const Chirp* Signal::chirp() const { return std::get_if<Chirp>(&repr_->value); }
const Interpolant* Signal::interpolant() const { return std::get_if<Interpolant>(&repr_->value); }
const DelaySolution* Signal::delay_solution() const {
  return std::get_if<DelaySolution>(&repr_->value);
}
const FiniteDifference* Signal::finite_difference() const {
  return std::get_if<FiniteDifference>(&repr_->value);
}

std::optional<TrigPolynomial> trig_form(const Signal& sig) {
  if (const TrigPolynomial* p = sig.trig()) return *p;
  if (const MatrixOrbit* m = sig.matrix_orbit()) return m->as_trig_polynomial();
  return std::nullopt;
}

Signal constant_signal(const Vector& v) {
  return Signal(TrigPolynomial(static_cast<int>(v.size()), {{0.0, v}}));
}

Signal cosine_signal(const Vector& v, double freq) {
  return Signal(TrigPolynomial(static_cast<int>(v.size()), {{freq, 0.5 * v}, {-freq, 0.5 * v}}));
}

double sup_norm(const Signal& sig, std::span<const double> grid, NormKind norm, Execution exec) {
  if (grid.empty()) throw Error(ErrorCode::kInvalidParameter, "sup_norm: empty grid");
  std::vector<double> norms(grid.size());
  if (exec == Execution::kParallel) {
    kernels::sample_norms_parallel(sig, grid, norm, norms);
  } else {
    kernels::sample_norms_serial(sig, grid, norm, norms);
  }
  return *std::max_element(norms.begin(), norms.end());
}

}  // namespace beurling
