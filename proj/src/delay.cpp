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

#include "beurling/delay.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include <Eigen/Eigenvalues>

namespace beurling {
namespace {

long steps_per_delay(double tau, double step) {
  const double n = tau / step;
  const double r = std::round(n);
  if (!(step > 0.0) || r < 1.0 || std::abs(n - r) > 1e-9 * r) {
    throw Error(ErrorCode::kInvalidParameter, "delay: step must divide tau exactly");
  }
  return static_cast<long>(r);
}

void sort_unique(std::vector<double>& xs, double tol) {
  std::sort(xs.begin(), xs.end());
  std::vector<double> out;
  for (double x : xs) {
    if (out.empty() || x - out.back() > tol) out.push_back(x);
  }
  xs = std::move(out);
}

}  // namespace

DelaySystem::DelaySystem(Kind kind, double tau, Matrix a, Matrix coefficient)
    : kind_(kind), tau_(tau), a_(std::move(a)), coefficient_(std::move(coefficient)) {
  if (!(tau_ > 0.0) || !std::isfinite(tau_)) {
    throw Error(ErrorCode::kInvalidParameter, "delay: tau must be positive and finite");
  }
}

DelaySystem DelaySystem::scalar(double tau, int dim) {
  if (dim < 1) throw Error(ErrorCode::kInvalidParameter, "delay: dimension must be positive");
  return DelaySystem(Kind::kScalar, tau, Matrix(), -Matrix::Identity(dim, dim));
}

DelaySystem DelaySystem::matrix(double tau, Matrix a) {
  if (a.rows() != a.cols() || a.rows() < 1) {
    throw Error(ErrorCode::kInvalidParameter, "delay: A must be square and nonempty");
  }
  Matrix c = Complex(0.0, 1.0) * a;
  return DelaySystem(Kind::kMatrix, tau, std::move(a), std::move(c));
}

HistorySegment::HistorySegment(HermiteGrid grid, double tau) : grid_(std::move(grid)), tau_(tau) {
  const long n = steps_per_delay(tau_, grid_.step());
  if (grid_.nodes() != n + 1) {
    throw Error(ErrorCode::kInvalidParameter, "delay: history grid must span exactly one delay");
  }
}

HistorySegment HistorySegment::sample(const std::function<Vector(double)>& f, double t0, double tau,
                                      double step, const std::function<Vector(double)>& df) {
  const long n = steps_per_delay(tau, step);
  const Vector first = f(t0 - tau);
  const auto d = first.size();
  Matrix values(d, n + 1);
  Matrix slopes(d, n + 1);
  for (long j = 0; j <= n; ++j) {
    const double t = t0 - tau + static_cast<double>(j) * step;
    values.col(j) = j == 0 ? first : f(t);
    if (df) slopes.col(j) = df(t);
  }
  if (!df) slopes = HermiteGrid::finite_difference_slopes(values, step);
  return HistorySegment(HermiteGrid(t0 - tau, step, values, slopes, slopes), tau);
}

double dividing_step(double tau, double max_step) {
  if (!(tau > 0.0) || !(max_step > 0.0)) {
    throw Error(ErrorCode::kInvalidParameter, "dividing_step: tau and max_step must be positive");
  }
  return tau / std::ceil(tau / max_step * (1.0 - 1e-12));
}

DelaySolution solve_delay(const DelaySystem& sys, const HistorySegment& history, double t_end, double step) {
  const double tau = sys.tau();
  if (std::abs(history.tau() - tau) > 1e-12 * tau) {
    throw Error(ErrorCode::kInvalidParameter, "solve_delay: history delay differs from the system delay");
  }
  if (history.dim() != sys.dim()) throw Error(ErrorCode::kInvalidParameter, "solve_delay: dimension mismatch");
  const long n = steps_per_delay(tau, step);
  const double h = tau / static_cast<double>(n);
  const double t0 = history.t0();
  if (!(t_end > t0) || !std::isfinite(t_end)) {
    throw Error(ErrorCode::kInvalidParameter, "solve_delay: t_end must exceed the history end");
  }
  const long k = static_cast<long>(std::ceil((t_end - t0) / h * (1.0 - 1e-12)));
  const long total = n + k + 1;
  const Eigen::Index d = sys.dim();
  const Matrix& c = sys.coefficient();

  Matrix values(d, total);
  Matrix left(d, total);
  Matrix right(d, total);
  const HermiteGrid& hist = history.grid();
  Vector tmp(d);
  for (long j = 0; j <= n; ++j) {
    const double t = t0 - tau + static_cast<double>(j) * h;
    hist.eval_into(t, tmp);
    values.col(j) = tmp;
    hist.derivative_into(t, tmp);
    left.col(j) = tmp;
    right.col(j) = tmp;
  }
  right.col(n) = c * values.col(0);

  // On [t_i, t_i + h] the forcing is g(t) = C u(t - tau), known from the
  // segment one delay back; the fourth-order step reduces to Simpson's rule.
  for (long i = n; i < total - 1; ++i) {
    const long b = i - n;
    const Vector mid = 0.5 * (values.col(b) + values.col(b + 1)) + (h / 8.0) * (right.col(b) - left.col(b + 1));
    values.col(i + 1) = values.col(i) + (h / 6.0) * (c * (values.col(b) + 4.0 * mid + values.col(b + 1)));
    left.col(i + 1) = c * values.col(b + 1);
    right.col(i + 1) = left.col(i + 1);
    if (!values.col(i + 1).allFinite()) {
      throw Error(ErrorCode::kDivergentOrbit, "solve_delay: solution overflowed at t=" +
                                            std::to_string(t0 + static_cast<double>(i + 1 - n) * h));
    }
  }
  auto grid = std::make_shared<const HermiteGrid>(t0 - tau, h, std::move(values), std::move(left), std::move(right));
  return DelaySolution(std::move(grid), c, tau, t0);
}

std::vector<double> characteristic_roots(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw Error(ErrorCode::kInvalidParameter, "characteristic_roots: tau must be positive and finite");
  }
  constexpr int kGrid = 10000;
  const double lo = -1.0 - 1e-3;
  const double hi = 1.0 + 1e-3;
  auto f = [tau](double x) { return std::cos(x * tau); };
  std::vector<double> zeros;
  double xa = lo;
  double fa = f(xa);
  for (int i = 1; i <= kGrid; ++i) {
    const double xb = lo + (hi - lo) * i / kGrid;
    const double fb = f(xb);
    if (fa == 0.0) {
      zeros.push_back(xa);
    } else if (fa * fb < 0.0) {
      double a = xa;
      double b = xb;
      double fl = fa;
      while (b - a > 1e-13) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) {
          a = b = m;
          break;
        }
        if ((fm < 0.0) == (fl < 0.0)) {
          a = m;
          fl = fm;
        } else {
          b = m;
        }
      }
      zeros.push_back(0.5 * (a + b));
    }
    xa = xb;
    fa = fb;
  }
  std::vector<double> roots;
  for (double x : zeros) {
    if (std::abs(x) <= 1.0 + 1e-9 && std::abs(x * std::sin(x * tau) - 1.0) < 1e-9) roots.push_back(x);
  }
  sort_unique(roots, 1e-9);
  return roots;
}

std::vector<double> characteristic_roots_general(const Matrix& a, double tau, double rho) {
  if (a.rows() != a.cols() || a.rows() < 1) {
    throw Error(ErrorCode::kInvalidParameter, "characteristic_roots_general: A must be square and nonempty");
  }
  if (!(tau >= 0.0) || !(rho >= 0.0)) {
    throw Error(ErrorCode::kInvalidParameter, "characteristic_roots_general: need tau >= 0 and rho >= 0");
  }
  Eigen::ComplexEigenSolver<Matrix> solver(a, false);
  const double slack = 1e-12 * std::max(1.0, rho);
  std::vector<double> roots;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const Complex mu = solver.eigenvalues()[i];
    if (tau == 0.0) {
      if (std::abs(mu.imag()) <= 1e-8 * std::max(1.0, std::abs(mu)) && std::abs(mu.real()) <= rho + slack) {
        roots.push_back(mu.real());
      }
      continue;
    }
    // |lambda exp(i lambda tau)| = |lambda|, so only lambda = +-|mu| can qualify.
    const double r = std::abs(mu);
    for (double lambda : {-r, r}) {
      if (std::abs(lambda) <= rho + slack && std::abs(lambda * std::polar(1.0, lambda * tau) - mu) < 1e-8) {
        roots.push_back(lambda);
      }
    }
  }
  sort_unique(roots, 0.0);
  return roots;
}

ScanOptions inclusion_scan_options() {
  ScanOptions o;
  o.half_width = 0.5;
  o.grid_step = 0.25;
  return o;
}

InclusionReport verify_spectral_inclusion(const DelaySystem& sys, const DelaySolution& solution,
                                          std::span<const double> roots, const ScanOptions& scan) {
  if (solution.dim() != sys.dim()) {
    throw Error(ErrorCode::kInvalidParameter, "verify_spectral_inclusion: dimension mismatch");
  }
  InclusionReport r;
  const Interval dom = solution.domain();
  r.window = {0.5 * (solution.history_end() + dom.hi), dom.hi};
  r.roots.assign(roots.begin(), roots.end());

  ScanOptions o = scan;
  o.probe_origin = 0.0;
  const Interval need = scan_support(o);
  if (need.width() > r.window.width()) {
    throw Error(ErrorCode::kOutOfDomain, "verify_spectral_inclusion: trailing window of length " +
                                             std::to_string(r.window.width()) + " is shorter than the " +
                                             std::to_string(need.width()) + " the scan needs");
  }
  o.probe_origin = 0.5 * (r.window.lo + r.window.hi) - 0.5 * (need.lo + need.hi);
  r.spectrum = estimate_spectrum(Signal{solution}, o);
  for (double c : r.spectrum.cluster_centers) {
    double dist = kInf;
    for (double x : roots) dist = std::min(dist, std::abs(c - x));
    if (dist > r.spectrum.grid_step) r.violations.push_back(c);
  }
  r.holds = r.violations.empty();
  return r;
}

}  // namespace beurling
