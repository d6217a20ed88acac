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

#include "beurling/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>

#include "beurling/kernels.hpp"
#include "beurling/quadrature.hpp"

namespace beurling {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// max over the grid of log ||f(t)||, where f writes its value into out.
double log_sup(std::span<const double> grid, int dim, NormKind norm, Execution exec,
               const std::function<void(double, Eigen::Ref<Vector>)>& f) {
  const auto n = static_cast<long>(grid.size());
  std::vector<double> vals(grid.size(), 0.0);
  auto body = [&](long i, Vector& tmp) {
    f(grid[static_cast<std::size_t>(i)], tmp);
    vals[static_cast<std::size_t>(i)] = banach_norm(tmp, norm);
  };
  if (exec == Execution::kParallel) {
    std::exception_ptr error;
#pragma omp parallel
    {
      Vector tmp(dim);
#pragma omp for schedule(static)
      for (long i = 0; i < n; ++i) {
        try {
          body(i, tmp);
        } catch (...) {
#pragma omp critical
          if (!error) error = std::current_exception();
        }
      }
    }
    if (error) std::rethrow_exception(error);
  } else {
    Vector tmp(dim);
    for (long i = 0; i < n; ++i) body(i, tmp);
  }
  double m = 0.0;
  for (double v : vals) m = std::max(m, v);
  return m > 0.0 ? std::log(m) : kNegInf;
}

RadiusSequence finish(std::vector<double> log_norms, double tol) {
  RadiusSequence r;
  r.log_norms = std::move(log_norms);
  const int n_max = static_cast<int>(r.log_norms.size());
  for (int n = 1; n <= n_max; ++n) {
    r.n_values.push_back(n);
    const double l = r.log_norms[static_cast<std::size_t>(n - 1)];
    r.roots.push_back(l == kNegInf ? 0.0 : std::exp(l / n));
  }
  for (int n = 1; n < n_max; ++n) {
    const double a = r.log_norms[static_cast<std::size_t>(n - 1)];
    const double b = r.log_norms[static_cast<std::size_t>(n)];
    r.ratios.push_back(b == kNegInf ? 0.0 : (a == kNegInf ? kInf : std::exp(b - a)));
  }
  r.limit = r.ratios.empty() ? (r.roots.empty() ? 0.0 : r.roots.back()) : r.ratios.back();
  if (r.ratios.size() >= 3) {
    const std::size_t k = r.ratios.size();
    const double scale = tol * std::max(1.0, std::abs(r.limit));
    const double a = r.ratios[k - 3];
    const double b = r.ratios[k - 2];
    const double c = r.ratios[k - 1];
    r.converged = std::abs(a - b) < scale && std::abs(b - c) < scale && std::abs(a - c) < scale;
  }
  return r;
}

// Scaled term-wise powers: log ||sum_k c_k^n e^{i xi_k t} v_k|| with |c_k| <= 1
// after dividing by rho = max |c_k|.
std::vector<double> trig_power_logs(const TrigPolynomial& p, const std::vector<Complex>& factors,
                                    int n_max, std::span<const double> grid, NormKind norm,
                                    Execution exec) {
  double rho = 0.0;
  for (const Complex& c : factors) rho = std::max(rho, std::abs(c));
  std::vector<double> logs;
  if (rho == 0.0 || p.empty()) return std::vector<double>(static_cast<std::size_t>(n_max), kNegInf);
  const auto& terms = p.terms();
  std::vector<Complex> unit(factors.size());
  for (std::size_t k = 0; k < factors.size(); ++k) unit[k] = factors[k] / rho;
  for (int n = 1; n <= n_max; ++n) {
    std::vector<Complex> coef(terms.size());
    for (std::size_t k = 0; k < terms.size(); ++k) coef[k] = std::pow(unit[k], n);
    const double l = log_sup(grid, p.dim(), norm, exec, [&](double t, Eigen::Ref<Vector> out) {
      out.setZero();
      for (std::size_t k = 0; k < terms.size(); ++k) {
        if (coef[k] != 0.0) out += (coef[k] * std::polar(1.0, terms[k].freq * t)) * terms[k].vec;
      }
    });
    logs.push_back(l == kNegInf ? kNegInf : l + n * std::log(rho));
  }
  return logs;
}

// e^{iAt} as a matrix at every grid time.
std::vector<Matrix> orbit_propagators(const MatrixOrbit& orbit, std::span<const double> grid) {
  const int d = orbit.dim();
  std::vector<MatrixOrbit> columns;
  for (int k = 0; k < d; ++k) columns.emplace_back(orbit.generator(), Vector::Unit(d, k));
  std::vector<Matrix> props(grid.size(), Matrix(d, d));
  const auto n = static_cast<long>(grid.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    for (int k = 0; k < d; ++k) {
      columns[static_cast<std::size_t>(k)].eval_into(grid[static_cast<std::size_t>(i)],
                                                     props[static_cast<std::size_t>(i)].col(k));
    }
  }
  return props;
}

// log ||E_t M^n v|| with normalized powers of M.
std::vector<double> matrix_power_logs(const MatrixOrbit& orbit, const Matrix& m, int n_max,
                                      std::span<const double> grid, NormKind norm, Execution exec) {
  const std::vector<Matrix> props = orbit_propagators(orbit, grid);
  std::vector<double> logs;
  Vector w = orbit.initial();
  double scale = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    w = m * w;
    const double s = w.norm();
    if (s == 0.0) {
      logs.resize(static_cast<std::size_t>(n_max), kNegInf);
      return logs;
    }
    w /= s;
    scale += std::log(s);
    std::vector<double> vals(grid.size());
    const auto count = static_cast<long>(grid.size());
    if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(static)
      for (long i = 0; i < count; ++i) {
        vals[static_cast<std::size_t>(i)] = banach_norm(Vector(props[static_cast<std::size_t>(i)] * w), norm);
      }
    } else {
      for (long i = 0; i < count; ++i) {
        vals[static_cast<std::size_t>(i)] = banach_norm(Vector(props[static_cast<std::size_t>(i)] * w), norm);
      }
    }
    const double mx = *std::max_element(vals.begin(), vals.end());
    logs.push_back(mx > 0.0 ? std::log(mx) + scale : kNegInf);
  }
  return logs;
}

double window_bandwidth(const Signal& sig, Interval window) {
  const double bw = sig.bandwidth_hint(window);
  return std::isfinite(bw) ? bw : 0.0;
}

void check_lambda(Complex lambda) {
  if (lambda.real() == 0.0 || !std::isfinite(lambda.real()) || !std::isfinite(lambda.imag())) {
    throw Error(ErrorCode::kOnSpectrum,
                "resolvent: Re lambda must be nonzero (the spectrum of D is the imaginary axis)");
  }
}

}  // namespace

Signal derivative(const Signal& sig, int n) {
  if (n < 0) throw Error(ErrorCode::kInvalidParameter, "derivative: negative order");
  if (n == 0) return sig;
  if (const TrigPolynomial* p = sig.trig()) {
    std::vector<TrigTerm> terms;
    for (const auto& t : p->terms()) terms.push_back({t.freq, std::pow(Complex(0.0, t.freq), n) * t.vec});
    return Signal(TrigPolynomial(p->dim(), std::move(terms)));
  }
  if (const MatrixOrbit* m = sig.matrix_orbit()) {
    const Matrix ia = Complex(0.0, 1.0) * m->generator();
    Vector w = m->initial();
    for (int k = 0; k < n; ++k) w = ia * w;
    return Signal(MatrixOrbit(m->generator(), w));
  }
  if (const Chirp* c = sig.chirp()) return Signal(Chirp(c->vec(), c->order() + n));
  if (const DelaySolution* d = sig.delay_solution()) return Signal(d->derivative(n));
  if (const FiniteDifference* f = sig.finite_difference()) {
    if (f->order + n > 2) throw Error(ErrorCode::kUnsupportedOrder, "derivative: interpolants support order <= 2");
    const int order = f->order + n;
    return Signal(FiniteDifference{f->base, order, finite_difference_step(*f->base, {}, order)});
  }
  if (n > 2) throw Error(ErrorCode::kUnsupportedOrder, "derivative: interpolants support order <= 2");
  return Signal(FiniteDifference{std::make_shared<const Signal>(sig), n, finite_difference_step(sig, {}, n)});
}

double finite_difference_step(const Signal& sig, Interval window, int order) {
  // Central differences are exact on each cubic piece; a quarter cell keeps
  // rounding at eps / (step/4)^order.
  if (const Interpolant* p = sig.interpolant()) return 0.25 * p->grid().step();
  const double bw = window_bandwidth(sig, window);
  return std::pow(std::numeric_limits<double>::epsilon(), 1.0 / (order + 2)) / std::max(1.0, bw);
}

RadiusSequence derivative_radius(const Signal& sig, int n_max, std::span<const double> grid,
                                 const RadiusOptions& o) {
  if (n_max < 1 || grid.empty()) throw Error(ErrorCode::kInvalidParameter, "derivative_radius: need n_max >= 1 and a grid");
  std::vector<double> logs;
  if (const TrigPolynomial* p = sig.trig()) {
    std::vector<Complex> f;
    for (const auto& t : p->terms()) f.push_back(Complex(0.0, t.freq));
    logs = trig_power_logs(*p, f, n_max, grid, o.norm, o.exec);
  } else if (const MatrixOrbit* m = sig.matrix_orbit()) {
    logs = matrix_power_logs(*m, Complex(0.0, 1.0) * m->generator(), n_max, grid, o.norm, o.exec);
  } else if (const DelaySolution* d = sig.delay_solution()) {
    // D^n u(t) = C^n u(t - n tau) on the grid points inside the domain of order n.
    Matrix power = Matrix::Identity(d->dim(), d->dim());
    double scale = 0.0;
    for (int n = 1; n <= n_max; ++n) {
      power = d->coefficient() * power;
      const double s = power.norm();
      if (s == 0.0) {
        logs.resize(static_cast<std::size_t>(n_max), kNegInf);
        break;
      }
      power /= s;
      scale += std::log(s);
      const DelaySolution dn = d->derivative(n);
      const Interval dom = dn.domain();
      std::vector<double> pts;
      for (double t : grid) {
        if (dom.contains(t)) pts.push_back(t);
      }
      if (pts.empty()) throw Error(ErrorCode::kOutOfDomain, "derivative_radius: grid outside the domain of D^n u");
      const double tau = d->tau();
      const double l = log_sup(pts, d->dim(), o.norm, o.exec, [&](double t, Eigen::Ref<Vector> out) {
        Vector base(d->dim());
        d->grid().eval_into(t - n * tau, base);
        out = power * base;
      });
      logs.push_back(l == kNegInf ? kNegInf : l + scale);
    }
  } else {
    for (int n = 1; n <= n_max; ++n) {
      const Signal dn = derivative(sig, n);
      logs.push_back(log_sup(grid, sig.dim(), o.norm, o.exec,
                             [&](double t, Eigen::Ref<Vector> out) { dn.eval_into(t, out); }));
    }
  }
  return finish(std::move(logs), o.convergence_tol);
}

std::vector<double> finite_difference_norms(const Signal& sig, int n_max, std::span<const double> grid,
                                            NormKind norm) {
  if (n_max < 1 || grid.empty()) throw Error(ErrorCode::kInvalidParameter, "finite_difference_norms: need n_max >= 1 and a grid");
  const auto [lo, hi] = std::minmax_element(grid.begin(), grid.end());
  const double bw = std::max(1.0, window_bandwidth(sig, {*lo, *hi}));
  std::vector<double> out;
  for (int n = 1; n <= n_max; ++n) {
    const double h = std::pow(std::numeric_limits<double>::epsilon(), 1.0 / (n + 2)) / bw;
    std::vector<double> binom(static_cast<std::size_t>(n) + 1, 1.0);
    for (int k = 1; k <= n; ++k) binom[static_cast<std::size_t>(k)] = binom[static_cast<std::size_t>(k - 1)] * (n - k + 1) / k;
    auto stencil = [&](double t, double step, Vector& tmp) {
      Vector acc = Vector::Zero(sig.dim());
      for (int k = 0; k <= n; ++k) {
        sig.eval_into(t + (0.5 * n - k) * step, tmp);
        acc += ((k % 2 == 0 ? 1.0 : -1.0) * binom[static_cast<std::size_t>(k)]) * tmp;
      }
      return Vector(acc / std::pow(step, n));
    };
    const double l = log_sup(grid, sig.dim(), norm, Execution::kParallel, [&](double t, Eigen::Ref<Vector> res) {
      Vector tmp(sig.dim());
      const Vector coarse = stencil(t, h, tmp);
      const Vector fine = stencil(t, 0.5 * h, tmp);
      res = (4.0 * fine - coarse) / 3.0;
    });
    out.push_back(l == kNegInf ? 0.0 : std::exp(l));
  }
  return out;
}

Vector apply_resolvent(const Signal& sig, Complex lambda, double s, const ResolventOptions& o) {
  return apply_resolvent_power(sig, lambda, 1, s, o);
}

Vector apply_resolvent_power(const Signal& sig, Complex lambda, int n, double s,
                             const ResolventOptions& o) {
  check_lambda(lambda);
  if (n < 1) throw Error(ErrorCode::kInvalidParameter, "apply_resolvent_power: n must be >= 1");
  const double sigma = std::abs(lambda.real());
  const bool forward = lambda.real() > 0.0;
  // Kernel magnitude t^{n-1} e^{-sigma t} / (n-1)!, peaked at t_m = (n-1)/sigma.
  const double t_m = (n - 1) / sigma;
  const double log_floor = std::log(o.truncation);
  auto log_rel = [&](double t) {
    if (n == 1) return -sigma * t;
    return (n - 1) * std::log(t / t_m) - sigma * (t - t_m);
  };
  double t_star = -log_floor / sigma;
  if (n > 1) {
    t_star = std::max(t_m, 1.0 / sigma);
    while (log_rel(t_star) > log_floor) t_star *= 1.25;
  }
  const Interval window = forward ? Interval{s, s + t_star} : Interval{s - t_star, s};
  const double rate = std::abs(lambda) + window_bandwidth(sig, window);
  const int intervals = quadrature::even_intervals(t_star * rate / o.resolution);
  const double h = t_star / intervals;
  const std::vector<double> w = quadrature::simpson_weights(intervals, h);
  const Matrix u = kernels::sample_signal(sig, s, forward ? h : -h, intervals + 1, Execution::kParallel);
  const double log_fact = std::lgamma(static_cast<double>(n));
  // e^{-lambda t} for the forward branch, e^{lambda t} mirrored otherwise.
  const Complex rate_c = forward ? -lambda : lambda;
  Vector acc = Vector::Zero(sig.dim());
  for (int j = 0; j <= intervals; ++j) {
    const double t = j * h;
    if (n > 1 && t == 0.0) continue;
    const double lg = (n > 1 ? (n - 1) * std::log(t) : 0.0) - log_fact + rate_c.real() * t;
    const Complex k = std::exp(Complex(lg, rate_c.imag() * t));
    acc += (w[static_cast<std::size_t>(j)] * k) * u.col(j);
  }
  if (!forward && n % 2 == 1) acc = -acc;
  return acc;
}

RadiusSequence resolvent_radius(const Signal& sig, Complex lambda, int n_max, std::span<const double> grid,
                                const RadiusOptions& o, const ResolventOptions& ro) {
  check_lambda(lambda);
  if (n_max < 1 || grid.empty()) throw Error(ErrorCode::kInvalidParameter, "resolvent_radius: need n_max >= 1 and a grid");
  const std::optional<TrigPolynomial> trig = trig_form(sig);
  std::vector<double> logs;
  if (trig) {
    std::vector<Complex> f;
    for (const auto& t : trig->terms()) f.push_back(1.0 / (lambda - Complex(0.0, t.freq)));
    logs = trig_power_logs(*trig, f, n_max, grid, o.norm, o.exec);
  } else if (const MatrixOrbit* m = sig.matrix_orbit()) {
    const Matrix shifted = lambda * Matrix::Identity(m->dim(), m->dim()) - Complex(0.0, 1.0) * m->generator();
    Eigen::JacobiSVD<Matrix> svd(shifted);
    const double smin = svd.singularValues().tail(1)(0);
    if (!(smin > 1e-14 * svd.singularValues()(0))) {
      throw Error(ErrorCode::kOnSpectrum, "resolvent_radius: lambda - iA is singular");
    }
    logs = matrix_power_logs(*m, shifted.inverse(), n_max, grid, o.norm, o.exec);
  } else {
    for (int n = 1; n <= n_max; ++n) {
      double mx = 0.0;
      for (double t : grid) mx = std::max(mx, banach_norm(apply_resolvent_power(sig, lambda, n, t, ro), o.norm));
      logs.push_back(mx > 0.0 ? std::log(mx) : kNegInf);
    }
  }
  return finish(std::move(logs), o.convergence_tol);
}

double verify_resolvent_identity(const Signal& sig, Complex lambda, std::span<const double> probes,
                                 NormKind norm, const ResolventOptions& o) {
  check_lambda(lambda);
  double worst = 0.0;
  for (double s : probes) {
    const double h = finite_difference_step(sig, {s - 1.0, s + 1.0}) / std::max(1.0, std::abs(lambda));
    auto w = [&](double t) { return apply_resolvent(sig, lambda, t, o); };
    const Vector coarse = (w(s + h) - w(s - h)) / (2.0 * h);
    const Vector fine = (w(s + 0.5 * h) - w(s - 0.5 * h)) / h;
    const Vector dw = (4.0 * fine - coarse) / 3.0;
    const Vector residual = lambda * w(s) - dw - sig.eval(s);
    worst = std::max(worst, banach_norm(residual, norm));
  }
  return worst;
}

}  // namespace beurling
