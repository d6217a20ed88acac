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

#include "beurling/semiflow.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <unsupported/Eigen/MatrixFunctions>

#include "beurling/kernels.hpp"
#include "beurling/quadrature.hpp"

namespace beurling {
namespace {

double distance(const Eigen::Ref<const Vector>& a, const Eigen::Ref<const Vector>& b, NormKind norm) {
  return banach_norm(Vector(a - b), norm);
}

bool on_grid(double t, double h) {
  const double k = t / h;
  return std::abs(k - std::round(k)) <= 1e-9 * std::max(1.0, std::abs(k));
}

// Diameter of the columns, exact over a strided subsample of at most 2048 points.
double diameter(const Matrix& pts, NormKind norm, Execution exec) {
  const long n = static_cast<long>(pts.cols());
  const long stride = std::max(1L, (n + 2047) / 2048);
  std::vector<long> idx;
  for (long i = 0; i < n; i += stride) idx.push_back(i);
  if (idx.back() != n - 1) idx.push_back(n - 1);
  const long m = static_cast<long>(idx.size());
  double best = 0.0;
#pragma omp parallel for schedule(dynamic, 16) reduction(max : best) if (exec == Execution::kParallel)
  for (long i = 0; i < m; ++i) {
    for (long j = i + 1; j < m; ++j) {
      best = std::max(best, distance(pts.col(idx[static_cast<std::size_t>(i)]),
                                     pts.col(idx[static_cast<std::size_t>(j)]), norm));
    }
  }
  return best;
}

}  // namespace

// ---------------------------------------------------------------------------
// Models

SemiflowModel SemiflowModel::linear(Matrix generator, std::string name) {
  if (generator.rows() != generator.cols() || generator.rows() < 1 || !generator.allFinite()) {
    throw Error(ErrorCode::kInvalidParameter, "semiflow: generator must be square, nonempty and finite");
  }
  SemiflowModel m;
  m.kind_ = Kind::kLinear;
  m.name_ = std::move(name);
  m.generator_ = std::move(generator);
  return m;
}

SemiflowModel SemiflowModel::rotation() {
  Matrix g = Matrix::Zero(2, 2);
  g(0, 1) = -1.0;
  g(1, 0) = 1.0;
  return linear(g, "rotation");
}

SemiflowModel SemiflowModel::spiral(double rate) {
  if (!(rate > 0.0)) throw Error(ErrorCode::kInvalidParameter, "semiflow: spiral rate must be positive");
  Matrix g(2, 2);
  g << -rate, -1.0, 1.0, -rate;
  return linear(g, "spiral");
}

SemiflowModel SemiflowModel::torus() {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = std::sqrt(2.0);
  SemiflowModel m = matrix_orbit(a);
  m.name_ = "torus";
  return m;
}

SemiflowModel SemiflowModel::matrix_orbit(const Matrix& a) {
  return linear(Complex(0.0, 1.0) * a, "matrix_orbit");
}

SemiflowModel SemiflowModel::delay(DelaySystem system, double step) {
  const double n = system.tau() / step;
  if (!(step > 0.0) || std::abs(n - std::round(n)) > 1e-9 * n || std::round(n) < 1.0) {
    throw Error(ErrorCode::kInvalidParameter, "semiflow: delay step must divide tau exactly");
  }
  SemiflowModel m;
  m.kind_ = Kind::kDelay;
  m.name_ = "delay";
  m.dt_ = system.tau() / std::round(n);
  m.system_ = std::move(system);
  return m;
}

const DelaySystem& SemiflowModel::delay_system() const {
  if (!system_) throw Error(ErrorCode::kInvalidParameter, "semiflow: not a delay model");
  return *system_;
}

long SemiflowModel::nodes() const { return std::lround(system_->tau() / dt_) + 1; }

int SemiflowModel::value_dim() const {
  return kind_ == Kind::kLinear ? static_cast<int>(generator_.rows()) : system_->dim();
}

int SemiflowModel::state_dim() const {
  return kind_ == Kind::kLinear ? value_dim() : static_cast<int>(2 * nodes() * system_->dim());
}

HistorySegment SemiflowModel::history(const Vector& x) const {
  const long n = nodes();
  const Eigen::Index d = system_->dim();
  if (x.size() != 2 * n * d) throw Error(ErrorCode::kInvalidParameter, "semiflow: delay state has wrong size");
  Matrix values = x.head(n * d).reshaped(d, n);
  Matrix slopes = x.tail(n * d).reshaped(d, n);
  return HistorySegment(HermiteGrid(-system_->tau(), dt_, values, slopes, slopes), system_->tau());
}

Vector SemiflowModel::state_at(const DelaySolution& sol, double t) const {
  const long n = nodes();
  const Eigen::Index d = system_->dim();
  const double tau = system_->tau();
  const HermiteGrid& g = sol.grid();
  Vector out(2 * n * d);
  if (on_grid(t, dt_)) {
    const long first = std::lround((t - tau - g.t0()) / dt_);
    for (long j = 0; j < n; ++j) {
      out.segment(j * d, d) = g.values().col(first + j);
      out.segment((n + j) * d, d) = j + 1 < n ? g.slope_right().col(first + j) : g.slope_left().col(first + j);
    }
    return out;
  }
  Vector tmp(d);
  for (long j = 0; j < n; ++j) {
    const double s = t - tau + static_cast<double>(j) * dt_;
    g.eval_into(s, tmp);
    out.segment(j * d, d) = tmp;
    if (s >= sol.history_end()) {
      g.eval_into(s - tau, tmp);
      out.segment((n + j) * d, d) = sol.coefficient() * tmp;
    } else {
      g.derivative_into(s, tmp);
      out.segment((n + j) * d, d) = tmp;
    }
  }
  return out;
}

Vector SemiflowModel::step(const Vector& x, double t) const {
  if (x.size() != state_dim()) throw Error(ErrorCode::kInvalidParameter, "semiflow: state has wrong size");
  if (kind_ == Kind::kLinear) return (generator_ * Complex(t, 0.0)).exp() * x;
  if (t < 0.0) throw Error(ErrorCode::kInvalidParameter, "semiflow: delay models cannot run backward");
  if (t == 0.0) return x;
  const DelaySolution sol = solve_delay(*system_, history(x), t, dt_);
  return state_at(sol, t);
}

Matrix SemiflowModel::trajectory(const Vector& x, std::span<const double> times) const {
  if (x.size() != state_dim()) throw Error(ErrorCode::kInvalidParameter, "semiflow: state has wrong size");
  Matrix out(state_dim(), static_cast<Eigen::Index>(times.size()));
  if (times.empty()) return out;
  if (kind_ == Kind::kLinear) {
    // Equal consecutive increments reuse one propagator.
    Vector cur = x;
    double prev = 0.0;
    double cached_dt = std::nan("");
    Matrix prop;
    for (std::size_t k = 0; k < times.size(); ++k) {
      const double dt = times[k] - prev;
      if (!(std::abs(dt - cached_dt) <= 1e-14 * std::max(1.0, std::abs(dt)))) {
        prop = (generator_ * Complex(dt, 0.0)).exp();
        cached_dt = dt;
      }
      cur = prop * cur;
      out.col(static_cast<Eigen::Index>(k)) = cur;
      prev = times[k];
    }
    return out;
  }
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (times[k] < 0.0 || (k > 0 && times[k] < times[k - 1])) {
      throw Error(ErrorCode::kInvalidParameter, "semiflow: delay trajectories need nondecreasing times >= 0");
    }
  }
  const double t_end = times.back();
  if (t_end == 0.0) {
    for (Eigen::Index k = 0; k < out.cols(); ++k) out.col(k) = x;
    return out;
  }
  const DelaySolution sol = solve_delay(*system_, history(x), t_end, dt_);
  for (std::size_t k = 0; k < times.size(); ++k) {
    out.col(static_cast<Eigen::Index>(k)) = times[k] == 0.0 ? x : state_at(sol, times[k]);
  }
  return out;
}

Vector SemiflowModel::value(const Vector& x) const {
  if (kind_ == Kind::kLinear) return x;
  const Eigen::Index d = system_->dim();
  return x.segment((nodes() - 1) * d, d);
}

Vector SemiflowModel::projection(const Vector& x) const {
  Vector p = Vector::Zero(2);
  if (kind_ == Kind::kLinear) {
    p[0] = x[0];
    if (x.size() > 1) p[1] = x[1];
  } else {
    const Eigen::Index d = system_->dim();
    p[0] = x[(nodes() - 1) * d];
    p[1] = x[0];
  }
  return p;
}

Signal SemiflowModel::observable(const Vector& x, double horizon) const {
  if (kind_ == Kind::kLinear) return Signal{MatrixOrbit(Complex(0.0, -1.0) * generator_, x)};
  return Signal{solve_delay(*system_, history(x), horizon, dt_)};
}

Vector SemiflowModel::delay_state(const std::function<Vector(double)>& f,
                                  const std::function<Vector(double)>& df) const {
  const HistorySegment h = HistorySegment::sample(f, 0.0, delay_system().tau(), dt_, df);
  const long n = nodes();
  const Eigen::Index d = system_->dim();
  Vector out(2 * n * d);
  out.head(n * d) = h.grid().values().reshaped();
  out.tail(n * d) = h.grid().slope_right().reshaped();
  return out;
}

// ---------------------------------------------------------------------------
// Orbits and omega-limit sets

Orbit compute_orbit(const SemiflowModel& model, const Vector& v0, double t_max, double sample_dt,
                    double blowup_bound, NormKind norm) {
  if (!(t_max > 0.0) || !(sample_dt > 0.0) || !std::isfinite(t_max)) {
    throw Error(ErrorCode::kInvalidParameter, "compute_orbit: need t_max > 0 and sample_dt > 0");
  }
  const long count = static_cast<long>(std::floor(t_max / sample_dt + 1e-9));
  Orbit o;
  for (long k = 0; k <= count; ++k) o.times.push_back(static_cast<double>(k) * sample_dt);
  o.states = model.trajectory(v0, o.times);
  for (Eigen::Index k = 0; k < o.states.cols(); ++k) {
    const double nk = banach_norm(Eigen::Ref<const Vector>(o.states.col(k)), norm);
    if (!(nk <= blowup_bound)) {
      throw Error(ErrorCode::kDivergentOrbit, "compute_orbit: state norm " + std::to_string(nk) + " at t=" +
                                                  std::to_string(o.times[static_cast<std::size_t>(k)]) +
                                                  " exceeds the blow-up bound");
    }
    o.max_norm = std::max(o.max_norm, nk);
  }
  return o;
}

OmegaLimitSet omega_limit(const Orbit& orbit, const OmegaOptions& opt) {
  if (!(opt.tail_fraction > 0.0 && opt.tail_fraction < 1.0) || !(opt.cluster_eps >= 0.0)) {
    throw Error(ErrorCode::kInvalidParameter, "omega_limit: tail_fraction in (0, 1) and cluster_eps >= 0");
  }
  if (orbit.times.empty()) throw Error(ErrorCode::kInvalidParameter, "omega_limit: empty orbit");
  OmegaLimitSet om;
  om.tail_start = opt.tail_fraction * orbit.times.back();
  const auto first = static_cast<Eigen::Index>(
      std::lower_bound(orbit.times.begin(), orbit.times.end(), om.tail_start) - orbit.times.begin());
  const Eigen::Index n = orbit.states.cols() - first;
  if (n < 100) throw Error(ErrorCode::kInvalidParameter, "omega_limit: need at least 100 tail samples");
  om.tail_samples = static_cast<long>(n);
  const Matrix tail = orbit.states.rightCols(n);
  om.diameter = diameter(tail, opt.norm, opt.exec);
  om.cluster_eps = opt.cluster_eps > 0.0 ? opt.cluster_eps : 1e-2 * diameter(orbit.states, opt.norm, opt.exec);
  if (!(om.cluster_eps > 0.0)) om.cluster_eps = 1e-12;

  std::vector<Eigen::Index> reps;
  for (Eigen::Index i = 0; i < n; ++i) {
    bool covered = false;
    for (auto it = reps.rbegin(); it != reps.rend() && !covered; ++it) {
      covered = distance(tail.col(i), tail.col(*it), opt.norm) <= om.cluster_eps;
    }
    if (!covered) reps.push_back(i);
  }
  om.points.resize(tail.rows(), static_cast<Eigen::Index>(reps.size()));
  for (std::size_t k = 0; k < reps.size(); ++k) om.points.col(static_cast<Eigen::Index>(k)) = tail.col(reps[k]);
  om.tail_hausdorff = kernels::hausdorff_distance(om.points, tail, opt.norm, opt.exec);
  return om;
}

InvarianceCheck check_invariance(const SemiflowModel& model, const OmegaLimitSet& omega, double t_probe,
                                 NormKind norm, Execution exec) {
  if (omega.points.cols() == 0) throw Error(ErrorCode::kInvalidParameter, "check_invariance: empty set");
  if (!(t_probe > 0.0)) throw Error(ErrorCode::kInvalidParameter, "check_invariance: t_probe must be positive");
  const long n = static_cast<long>(omega.points.cols());
  Matrix flowed(omega.points.rows(), n);
  std::vector<std::string> errors(static_cast<std::size_t>(n));
  bool failed = false;
#pragma omp parallel for schedule(dynamic) reduction(|| : failed) if (exec == Execution::kParallel)
  for (long k = 0; k < n; ++k) {
    try {
      flowed.col(k) = model.step(omega.points.col(k), t_probe);
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(k)] = e.what();
      failed = true;
    }
  }
  if (failed) {
    for (const auto& e : errors) {
      if (!e.empty()) throw Error(ErrorCode::kInvalidParameter, "check_invariance: " + e);
    }
  }
  InvarianceCheck c;
  c.t_probe = t_probe;
  c.residual = kernels::hausdorff_distance(flowed, omega.points, norm, exec);
  c.threshold = 2.0 * omega.cluster_eps;
  c.passes = c.residual <= c.threshold;
  return c;
}

ConnectivityCheck check_connected(const OmegaLimitSet& omega, double chain_eps, NormKind norm) {
  const Eigen::Index n = omega.points.cols();
  if (n == 0) throw Error(ErrorCode::kInvalidParameter, "check_connected: empty set");
  ConnectivityCheck c;
  c.chain_eps = chain_eps > 0.0 ? chain_eps : 3.0 * omega.cluster_eps;
  // Prim's algorithm; the chain graph has one component per spanning-tree
  // edge of length >= chain_eps, plus one.
  std::vector<double> best(static_cast<std::size_t>(n), kInf);
  std::vector<bool> in_tree(static_cast<std::size_t>(n), false);
  best[0] = 0.0;
  c.components = 1;
  for (Eigen::Index it = 0; it < n; ++it) {
    Eigen::Index u = -1;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!in_tree[static_cast<std::size_t>(i)] && (u < 0 || best[static_cast<std::size_t>(i)] < best[static_cast<std::size_t>(u)])) u = i;
    }
    in_tree[static_cast<std::size_t>(u)] = true;
    const double edge = best[static_cast<std::size_t>(u)];
    c.max_gap = std::max(c.max_gap, edge);
    if (it > 0 && edge >= c.chain_eps) ++c.components;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!in_tree[static_cast<std::size_t>(i)]) {
        best[static_cast<std::size_t>(i)] =
            std::min(best[static_cast<std::size_t>(i)], distance(omega.points.col(u), omega.points.col(i), norm));
      }
    }
  }
  c.connected = c.components == 1;
  return c;
}

std::optional<double> estimate_period(const SemiflowModel& model, const Vector& x, double t_max, double sample_dt,
                                      double tolerance) {
  if (!(t_max > 0.0) || !(sample_dt > 0.0) || !(tolerance > 0.0)) {
    throw Error(ErrorCode::kInvalidParameter, "estimate_period: need positive t_max, sample_dt and tolerance");
  }
  std::vector<double> times;
  for (long k = 1; static_cast<double>(k) * sample_dt <= t_max; ++k) times.push_back(static_cast<double>(k) * sample_dt);
  if (times.size() < 3) return std::nullopt;
  const Matrix traj = model.trajectory(x, times);
  std::vector<double> d(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) d[k] = (traj.col(static_cast<Eigen::Index>(k)) - x).norm();
  double excursion = 0.0;
  for (std::size_t k = 1; k + 1 < times.size(); ++k) {
    excursion = std::max(excursion, d[k - 1]);
    if (d[k] < tolerance * excursion && d[k] <= d[k - 1] && d[k] <= d[k + 1]) {
      auto f = [&](double t) { return -(model.step(x, t) - x).squaredNorm(); };
      return quadrature::golden_section_max(f, times[k] - sample_dt, times[k] + sample_dt, 1e-11 * times[k]);
    }
  }
  return std::nullopt;
}

Matrix backward_flow(const SemiflowModel& model, const Matrix& points, double t, std::optional<double> period,
                     NormKind norm) {
  if (!(t >= 0.0)) throw Error(ErrorCode::kInvalidParameter, "backward_flow: t must be nonnegative");
  Matrix out(points.rows(), points.cols());
  if (model.invertible()) {
    for (Eigen::Index k = 0; k < points.cols(); ++k) out.col(k) = model.step(points.col(k), -t);
    return out;
  }
  if (period) {
    const double shift = std::ceil(t / *period) * *period - t;
    for (Eigen::Index k = 0; k < points.cols(); ++k) out.col(k) = model.step(points.col(k), shift);
    return out;
  }
  Matrix images(points.rows(), points.cols());
  for (Eigen::Index k = 0; k < points.cols(); ++k) images.col(k) = model.step(points.col(k), t);
  for (Eigen::Index k = 0; k < points.cols(); ++k) {
    Eigen::Index best = 0;
    double bd = kInf;
    for (Eigen::Index j = 0; j < points.cols(); ++j) {
      const double dj = distance(images.col(j), points.col(k), norm);
      if (dj < bd) {
        bd = dj;
        best = j;
      }
    }
    out.col(k) = points.col(best);
  }
  return out;
}

AutomorphyProbe almost_automorphy_probe(const SemiflowModel& model, const OmegaLimitSet& omega, const Vector& v,
                                        std::span<const double> s_seq, std::span<const double> t_grid,
                                        const AutomorphyOptions& opt) {
  const auto n = static_cast<long>(s_seq.size());
  if (n < 50) throw Error(ErrorCode::kInvalidParameter, "almost_automorphy_probe: need at least 50 sequence terms");
  if (opt.members < 1 || opt.members >= n || opt.candidates < 1) {
    throw Error(ErrorCode::kInvalidParameter, "almost_automorphy_probe: invalid member or candidate count");
  }
  if (t_grid.empty()) throw Error(ErrorCode::kInvalidParameter, "almost_automorphy_probe: empty time grid");
  if (!model.invertible() && !opt.period) {
    throw Error(ErrorCode::kInvalidParameter, "almost_automorphy_probe: backward flow needs a period estimate");
  }
  const Matrix states = model.trajectory(v, s_seq);

  // Limit point: the candidate whose members-th nearest neighbour is closest.
  const long n_cand = std::min<long>(opt.candidates, n);
  std::vector<double> radius(static_cast<std::size_t>(n_cand));
#pragma omp parallel for schedule(dynamic)
  for (long c = 0; c < n_cand; ++c) {
    const long idx = c * n / n_cand;
    std::vector<double> d;
    d.reserve(static_cast<std::size_t>(n));
    for (long j = 0; j < n; ++j) {
      if (j != idx) d.push_back(distance(states.col(j), states.col(idx), opt.norm));
    }
    std::nth_element(d.begin(), d.begin() + (opt.members - 1), d.end());
    radius[static_cast<std::size_t>(c)] = d[static_cast<std::size_t>(opt.members - 1)];
  }
  const long best = std::min_element(radius.begin(), radius.end()) - radius.begin();
  AutomorphyProbe p;
  p.center = best * n / n_cand;
  p.w = states.col(p.center);
  p.cluster_radius = radius[static_cast<std::size_t>(best)];
  for (long j = 0; j < n; ++j) {
    if (j != p.center && distance(states.col(j), p.w, opt.norm) <= p.cluster_radius) p.subsequence.push_back(j);
  }
  if (static_cast<long>(p.subsequence.size()) > opt.members) {
    p.subsequence.erase(p.subsequence.begin(), p.subsequence.end() - opt.members);
  }
  double on_set = kInf;
  for (Eigen::Index k = 0; k < omega.points.cols(); ++k) on_set = std::min(on_set, distance(omega.points.col(k), v, opt.norm));
  p.inconclusive = p.cluster_radius > omega.cluster_eps || on_set > omega.cluster_eps;

  std::vector<double> grid(t_grid.begin(), t_grid.end());
  std::sort(grid.begin(), grid.end());
  const Matrix u = model.trajectory(v, grid);
  for (long k : p.subsequence) {
    const double s = s_seq[static_cast<std::size_t>(k)];
    for (std::size_t i = 0; i < grid.size(); ++i) {
      double arg = grid[i] - s;
      if (arg < 0.0 && !model.invertible()) arg += std::ceil(-arg / *opt.period) * *opt.period;
      const Vector g = model.step(p.w, arg);
      p.residual = std::max(p.residual, distance(g, u.col(static_cast<Eigen::Index>(i)), opt.norm));
    }
  }
  return p;
}

AsymptoticProbe asymptotic_ap_probe(const SemiflowModel& model, const Vector& v0, double horizon,
                                    const AsymptoticOptions& opt) {
  if (!(horizon > 0.0) || !(opt.window > 0.0) || opt.window > horizon || !(opt.tol > 0.0)) {
    throw Error(ErrorCode::kInvalidParameter, "asymptotic_ap_probe: need 0 < window <= horizon and tol > 0");
  }
  const Signal sig = model.observable(v0, horizon);
  const Interval trailing{0.5 * horizon, horizon};

  ScanOptions scan = opt.scan;
  scan.probe_origin = 0.0;
  const Interval need = scan_support(scan);
  if (need.width() > trailing.width()) {
    throw Error(ErrorCode::kOutOfDomain, "asymptotic_ap_probe: trailing window of length " +
                                             std::to_string(trailing.width()) + " is shorter than the " +
                                             std::to_string(need.width()) + " the scan needs");
  }
  scan.probe_origin = 0.5 * (trailing.lo + trailing.hi) - 0.5 * (need.lo + need.hi);
  const SpectrumEstimate est = estimate_spectrum(sig, scan);

  AsymptoticProbe p;
  p.w = TrigPolynomial(sig.dim(), {});
  if (est.any_detected()) {
    ReconstructOptions ro = opt.reconstruct;
    const double half = 0.5 * (trailing.width() - ro.validation_length);
    if (!(half > 0.0)) throw Error(ErrorCode::kInvalidParameter, "asymptotic_ap_probe: validation window too long");
    ro.bohr.t_max = half;
    ro.bohr.center = trailing.lo + half;
    p.w = reconstruct_trig_polynomial(sig, est.cluster_centers, ro).polynomial;
  }

  double bw = sig.bandwidth_hint({0.0, horizon});
  if (!std::isfinite(bw)) bw = 0.0;
  double wmax = 0.0;
  for (const auto& t : p.w.terms()) wmax = std::max(wmax, std::abs(t.freq));
  const double step = std::min(0.05, 2.0 * kPi / (20.0 * std::max({bw, wmax, 1.0})));
  for (double start = 0.0; start + opt.window <= horizon * (1.0 + 1e-12); start += opt.window) {
    double sup = 0.0;
    for (double t : uniform_grid(start, start + opt.window, step)) {
      sup = std::max(sup, banach_norm(Vector(sig.eval(t) - p.w.eval(t)), opt.reconstruct.bohr.norm));
    }
    p.window_starts.push_back(start);
    p.sup_errors.push_back(sup);
  }
  bool monotone = true;
  for (std::size_t k = 1; k < p.sup_errors.size(); ++k) {
    monotone = monotone && p.sup_errors[k] <= 1.1 * std::max(p.sup_errors[k - 1], opt.tol);
  }
  p.verdict = monotone && p.sup_errors.back() < opt.tol ? "consistent" : "inconsistent";
  return p;
}

}  // namespace beurling
