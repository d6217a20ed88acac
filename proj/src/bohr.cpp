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

#include "beurling/bohr.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "beurling/kernels.hpp"
#include "beurling/quadrature.hpp"

namespace beurling {
namespace {

constexpr int kPerOctave = 64;
constexpr int kOctaves = 4;
constexpr long kChunk = 1L << 16;
constexpr long kMaxStored = 1L << 23;

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

double taper(double x) {
  const double d = 1.0 - x * x;
  return d > 0.0 ? std::exp(1.0 - 1.0 / d) : 0.0;
}

void validate(const BohrOptions& o) {
  if (!(o.t_max > 0.0) || !std::isfinite(o.t_max) || !std::isfinite(o.center)) {
    throw Error(ErrorCode::kInvalidParameter, "bohr: t_max must be positive and finite");
  }
  if (!(o.tol > 0.0) || !(o.nodes_per_period >= 2.0) || !(o.time_step >= 0.0)) {
    throw Error(ErrorCode::kInvalidParameter, "bohr: tol must be positive and nodes_per_period >= 2");
  }
}

// Dense averaging lengths t_max 2^{-k/64}, ascending, down to t_max / 16.
std::vector<double> dense_lengths(double t_max) {
  std::vector<double> t;
  for (int k = kPerOctave * kOctaves; k >= 0; --k) t.push_back(t_max * std::exp2(-static_cast<double>(k) / kPerOctave));
  return t;
}

double time_step(const Signal& sig, double max_lambda, Interval window, const BohrOptions& o) {
  if (o.time_step > 0.0) return o.time_step;
  double bw = sig.bandwidth_hint(window);
  if (!std::isfinite(bw)) bw = 0.0;
  const double omega = max_lambda + bw;
  const double h = omega > 0.0 ? 2.0 * kPi / (o.nodes_per_period * omega) : kInf;
  return std::min(h, window.width() / 2048.0);
}

Vector exact_average(const TrigPolynomial& p, double lambda, double t, double c) {
  Vector acc = Vector::Zero(p.dim());
  for (const auto& term : p.terms()) {
    const double d = term.freq - lambda;
    acc += (std::polar(1.0, d * c) * sinc(d * t)) * term.vec;
  }
  return acc;
}

// Averages for every lambda at every dense length, as (lengths, values[lambda][length]).
struct DenseSweep {
  std::vector<double> lengths;
  std::vector<std::vector<Vector>> values;
  double sup_norm = 0.0;
};

DenseSweep sweep_closed_form(const TrigPolynomial& p, std::span<const double> lambdas, const BohrOptions& o) {
  DenseSweep s;
  s.lengths = dense_lengths(o.t_max);
  s.values.resize(lambdas.size());
  for (std::size_t m = 0; m < lambdas.size(); ++m) {
    const double lambda = lambdas[m];
    const TrigTerm* hit = nullptr;
    for (const auto& term : p.terms()) {
      if (term.freq == lambda) hit = &term;
    }
    for (double t : s.lengths) {
      // A term frequency hit exactly returns the limit itself.
      s.values[m].push_back(hit ? hit->vec : exact_average(p, lambda, t, o.center));
    }
  }
  s.sup_norm = p.coefficient_bound();
  return s;
}

DenseSweep sweep_quadrature(const Signal& sig, std::span<const double> lambdas, const BohrOptions& o) {
  double max_lambda = 0.0;
  for (double l : lambdas) max_lambda = std::max(max_lambda, std::abs(l));
  const double c = o.center;
  const double h0 = time_step(sig, max_lambda, {c - o.t_max, c + o.t_max}, o);
  const long m_max = static_cast<long>(std::ceil(o.t_max / h0));
  const double h = o.t_max / static_cast<double>(m_max);

  std::vector<long> ms;
  for (double t : dense_lengths(o.t_max)) {
    const long m = std::max(1L, std::lround(t / h));
    if (ms.empty() || m > ms.back()) ms.push_back(m);
  }
  const int dim = sig.dim();
  const auto n_l = lambdas.size();
  const std::vector<double> weights(static_cast<std::size_t>(kChunk), h);

  DenseSweep s;
  s.values.assign(n_l, {});
  Matrix prefix = Matrix::Zero(dim, static_cast<Eigen::Index>(n_l));
  Matrix partial;
  Vector end_lo(dim);
  Vector end_hi(dim);
  double sup = 0.0;
  auto accumulate = [&](long ja, long jb) {  // inclusive index range
    for (long start = ja; start <= jb; start += kChunk) {
      const long len = std::min(kChunk, jb - start + 1);
      const double t0 = c + static_cast<double>(start) * h;
      const Matrix u = kernels::sample_signal(sig, t0, h, len, o.exec);
      for (long j = 0; j < len; ++j) sup = std::max(sup, banach_norm(Eigen::Ref<const Vector>(u.col(j)), o.norm));
      const std::span<const double> w(weights.data(), static_cast<std::size_t>(len));
      if (o.exec == Execution::kParallel) {
        kernels::weighted_averages_parallel(w, t0, h, u, lambdas, partial);
      } else {
        kernels::weighted_averages_serial(w, t0, h, u, lambdas, partial);
      }
      prefix += partial;
    }
  };
  long prev = -1;
  for (long m : ms) {
    if (prev < 0) {
      accumulate(-m, m);
    } else {
      accumulate(prev + 1, m);
      accumulate(-m, -prev - 1);
    }
    prev = m;
    const double t = static_cast<double>(m) * h;
    sig.eval_into(c - t, end_lo);
    sig.eval_into(c + t, end_hi);
    s.lengths.push_back(t);
    for (std::size_t k = 0; k < n_l; ++k) {
      const double lambda = lambdas[k];
      const Vector corr = 0.5 * h * (std::polar(1.0, -lambda * (c - t)) * end_lo + std::polar(1.0, -lambda * (c + t)) * end_hi);
      s.values[k].push_back((prefix.col(static_cast<Eigen::Index>(k)) - corr) / (2.0 * t));
    }
  }
  s.sup_norm = sup;
  return s;
}

BohrCoefficient assemble(double lambda, const std::vector<double>& lengths, const std::vector<Vector>& values,
                         double sup_norm, const BohrOptions& o) {
  BohrCoefficient b;
  b.lambda = lambda;
  b.value = values.back();
  const std::size_t n = lengths.size();
  // Sweep levels t_max / 8, / 4, / 2, t_max sit kPerOctave apart from the end.
  std::vector<double> xs;
  std::vector<double> ys;
  bool vanished = false;
  for (int level = 3; level >= 0; --level) {
    const std::size_t idx = n - 1 - static_cast<std::size_t>(level * kPerOctave);
    b.sweep.push_back({lengths[idx], values[idx]});
    double env = 0.0;
    for (std::size_t i = idx >= kPerOctave ? idx - kPerOctave : 0; i <= idx; ++i) {
      env = std::max(env, lengths[i] * banach_norm(values[i], o.norm));
    }
    env /= lengths[idx];
    b.envelope.push_back(env);
    if (env > 0.0) {
      xs.push_back(std::log(lengths[idx]));
      ys.push_back(std::log(env));
    } else {
      vanished = true;
    }
  }
  if (vanished || xs.size() < 2) {
    b.decay_exponent = std::nan("");
  } else {
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i];
      my += ys[i];
    }
    mx /= xs.size();
    my /= ys.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    b.decay_exponent = sxy / sxx;
  }
  b.residual = banach_norm(Vector(b.sweep[3].value - b.sweep[2].value), o.norm);
  b.converged = b.residual < o.tol * std::max(1.0, sup_norm);
  return b;
}

// Samples u(c + j h), |j| <= half, kept in memory for repeated averaging.
class SampledWindow {
 public:
  SampledWindow(const Signal& sig, double c, double t, double h, Execution exec)
      : c_(c), h_(h), half_(static_cast<long>(std::ceil(t / h))) {
    if (2 * half_ + 1 > kMaxStored) {
      throw Error(ErrorCode::kInvalidParameter, "bohr: averaging window too long to store at this resolution");
    }
    h_ = t / static_cast<double>(half_);
    u_ = kernels::sample_signal(sig, c - t, h_, 2 * half_ + 1, exec);
  }

  double step() const { return h_; }

  // Trapezoid average over [c - T, c + T].
  Vector average(double lambda, double t) const {
    const long m = std::clamp(std::lround(t / h_), 1L, half_);
    std::vector<double> w(static_cast<std::size_t>(2 * m + 1), h_);
    w.front() = w.back() = 0.5 * h_;
    const double lambdas[1] = {lambda};
    Matrix out;
    kernels::weighted_averages_serial(w, c_ - m * h_, h_, u_.middleCols(half_ - m, 2 * m + 1), lambdas, out);
    return out.col(0) / (2.0 * m * h_);
  }

  // Bump-tapered averages over the full window, one column per lambda.
  Matrix tapered(std::span<const double> lambdas, Execution exec) const {
    const std::vector<double>& w = taper_weights();
    Matrix out;
    if (exec == Execution::kParallel) {
      kernels::weighted_averages_parallel(w, c_ - half_ * h_, h_, u_, lambdas, out);
    } else {
      kernels::weighted_averages_serial(w, c_ - half_ * h_, h_, u_, lambdas, out);
    }
    return out;
  }

  Vector tapered(double lambda) const {
    const double l[1] = {lambda};
    return tapered(l, Execution::kSerial).col(0);
  }

 private:
  const std::vector<double>& taper_weights() const {
    if (taper_.empty()) {
      taper_.resize(static_cast<std::size_t>(2 * half_ + 1));
      double total = 0.0;
      for (long j = -half_; j <= half_; ++j) {
        const double v = taper(static_cast<double>(j) / static_cast<double>(half_));
        taper_[static_cast<std::size_t>(j + half_)] = v;
        total += v;
      }
      for (double& v : taper_) v /= total;
    }
    return taper_;
  }

  double c_;
  double h_;
  long half_;
  Matrix u_;
  mutable std::vector<double> taper_;
};

using Score = std::function<double(double, double)>;

// Grid ladder with `score`, then a golden section on `final_score` at t_max.
double ladder_refine(const Score& score, const std::function<double(double)>& final_score, double lambda0,
                     double radius, double t_max) {
  double best = lambda0;
  double delta = radius;
  double spacing = radius;
  for (double frac : {1.0 / 64.0, 1.0 / 16.0, 1.0 / 4.0, 1.0}) {
    const double t = t_max * frac;
    spacing = delta / 8.0;
    double best_score = -1.0;
    double next = best;
    for (int k = 0; k <= 16; ++k) {
      const double l = best + (k - 8) * spacing;
      const double sc = score(l, t);
      if (sc > best_score) {
        best_score = sc;
        next = l;
      }
    }
    best = next;
    delta = 2.0 * spacing;
  }
  return quadrature::golden_section_max(final_score, best - spacing, best + spacing,
                                        1e-12 * std::max(1.0, std::abs(best)));
}

Interval validation_window(const Signal& sig, double c, double t, double length) {
  const Interval dom = sig.domain();
  const Interval after{c + t, c + t + length};
  if (dom.contains(after.lo) && dom.contains(after.hi)) return after;
  const Interval before{c - t - length, c - t};
  if (dom.contains(before.lo) && dom.contains(before.hi)) return before;
  throw Error(ErrorCode::kOutOfDomain, "reconstruct: no room for a held-out validation window");
}

}  // namespace

const char* to_string(ApVerdict verdict) {
  switch (verdict) {
    case ApVerdict::kConsistent: return "consistent-with-AP";
    case ApVerdict::kNotAp: return "not-AP";
    case ApVerdict::kInconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::vector<BohrCoefficient> bohr_coefficients(const Signal& sig, std::span<const double> lambdas,
                                               const BohrOptions& o) {
  validate(o);
  if (lambdas.empty()) return {};
  const auto trig = o.method == AverageMethod::kAuto ? trig_form(sig) : std::nullopt;
  const DenseSweep s = trig ? sweep_closed_form(*trig, lambdas, o) : sweep_quadrature(sig, lambdas, o);
  const double bound = sig.sup_bound();
  const double sup = std::isfinite(bound) ? bound : s.sup_norm;
  std::vector<BohrCoefficient> out;
  for (std::size_t k = 0; k < lambdas.size(); ++k) out.push_back(assemble(lambdas[k], s.lengths, s.values[k], sup, o));
  return out;
}

BohrCoefficient bohr_coefficient(const Signal& sig, double lambda, const BohrOptions& o) {
  const double l[1] = {lambda};
  return bohr_coefficients(sig, l, o).front();
}

std::vector<double> ap_spectrum(const Signal& sig, std::span<const double> candidates, const BohrOptions& o) {
  std::vector<double> out;
  const auto coefs = bohr_coefficients(sig, candidates, o);
  for (const auto& c : coefs) {
    if (banach_norm(c.value, o.norm) > o.tol) out.push_back(c.lambda);
  }
  return out;
}

double refine_frequency(const Signal& sig, double lambda0, double radius, const BohrOptions& o) {
  validate(o);
  if (!(radius > 0.0)) throw Error(ErrorCode::kInvalidParameter, "refine_frequency: radius must be positive");
  const auto trig = o.method == AverageMethod::kAuto ? trig_form(sig) : std::nullopt;
  if (trig) {
    const Score score = [&](double l, double t) { return exact_average(*trig, l, t, o.center).norm(); };
    return ladder_refine(score, [&](double l) { return score(l, o.t_max); }, lambda0, radius, o.t_max);
  }
  const double h = time_step(sig, std::abs(lambda0) + radius, {o.center - o.t_max, o.center + o.t_max}, o);
  const SampledWindow win(sig, o.center, o.t_max, h, o.exec);
  const Score score = [&](double l, double t) { return win.average(l, t).norm(); };
  return ladder_refine(score, [&](double l) { return score(l, o.t_max); }, lambda0, radius, o.t_max);
}

Reconstruction reconstruct_trig_polynomial(const Signal& sig, std::span<const double> detected,
                                           const ReconstructOptions& ro) {
  const BohrOptions& o = ro.bohr;
  validate(o);
  Reconstruction r;
  r.validation = validation_window(sig, o.center, o.t_max, ro.validation_length);
  double max_lambda = 0.0;
  for (double l : detected) max_lambda = std::max(max_lambda, std::abs(l) + ro.refine_radius);
  const double h = time_step(sig, max_lambda, {o.center - o.t_max, o.center + o.t_max}, o);
  const SampledWindow win(sig, o.center, o.t_max, h, o.exec);

  const Score score = [&](double l, double t) { return win.average(l, t).norm(); };
  const auto final_score = [&](double l) { return win.tapered(l).norm(); };
  std::vector<double> freqs;
  for (double l : detected) {
    const double f = ro.refine_radius > 0.0 ? ladder_refine(score, final_score, l, ro.refine_radius, o.t_max) : l;
    bool dup = false;
    for (double g : freqs) dup = dup || std::abs(f - g) < 1e-6;
    if (!dup) freqs.push_back(f);
  }
  std::sort(freqs.begin(), freqs.end());
  const Matrix coef = win.tapered(freqs, o.exec);
  std::vector<TrigTerm> terms;
  for (std::size_t k = 0; k < freqs.size(); ++k) {
    const Vector v = coef.col(static_cast<Eigen::Index>(k));
    r.candidates.push_back({freqs[k], v});
    if (banach_norm(v, o.norm) > o.tol) terms.push_back({freqs[k], v});
  }
  r.polynomial = TrigPolynomial(sig.dim(), std::move(terms));

  double bw = sig.bandwidth_hint(r.validation);
  if (!std::isfinite(bw)) bw = 0.0;
  const double vstep = std::min(0.05, 2.0 * kPi / (20.0 * std::max({bw, max_lambda, 1e-3})));
  const auto grid = uniform_grid(r.validation.lo, r.validation.hi, vstep);
  std::vector<double> errs(grid.size());
  const auto n = static_cast<long>(grid.size());
#pragma omp parallel for schedule(static) if (o.exec == Execution::kParallel)
  for (long i = 0; i < n; ++i) {
    const double t = grid[static_cast<std::size_t>(i)];
    errs[static_cast<std::size_t>(i)] = banach_norm(Vector(sig.eval(t) - r.polynomial.eval(t)), o.norm);
  }
  r.error = errs.empty() ? 0.0 : *std::max_element(errs.begin(), errs.end());
  r.ok = r.error < ro.reconstruction_tol;
  return r;
}

ApDiagnostic is_almost_periodic(const Signal& sig, const ApOptions& ao) {
  ApDiagnostic d;
  const BohrOptions& o = ao.reconstruct.bohr;
  d.spectrum = estimate_spectrum(sig, ao.scan);
  d.sup_norm = d.spectrum.sup_norm;
  const SpectrumEstimate& est = d.spectrum;
  if (!est.any_detected()) {
    d.separated = true;
    d.verdict = d.sup_norm == 0.0 ? ApVerdict::kConsistent : ApVerdict::kInconclusive;
    return d;
  }
  d.separated = true;
  for (const auto& iv : est.detected_intervals) {
    d.separated = d.separated && iv.width() < 2.0 * est.half_width + 1e-9;
  }

  if (d.separated) {
    d.reconstruction = reconstruct_trig_polynomial(sig, est.cluster_centers, ao.reconstruct);
    for (const auto& t : d.reconstruction->candidates) d.candidates.push_back(t.freq);
    d.max_reconstruction_error = d.reconstruction->error;
  } else {
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < est.peaks.size(); ++i) order.push_back(i);
    auto energy_at = [&](double f) {
      const auto it = std::min_element(est.freqs.begin(), est.freqs.end(),
                                       [&](double a, double b) { return std::abs(a - f) < std::abs(b - f); });
      return est.energies[static_cast<std::size_t>(it - est.freqs.begin())];
    };
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return energy_at(est.peaks[a]) > energy_at(est.peaks[b]); });
    for (std::size_t i = 0; i < order.size() && static_cast<int>(i) < ao.max_candidates; ++i) {
      d.candidates.push_back(est.peaks[order[i]]);
    }
    std::sort(d.candidates.begin(), d.candidates.end());
  }

  const auto coefs = bohr_coefficients(sig, d.candidates, o);
  double max_coef = 0.0;
  for (const auto& c : coefs) {
    d.coefficient_norms.push_back(banach_norm(c.value, o.norm));
    d.decay_exponents.push_back(c.decay_exponent);
    max_coef = std::max(max_coef, d.coefficient_norms.back());
  }
  // Averages all vanish while the signal itself stays large on the trailing
  // half of the averaging window.
  const auto tail = uniform_grid(o.center + 0.5 * o.t_max, o.center + o.t_max,
                                 std::min(0.05, o.t_max / 4096.0));
  const double tail_sup = sup_norm(sig, tail, o.norm, o.exec);
  const bool vanishing = max_coef < o.tol && tail_sup >= 0.5 * d.sup_norm && d.sup_norm > 10.0 * o.tol;

  if (d.reconstruction && d.reconstruction->ok) {
    d.verdict = ApVerdict::kConsistent;
  } else if (vanishing) {
    d.verdict = ApVerdict::kNotAp;
  } else {
    d.verdict = ApVerdict::kInconclusive;
  }
  return d;
}

}  // namespace beurling
