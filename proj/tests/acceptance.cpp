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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "beurling/bohr.hpp"
#include "beurling/calculus.hpp"
#include "beurling/cli.hpp"
#include "beurling/delay.hpp"
#include "beurling/semiflow.hpp"
#include "beurling/spectrum.hpp"
#include "beurling/windows.hpp"
#include "test_util.hpp"

using namespace beurling;
namespace fs = std::filesystem;

namespace {

const double kTau = kPi / 2.0;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

Vector scalar(Complex x) { return Vector::Constant(1, x); }

double min_distance(double x, const std::vector<double>& set) {
  double d = kInf;
  for (double s : set) d = std::min(d, std::abs(x - s));
  return d;
}

std::vector<double> detected_points(const SpectrumEstimate& e) {
  std::vector<double> out;
  for (std::size_t m = 0; m < e.freqs.size(); ++m) {
    if (e.detected[m]) out.push_back(e.freqs[m]);
  }
  return out;
}

std::vector<double> frequencies(const TrigPolynomial& p) {
  std::vector<double> f;
  for (const auto& t : p.terms()) f.push_back(t.freq);
  return f;
}

double sampled_sup(const Signal& s, double lo, double hi, double step) {
  return sup_norm(s, uniform_grid(lo, hi, step), NormKind::kEuclidean);
}

// Every truth has a cluster center within eps, every center and every
// detected grid point lies within eps of a truth.
bool resolves(const SpectrumEstimate& e, const std::vector<double>& truth, double& worst_center) {
  if (e.cluster_centers.size() != truth.size()) return false;
  worst_center = 0.0;
  for (double x : truth) worst_center = std::max(worst_center, min_distance(x, e.cluster_centers));
  for (double c : e.cluster_centers) worst_center = std::max(worst_center, min_distance(c, truth));
  for (double f : detected_points(e)) {
    if (!(min_distance(f, truth) < e.half_width)) return false;
  }
  return worst_center < e.half_width;
}

// ---------------------------------------------------------------------------

void criterion1(Outcome& o) {
  Vector v(3);
  v << Complex(1.0, 0.0), Complex(0.0, -0.5), Complex(0.25, 0.25);
  Vector a(2), b(2), c(2);
  a << 1.0, 0.0;
  b << 0.0, 1.0;
  c << Complex(0.5, 0.5), 0.5;
  const std::vector<std::pair<Signal, std::vector<double>>> cases = {
      {constant_signal(v), {0.0}},
      {cosine_signal(v), {-1.0, 1.0}},
      {Signal{TrigPolynomial(2, {{0.5, a}, {2.0, b}, {-3.0, c}})}, {-3.0, 0.5, 2.0}},
  };
  double worst = 0.0;
  for (ScanMethod m : {ScanMethod::kAuto, ScanMethod::kQuadrature}) {
    ScanOptions so;
    so.method = m;
    for (const auto& [sig, truth] : cases) {
      const auto est = estimate_spectrum(sig, so);
      double w = 0.0;
      o.require(resolves(est, truth, w), std::string("spectrum of ") + to_string(sig.kind()));
      worst = std::max(worst, w);
    }
  }
  o.detail << "constant, cos, 3-term resolved on [-5,5] at eps 0.25, eta 1e-5 (closed form and quadrature); "
           << "worst center offset " << worst;
}

void criterion2(Outcome& o) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> dim(1, 4), terms(1, 5), shift(-5, 5);
  std::uniform_real_distribution<double> center(-3.0, 3.0);
  ScanOptions so;
  ScanOptions fine;
  fine.grid_step = 0.1;
  fine.half_width = 0.1;
  const double step = so.grid_step + 1e-9;

  const Window bump0 = make_bump_window(0.0, 0.2, {.max_frequency = 9.0});
  const Window filter0 = make_bump_window(0.0, 1.5);
  const Window plateau = make_plateau_window({{-4.0, 4.0}}, 0.5, {.max_frequency = 5.0});
  const std::vector<double> probes = {0.0, 1.7, -9.0, 23.3};
  int failures[5] = {0, 0, 0, 0, 0};
  double worst_annihilation = 0.0, worst_reproduction = 0.0;

  for (int trial = 0; trial < 50; ++trial) {
    const int d = dim(rng);
    const TrigPolynomial u = testing::random_trig(rng, d, terms(rng), 0.5, 4.0);
    const TrigPolynomial w = testing::random_trig(rng, d, terms(rng), 0.5, 4.0);
    const auto du = detected_points(estimate_spectrum(Signal{u}, so));
    const auto dw = detected_points(estimate_spectrum(Signal{w}, so));

    // union bound
    std::vector<double> both = du;
    both.insert(both.end(), dw.begin(), dw.end());
    for (double f : detected_points(estimate_spectrum(Signal{u + w}, so))) {
      if (min_distance(f, both) > step) {
        ++failures[0];
        break;
      }
    }

    // modulation
    const double xi0 = 0.1 * shift(rng);
    const auto dm = detected_points(estimate_spectrum(Signal{u.modulated(xi0)}, so));
    bool mod_ok = true;
    for (double f : dm) mod_ok = mod_ok && min_distance(f - xi0, du) <= step;
    for (double g : du) mod_ok = mod_ok && min_distance(g + xi0, dm) <= step;
    if (!mod_ok) ++failures[1];

    // filtering, at eps equal to the grid step
    const Window phi = filter0.modulated(std::round(center(rng) * 8.0) / 8.0);
    const TrigPolynomial fu = filter(phi, u);
    if (!fu.empty()) {
      const auto du_fine = detected_points(estimate_spectrum(Signal{u}, fine));
      const Interval supp = phi.hat_support();
      for (double f : detected_points(estimate_spectrum(Signal{fu}, fine))) {
        const bool in_u = min_distance(f, du_fine) <= step;
        const bool in_supp = f >= supp.lo - step && f <= supp.hi + step;
        if (!in_u || !in_supp) {
          ++failures[2];
          break;
        }
      }
    }

    // annihilation: a bump centred between two frequencies (or beyond the ends)
    std::vector<double> fs = frequencies(u);
    std::vector<double> gaps = {fs.front() - 0.25, fs.back() + 0.25};
    for (std::size_t k = 1; k < fs.size(); ++k) gaps.push_back(0.5 * (fs[k - 1] + fs[k]));
    const double c0 = gaps[static_cast<std::size_t>(trial) % gaps.size()];
    const Window annihilator = bump0.modulated(c0);
    const Signal su{u};
    const double sup = sampled_sup(su, -50.0, 50.0, 0.01);
    for (double s : probes) {
      const double r = convolve_quadrature(annihilator, su, s).norm() / sup;
      worst_annihilation = std::max(worst_annihilation, r);
      if (!(r <= 1e-6)) {
        ++failures[3];
        break;
      }
    }

    // reproduction: every frequency lies in the plateau [-4, 4]
    for (double s : probes) {
      const double r = (convolve_quadrature(plateau, su, s) - su.eval(s)).norm() / sup;
      worst_reproduction = std::max(worst_reproduction, r);
      if (!(r <= 1e-5)) {
        ++failures[4];
        break;
      }
    }
  }
  const char* names[5] = {"union", "modulation", "filtering", "annihilation", "reproduction"};
  for (int k = 0; k < 5; ++k) o.require(failures[k] == 0, std::string(names[k]) + " failed on " + std::to_string(failures[k]) + " of 50");
  o.detail << "50 random polynomials: union, modulation, filtering, annihilation (max " << worst_annihilation
           << " <= 1e-6), reproduction (max " << worst_reproduction << " <= 1e-5)";
}

void criterion3(Outcome& o) {
  const auto grid = uniform_grid(-20.0, 20.0, 0.01);
  const TrigPolynomial p(2, {{0.5, Vector::Unit(2, 0)}, {2.0, Vector::Unit(2, 1)}, {-3.0, Vector::Unit(2, 0)}});
  const auto seq = derivative_radius(Signal{p}, 32, grid);
  const double r32 = seq.roots.back();
  o.require(seq.n_values.back() == 32, "sequence reaches n = 32");
  o.require(std::abs(r32 - 3.0) < 0.02 * 3.0 && std::abs(seq.limit - 3.0) < 0.02 * 3.0, "3-term radius within 2%");
  Vector v(2);
  v << Complex(0.8, 0.1), Complex(-0.3, 0.6);
  const auto c = derivative_radius(cosine_signal(v), 16, grid);
  o.require(std::abs(c.limit - 1.0) < 1e-3, "cos radius within 1e-3");
  const auto fd = finite_difference_norms(Signal{Chirp(v)}, 6, uniform_grid(0.0, 10.0, 1e-3));
  bool increasing = fd.size() == 6;
  for (std::size_t k = 1; k < fd.size(); ++k) increasing = increasing && fd[k] > fd[k - 1];
  o.require(increasing, "chirp finite-difference norms increase over n = 1..6");
  o.detail << "3-term root at n=32 " << r32 << ", limit " << seq.limit << "; cos limit " << c.limit
           << "; chirp FD norms " << fd.front() << " .. " << fd.back() << " increasing";
}

void criterion4(Outcome& o) {
  std::mt19937_64 rng(404);
  std::uniform_int_distribution<int> dim(1, 4), terms(1, 5);
  std::uniform_real_distribution<double> re(0.5, 2.0), im(-4.0, 4.0);
  const auto grid = uniform_grid(-20.0, 20.0, 0.01);
  const std::vector<double> probes = {0.0, 0.5, 3.0};
  double worst_rel = 0.0, worst_pos = 0.0, worst_neg = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const TrigPolynomial p = testing::random_trig(rng, dim(rng), terms(rng), 0.5, 4.0);
    const Complex lambda((trial % 2 == 0 ? 1.0 : -1.0) * re(rng), im(rng));
    double expected = 0.0;
    for (const auto& t : p.terms()) expected = std::max(expected, 1.0 / std::abs(lambda - Complex(0.0, t.freq)));
    const Signal s{p};
    const auto seq = resolvent_radius(s, lambda, 48, grid);
    worst_rel = std::max(worst_rel, std::abs(seq.limit - expected) / expected);
    const double res = verify_resolvent_identity(s, lambda, probes);
    (lambda.real() > 0.0 ? worst_pos : worst_neg) = std::max(lambda.real() > 0.0 ? worst_pos : worst_neg, res);
  }
  o.require(worst_rel < 0.01, "resolvent radius within 1%");
  o.require(worst_pos < 1e-5 && worst_neg < 1e-5, "resolvent identity residual < 1e-5");
  o.detail << "20 pairs: worst relative radius error " << worst_rel << "; identity residual Re>0 " << worst_pos
           << ", Re<0 " << worst_neg;
}

void criterion5(Outcome& o) {
  Vector v(3);
  v << Complex(1.0, 0.0), Complex(0.0, -0.5), Complex(0.25, 0.25);
  const Signal e{TrigPolynomial(3, {{1.0, v}})};
  BohrOptions q;
  q.method = AverageMethod::kQuadrature;
  const double err_q = (bohr_coefficient(e, 1.0, q).value - v).norm();
  const double err_a = (bohr_coefficient(e, 1.0).value - v).norm();
  o.require(err_q < 1e-3 && err_a < 1e-3, "a_1 within 1e-3");
  double lo = 0.0, hi = -2.0;
  for (double lambda : {0.5, 1.7, -2.3}) {
    const double s = bohr_coefficient(e, lambda, q).decay_exponent;
    lo = std::min(lo, s);
    hi = std::max(hi, s);
    o.require(std::abs(s + 1.0) <= 0.15, "off-frequency slope -1 +- 0.15");
  }
  Vector unit = Vector::Zero(2);
  unit[0] = 1.0;
  const auto d = is_almost_periodic(Signal{Chirp(unit)});
  double max_coeff = 0.0;
  for (double c : d.coefficient_norms) max_coeff = std::max(max_coeff, c);
  o.require(d.verdict == ApVerdict::kNotAp, "chirp verdict not-AP");
  o.require(max_coeff < 1e-3, "chirp candidate coefficients < 1e-3");
  o.require(d.sup_norm >= 0.99, "chirp sup norm >= 0.99");
  o.detail << "|a_1 - v| quadrature " << err_q << ", closed form " << err_a << "; off-frequency slopes in [" << lo
           << ", " << hi << "]; chirp " << to_string(d.verdict) << " with " << d.coefficient_norms.size()
           << " candidates, max coefficient " << max_coeff << ", sup " << d.sup_norm;
}

void criterion6(Outcome& o) {
  std::mt19937_64 rng(606);
  std::uniform_int_distribution<int> dim(1, 4), terms(1, 5);
  double worst = 0.0;
  int failed = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const TrigPolynomial p = testing::random_trig(rng, dim(rng), terms(rng), 0.5, 4.0);
    const Signal s{p};
    const auto est = estimate_spectrum(s);
    const Reconstruction rec = reconstruct_trig_polynomial(s, est.peaks);
    double err = 0.0;
    for (double t : uniform_grid(rec.validation.lo, rec.validation.hi, 0.01)) {
      err = std::max(err, (rec.polynomial.eval(t) - p.eval(t)).norm());
    }
    worst = std::max(worst, err);
    if (!(err < 1e-3) || !rec.ok || rec.polynomial.terms().size() != p.terms().size()) ++failed;
  }
  o.require(failed == 0, std::to_string(failed) + " of 20 reconstructions");
  o.detail << "20 random polynomials reconstructed from detected peaks; worst held-out sup error " << worst;
}

void criterion7(Outcome& o) {
  const auto sys = DelaySystem::scalar(kTau);
  auto history = [](double h) {
    return HistorySegment::sample([](double t) { return scalar(std::cos(t)); }, 0.0, kTau, h,
                                  [](double t) { return scalar(-std::sin(t)); });
  };
  auto sup_err = [](const Signal& u, double h) {
    double m = 0.0;
    const long n = std::lround(20.0 / (0.5 * h));
    for (long j = 0; j <= n; ++j) {
      const double t = 20.0 * static_cast<double>(j) / static_cast<double>(n);
      m = std::max(m, std::abs(u.eval(t)[0] - std::cos(t)));
    }
    return m;
  };
  const double h = dividing_step(kTau, 1e-3);
  const double err = sup_err(Signal{solve_delay(sys, history(h), 20.0, h)}, h);
  o.require(err < 1e-6, "cos tracking < 1e-6");
  std::vector<double> errs;
  for (int k = 0; k < 3; ++k) {
    const double hk = kTau / (157.0 * std::exp2(k));
    errs.push_back(sup_err(Signal{solve_delay(sys, history(hk), 20.0, hk)}, hk));
  }
  const double r1 = errs[0] / errs[1], r2 = errs[1] / errs[2];
  o.require(r1 >= 8.0 && r2 >= 8.0, "halving ratios >= 8");

  const auto roots = characteristic_roots(kTau);
  bool roots_ok = roots.size() == 2;
  for (double x : roots) roots_ok = roots_ok && std::abs(std::abs(x) - 1.0) < 1e-9;
  for (double x : roots) roots_ok = roots_ok && std::abs(Complex(0.0, x) + std::polar(1.0, -x * kTau)) < 1e-9;
  o.require(roots_ok, "roots(pi/2) = {-1, 1}");
  for (double tau : {0.5, 1.0, 3.0}) {
    // |i x + e^{-i x tau}|^2 = x^2 + 1 - 2 x sin(x tau) > 0 away from |x| = 1, sin(tau) = 1.
    o.require(characteristic_roots(tau).empty(), "no roots for tau = " + std::to_string(tau));
  }

  const double hi = kTau / 157.0;
  const auto long_sol = solve_delay(sys, history(hi), 2000.0, hi);
  const auto rep = verify_spectral_inclusion(sys, long_sol, roots);
  bool centers_ok = !rep.spectrum.cluster_centers.empty();
  for (double c : rep.spectrum.cluster_centers) centers_ok = centers_ok && min_distance(c, {-1.0, 1.0}) < rep.spectrum.half_width;
  o.require(rep.holds && centers_ok, "detected spectrum within {+-1}");

  const auto mid = solve_delay(sys, history(h), 100.0, h);
  const auto seq = derivative_radius(Signal{mid}, 32, uniform_grid(60.0, 100.0, 0.01));
  o.require(std::abs(seq.roots.back() - 1.0) < 0.02, "derivative radius within 2%");
  o.detail << "sup error " << err << " at step tau/1571; halving ratios " << r1 << ", " << r2 << "; roots {"
           << (roots.size() > 0 ? roots[0] : NAN) << ", " << (roots.size() > 1 ? roots[1] : NAN)
           << "}; tau 0.5, 1, 3 give none; inclusion " << (rep.holds ? "holds" : "violated") << " with "
           << rep.spectrum.cluster_centers.size() << " clusters; derivative radius " << seq.roots.back();
}

void criterion8(Outcome& o) {
  std::mt19937_64 rng(808);
  std::uniform_int_distribution<int> dim(1, 4);
  ScanOptions fine;
  fine.grid_step = 0.1;
  fine.half_width = 0.1;
  double worst_dist = 0.0, worst_excess = -kInf, worst_root = 0.0;
  int empty = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const int d = dim(rng);
    Matrix g(d, d);
    for (int r = 0; r < d; ++r) g.row(r) = testing::random_vector(rng, d).transpose();
    const Matrix q = Eigen::HouseholderQR<Matrix>(g).householderQ();
    const auto mu = testing::random_frequencies(rng, d, 0.5, 3.0);
    Vector diag(d);
    for (int k = 0; k < d; ++k) diag[k] = mu[static_cast<std::size_t>(k)];
    const Matrix a = q * diag.asDiagonal() * q.adjoint();
    const Signal orbit{MatrixOrbit(a, testing::random_vector(rng, d))};

    const Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    std::vector<double> eig(es.eigenvalues().data(), es.eigenvalues().data() + d);
    double rho = 0.0;
    for (double x : eig) rho = std::max(rho, std::abs(x));

    const auto est = estimate_spectrum(orbit);
    std::vector<double> cands;
    for (double c : est.peaks) cands.push_back(refine_frequency(orbit, c, est.half_width));
    const auto ap = ap_spectrum(orbit, cands);
    if (ap.empty()) ++empty;
    for (double x : ap) worst_dist = std::max(worst_dist, min_distance(x, eig));

    worst_excess = std::max(worst_excess, spectral_radius(estimate_spectrum(orbit, fine)) - rho);

    const auto roots = characteristic_roots_general(a, 0.0, rho);
    if (roots.size() != eig.size()) {
      worst_root = kInf;
    } else {
      for (std::size_t k = 0; k < eig.size(); ++k) worst_root = std::max(worst_root, std::abs(roots[k] - eig[k]));
    }
  }
  o.require(empty == 0, "ap spectrum nonempty");
  o.require(worst_dist < 1e-3, "ap spectrum within 1e-3 of eigenvalues");
  o.require(worst_excess <= 0.1 + 1e-9, "spectral radius <= rho(A) + grid step");
  o.require(worst_root <= 1e-12, "tau = 0 roots are the eigenvalues");
  o.detail << "10 normal A: max distance to eigenvalues " << worst_dist << "; max radius excess " << worst_excess
           << " (eps = step = 0.1); tau = 0 root deviation " << worst_root;
}

void criterion9(Outcome& o) {
  const auto dm = SemiflowModel::delay(DelaySystem::scalar(kTau), kTau / 157.0);
  const Vector x = dm.delay_state([](double t) { return scalar(std::cos(t)); },
                                  [](double t) { return scalar(-std::sin(t)); });
  const OmegaLimitSet om = omega_limit(compute_orbit(dm, x, 100.0, 0.05));
  double circle = 0.0;
  for (Eigen::Index k = 0; k < om.points.cols(); ++k) {
    const Vector p = dm.projection(om.points.col(k));
    circle = std::max(circle, std::abs(std::norm(p[0]) + std::norm(p[1]) - 1.0));
  }
  o.require(circle < 1e-6, "omega points on the solution curve");
  const auto conn = check_connected(om);
  o.require(conn.connected, "eps-chain connected");
  double worst_inv = 0.0;
  for (double t : {0.5, 1.0, 2.0}) {
    const auto inv = check_invariance(dm, om, t);
    worst_inv = std::max(worst_inv, inv.residual / om.cluster_eps);
    o.require(inv.residual <= 2.0 * om.cluster_eps, "invariance at t = " + std::to_string(t));
  }
  std::vector<double> s_seq;
  for (int k = 1; k <= 5000; ++k) s_seq.push_back(k);
  AutomorphyOptions ao;
  ao.period = estimate_period(dm, x, 10.0, 0.05, 0.1);
  const auto pr = almost_automorphy_probe(dm, om, x, s_seq, uniform_grid(0.0, 10.0, 0.1), ao);
  o.require(pr.residual < 1e-2 && !pr.inconclusive, "automorphy residual < 1e-2");

  const Vector y = dm.delay_state([](double t) { return scalar(std::cos(t) + 0.3 + 0.2 * t); },
                                  [](double t) { return scalar(-std::sin(t) + 0.2); });
  const auto as = asymptotic_ap_probe(dm, y, 2000.0);
  o.require(as.verdict == "consistent" && as.sup_errors.back() < 1e-3, "asymptotic decay below 1e-3");

  Vector z(2);
  z << 1.0, 0.5;
  const auto sp = omega_limit(compute_orbit(SemiflowModel::spiral(), z, 400.0, 0.05));
  o.require(sp.points.cols() == 1, "contraction omega is a singleton");
  o.detail << om.points.cols() << " representatives, eps " << om.cluster_eps << ", chain gap " << conn.max_gap << " <= "
           << conn.chain_eps << "; invariance residual <= " << worst_inv << " eps; automorphy residual "
           << pr.residual << "; asymptotic errors " << as.sup_errors.front() << " -> " << as.sup_errors.back()
           << "; contraction omega size " << sp.points.cols();
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

void criterion10(Outcome& o) {
  std::size_t compared = 0;
  for (const auto& sub : cli::subcommands()) {
    std::vector<fs::path> dirs;
    for (const char* tag : {"a", "b"}) {
      const fs::path dir = fs::path("acceptance_runs") / (sub + "_" + tag);
      fs::remove_all(dir);
      std::ostringstream out, err;
      const int code = cli::run({sub, "--output-dir", dir.string()}, out, err);
      o.require(code == 0, sub + " exit " + std::to_string(code) + " " + err.str());
      dirs.push_back(dir);
    }
    for (const auto& entry : fs::directory_iterator(dirs[0])) {
      const fs::path other = dirs[1] / entry.path().filename();
      o.require(fs::exists(other) && slurp(entry.path()) == slurp(other), sub + "/" + entry.path().filename().string());
      ++compared;
    }
  }
  o.detail << cli::subcommands().size() << " subcommands run twice with default configs; " << compared
           << " files compared byte for byte";
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria = {
      {"spectrum examples", criterion1},      {"spectrum calculus", criterion2},
      {"derivative radius", criterion3},      {"resolvent radius", criterion4},
      {"Bohr analysis", criterion5},          {"reconstruction", criterion6},
      {"delay equation", criterion7},         {"matrix cases", criterion8},
      {"omega-limit", criterion9},            {"determinism", criterion10},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[k].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("criterion %zu %s: %s (%.1f s) %s\n", k + 1, criteria[k].first, o.pass ? "PASS" : "FAIL", secs,
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%zu of %zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
