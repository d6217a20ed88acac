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

#include <doctest.h>

#include <random>

#include "beurling/bohr.hpp"
#include "test_util.hpp"

using namespace beurling;

namespace {

Vector v3() {
  Vector v(3);
  v << Complex(1.0, 0.0), Complex(0.0, -0.5), Complex(0.25, 0.25);
  return v;
}

Vector unit2() {
  Vector v(2);
  v << Complex(0.6, 0.0), Complex(0.0, 0.8);
  return v;
}

Signal exp_signal(const Vector& v, double freq = 1.0) {
  return Signal{TrigPolynomial(static_cast<int>(v.size()), {{freq, v}})};
}

TrigPolynomial three_term() {
  Vector a(2), b(2), c(2);
  a << 1.0, 0.0;
  b << 0.0, 1.0;
  c << Complex(0.5, 0.5), 0.5;
  return TrigPolynomial(2, {{0.5, a}, {2.0, b}, {-3.0, c}});
}

// Trapezoid average of exp(-i lambda t) u(t) over [-T, T] on n intervals,
// evaluated pointwise without the sampling kernels.
Vector direct_average(const Signal& sig, double lambda, double t, long n) {
  const double h = 2.0 * t / static_cast<double>(n);
  Vector acc = Vector::Zero(sig.dim());
  for (long j = 0; j <= n; ++j) {
    const double s = -t + static_cast<double>(j) * h;
    const double w = (j == 0 || j == n) ? 0.5 : 1.0;
    acc += w * std::polar(1.0, -lambda * s) * sig.eval(s);
  }
  return acc * h / (2.0 * t);
}

}  // namespace

TEST_CASE("coefficient examples on both paths") {
  const Vector v = v3();
  for (AverageMethod m : {AverageMethod::kAuto, AverageMethod::kQuadrature}) {
    BohrOptions o;
    o.method = m;
    const auto a1 = bohr_coefficient(exp_signal(v), 1.0, o);
    CHECK((a1.value - v).norm() < 1e-3);
    CHECK(a1.converged);
    REQUIRE(a1.sweep.size() == 4);
    CHECK(a1.sweep[0].t == doctest::Approx(250.0).epsilon(1e-3));
    CHECK(a1.sweep[3].t == doctest::Approx(2000.0).epsilon(1e-12));

    o.t_max = 1000.0;
    const auto off = bohr_coefficient(exp_signal(v), 1.5, o);
    CHECK(off.value.norm() <= 2.0 * v.norm() / (0.5 * 1000.0));
    CHECK(off.residual <= 2.0 * v.norm() / (0.5 * 500.0));

    o.t_max = 2000.0;
    const auto half = bohr_coefficient(cosine_signal(v), 1.0, o);
    CHECK((half.value - 0.5 * v).norm() < 1e-3);
  }
}

TEST_CASE("closed form returns exact limits on term frequencies") {
  const Vector v = v3();
  const auto a = bohr_coefficient(cosine_signal(v), -1.0, {});
  CHECK((a.value - 0.5 * v).norm() == 0.0);
  CHECK(a.residual == 0.0);
  for (const auto& p : a.sweep) CHECK((p.value - 0.5 * v).norm() == 0.0);
}

TEST_CASE("quadrature agrees with the exact finite-T average") {
  // (1/2T) int_{-T}^{T} exp(-i lambda t) u(t) dt for u a trigonometric polynomial.
  auto exact = [](const TrigPolynomial& p, double lambda, double t) {
    Vector acc = Vector::Zero(p.dim());
    for (const auto& term : p.terms()) {
      const double d = (term.freq - lambda) * t;
      acc += (d == 0.0 ? 1.0 : std::sin(d) / d) * term.vec;
    }
    return acc;
  };
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 4; ++rep) {
    const auto p = testing::random_trig(rng, 3, 4, 0.5, 4.0);
    const Signal s{p};
    const std::vector<double> lambdas{-2.3, p.terms()[0].freq, 0.7, 3.9};
    BohrOptions quad;
    quad.t_max = 300.0;
    quad.time_step = 0.02;
    quad.method = AverageMethod::kQuadrature;
    const auto b = bohr_coefficients(s, lambdas, quad);
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
      // Trapezoid endpoint error h^2/12 |f'(T) - f'(-T)| / (2T).
      double slope = 0.0;
      for (const auto& term : p.terms()) slope += std::abs(term.freq - lambdas[k]) * term.vec.norm();
      for (const auto& sp : b[k].sweep) {
        const double bound = quad.time_step * quad.time_step / 12.0 * 2.0 * slope / (2.0 * sp.t);
        CHECK((sp.value - exact(p, lambdas[k], sp.t)).norm() <= 1.01 * bound + 1e-13);
      }
    }
  }
}

TEST_CASE("quadrature matches an independent trapezoid sum") {
  const Signal c{Chirp(unit2())};
  BohrOptions o;
  o.t_max = 20.0;
  o.nodes_per_period = 2000.0;
  o.method = AverageMethod::kQuadrature;
  const auto a = bohr_coefficient(c, 0.75, o);
  const Vector ref = direct_average(c, 0.75, 20.0, 1 << 20);
  CHECK((a.value - ref).norm() < 1e-8);
}

TEST_CASE("finite-T error model for trigonometric polynomials") {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 10; ++rep) {
    const auto p = testing::random_trig(rng, 2, 5, 0.5, 5.0);
    std::vector<double> lambdas;
    for (const auto& t : p.terms()) lambdas.push_back(t.freq + 0.01);
    lambdas.push_back(0.123);
    BohrOptions o;
    o.t_max = 500.0;
    for (const auto& a : bohr_coefficients(Signal{p}, lambdas, o)) {
      Vector limit = Vector::Zero(2);
      double bound = 0.0;
      for (const auto& t : p.terms()) {
        if (t.freq == a.lambda) {
          limit = t.vec;
        } else {
          bound += t.vec.norm() / std::abs(t.freq - a.lambda);
        }
      }
      for (const auto& sp : a.sweep) CHECK((sp.value - limit).norm() <= bound / sp.t * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("trig coefficients on term frequencies converge for t_max >= 100 / gap") {
  std::mt19937_64 rng(8);
  for (int rep = 0; rep < 20; ++rep) {
    const auto p = testing::random_trig(rng, 3, 5, 0.5, 5.0);
    std::vector<double> lambdas;
    for (const auto& t : p.terms()) lambdas.push_back(t.freq);
    BohrOptions o;
    o.t_max = 200.0;
    for (const auto& a : bohr_coefficients(Signal{p}, lambdas, o)) CHECK(a.converged);
  }
}

TEST_CASE("off-spectrum residuals follow the error model") {
  const Vector v = v3();
  BohrOptions o;
  o.t_max = 200.0;
  const auto a = bohr_coefficient(exp_signal(v), 1.5, o);
  CHECK(a.residual <= v.norm() / (0.5 * 100.0) + v.norm() / (0.5 * 200.0));
  CHECK(a.converged == (a.residual < o.tol * v.norm()));
}

TEST_CASE("off-frequency decay exponent is -1") {
  const Vector v = v3();
  for (AverageMethod m : {AverageMethod::kAuto, AverageMethod::kQuadrature}) {
    BohrOptions o;
    o.method = m;
    for (double lambda : {1.5, 0.3, -2.0}) {
      const auto a = bohr_coefficient(exp_signal(v), lambda, o);
      CHECK(std::abs(a.decay_exponent + 1.0) < 0.15);
    }
    const auto on = bohr_coefficient(exp_signal(v), 1.0, o);
    CHECK(std::abs(on.decay_exponent) < 0.05);
  }
}

TEST_CASE("coefficient linearity") {
  std::mt19937_64 rng(3);
  const auto p = testing::random_trig(rng, 2, 3, 0.5, 3.0);
  const auto q = testing::random_trig(rng, 2, 3, 0.5, 3.0);
  std::vector<TrigTerm> both = p.terms();
  both.insert(both.end(), q.terms().begin(), q.terms().end());
  const TrigPolynomial sum(2, both);
  BohrOptions o;
  o.t_max = 400.0;
  o.time_step = 0.01;
  o.method = AverageMethod::kQuadrature;
  const std::vector<double> lambdas{-1.1, 0.4, 2.2};
  const auto a = bohr_coefficients(Signal{p}, lambdas, o);
  const auto b = bohr_coefficients(Signal{q}, lambdas, o);
  const auto c = bohr_coefficients(Signal{sum}, lambdas, o);
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    CHECK((c[k].value - a[k].value - b[k].value).norm() < 1e-12);
  }
}

TEST_CASE("serial and parallel quadrature agree bitwise") {
  BohrOptions o;
  o.t_max = 200.0;
  o.method = AverageMethod::kQuadrature;
  const std::vector<double> lambdas{0.0, 1.0, 2.5};
  const Signal c{Chirp(unit2())};
  const auto a = bohr_coefficients(c, lambdas, o);
  o.exec = Execution::kSerial;
  const auto b = bohr_coefficients(c, lambdas, o);
  for (std::size_t k = 0; k < lambdas.size(); ++k) CHECK(a[k].value == b[k].value);
}

TEST_CASE("ap_spectrum examples") {
  const Vector v = v3();
  const std::vector<double> five{-2.0, -1.0, 0.0, 1.0, 2.0};
  CHECK(ap_spectrum(cosine_signal(v), five) == std::vector<double>{-1.0, 1.0});
  const std::vector<double> three{-1.0, 0.0, 1.0};
  CHECK(ap_spectrum(constant_signal(v), three) == std::vector<double>{0.0});
  const std::vector<double> chirp_c{0.0, 1.0, 2.0};
  CHECK(ap_spectrum(Signal{Chirp(unit2())}, chirp_c).empty());
}

TEST_CASE("frequency refinement recovers exact frequencies") {
  const auto p = three_term();
  for (AverageMethod m : {AverageMethod::kAuto, AverageMethod::kQuadrature}) {
    BohrOptions o;
    o.method = m;
    CHECK(std::abs(refine_frequency(Signal{p}, 0.62, 0.25, o) - 0.5) < 1e-6);
    CHECK(std::abs(refine_frequency(Signal{p}, -2.9, 0.25, o) + 3.0) < 1e-6);
  }
}

TEST_CASE("reconstruction examples") {
  const Vector v = v3();
  ReconstructOptions ro;
  ro.bohr.t_max = 500.0;
  const std::vector<double> pm{-1.0, 1.0};
  const auto rc = reconstruct_trig_polynomial(cosine_signal(v), pm, ro);
  CHECK(rc.ok);
  CHECK(rc.error < 1e-3);
  REQUIRE(rc.polynomial.terms().size() == 2);
  for (const auto& t : rc.polynomial.terms()) {
    CHECK(std::abs(std::abs(t.freq) - 1.0) < 1e-9);
    CHECK((t.vec - 0.5 * v).norm() < 1e-6);
  }
  const std::vector<double> one{1.0};
  const auto re = reconstruct_trig_polynomial(exp_signal(v), one, ro);
  REQUIRE(re.polynomial.terms().size() == 1);
  CHECK((re.polynomial.terms()[0].vec - v).norm() < 1e-6);
  const std::vector<double> zero{0.0};
  const auto r0 = reconstruct_trig_polynomial(constant_signal(v), zero, ro);
  REQUIRE(r0.polynomial.terms().size() == 1);
  CHECK(r0.polynomial.terms()[0].freq == doctest::Approx(0.0).epsilon(1e-9));
  CHECK((r0.polynomial.terms()[0].vec - v).norm() < 1e-9);
}

TEST_CASE("reconstruction reports wrong candidates") {
  const auto p = three_term();
  ReconstructOptions ro;
  ro.bohr.t_max = 500.0;
  const std::vector<double> missing{0.5, 2.0};
  const auto r = reconstruct_trig_polynomial(Signal{p}, missing, ro);
  CHECK_FALSE(r.ok);
  CHECK(r.error > 0.5);
}

TEST_CASE("reconstruction round-trips from perturbed candidates") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> jitter(-0.2, 0.2);
  for (int rep = 0; rep < 5; ++rep) {
    const auto p = testing::random_trig(rng, 3, 4, 0.5, 5.0);
    std::vector<double> cands;
    for (const auto& t : p.terms()) cands.push_back(t.freq + jitter(rng));
    ReconstructOptions ro;
    ro.bohr.t_max = 500.0;
    const auto r = reconstruct_trig_polynomial(Signal{p}, cands, ro);
    CHECK(r.ok);
    CHECK(r.error < 1e-3);
  }
}

TEST_CASE("almost periodicity verdicts") {
  const Vector v = v3();
  const auto cos_d = is_almost_periodic(cosine_signal(v), {});
  CHECK(cos_d.verdict == ApVerdict::kConsistent);
  CHECK(cos_d.separated);
  CHECK(cos_d.max_reconstruction_error < 1e-3);
  const auto tri = is_almost_periodic(Signal{three_term()}, {});
  CHECK(tri.verdict == ApVerdict::kConsistent);
  REQUIRE(tri.candidates.size() == 3);
  CHECK(std::abs(tri.candidates[0] + 3.0) < 1e-6);

  const auto ch = is_almost_periodic(Signal{Chirp(unit2())}, {});
  CHECK(ch.verdict == ApVerdict::kNotAp);
  CHECK_FALSE(ch.separated);
  CHECK(ch.sup_norm >= 0.99);
  REQUIRE_FALSE(ch.coefficient_norms.empty());
  for (double n : ch.coefficient_norms) CHECK(n < 1e-3);

  const auto zero = is_almost_periodic(constant_signal(Vector::Zero(2)), {});
  CHECK(zero.verdict == ApVerdict::kConsistent);
  CHECK(std::string(to_string(ApVerdict::kNotAp)) == "not-AP");
}

TEST_CASE("ap spectrum of normal matrix orbits lies in the eigenvalues") {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 4; ++rep) {
    const int d = 2 + rep % 3;
    const auto freqs = testing::random_frequencies(rng, d, 0.5, 4.0);
    Eigen::MatrixXcd q = Eigen::MatrixXcd::Random(d, d).householderQr().householderQ();
    Eigen::VectorXcd eig(d);
    for (int i = 0; i < d; ++i) eig[i] = freqs[static_cast<std::size_t>(i)];
    const Matrix a = q * eig.asDiagonal() * q.adjoint();
    const Signal orbit{MatrixOrbit(a, testing::random_vector(rng, d))};
    const auto est = estimate_spectrum(orbit, {});
    std::vector<double> cands;
    for (double c : est.cluster_centers) cands.push_back(refine_frequency(orbit, c, est.half_width));
    const auto found = ap_spectrum(orbit, cands);
    CHECK(found.size() == static_cast<std::size_t>(d));
    for (double f : found) {
      double dist = kInf;
      for (double e : freqs) dist = std::min(dist, std::abs(e - f));
      CHECK(dist < 1e-3);
    }
  }
}

TEST_CASE("invalid options throw") {
  BohrOptions o;
  o.t_max = 0.0;
  CHECK_THROWS_AS(bohr_coefficient(constant_signal(v3()), 0.0, o), Error);
  CHECK_THROWS_AS(refine_frequency(constant_signal(v3()), 0.0, 0.0, {}), Error);
}
