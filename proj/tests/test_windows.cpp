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

#include "beurling/quadrature.hpp"
#include "beurling/windows.hpp"
#include "test_util.hpp"

using namespace beurling;

namespace {

double bump(double x, double eps) {
  return std::abs(x) < eps ? std::exp(1.0 - eps * eps / (eps * eps - x * x)) : 0.0;
}

// Direct Fourier inversion of the bump at a single point.
Complex phi_oracle(double s, double center, double eps) {
  const int n = 1 << 16;
  const double re = quadrature::simpson([&](double x) { return std::cos(s * x) * bump(x, eps); }, -eps, eps, n);
  return std::polar(1.0, s * center) * re / (2.0 * kPi);
}

Vector unit2() {
  Vector v(2);
  v << Complex(0.6, -0.2), Complex(0.1, 0.9);
  return v;
}

}  // namespace

TEST_CASE("bump window normalization and support") {
  const Window w = make_bump_window(0.7, 0.25);
  CHECK(w.hat(0.7) == 1.0);
  CHECK(w.hat(0.45) == 0.0);
  CHECK(w.hat(0.95) == 0.0);
  CHECK(w.hat(2.0) == 0.0);
  CHECK(w.hat_support().lo == doctest::Approx(0.45));
  CHECK(w.hat_support().hi == doctest::Approx(0.95));
  CHECK_THROWS_AS(make_bump_window(0.0, 0.0), Error);
  CHECK_THROWS_AS(make_bump_window(0.0, -1.0), Error);
}

TEST_CASE("Fourier inversion of the unit bump integrates to one") {
  const Window w = make_bump_window(0.0, 1.0);
  CHECK(std::abs(w.inversion_integral() - 1.0) < 1e-6);
  CHECK(w.truncation_radius() <= 200.0 + w.time_step());
}

TEST_CASE("synthesized samples match direct inversion") {
  const Window w = make_bump_window(0.4, 0.25);
  for (long j : {0L, 3L, -17L, 250L, -1200L}) {
    const double s = static_cast<double>(j) * w.time_step();
    CHECK(std::abs(w.phi(j) - phi_oracle(s, 0.4, 0.25)) < 1e-12);
  }
}

TEST_CASE("truncation tail is negligible against the window mass") {
  for (double eps : {0.25, 0.5, 1.0}) {
    const Window w = make_bump_window(0.0, eps);
    CHECK(w.tail_estimate() < 1e-6 * w.l1_norm());
    CHECK(w.truncation_radius() <= 200.0 / eps + w.time_step());
  }
}

TEST_CASE("modulation shifts the transform") {
  const Window base = make_bump_window(0.0, 0.25, {.max_frequency = 3.0});
  const Window direct = make_bump_window(2.0, 0.25, {.max_frequency = 3.0});
  const Window shifted = base.modulated(2.0);
  REQUIRE(direct.half_count() == shifted.half_count());
  double worst = 0.0;
  for (long j = -shifted.half_count(); j <= shifted.half_count(); ++j) {
    worst = std::max(worst, std::abs(shifted.phi(j) - direct.phi(j)));
  }
  CHECK(worst < 1e-13);
  CHECK(shifted.hat(2.0) == 1.0);
  CHECK(shifted.hat(0.0) == 0.0);
}

TEST_CASE("plateau window on two points") {
  const Window w = make_plateau_window({{1.0, 1.0}, {-1.0, -1.0}}, 0.2);
  CHECK(w.hat(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(w.hat(-1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(w.hat(0.0) == 0.0);
  CHECK(w.hat(1.2) == 0.0);
  CHECK(w.hat(-1.25) == 0.0);
  const double h = w.hat(1.05);
  CHECK(h > 0.0);
  CHECK(h < 1.0);
  // Mollification integral: the dilated indicator [0.9, 1.1] against a unit
  // bump of half-width 0.1, over y in [1.05 - 1.1, 0.1].
  const int n = 200000;
  const double mass = quadrature::simpson([](double y) { return bump(y, 0.1); }, -0.1, 0.1, n);
  const double part = quadrature::simpson([](double y) { return bump(y, 0.1); }, -0.05, 0.1, n);
  CHECK(h == doctest::Approx(part / mass).epsilon(1e-10));
  CHECK_THROWS_AS(make_plateau_window({}, 0.2), Error);
  CHECK_THROWS_AS(make_plateau_window({{0.0, 1.0}}, 0.0), Error);
}

TEST_CASE("constant signal convolves to hat(0) v") {
  const Vector v = unit2();
  const Signal c = constant_signal(v);
  for (const Window& w : {make_bump_window(0.1, 0.3), make_bump_window(0.0, 1.0),
                          make_plateau_window({{-0.5, 0.2}}, 0.3)}) {
    for (double s : {0.0, 3.3, -41.0}) {
      CHECK((convolve_quadrature(w, c, s) - w.hat(0.0) * v).norm() < 1e-6);
      CHECK((convolve(w, c, s) - w.hat(0.0) * v).norm() < 1e-12);
    }
  }
}

TEST_CASE("cos t v convolves to the two-term formula") {
  const Vector v = unit2();
  const Signal c = cosine_signal(v);
  for (const Window& w : {make_bump_window(1.1, 0.3), make_bump_window(-0.8, 0.5),
                          make_bump_window(0.0, 1.2)}) {
    for (double s : {0.0, 0.9, 7.0, -12.5}) {
      const Vector expected =
          0.5 * (std::polar(1.0, s) * w.hat(1.0) + std::polar(1.0, -s) * w.hat(-1.0)) * v;
      CHECK((convolve_quadrature(w, c, s) - expected).norm() < 1e-6);
    }
  }
}

TEST_CASE("plateau window reproduces cos t v") {
  const Vector v = unit2();
  const Signal c = cosine_signal(v);
  const Window w = make_plateau_window({{1.0, 1.0}, {-1.0, -1.0}}, 0.2);
  for (double s : {0.0, 0.5, 2.0, 30.0}) {
    CHECK((convolve_quadrature(w, c, s) - std::cos(s) * v).norm() < 1e-5);
  }
}

TEST_CASE("annihilation and reproduction on random polynomials") {
  std::mt19937_64 rng(21);
  const Window bump_w = make_bump_window(0.0, 0.75, {.max_frequency = 6.0});
  const Window plat = make_plateau_window({{-2.0, 2.0}}, 0.5, {.max_frequency = 6.0});
  for (int trial = 0; trial < 4; ++trial) {
    std::vector<TrigTerm> outside;
    std::vector<TrigTerm> inside;
    for (double f : testing::random_frequencies(rng, 4, 0.5, 5.0)) {
      if (std::abs(f) >= 0.8) outside.push_back({f, testing::random_vector(rng, 3)});
      if (std::abs(f) <= 2.0) inside.push_back({f, testing::random_vector(rng, 3)});
    }
    const Signal u_out{TrigPolynomial(3, outside)};
    const Signal u_in{TrigPolynomial(3, inside)};
    const double n_out = u_out.sup_bound();
    const double n_in = u_in.sup_bound();
    for (double s : {0.0, 1.7, -9.0}) {
      CHECK(convolve_quadrature(bump_w, u_out, s).norm() <= 1e-6 * std::max(n_out, 1e-300) + 1e-300);
      CHECK((convolve_quadrature(plat, u_in, s) - u_in.eval(s)).norm() <= 1e-5 * n_in + 1e-300);
    }
  }
}

TEST_CASE("single exponential convolves to hat(xi) e^{i xi s} v") {
  const Vector v = unit2();
  const Signal e{TrigPolynomial(2, {{1.3, v}})};
  const Window w = make_bump_window(1.2, 0.25);
  for (double s : {0.0, 5.0, -3.0}) {
    const Vector expected = w.hat(1.3) * std::polar(1.0, 1.3 * s) * v;
    CHECK((convolve_quadrature(w, e, s) - expected).norm() < 1e-6);
    CHECK((convolve(w, e, s) - expected).norm() < 1e-14);
  }
  const TrigPolynomial f = filter(w, *e.trig());
  REQUIRE(f.terms().size() == 1);
  CHECK(f.terms()[0].vec.norm() == doctest::Approx(w.hat(1.3) * v.norm()));
}
