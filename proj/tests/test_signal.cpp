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

#include "beurling/signal.hpp"
#include "test_util.hpp"

using namespace beurling;

namespace {

Vector v2() {
  Vector v(2);
  v << Complex(1.0, 0.5), Complex(-0.25, 2.0);
  return v;
}

}  // namespace

TEST_CASE("cosine polynomial evaluates to cos t v") {
  const Signal s = cosine_signal(v2());
  CHECK((s.eval(0.0) - v2()).norm() < 1e-15);
  CHECK(s.eval(kPi / 2).norm() < 1e-15);
  CHECK(s.kind() == SignalKind::kTrigPolynomial);
}

TEST_CASE("chirp at sqrt(pi) is -v") {
  const Signal s{Chirp(v2())};
  CHECK((s.eval(std::sqrt(kPi)) + v2()).norm() < 1e-14);
  CHECK(s.kind() == SignalKind::kChirp);
}

TEST_CASE("trig polynomial merges equal frequencies and drops zeros") {
  const Vector v = v2();
  TrigPolynomial p(2, {{1.0, v}, {1.0, v}, {2.0, Vector::Zero(2)}, {-1.0, v}});
  REQUIRE(p.terms().size() == 2);
  CHECK(p.terms()[0].freq == -1.0);
  CHECK((p.terms()[1].vec - 2.0 * v).norm() == 0.0);
  CHECK_THROWS_AS(TrigPolynomial(3, {{1.0, v}}), Error);
}

TEST_CASE("linearity of term-wise sums") {
  std::mt19937_64 rng(11);
  const TrigPolynomial a = testing::random_trig(rng, 3, 4, 0.5, 5.0);
  const TrigPolynomial b = testing::random_trig(rng, 3, 3, 0.5, 5.0);
  const TrigPolynomial c = a + b;
  for (double t = -20.0; t <= 20.0; t += 0.37) {
    CHECK((c.eval(t) - a.eval(t) - b.eval(t)).norm() < 1e-13);
  }
}

TEST_CASE("sup norm examples") {
  const Vector v = v2();
  for (NormKind kind : {NormKind::kSupremum, NormKind::kEuclidean}) {
    const double nv = banach_norm(v, kind);
    CHECK(sup_norm(constant_signal(v), uniform_grid(-3.0, 3.0, 0.5), kind) == doctest::Approx(nv));
    CHECK(std::abs(sup_norm(cosine_signal(v), uniform_grid(0.0, 2 * kPi, 1e-3), kind) - nv) < 1e-6);
    CHECK(std::abs(sup_norm(Signal{Chirp(v)}, uniform_grid(0.0, 10.0, 1e-3), kind) - nv) < 1e-4);
  }
}

TEST_CASE("declared sup bound dominates samples") {
  std::mt19937_64 rng(5);
  const auto grid = uniform_grid(-50.0, 50.0, 0.01);
  for (int trial = 0; trial < 10; ++trial) {
    const Signal s{testing::random_trig(rng, 3, 5, 0.5, 5.0)};
    for (NormKind kind : {NormKind::kSupremum, NormKind::kEuclidean}) {
      CHECK(sup_norm(s, grid, kind) <= s.sup_bound() * (1 + 1e-9));
    }
  }
  const Signal c{Chirp(v2())};
  CHECK(sup_norm(c, grid, NormKind::kEuclidean) <= c.sup_bound() * (1 + 1e-9));
}

TEST_CASE("normal matrix orbit matches its trigonometric form") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const int d = 2 + trial % 3;
    // Hermitian generator: unitary Q times real diagonal times Q^*.
    Matrix m(d, d);
    for (int i = 0; i < d; ++i) m.col(i) = testing::random_vector(rng, d);
    Eigen::HouseholderQR<Matrix> qr(m);
    const Matrix q = qr.householderQ();
    Vector lam(d);
    for (int i = 0; i < d; ++i) lam[i] = -2.0 + 1.3 * i;
    const Matrix a = q * lam.asDiagonal() * q.adjoint();
    const MatrixOrbit orbit(a, testing::random_vector(rng, d));
    REQUIRE(orbit.is_normal());
    REQUIRE(orbit.has_real_spectrum());
    const auto trig = orbit.as_trig_polynomial();
    REQUIRE(trig.has_value());
    double worst = 0.0;
    for (double t : linspace(-50.0, 50.0, 1000)) {
      Vector x(d);
      orbit.eval_into(t, x);
      worst = std::max(worst, (x - trig->eval(t)).norm() / orbit.initial().norm());
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("non-normal orbit uses the matrix exponential") {
  Matrix a(2, 2);
  a << 1.0, 1.0, 0.0, 1.0;  // Jordan block
  Vector v(2);
  v << 0.0, 1.0;
  const MatrixOrbit orbit(a, v);
  CHECK_FALSE(orbit.is_normal());
  Vector x(2);
  orbit.eval_into(0.7, x);
  // exp(iAt) v = e^{it} (i t, 1).
  const Complex e = std::polar(1.0, 0.7);
  CHECK(std::abs(x[0] - e * Complex(0.0, 0.7)) < 1e-12);
  CHECK(std::abs(x[1] - e) < 1e-12);
}

TEST_CASE("chirp derivative polynomial") {
  // d/dt cos(t^2) = -2t sin(t^2); d2 = -2 sin(t^2) - 4 t^2 cos(t^2).
  Vector one = Vector::Ones(1);
  const Chirp d1(one, 1);
  const Chirp d2(one, 2);
  for (double t : {-1.3, 0.0, 0.4, 2.2}) {
    CHECK(d1.scalar(t) == doctest::Approx(-2 * t * std::sin(t * t)).epsilon(1e-12));
    CHECK(d2.scalar(t) ==
          doctest::Approx(-2 * std::sin(t * t) - 4 * t * t * std::cos(t * t)).epsilon(1e-12));
  }
}

TEST_CASE("interpolant reproduces smooth data and rejects out-of-domain queries") {
  const double h = 0.01;
  const long n = 1001;
  Matrix vals(1, n);
  for (long j = 0; j < n; ++j) vals(0, j) = std::cos(j * h);
  const Signal s{Interpolant(0.0, h, vals)};
  double worst = 0.0;
  for (double t = 0.0; t <= 10.0; t += 0.0037) worst = std::max(worst, std::abs(s.eval(t)[0] - std::cos(t)));
  CHECK(worst < 1e-8);
  CHECK_THROWS_AS(s.eval(10.5), Error);
  try {
    s.eval(-1.0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kOutOfDomain);
  }
}
