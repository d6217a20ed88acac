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

// Shared fixtures for the unit and acceptance tests.

#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "beurling/core.hpp"
#include "beurling/signal.hpp"

namespace beurling::testing {

inline Vector random_vector(std::mt19937_64& rng, int d, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vector v(d);
  for (int i = 0; i < d; ++i) v[i] = scale * Complex(u(rng), u(rng));
  return v;
}

/// Distinct frequencies in [-f_max, f_max] with pairwise gap >= gap, each a
/// multiple of 1/64 so spectra land on exact binary fractions.
inline std::vector<double> random_frequencies(std::mt19937_64& rng, int count, double gap,
                                              double f_max) {
  std::uniform_real_distribution<double> u(-f_max, f_max);
  std::vector<double> out;
  while (static_cast<int>(out.size()) < count) {
    const double f = std::round(u(rng) * 64.0) / 64.0;
    bool ok = true;
    for (double g : out) ok = ok && std::abs(f - g) >= gap;
    if (ok) out.push_back(f);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline TrigPolynomial random_trig(std::mt19937_64& rng, int d, int terms, double gap,
                                  double f_max) {
  std::vector<TrigTerm> t;
  for (double f : random_frequencies(rng, terms, gap, f_max)) {
    Vector v = random_vector(rng, d);
    t.push_back({f, v});
  }
  return TrigPolynomial(d, std::move(t));
}

/// max_j ||a(t_j) - b(t_j)|| over a grid.
template <class F, class G>
double max_gap(F&& a, G&& b, const std::vector<double>& grid, NormKind norm) {
  double m = 0.0;
  for (double t : grid) m = std::max(m, banach_norm(Vector(a(t) - b(t)), norm));
  return m;
}

}  // namespace beurling::testing
