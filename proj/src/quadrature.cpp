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

#include "beurling/quadrature.hpp"

#include <cmath>

#include "beurling/core.hpp"

namespace beurling::quadrature {

std::vector<double> simpson_weights(int intervals, double h) {
  if (intervals < 2 || intervals % 2 != 0) {
    throw Error(ErrorCode::kInvalidParameter, "simpson_weights: need an even number of intervals");
  }
  std::vector<double> w(static_cast<std::size_t>(intervals) + 1);
  for (int j = 0; j <= intervals; ++j) {
    double c = (j == 0 || j == intervals) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
    w[static_cast<std::size_t>(j)] = c * h / 3.0;
  }
  return w;
}

std::vector<double> trapezoid_weights(int intervals, double h) {
  if (intervals < 1) throw Error(ErrorCode::kInvalidParameter, "trapezoid_weights: need intervals >= 1");
  std::vector<double> w(static_cast<std::size_t>(intervals) + 1, h);
  w.front() = 0.5 * h;
  w.back() = 0.5 * h;
  return w;
}

int even_intervals(double n) {
  auto k = static_cast<int>(std::ceil(n));
  if (k < 2) k = 2;
  if (k % 2 != 0) ++k;
  return k;
}

double simpson(const std::function<double(double)>& f, double a, double b, int intervals) {
  intervals = even_intervals(intervals);
  const double h = (b - a) / intervals;
  double sum = f(a) + f(b);
  for (int j = 1; j < intervals; ++j) sum += (j % 2 == 1 ? 4.0 : 2.0) * f(a + j * h);
  return sum * h / 3.0;
}

double golden_section_max(const std::function<double(double)>& f, double a, double b,
                          double tol, int max_iter) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? c : d;
}

}  // namespace beurling::quadrature
