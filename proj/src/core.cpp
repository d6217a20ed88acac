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

#include "beurling/core.hpp"

#include <cmath>

namespace beurling {

double banach_norm(Eigen::Ref<const Vector> x, NormKind kind) {
  if (x.size() == 0) return 0.0;
  switch (kind) {
    case NormKind::kSupremum: {
      double m = 0.0;
      for (Eigen::Index i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i]));
      return m;
    }
    case NormKind::kEuclidean:
      return x.norm();
  }
  return 0.0;
}

double banach_norm(const Vector& x, NormKind kind) {
  return banach_norm(Eigen::Ref<const Vector>(x), kind);
}

NormKind parse_norm_kind(const std::string& name) {
  if (name == "euclidean" || name == "l2") return NormKind::kEuclidean;
  if (name == "supremum" || name == "sup" || name == "max") return NormKind::kSupremum;
  throw Error(ErrorCode::kInvalidParameter, "unknown norm kind '" + name + "'");
}

const char* to_string(NormKind kind) {
  return kind == NormKind::kSupremum ? "supremum" : "euclidean";
}

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidParameter: return "invalid-parameter";
    case ErrorCode::kOutOfDomain: return "out-of-domain";
    case ErrorCode::kUnsupportedOrder: return "unsupported-order";
    case ErrorCode::kOnSpectrum: return "on-spectrum";
    case ErrorCode::kEmptySpectrum: return "empty-spectrum";
    case ErrorCode::kDivergentOrbit: return "divergent-orbit";
    case ErrorCode::kSchema: return "schema";
  }
  return "unknown";
}

std::vector<double> uniform_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error(ErrorCode::kInvalidParameter, "uniform_grid: need finite lo <= hi and step > 0");
  }
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> grid(static_cast<std::size_t>(n));
  for (long k = 0; k < n; ++k) grid[static_cast<std::size_t>(k)] = lo + static_cast<double>(k) * step;
  return grid;
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw Error(ErrorCode::kInvalidParameter, "linspace: n must be positive");
  std::vector<double> grid(static_cast<std::size_t>(n));
  if (n == 1) {
    grid[0] = lo;
    return grid;
  }
  const double step = (hi - lo) / (n - 1);
  for (int k = 0; k < n; ++k) grid[static_cast<std::size_t>(k)] = lo + k * step;
  grid.back() = hi;
  return grid;
}

}  // namespace beurling
