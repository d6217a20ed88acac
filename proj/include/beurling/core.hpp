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

#pragma once

#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace beurling {

using Complex = std::complex<double>;
/// A value in the state space C^d.
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Norm placed on C^d.
enum class NormKind { kSupremum, kEuclidean };

double banach_norm(const Vector& x, NormKind kind);
double banach_norm(Eigen::Ref<const Vector> x, NormKind kind);

NormKind parse_norm_kind(const std::string& name);
const char* to_string(NormKind kind);

enum class ErrorCode {
  kInvalidParameter,
  kOutOfDomain,
  kUnsupportedOrder,
  kOnSpectrum,
  kEmptySpectrum,
  kDivergentOrbit,
  kSchema,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Selects the serial reference or the OpenMP variant of a kernel. Both
/// produce bit-identical results.
enum class Execution { kSerial, kParallel };

/// Closed interval on the real line; either end may be infinite.
struct Interval {
  double lo = -kInf;
  double hi = kInf;

  bool contains(double t) const { return t >= lo && t <= hi; }
  double width() const { return hi - lo; }
};

/// Uniform grid lo, lo + step, ..., up to hi (inclusive within rounding).
std::vector<double> uniform_grid(double lo, double hi, double step);
/// n points lo + k*(hi-lo)/(n-1).
std::vector<double> linspace(double lo, double hi, int n);

}  // namespace beurling
