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

// JSON descriptors for signals, delay systems, histories and semiflow models.
// Malformed descriptors raise Error(kSchema).

#pragma once

#include <functional>
#include <initializer_list>
#include <string>

#include <json.hpp>

#include "beurling/core.hpp"
#include "beurling/delay.hpp"
#include "beurling/semiflow.hpp"
#include "beurling/signal.hpp"

namespace beurling::json_io {

using Json = nlohmann::ordered_json;

/// A number or a pair [re, im].
Complex parse_complex(const Json& j, const std::string& what);
/// An array of complex entries; a bare number is a vector of length one.
Vector parse_vector(const Json& j, const std::string& what);
/// An array of rows.
Matrix parse_matrix(const Json& j, const std::string& what);

/// Real values as numbers, others as [re, im].
Json to_json(Complex z);
Json to_json(const Vector& v);
Json to_json(const Matrix& m);
Json to_json(const TrigPolynomial& p);
Json to_json(const Interval& i);

/// Throws kSchema when `j` is not an object or has a key outside `allowed`.
void require_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& what);

/// Signal descriptors. Strings name presets: "constant", "cos", "exp",
/// "chirp" and "three_term". Objects carry a "kind":
///   trig         {"terms": [{"freq", "vec"}]}
///   constant     {"v"}
///   cos, exp     {"v", "freq"}
///   matrix_orbit {"A", "v"}
///   chirp        {"v", "order"}
///   interpolant  {"t0", "dt", "values", "bandwidth"}
///   delay        {"tau", "A" | "dim", "history", "t_end", "step"}
Signal parse_signal(const Json& j);

/// {"tau", "A"} for u' = iA u(t - tau); {"tau", "dim"} for u' = -u(t - tau).
DelaySystem parse_delay_system(const Json& j);

/// A history u(t) = p(t) + offset + slope t with p a trigonometric polynomial
/// and its exact derivative. Kinds: cos, sin {"freq", "v"}, constant {"v"},
/// trig {"terms"}; each accepts "offset" and "slope".
struct History {
  std::function<Vector(double)> f;
  std::function<Vector(double)> df;
};
History parse_history(const Json& j, int dim);

/// Model descriptors: rotation, spiral {"rate"}, torus, matrix_orbit {"A"},
/// linear {"G"}, delay {"tau", "A" | "dim", "max_step"}.
SemiflowModel parse_model(const Json& j);
/// A vector for linear models, a history descriptor for delay models.
Vector parse_initial_state(const SemiflowModel& model, const Json& j);

}  // namespace beurling::json_io
