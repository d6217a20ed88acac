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

#include <functional>
#include <vector>

namespace beurling::quadrature {

/// Composite Simpson weights for `intervals` equal subintervals of width h
/// (intervals must be even). Returns intervals + 1 weights, already scaled by h.
std::vector<double> simpson_weights(int intervals, double h);

/// Composite trapezoid weights, scaled by h.
std::vector<double> trapezoid_weights(int intervals, double h);

/// Rounds n up to the next even integer (at least 2).
int even_intervals(double n);

double simpson(const std::function<double(double)>& f, double a, double b, int intervals);

/// Golden-section search for a maximum of f on [a, b].
double golden_section_max(const std::function<double(double)>& f, double a, double b,
                          double tol, int max_iter = 200);

}  // namespace beurling::quadrature
