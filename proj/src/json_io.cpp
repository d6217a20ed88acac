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

#include "beurling/json_io.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace beurling::json_io {

namespace {

[[noreturn]] void fail(const std::string& what, const std::string& msg) {
  throw Error(ErrorCode::kSchema, what + ": " + msg);
}

double get_number(const Json& j, const char* key, double fallback, const std::string& what) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (!v.is_number()) fail(what, std::string("'") + key + "' must be a number");
  return v.get<double>();
}

double require_number(const Json& j, const char* key, const std::string& what) {
  if (!j.contains(key)) fail(what, std::string("missing '") + key + "'");
  return get_number(j, key, 0.0, what);
}

int get_int(const Json& j, const char* key, int fallback, const std::string& what) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (!v.is_number_integer()) fail(what, std::string("'") + key + "' must be an integer");
  return v.get<int>();
}

Vector get_vector(const Json& j, const char* key, int dim, const std::string& what) {
  if (!j.contains(key)) return Vector::Ones(dim);
  return parse_vector(j.at(key), what + "." + key);
}

std::string kind_of(const Json& j, const std::string& what) {
  if (!j.is_object()) fail(what, "expected an object");
  if (!j.contains("kind") || !j.at("kind").is_string()) fail(what, "missing string 'kind'");
  return j.at("kind").get<std::string>();
}

std::vector<TrigTerm> parse_terms(const Json& j, const std::string& what, int& dim) {
  if (!j.is_array() || j.empty()) fail(what, "'terms' must be a non-empty array");
  std::vector<TrigTerm> terms;
  dim = -1;
  for (const Json& t : j) {
    require_keys(t, {"freq", "vec"}, what);
    TrigTerm term{require_number(t, "freq", what), parse_vector(t.contains("vec") ? t.at("vec") : Json(), what + ".vec")};
    const int d = static_cast<int>(term.vec.size());
    if (dim >= 0 && d != dim) fail(what, "term vectors differ in length");
    dim = d;
    terms.push_back(std::move(term));
  }
  return terms;
}

TrigPolynomial three_term() {
  return TrigPolynomial(2, {{0.5, Vector::Unit(2, 0)}, {2.0, Vector::Unit(2, 1)}, {-3.0, Vector::Unit(2, 0)}});
}

Signal preset(const std::string& name) {
  const Vector one = Vector::Ones(1);
  if (name == "constant") return constant_signal(one);
  if (name == "cos") return cosine_signal(one);
  if (name == "exp") return Signal{TrigPolynomial(1, {{1.0, one}})};
  if (name == "chirp") return Signal{Chirp(one)};
  if (name == "three_term") return Signal{three_term()};
  fail("signal", "unknown preset '" + name + "'");
}

}  // namespace

Complex parse_complex(const Json& j, const std::string& what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  fail(what, "expected a number or [re, im]");
}

Vector parse_vector(const Json& j, const std::string& what) {
  if (j.is_number()) return Vector::Constant(1, Complex(j.get<double>(), 0.0));
  if (!j.is_array() || j.empty()) fail(what, "expected a non-empty array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) v[static_cast<Eigen::Index>(k)] = parse_complex(j[k], what);
  return v;
}

Matrix parse_matrix(const Json& j, const std::string& what) {
  if (j.is_number()) return Matrix::Constant(1, 1, Complex(j.get<double>(), 0.0));
  if (!j.is_array() || j.empty()) fail(what, "expected an array of rows");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  Matrix m;
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Vector row = parse_vector(j[static_cast<std::size_t>(r)], what);
    if (r == 0) m.resize(rows, row.size());
    if (row.size() != m.cols()) fail(what, "rows differ in length");
    m.row(r) = row.transpose();
  }
  return m;
}

Json to_json(Complex z) {
  if (z.imag() == 0.0) return z.real();
  return Json::array({z.real(), z.imag()});
}

Json to_json(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(to_json(v[k]));
  return a;
}

Json to_json(const Matrix& m) {
  Json a = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) a.push_back(to_json(Vector(m.row(r).transpose())));
  return a;
}

Json to_json(const TrigPolynomial& p) {
  Json terms = Json::array();
  for (const auto& t : p.terms()) terms.push_back({{"freq", t.freq}, {"vec", to_json(t.vec)}});
  return terms;
}

Json to_json(const Interval& i) { return Json::array({i.lo, i.hi}); }

void require_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& what) {
  if (!j.is_object()) fail(what, "expected an object");
  for (const auto& item : j.items()) {
    bool ok = item.key() == "kind";
    for (const char* a : allowed) ok = ok || item.key() == a;
    if (!ok) fail(what, "unknown key '" + item.key() + "'");
  }
}

Signal parse_signal(const Json& j) {
  if (j.is_string()) return preset(j.get<std::string>());
  const std::string kind = kind_of(j, "signal");
  const std::string what = "signal(" + kind + ")";
  if (kind == "trig") {
    require_keys(j, {"terms"}, what);
    if (!j.contains("terms")) fail(what, "missing 'terms'");
    int dim = 0;
    auto terms = parse_terms(j.at("terms"), what, dim);
    return Signal{TrigPolynomial(dim, std::move(terms))};
  }
  if (kind == "constant") {
    require_keys(j, {"v"}, what);
    return constant_signal(get_vector(j, "v", 1, what));
  }
  if (kind == "cos") {
    require_keys(j, {"v", "freq"}, what);
    return cosine_signal(get_vector(j, "v", 1, what), get_number(j, "freq", 1.0, what));
  }
  if (kind == "exp") {
    require_keys(j, {"v", "freq"}, what);
    const Vector v = get_vector(j, "v", 1, what);
    return Signal{TrigPolynomial(static_cast<int>(v.size()), {{get_number(j, "freq", 1.0, what), v}})};
  }
  if (kind == "matrix_orbit") {
    require_keys(j, {"A", "v"}, what);
    if (!j.contains("A")) fail(what, "missing 'A'");
    const Matrix a = parse_matrix(j.at("A"), what + ".A");
    if (a.rows() != a.cols()) fail(what, "'A' must be square");
    const Vector v = get_vector(j, "v", static_cast<int>(a.rows()), what);
    if (v.size() != a.rows()) fail(what, "'v' does not match 'A'");
    return Signal{MatrixOrbit(a, v)};
  }
  if (kind == "chirp") {
    require_keys(j, {"v", "order"}, what);
    return Signal{Chirp(get_vector(j, "v", 1, what), get_int(j, "order", 0, what))};
  }
  if (kind == "interpolant") {
    require_keys(j, {"t0", "dt", "values", "bandwidth"}, what);
    if (!j.contains("values") || !j.at("values").is_array() || j.at("values").size() < 2) {
      fail(what, "'values' must hold at least two samples");
    }
    const Json& vals = j.at("values");
    Matrix m;
    for (std::size_t k = 0; k < vals.size(); ++k) {
      const Vector s = parse_vector(vals[k], what + ".values");
      if (k == 0) m.resize(s.size(), static_cast<Eigen::Index>(vals.size()));
      if (s.size() != m.rows()) fail(what, "samples differ in length");
      m.col(static_cast<Eigen::Index>(k)) = s;
    }
    return Signal{Interpolant(get_number(j, "t0", 0.0, what), require_number(j, "dt", what), std::move(m),
                              get_number(j, "bandwidth", 0.0, what))};
  }
  if (kind == "delay") {
    require_keys(j, {"tau", "A", "dim", "history", "t_end", "step"}, what);
    Json sys = {{"tau", require_number(j, "tau", what)}};
    if (j.contains("A")) sys["A"] = j.at("A");
    if (j.contains("dim")) sys["dim"] = j.at("dim");
    const DelaySystem ds = parse_delay_system(sys);
    const History h = parse_history(j.contains("history") ? j.at("history") : Json{{"kind", "cos"}}, ds.dim());
    const double step = dividing_step(ds.tau(), get_number(j, "step", 1e-2, what));
    const auto hist = HistorySegment::sample(h.f, 0.0, ds.tau(), step, h.df);
    return Signal{solve_delay(ds, hist, require_number(j, "t_end", what), step)};
  }
  fail("signal", "unknown kind '" + kind + "'");
}

DelaySystem parse_delay_system(const Json& j) {
  require_keys(j, {"tau", "A", "dim"}, "delay system");
  const double tau = require_number(j, "tau", "delay system");
  if (j.contains("A") && !j.at("A").is_null()) {
    if (j.contains("dim")) fail("delay system", "give either 'A' or 'dim'");
    const Matrix a = parse_matrix(j.at("A"), "delay system.A");
    if (a.rows() != a.cols()) fail("delay system", "'A' must be square");
    return DelaySystem::matrix(tau, a);
  }
  return DelaySystem::scalar(tau, get_int(j, "dim", 1, "delay system"));
}

History parse_history(const Json& j, int dim) {
  const std::string kind = kind_of(j, "history");
  const std::string what = "history(" + kind + ")";
  std::vector<TrigTerm> terms;
  if (kind == "cos" || kind == "sin") {
    require_keys(j, {"freq", "v", "offset", "slope"}, what);
    const double w = get_number(j, "freq", 1.0, what);
    const Vector v = get_vector(j, "v", dim, what);
    const Complex c = kind == "cos" ? Complex(0.5, 0.0) : Complex(0.0, -0.5);
    terms = {{w, c * v}, {-w, std::conj(c) * v}};
  } else if (kind == "constant") {
    require_keys(j, {"v", "offset", "slope"}, what);
    terms = {{0.0, get_vector(j, "v", dim, what)}};
  } else if (kind == "trig") {
    require_keys(j, {"terms", "offset", "slope"}, what);
    if (!j.contains("terms")) fail(what, "missing 'terms'");
    int d = 0;
    terms = parse_terms(j.at("terms"), what, d);
  } else {
    fail("history", "unknown kind '" + kind + "'");
  }
  for (const auto& t : terms) {
    if (t.vec.size() != dim) fail(what, "vector length does not match the system dimension");
  }
  const Vector offset = j.contains("offset") ? parse_vector(j.at("offset"), what + ".offset") : Vector::Zero(dim);
  const Vector slope = j.contains("slope") ? parse_vector(j.at("slope"), what + ".slope") : Vector::Zero(dim);
  if (offset.size() != dim || slope.size() != dim) fail(what, "offset/slope length does not match the system dimension");
  const TrigPolynomial p(dim, terms);
  std::vector<TrigTerm> dterms;
  for (const auto& t : p.terms()) dterms.push_back({t.freq, Complex(0.0, t.freq) * t.vec});
  const TrigPolynomial dp(dim, std::move(dterms));
  return {[p, offset, slope](double t) { return Vector(p.eval(t) + offset + t * slope); },
          [dp, slope](double t) { return Vector(dp.eval(t) + slope); }};
}

SemiflowModel parse_model(const Json& j) {
  if (j.is_string()) return parse_model(Json{{"kind", j.get<std::string>()}});
  const std::string kind = kind_of(j, "model");
  const std::string what = "model(" + kind + ")";
  if (kind == "rotation") {
    require_keys(j, {}, what);
    return SemiflowModel::rotation();
  }
  if (kind == "spiral") {
    require_keys(j, {"rate"}, what);
    return SemiflowModel::spiral(get_number(j, "rate", 0.1, what));
  }
  if (kind == "torus") {
    require_keys(j, {}, what);
    return SemiflowModel::torus();
  }
  if (kind == "matrix_orbit" || kind == "linear") {
    const char* key = kind == "linear" ? "G" : "A";
    require_keys(j, {key}, what);
    if (!j.contains(key)) fail(what, std::string("missing '") + key + "'");
    const Matrix m = parse_matrix(j.at(key), what + "." + key);
    if (m.rows() != m.cols()) fail(what, "matrix must be square");
    return kind == "linear" ? SemiflowModel::linear(m) : SemiflowModel::matrix_orbit(m);
  }
  if (kind == "delay") {
    require_keys(j, {"tau", "A", "dim", "max_step"}, what);
    Json sys = {{"tau", require_number(j, "tau", what)}};
    if (j.contains("A")) sys["A"] = j.at("A");
    if (j.contains("dim")) sys["dim"] = j.at("dim");
    const DelaySystem ds = parse_delay_system(sys);
    return SemiflowModel::delay(ds, dividing_step(ds.tau(), get_number(j, "max_step", 1e-2, what)));
  }
  fail("model", "unknown kind '" + kind + "'");
}

Vector parse_initial_state(const SemiflowModel& model, const Json& j) {
  if (model.kind() == SemiflowModel::Kind::kDelay) {
    const History h = parse_history(j, model.delay_system().dim());
    return model.delay_state(h.f, h.df);
  }
  const Vector v = parse_vector(j, "initial");
  if (v.size() != model.state_dim()) fail("initial", "length does not match the model dimension");
  return v;
}

}  // namespace beurling::json_io
