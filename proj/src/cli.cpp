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

#include "beurling/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>

#include "beurling/bohr.hpp"
#include "beurling/calculus.hpp"
#include "beurling/delay.hpp"
#include "beurling/semiflow.hpp"
#include "beurling/spectrum.hpp"

namespace beurling::cli {

using json_io::Json;
using json_io::to_json;
namespace fs = std::filesystem;

namespace {

// ---------------------------------------------------------------------------
// Output helpers

std::string num(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

class Csv {
 public:
  explicit Csv(std::initializer_list<std::string> header) { row(std::vector<std::string>(header)); }
  explicit Csv(const std::vector<std::string>& header) { row(header); }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k) text_ += ',';
      text_ += cells[k];
    }
    text_ += '\n';
  }
  void row(std::initializer_list<double> cells) {
    std::vector<std::string> s;
    for (double c : cells) s.push_back(num(c));
    row(s);
  }
  const std::string& text() const { return text_; }

 private:
  std::string text_;
};

void write_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string());
    f << content;
    f.close();
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

struct Artifacts {
  std::vector<std::pair<std::string, std::string>> csv;
  void add(const std::string& name, const Csv& c) { csv.emplace_back(name, c.text()); }
};

// ---------------------------------------------------------------------------
// Config access

[[noreturn]] void schema(const std::string& msg) { throw Error(ErrorCode::kSchema, msg); }

double f64(const Json& c, const char* k) { return c.at(k).get<double>(); }
int i32(const Json& c, const char* k) { return c.at(k).get<int>(); }
bool flag(const Json& c, const char* k) { return c.at(k).get<bool>(); }
std::string str(const Json& c, const char* k) { return c.at(k).get<std::string>(); }

std::vector<double> numbers(const Json& c, const char* k) {
  std::vector<double> v;
  for (const Json& x : c.at(k)) v.push_back(x.get<double>());
  return v;
}

Execution execution(const Json& c) {
  const std::string e = str(c, "execution");
  if (e == "parallel") return Execution::kParallel;
  if (e == "serial") return Execution::kSerial;
  schema("execution must be \"parallel\" or \"serial\"");
}

NormKind norm(const Json& c) { return parse_norm_kind(str(c, "norm")); }

std::vector<double> grid(const Json& c) { return uniform_grid(f64(c, "grid_lo"), f64(c, "grid_hi"), f64(c, "grid_step")); }

ScanOptions scan_options(const Json& c, const std::string& prefix, ScanOptions base) {
  auto set = [&](const char* name, double& field) {
    const std::string k = prefix + name;
    if (c.contains(k)) field = c.at(k).get<double>();
  };
  set("f_min", base.f_min);
  set("f_max", base.f_max);
  set("grid_step", base.grid_step);
  set("half_width", base.half_width);
  set("threshold", base.threshold);
  set("probe_origin", base.probe_origin);
  if (c.contains(prefix + "probes")) base.probes = c.at(prefix + "probes").get<int>();
  if (c.contains(prefix + "method")) {
    const std::string m = c.at(prefix + "method").get<std::string>();
    if (m == "auto") {
      base.method = ScanMethod::kAuto;
    } else if (m == "quadrature") {
      base.method = ScanMethod::kQuadrature;
    } else {
      schema(prefix + "method must be \"auto\" or \"quadrature\"");
    }
  }
  base.norm = norm(c);
  base.exec = execution(c);
  return base;
}

// ---------------------------------------------------------------------------
// Shared report fragments

Json intervals(const std::vector<Interval>& v) {
  Json a = Json::array();
  for (const auto& i : v) a.push_back(to_json(i));
  return a;
}

Json spectrum_json(const SpectrumEstimate& est) {
  Json r;
  r["detected_intervals"] = intervals(est.detected_intervals);
  r["cluster_centers"] = est.cluster_centers;
  r["peaks"] = est.peaks;
  r["threshold"] = est.threshold;
  r["half_width"] = est.half_width;
  r["grid_step"] = est.grid_step;
  r["sup_norm"] = est.sup_norm;
  r["spectral_radius"] = est.any_detected() ? Json(spectral_radius(est)) : Json(nullptr);
  return r;
}

Csv energy_csv(const SpectrumEstimate& est) {
  Csv c{"freq", "energy", "detected"};
  for (std::size_t m = 0; m < est.freqs.size(); ++m) {
    c.row({num(est.freqs[m]), num(est.energies[m]), est.detected[m] ? "1" : "0"});
  }
  return c;
}

Json sequence_json(const RadiusSequence& s) {
  return {{"n_values", s.n_values}, {"roots", s.roots},   {"ratios", s.ratios},
          {"log_norms", s.log_norms}, {"limit", s.limit}, {"converged", s.converged}};
}

Csv sequence_csv(const RadiusSequence& s) {
  Csv c{"n", "log_norm", "root", "ratio"};
  for (std::size_t k = 0; k < s.n_values.size(); ++k) {
    const std::string ratio = k >= 1 && k - 1 < s.ratios.size() ? num(s.ratios[k - 1]) : "";
    c.row({std::to_string(s.n_values[k]), num(s.log_norms[k]), num(s.roots[k]), ratio});
  }
  return c;
}

std::vector<std::string> complex_header(const std::string& first, const std::string& stem, Eigen::Index dim) {
  std::vector<std::string> h{first};
  for (Eigen::Index k = 0; k < dim; ++k) {
    h.push_back(stem + std::to_string(k) + "_re");
    h.push_back(stem + std::to_string(k) + "_im");
  }
  return h;
}

std::vector<std::string> complex_row(const std::string& first, const Vector& v) {
  std::vector<std::string> r{first};
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    r.push_back(num(v[k].real()));
    r.push_back(num(v[k].imag()));
  }
  return r;
}

double spectral_radius_of(const Matrix& a) {
  Eigen::ComplexEigenSolver<Matrix> es(a, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Subcommands

Json run_spectrum(const Json& c, Artifacts& art) {
  const Signal sig = json_io::parse_signal(c.at("signal"));
  const SpectrumEstimate est = estimate_spectrum(sig, scan_options(c, "", {}));
  art.add("spectrum_energy.csv", energy_csv(est));
  Json r = spectrum_json(est);
  r["signal_kind"] = to_string(sig.kind());
  r["dim"] = sig.dim();
  return r;
}

BohrOptions bohr_options(const Json& c) {
  BohrOptions o;
  o.t_max = f64(c, "t_max");
  o.center = f64(c, "center");
  o.tol = f64(c, "tol");
  o.nodes_per_period = f64(c, "nodes_per_period");
  o.time_step = f64(c, "time_step");
  const std::string m = str(c, "method");
  if (m == "auto") {
    o.method = AverageMethod::kAuto;
  } else if (m == "quadrature") {
    o.method = AverageMethod::kQuadrature;
  } else {
    schema("method must be \"auto\" or \"quadrature\"");
  }
  o.norm = norm(c);
  o.exec = execution(c);
  return o;
}

Json reconstruction_json(const Reconstruction& rec) {
  Json cand = Json::array();
  for (const auto& t : rec.candidates) cand.push_back({{"freq", t.freq}, {"vec", to_json(t.vec)}});
  return {{"terms", to_json(rec.polynomial)}, {"candidates", cand}, {"validation", to_json(rec.validation)},
          {"error", rec.error}, {"ok", rec.ok}};
}

Json run_bohr(const Json& c, Artifacts& art) {
  const Signal sig = json_io::parse_signal(c.at("signal"));
  const BohrOptions bo = bohr_options(c);
  const auto lambdas = numbers(c, "lambdas");
  Json r;
  Json coeffs = Json::array();
  Csv sweep{"lambda", "t", "norm", "envelope"};
  for (const auto& bc : bohr_coefficients(sig, lambdas, bo)) {
    const double n = banach_norm(bc.value, bo.norm);
    coeffs.push_back({{"lambda", bc.lambda},
                      {"value", to_json(bc.value)},
                      {"norm", n},
                      {"envelope", bc.envelope},
                      {"decay_exponent", bc.decay_exponent},
                      {"residual", bc.residual},
                      {"converged", bc.converged}});
    for (std::size_t k = 0; k < bc.sweep.size(); ++k) {
      const std::string env = k < bc.envelope.size() ? num(bc.envelope[k]) : "";
      sweep.row({num(bc.lambda), num(bc.sweep[k].t), num(banach_norm(bc.sweep[k].value, bo.norm)), env});
    }
  }
  r["coefficients"] = coeffs;
  art.add("bohr_sweep.csv", sweep);

  if (flag(c, "verdict")) {
    ApOptions ao;
    ao.scan = scan_options(c, "scan_", {});
    ao.reconstruct.bohr = bo;
    ao.reconstruct.reconstruction_tol = f64(c, "reconstruction_tol");
    ao.reconstruct.refine_radius = f64(c, "refine_radius");
    ao.reconstruct.validation_length = f64(c, "validation_length");
    ao.max_candidates = i32(c, "max_candidates");
    const ApDiagnostic d = is_almost_periodic(sig, ao);
    Json v{{"verdict", to_string(d.verdict)},
           {"separated", d.separated},
           {"candidates", d.candidates},
           {"coefficient_norms", d.coefficient_norms},
           {"decay_exponents", d.decay_exponents},
           {"sup_norm", d.sup_norm},
           {"max_reconstruction_error", d.max_reconstruction_error},
           {"spectrum", spectrum_json(d.spectrum)}};
    v["reconstruction"] = d.reconstruction ? reconstruction_json(*d.reconstruction) : Json(nullptr);
    r["almost_periodicity"] = v;
    art.add("bohr_energy.csv", energy_csv(d.spectrum));
  }
  return r;
}

RadiusOptions radius_options(const Json& c) {
  RadiusOptions o;
  o.norm = norm(c);
  o.convergence_tol = f64(c, "convergence_tol");
  o.exec = execution(c);
  return o;
}

Json run_dradius(const Json& c, Artifacts& art) {
  const Signal sig = json_io::parse_signal(c.at("signal"));
  const auto g = grid(c);
  const RadiusSequence s = derivative_radius(sig, i32(c, "n_max"), g, radius_options(c));
  art.add("dradius_sequence.csv", sequence_csv(s));
  Json r = sequence_json(s);
  const int fd = i32(c, "fd_orders");
  if (fd > 0) {
    const auto norms = finite_difference_norms(sig, fd, g, norm(c));
    Csv f{"n", "norm"};
    bool increasing = true;
    for (std::size_t k = 0; k < norms.size(); ++k) {
      f.row({static_cast<double>(k + 1), norms[k]});
      if (k > 0 && !(norms[k] > norms[k - 1])) increasing = false;
    }
    art.add("dradius_fd.csv", f);
    r["finite_difference_norms"] = norms;
    r["finite_difference_increasing"] = increasing;
  }
  return r;
}

Json run_rradius(const Json& c, Artifacts& art) {
  const Signal sig = json_io::parse_signal(c.at("signal"));
  const Complex lambda = json_io::parse_complex(c.at("lambda"), "lambda");
  ResolventOptions ro;
  ro.truncation = f64(c, "truncation");
  ro.resolution = f64(c, "resolution");
  const RadiusSequence s = resolvent_radius(sig, lambda, i32(c, "n_max"), grid(c), radius_options(c), ro);
  art.add("rradius_sequence.csv", sequence_csv(s));
  Json r = sequence_json(s);
  const auto probes = numbers(c, "identity_probes");
  r["identity_residual"] = probes.empty() ? Json(nullptr)
                                          : Json(verify_resolvent_identity(sig, lambda, probes, norm(c), ro));
  if (const auto p = trig_form(sig); p && !p->empty()) {
    double pred = 0.0;
    for (const auto& t : p->terms()) pred = std::max(pred, 1.0 / std::abs(lambda - Complex(0.0, t.freq)));
    r["predicted_limit"] = pred;
  } else {
    r["predicted_limit"] = nullptr;
  }
  return r;
}

Json run_delay(const Json& c, Artifacts& art) {
  Json sj{{"tau", c.at("tau")}};
  if (!c.at("A").is_null()) {
    sj["A"] = c.at("A");
  } else {
    sj["dim"] = c.at("dim");
  }
  const DelaySystem sys = json_io::parse_delay_system(sj);
  const json_io::History h = json_io::parse_history(c.at("history"), sys.dim());
  const double tau = sys.tau();
  const double step = dividing_step(tau, f64(c, "step"));
  const DelaySolution sol = solve_delay(sys, HistorySegment::sample(h.f, 0.0, tau, step, h.df), f64(c, "t_end"), step);

  const HermiteGrid& g = sol.grid();
  const long stride = std::max(1, i32(c, "sample_stride"));
  Csv samples(complex_header("t", "u", sys.dim()));
  double deviation = 0.0;
  const NormKind nk = norm(c);
  for (long j = 0; j < g.nodes(); ++j) {
    const double t = g.t0() + static_cast<double>(j) * g.step();
    const Vector u = g.values().col(j);
    if (t >= 0.0) deviation = std::max(deviation, banach_norm(Vector(u - h.f(t)), nk));
    if (j % stride == 0 || j == g.nodes() - 1) samples.row(complex_row(num(t), u));
  }
  art.add("delay_solution.csv", samples);

  std::vector<double> roots;
  if (sys.kind() == DelaySystem::Kind::kScalar) {
    roots = characteristic_roots(tau);
  } else {
    const double rho = f64(c, "roots_rho") > 0.0 ? f64(c, "roots_rho") : spectral_radius_of(sys.generator());
    roots = characteristic_roots_general(sys.generator(), tau, rho);
  }
  Csv rc{"root"};
  for (double x : roots) rc.row({x});
  art.add("delay_roots.csv", rc);

  Json r{{"kind", sys.kind() == DelaySystem::Kind::kScalar ? "scalar" : "matrix"},
         {"step", step},
         {"nodes", g.nodes()},
         {"sup_norm", sol.sup_bound()},
         {"max_deviation_from_history_formula", deviation},
         {"roots", roots}};

  if (flag(c, "inclusion")) {
    const double t_inc = f64(c, "inclusion_t_end");
    const double inc_step = dividing_step(tau, f64(c, "inclusion_step"));
    const DelaySolution long_sol =
        solve_delay(sys, HistorySegment::sample(h.f, 0.0, tau, inc_step, h.df), t_inc, inc_step);
    const InclusionReport rep = verify_spectral_inclusion(sys, long_sol, roots, scan_options(c, "scan_", inclusion_scan_options()));
    r["inclusion"] = {{"window", to_json(rep.window)},
                      {"step", inc_step},
                      {"spectrum", spectrum_json(rep.spectrum)},
                      {"violations", rep.violations},
                      {"holds", rep.holds},
                      {"verdict", rep.holds ? "holds" : "violated"}};
    art.add("delay_energy.csv", energy_csv(rep.spectrum));
  }
  return r;
}

Json run_omega(const Json& c, Artifacts& art) {
  const SemiflowModel model = json_io::parse_model(c.at("model"));
  const Vector v0 = json_io::parse_initial_state(model, c.at("initial"));
  const NormKind nk = norm(c);
  const Execution ex = execution(c);
  const Orbit orbit = compute_orbit(model, v0, f64(c, "t_max"), f64(c, "sample_dt"), f64(c, "blowup_bound"), nk);

  Csv oc{"t", "p0_re", "p0_im", "p1_re", "p1_im"};
  for (std::size_t k = 0; k < orbit.times.size(); ++k) {
    oc.row(complex_row(num(orbit.times[k]), model.projection(orbit.states.col(static_cast<Eigen::Index>(k)))));
  }
  art.add("omega_orbit.csv", oc);

  OmegaOptions oo;
  oo.tail_fraction = f64(c, "tail_fraction");
  oo.cluster_eps = f64(c, "cluster_eps");
  oo.norm = nk;
  oo.exec = ex;
  const OmegaLimitSet om = omega_limit(orbit, oo);
  Json pts = Json::array();
  Csv pc{"index", "p0_re", "p0_im", "p1_re", "p1_im"};
  for (Eigen::Index k = 0; k < om.points.cols(); ++k) {
    const Vector p = model.projection(om.points.col(k));
    pts.push_back(to_json(p));
    pc.row(complex_row(std::to_string(k), p));
  }
  art.add("omega_points.csv", pc);

  Json r;
  r["model"] = model.name();
  r["state_dim"] = model.state_dim();
  r["orbit"] = {{"samples", orbit.times.size()}, {"max_norm", orbit.max_norm}};
  r["omega"] = {{"representatives", om.points.cols()}, {"cluster_eps", om.cluster_eps},
                {"tail_start", om.tail_start},         {"tail_samples", om.tail_samples},
                {"tail_hausdorff", om.tail_hausdorff}, {"diameter", om.diameter},
                {"points", pts}};

  Json inv = Json::array();
  for (double t : numbers(c, "t_probes")) {
    const InvarianceCheck ic = check_invariance(model, om, t, nk, ex);
    inv.push_back({{"t_probe", ic.t_probe}, {"residual", ic.residual}, {"threshold", ic.threshold}, {"passes", ic.passes}});
  }
  r["invariance"] = inv;
  const ConnectivityCheck cc = check_connected(om, f64(c, "chain_eps"), nk);
  r["connectivity"] = {{"chain_eps", cc.chain_eps}, {"components", cc.components},
                       {"max_gap", cc.max_gap},     {"connected", cc.connected}};

  std::optional<double> period;
  if (!model.invertible()) period = estimate_period(model, v0, f64(c, "period_t_max"), f64(c, "sample_dt"), f64(c, "period_tol"));
  r["period"] = period ? Json(*period) : Json(nullptr);

  if (flag(c, "automorphy")) {
    const long terms = i32(c, "automorphy_terms");
    const double ds = f64(c, "automorphy_s_step");
    std::vector<double> s_seq;
    for (long k = 1; k <= terms; ++k) s_seq.push_back(ds * static_cast<double>(k));
    const auto t_grid = uniform_grid(0.0, f64(c, "automorphy_t_max"), f64(c, "automorphy_t_step"));
    AutomorphyOptions ao;
    ao.members = i32(c, "automorphy_members");
    ao.period = period;
    ao.norm = nk;
    const AutomorphyProbe ap = almost_automorphy_probe(model, om, v0, s_seq, t_grid, ao);
    r["automorphy"] = {{"center_index", ap.center},
                       {"subsequence", ap.subsequence},
                       {"cluster_radius", ap.cluster_radius},
                       {"residual", ap.residual},
                       {"inconclusive", ap.inconclusive},
                       {"w_projection", to_json(model.projection(ap.w))}};
  }

  if (flag(c, "asymptotic")) {
    AsymptoticOptions as;
    as.window = f64(c, "asymptotic_window");
    as.tol = f64(c, "asymptotic_tol");
    as.scan.norm = nk;
    as.scan.exec = ex;
    as.reconstruct.bohr.norm = nk;
    as.reconstruct.bohr.exec = ex;
    const AsymptoticProbe ap = asymptotic_ap_probe(model, v0, f64(c, "asymptotic_horizon"), as);
    Csv dc{"window_start", "sup_error"};
    for (std::size_t k = 0; k < ap.window_starts.size(); ++k) dc.row({ap.window_starts[k], ap.sup_errors[k]});
    art.add("omega_decay.csv", dc);
    r["asymptotic"] = {{"w", to_json(ap.w)},
                       {"window_starts", ap.window_starts},
                       {"sup_errors", ap.sup_errors},
                       {"verdict", ap.verdict}};
  }
  return r;
}

// ---------------------------------------------------------------------------
// Registry

struct Command {
  std::string name;
  std::string help;
  Json defaults;
  std::set<std::string> free_keys;  // type-checked by the descriptor parsers
  std::function<Json(const Json&, Artifacts&)> run;
};

Json common(Json j) {
  j["norm"] = "euclidean";
  j["execution"] = "parallel";
  j["seed"] = 0;
  return j;
}

const std::vector<Command>& registry() {
  static const std::vector<Command> cmds = [] {
    std::vector<Command> v;
    v.push_back({"spectrum", "Estimate the spectrum by band-energy scanning",
                 common({{"signal", "cos"},
                         {"f_min", -5.0},
                         {"f_max", 5.0},
                         {"grid_step", 0.1},
                         {"half_width", 0.25},
                         {"threshold", 1e-5},
                         {"probes", 64},
                         {"probe_origin", 0.0},
                         {"method", "auto"}}),
                 {"signal"},
                 run_spectrum});
    v.push_back({"bohr", "Bohr coefficient sweeps and the almost-periodicity verdict",
                 common({{"signal", "exp"},
                         {"lambdas", {1.0, 0.5}},
                         {"t_max", 2000.0},
                         {"center", 0.0},
                         {"tol", 1e-3},
                         {"nodes_per_period", 20.0},
                         {"time_step", 0.0},
                         {"method", "auto"},
                         {"verdict", true},
                         {"scan_f_min", -5.0},
                         {"scan_f_max", 5.0},
                         {"scan_grid_step", 0.1},
                         {"scan_half_width", 0.25},
                         {"scan_threshold", 1e-5},
                         {"max_candidates", 8},
                         {"reconstruction_tol", 1e-3},
                         {"refine_radius", 0.25},
                         {"validation_length", 100.0}}),
                 {"signal"},
                 run_bohr});
    v.push_back({"dradius", "Derivative spectral-radius sequence ||D^n u||^(1/n)",
                 common({{"signal", "three_term"},
                         {"n_max", 32},
                         {"grid_lo", -20.0},
                         {"grid_hi", 20.0},
                         {"grid_step", 0.01},
                         {"convergence_tol", 1e-3},
                         {"fd_orders", 0}}),
                 {"signal"},
                 run_dradius});
    v.push_back({"rradius", "Resolvent spectral-radius sequence ||(lambda - D)^-n u||^(1/n)",
                 common({{"signal", "three_term"},
                         {"lambda", {0.5, 0.0}},
                         {"n_max", 24},
                         {"grid_lo", -20.0},
                         {"grid_hi", 20.0},
                         {"grid_step", 0.01},
                         {"convergence_tol", 1e-3},
                         {"truncation", 1e-12},
                         {"resolution", 0.006},
                         {"identity_probes", {0.0, 0.7, 1.9, 3.1}}}),
                 {"signal", "lambda"},
                 run_rradius});
    v.push_back({"delay", "Solve a delay equation, find its real roots and check spectral inclusion",
                 common({{"tau", kPi / 2.0},
                         {"A", nullptr},
                         {"dim", 1},
                         {"history", {{"kind", "cos"}}},
                         {"t_end", 20.0},
                         {"step", 1e-3},
                         {"sample_stride", 10},
                         {"roots_rho", 0.0},
                         {"inclusion", true},
                         {"inclusion_t_end", 2000.0},
                         {"inclusion_step", 1e-2},
                         {"scan_f_min", -5.0},
                         {"scan_f_max", 5.0},
                         {"scan_grid_step", 0.25},
                         {"scan_half_width", 0.5},
                         {"scan_threshold", 1e-5}}),
                 {"A", "history"},
                 run_delay});
    v.push_back({"omega", "Orbit, omega-limit set, invariance, connectedness and recurrence probes",
                 common({{"model", {{"kind", "delay"}, {"tau", kPi / 2.0}, {"max_step", 1e-2}}},
                         {"initial", {{"kind", "cos"}}},
                         {"t_max", 100.0},
                         {"sample_dt", 0.05},
                         {"blowup_bound", 1e8},
                         {"tail_fraction", 0.5},
                         {"cluster_eps", 0.0},
                         {"t_probes", {0.5, 1.0, 2.0}},
                         {"chain_eps", 0.0},
                         {"period_t_max", 10.0},
                         {"period_tol", 0.1},
                         {"automorphy", true},
                         {"automorphy_terms", 5000},
                         {"automorphy_s_step", 1.0},
                         {"automorphy_t_max", 10.0},
                         {"automorphy_t_step", 0.1},
                         {"automorphy_members", 5},
                         {"asymptotic", true},
                         {"asymptotic_horizon", 2000.0},
                         {"asymptotic_window", 10.0},
                         {"asymptotic_tol", 1e-3}}),
                 {"model", "initial"},
                 run_omega});
    return v;
  }();
  return cmds;
}

const Command& find(const std::string& name) {
  for (const auto& c : registry()) {
    if (c.name == name) return c;
  }
  throw Error(ErrorCode::kInvalidParameter, "unknown subcommand '" + name + "'");
}

void check_value(const Command& cmd, const std::string& key, const Json& value) {
  if (!cmd.defaults.contains(key)) schema(cmd.name + ": unknown key '" + key + "'");
  if (cmd.free_keys.count(key)) return;
  const Json& d = cmd.defaults.at(key);
  bool ok = true;
  if (d.is_boolean()) {
    ok = value.is_boolean();
  } else if (d.is_number_integer()) {
    ok = value.is_number_integer();
  } else if (d.is_number()) {
    ok = value.is_number();
  } else if (d.is_string()) {
    ok = value.is_string();
  } else if (d.is_array()) {
    ok = value.is_array() && std::all_of(value.begin(), value.end(), [](const Json& x) { return x.is_number(); });
  }
  if (!ok) schema(cmd.name + ": key '" + key + "' expects " + std::string(d.type_name()) + ", got " + value.dump());
}

void merge(const Command& cmd, Json& cfg, const Json& layer, const std::string& source) {
  if (!layer.is_object()) schema(source + ": configuration must be a JSON object");
  for (const auto& item : layer.items()) {
    if (item.key() == "subcommand") {
      if (!item.value().is_string() || item.value().get<std::string>() != cmd.name) {
        schema(source + ": 'subcommand' does not match '" + cmd.name + "'");
      }
      continue;
    }
    check_value(cmd, item.key(), item.value());
    cfg[item.key()] = item.value();
  }
}

Json parse_flag_value(const std::string& s) {
  try {
    return Json::parse(s);
  } catch (const Json::parse_error&) {
    return Json(s);
  }
}

bool usage_error(ErrorCode code) {
  return code == ErrorCode::kSchema || code == ErrorCode::kInvalidParameter;
}

struct Invocation {
  const Command* cmd = nullptr;
  std::string config_file;
  std::string output_dir = ".";
  bool print_config = false;
  std::map<std::string, std::string> flags;
};

int execute(const Invocation& inv, std::ostream& out, std::ostream& err) {
  const Command& cmd = *inv.cmd;
  Json cfg;
  try {
    cfg = cmd.defaults;
    if (!inv.config_file.empty()) {
      std::ifstream f(inv.config_file);
      if (!f) schema("cannot read config file '" + inv.config_file + "'");
      Json file;
      try {
        file = Json::parse(f);
      } catch (const Json::parse_error& e) {
        schema("config file '" + inv.config_file + "' is not valid JSON: " + e.what());
      }
      merge(cmd, cfg, file, inv.config_file);
    }
    Json flags = Json::object();
    for (const auto& [k, v] : inv.flags) flags[k] = parse_flag_value(v);
    merge(cmd, cfg, flags, "flags");
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  Json resolved{{"subcommand", cmd.name}};
  for (const auto& item : cfg.items()) resolved[item.key()] = item.value();
  if (inv.print_config) {
    out << resolved.dump(2) << "\n";
    return kOk;
  }

  const fs::path dir(inv.output_dir);
  try {
    Artifacts art;
    Json result = cmd.run(cfg, art);
    fs::create_directories(dir);
    Json files = Json::array();
    files.push_back(cmd.name + ".json");
    for (const auto& [name, text] : art.csv) files.push_back(name);
    Json report{{"subcommand", cmd.name}, {"config", resolved}, {"result", std::move(result)}, {"files", files}};
    for (const auto& [name, text] : art.csv) write_atomic(dir / name, text);
    write_atomic(dir / (cmd.name + ".json"), report.dump(2) + "\n");
    out << (dir / (cmd.name + ".json")).string() << "\n";
    return kOk;
  } catch (const Error& e) {
    if (usage_error(e.code())) {
      err << "error: " << cmd.name << ": " << e.what() << "\n";
      return kUsage;
    }
    Json ej{{"subcommand", cmd.name},
            {"error", {{"code", to_string(e.code())}, {"message", e.what()}}},
            {"exit_code", static_cast<int>(kNumericalFailure)},
            {"config", resolved}};
    const std::string text = ej.dump(2) + "\n";
    try {
      fs::create_directories(dir);
      write_atomic(dir / "error.json", text);
    } catch (const std::exception& io) {
      err << "error: cannot write error.json: " << io.what() << "\n";
    }
    out << text;
    return kNumericalFailure;
  } catch (const std::exception& e) {
    Json ej{{"subcommand", cmd.name},
            {"error", {{"code", "internal"}, {"message", e.what()}}},
            {"exit_code", static_cast<int>(kNumericalFailure)}};
    out << ej.dump(2) << "\n";
    return kNumericalFailure;
  }
}

}  // namespace

std::vector<std::string> subcommands() {
  std::vector<std::string> v;
  for (const auto& c : registry()) v.push_back(c.name);
  return v;
}

Json default_config(const std::string& subcommand) { return find(subcommand).defaults; }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral analysis of bounded vector-valued functions", "beurling"};
  app.require_subcommand(1);
  std::vector<std::unique_ptr<Invocation>> invs;
  for (const auto& cmd : registry()) {
    auto inv = std::make_unique<Invocation>();
    inv->cmd = &cmd;
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    sub->add_option("--config", inv->config_file, "JSON configuration file");
    sub->add_option("--output-dir", inv->output_dir, "Directory for the report and CSV files");
    sub->add_flag("--print-config", inv->print_config, "Print the resolved configuration and exit");
    for (const auto& item : cmd.defaults.items()) {
      const std::string& key = item.key();
      std::string names = "--" + key;
      std::string dashed = key;
      std::replace(dashed.begin(), dashed.end(), '_', '-');
      if (dashed != key) names += ",--" + dashed;
      sub->add_option(names, inv->flags[key], "JSON value (default " + item.value().dump() + ")");
    }
    invs.push_back(std::move(inv));
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  for (auto& inv : invs) {
    CLI::App* sub = app.get_subcommand(inv->cmd->name);
    if (!sub->parsed()) continue;
    std::map<std::string, std::string> given;
    for (const auto& [key, value] : inv->flags) {
      if (sub->get_option("--" + key)->count() > 0) given[key] = value;
    }
    inv->flags = std::move(given);
    return execute(*inv, out, err);
  }
  err << "error: no subcommand\n";
  return kUsage;
}

}  // namespace beurling::cli
