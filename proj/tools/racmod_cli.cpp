// racmod: growth, boundary modulus and dimension bounds for right-angled
// graph products from the command line.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "racmod/approximation.hpp"
#include "racmod/critical.hpp"
#include "racmod/curves.hpp"
#include "racmod/error.hpp"
#include "racmod/growth.hpp"
#include "racmod/modulus.hpp"
#include "racmod/pressure.hpp"
#include "racmod/report.hpp"
#include "racmod/serialize.hpp"

namespace {

using namespace racmod;

enum ExitCode { kOk = 0, kError = 1, kAssumption = 2, kResource = 3, kNonConvergence = 4 };

struct Globals {
  std::string graph;
  std::string q = "";
  std::optional<double> q2;
  std::string q2_source = "user";
  int kmin = 3;
  int kmax = -1;
  std::string pgrid;
  double tol = -1;
  std::uint64_t seed = 0;
  std::string out;
  std::string format;
  bool assume_ok = false;
  bool keep_going = false;
};

std::vector<int> parse_q_list(const std::string& s, int fallback) {
  if (s.empty()) return {fallback};
  std::vector<int> qs;
  for (double v : parse_grid(s)) {
    if (v != std::floor(v)) throw ParseError("q must be an integer, got '" + s + "'");
    qs.push_back(static_cast<int>(v));
  }
  return qs;
}

int single_q(const Globals& g, int fallback) {
  const auto qs = parse_q_list(g.q, fallback);
  if (qs.size() != 1) throw ParseError("this command takes a single --q");
  return qs.front();
}

SimplicialGraph require_graph(const Globals& g) {
  if (g.graph.empty()) throw ParseError("--graph is required");
  return load_graph(g.graph);
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw Error("cannot write '" + g.out + "'");
  f << text;
}

void emit_json(const Globals& g, const Json& j) { emit(g, j.dump(2) + "\n"); }

void write_file(const std::string& path, const Json& j) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write '" + path + "'");
  f << j.dump(2) << "\n";
}

bool want_csv(const Globals& g, bool csv_default) {
  if (g.format.empty()) return csv_default;
  return g.format == "csv";
}

int run_check(const Globals& g) {
  const SimplicialGraph graph = require_graph(g);
  const int q = single_q(g, 2);
  const CliqueSet cliques = enumerate_cliques(graph);
  const AssumptionReport ar = check_assumptions(graph);
  const CliquePolynomial poly = clique_polynomial(GroupSpec(graph, q), cliques);
  Json j{{"params", {{"q", q}}},
         {"graph", graph_json(graph)},
         {"clique_counts", cliques.counts()},
         {"clique_polynomial", to_string(poly.numerator)},
         {"finite", !smallest_positive_root(poly).has_value()},
         {"assumptions", assumptions_json(ar, graph)}};
  emit_json(g, j);
  if (!ar.ok()) {
    std::cerr << "assumption failure: " << ar.describe(graph) << "\n";
    return g.assume_ok ? kOk : kAssumption;
  }
  return kOk;
}

int run_tau(const Globals& g) {
  const SimplicialGraph graph = require_graph(g);
  const auto qs = parse_q_list(g.q, 2);
  const int kmax = g.kmax < 0 ? 10 : g.kmax;
  const double tol = g.tol < 0 ? 1e-12 : g.tol;
  const GrowthReport base = growth_report(GroupSpec(graph, 2), 0, tol);
  Json rows = Json::array();
  std::ostringstream csv;
  csv.precision(17);
  csv << "q,tau,radius,residual_shift\n";
  for (int q : qs) {
    const GrowthReport r = growth_report(GroupSpec(graph, q), kmax, tol);
    Json row = growth_json(r, tol);
    double residual = std::nan("");
    if (!r.finite && !base.finite) residual = q == 2 ? 0.0 : r.tau - base.tau - std::log(q - 1.0);
    row["residual_shift"] = std::isfinite(residual) ? Json(residual) : Json(nullptr);
    rows.push_back(row);
    csv << q << ',' << r.tau << ',' << r.radius << ',' << residual << '\n';
  }
  if (want_csv(g, false)) {
    emit(g, csv.str());
  } else {
    emit_json(g, Json{{"params", {{"q", qs}, {"kmax", kmax}, {"tolerance", tol}}}, {"rows", rows}});
  }
  return kOk;
}

int run_approx(const Globals& g, int k, int adjacency) {
  const SimplicialGraph graph = require_graph(g);
  ApproximationOptions opts;
  opts.assume_ok = g.assume_ok;
  const Approximation a = build_approximation(GroupSpec(graph, 2), k, adjacency, opts);
  emit_json(g, approximation_json(a));
  return kOk;
}

int run_modulus(const Globals& g, const std::string& approx_path, double p, int k0) {
  if (approx_path.empty()) throw ParseError("--approx is required");
  const Approximation a = approximation_from_json(read_json(approx_path));
  const CurveFamily family = build_curve_family(a, k0);
  SolveOptions so;
  so.tolerance = g.tol < 0 ? 1e-8 : g.tol;
  int code = kOk;
  ModulusResult r;
  try {
    r = solve_modulus(family, p, so);
  } catch (const ModulusNonConvergence& e) {
    std::cerr << e.what() << "\n";
    r = e.best();
    code = kNonConvergence;
  }
  Json j = modulus_result_json(r, family, so.tolerance);
  j["converged"] = code == kOk;
  if (!g.q.empty()) {
    const int q = single_q(g, 2);
    j["building"] = Json{{"params", {{"q", q}, {"scale", a.scale()}}},
                         {"modulus", building_modulus(r.modulus, q, a.scale())}};
  }
  emit_json(g, j);
  return code;
}

SweepOptions sweep_options(const Globals& g, int k0, int adjacency) {
  SweepOptions so;
  so.k0 = k0;
  so.adjacency_radius = adjacency;
  so.tolerance = g.tol < 0 ? 1e-8 : g.tol;
  so.assume_ok = g.assume_ok;
  return so;
}

int run_confdim(const Globals& g, int k0, int adjacency, const std::string& weights_out,
                std::optional<double> weights_p) {
  const SimplicialGraph graph = require_graph(g);
  const int q = single_q(g, 2);
  const int kmax = g.kmax < 0 ? 7 : g.kmax;
  const auto grid = parse_grid(g.pgrid.empty() ? "1.0:3.0:0.1" : g.pgrid);
  const SweepOptions so = sweep_options(g, k0, adjacency);
  const CriticalExponentReport rep = critical_exponent(graph, g.kmin, kmax, grid, q, so);
  if (want_csv(g, true)) {
    emit(g, decay_table_csv(rep.sweep.table));
    std::cerr << "Q_est(" << q << ") = " << rep.estimate.estimate
              << (rep.estimate.bracketed ? "" : " (not bracketed)") << "\n";
  } else {
    emit_json(g, decay_table_json(rep, so, grid, q));
  }
  for (const auto& w : rep.estimate.warnings) std::cerr << "warning: " << w << "\n";
  if (!weights_out.empty()) {
    const double p = weights_p ? *weights_p
                               : select_weights_exponent(
                                     rep.sweep, estimate_critical_exponent(rep.slopes, 2).estimate);
    WeightSequence ws = weights_from_sweep(rep.sweep, p);
    try {
      const DecayFit fit = fit_decay(ws);
      ws.decay_K = fit.K;
      ws.decay_lambda = fit.lambda;
    } catch (const DomainError& e) {
      std::cerr << "warning: " << e.what() << "\n";
    }
    write_file(weights_out, weights_json(ws));
  }
  return kOk;
}

int run_pressure(const Globals& g, const std::string& weights_path, const std::string& sgrid,
                 std::optional<double> tau2) {
  if (weights_path.empty()) throw ParseError("--weights is required");
  const WeightSequence ws = weights_from_json(read_json(weights_path));
  const int q = single_q(g, 3);
  PressureOptions po;
  po.s_grid = parse_grid(sgrid);
  po.p_grid = parse_grid(g.pgrid.empty() ? "0:6:0.05" : g.pgrid);
  if (g.kmax > 0) po.k_max = g.kmax;
  po.tau2 = tau2;
  const PressureEstimate pe = estimate_pressure(ws, q, po);
  const ConvexityReport cv = convexity_check(pe);
  if (want_csv(g, false)) {
    emit(g, pressure_csv(pe));
  } else {
    emit_json(g, pressure_json(pe, cv, po.p_grid));
  }
  for (const auto& w : pe.warnings) std::cerr << "warning: " << w << "\n";
  return kOk;
}

int exit_code_for(const std::string& kind) {
  if (kind == "assumption") return kAssumption;
  if (kind == "resource") return kResource;
  if (kind == "nonconvergence") return kNonConvergence;
  return kError;
}

int run_report(const Globals& g, int k0, int adjacency, std::optional<double> weights_p,
               const std::string& sgrid, const std::string& ppgrid) {
  const SimplicialGraph graph = require_graph(g);
  ReportOptions o;
  o.q = single_q(g, 3);
  o.q2 = g.q2;
  o.q2_source = g.q2_source;
  o.k_min = g.kmin;
  o.k_max = g.kmax < 0 ? 7 : g.kmax;
  if (!g.pgrid.empty()) o.p_grid = parse_grid(g.pgrid);
  o.weights_p = weights_p;
  if (!sgrid.empty()) o.s_grid = parse_grid(sgrid);
  if (!ppgrid.empty()) o.pressure_p_grid = parse_grid(ppgrid);
  o.sweep = sweep_options(g, k0, adjacency);
  o.keep_going = g.keep_going;
  o.seed = g.seed;
  const BoundsReport r = full_report(graph, o);
  emit_json(g, report_json(r));
  for (const auto& f : r.failures) std::cerr << f.stage << ": " << f.message << "\n";
  return r.failures.empty() ? kOk : exit_code_for(r.failures.front().kind);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Growth, boundary modulus and conformal dimension bounds for graph products"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--graph", g.graph, "Graph file (.json or edge list)");
  app.add_option("--q", g.q, "Cyclic order q, or a comma list for tau");
  app.add_option("--q2", g.q2, "Lower bound for the conformal dimension at q = 2");
  app.add_option("--q2-source", g.q2_source, "Where --q2 comes from")
      ->check(CLI::IsMember({"user", "topological", "estimated"}));
  app.add_option("--kmin", g.kmin, "Smallest scale");
  app.add_option("--kmax", g.kmax, "Largest scale");
  app.add_option("--pgrid", g.pgrid, "Exponent grid start:stop:step or a comma list");
  app.add_option("--tol", g.tol, "Numerical tolerance");
  app.add_option("--seed", g.seed, "Recorded in reports; all stages are deterministic");
  app.add_option("--out", g.out, "Output file (default stdout)");
  app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--assume-ok", g.assume_ok, "Skip the graph assumption checks");
  app.add_flag("--keep-going", g.keep_going, "Record stage failures and continue");

  auto* check = app.add_subcommand("check", "Cliques, clique polynomial and assumption checks");
  auto* tau = app.add_subcommand("tau", "Growth rates and the q-shift residual");

  int k = 1, adjacency = 2, k0 = 2;
  auto* approx = app.add_subcommand("approx", "Boundary approximation at one scale");
  approx->add_option("--k", k, "Scale")->required();
  approx->add_option("--adjacency", adjacency, "Incidence radius A");

  std::string approx_path;
  double p = 2.0;
  auto* modulus = app.add_subcommand("modulus", "p-modulus of the large-curve family");
  modulus->add_option("--approx", approx_path, "Approximation JSON from 'approx'")->required();
  modulus->add_option("--p", p, "Exponent p >= 1");
  modulus->add_option("--k0", k0, "Separation scale");

  std::string weights_out;
  std::optional<double> weights_p;
  auto* confdim = app.add_subcommand("confdim", "Modulus decay table and critical exponent");
  confdim->add_option("--k0", k0, "Separation scale");
  confdim->add_option("--adjacency", adjacency, "Incidence radius A");
  confdim->add_option("--weights-out", weights_out, "Write the optimal weights to this file");
  confdim->add_option("--weights-p", weights_p, "Exponent of the written weights");

  std::string weights_path, sgrid;
  std::optional<double> tau2;
  auto* pressure = app.add_subcommand("pressure", "Pressure function of a weight sequence");
  pressure->add_option("--weights", weights_path, "Weights JSON")->required();
  pressure->add_option("--sgrid", sgrid, "s grid")->required();
  pressure->add_option("--tau2", tau2, "Growth rate at q = 2 (fixes s0)");

  std::string ppgrid;
  auto* report = app.add_subcommand("report", "Full pipeline and dimension bounds");
  report->add_option("--k0", k0, "Separation scale");
  report->add_option("--adjacency", adjacency, "Incidence radius A");
  report->add_option("--weights-p", weights_p, "Exponent of the weights used for decay and pressure");
  report->add_option("--sgrid", sgrid, "s grid for the pressure stage");
  report->add_option("--pressure-pgrid", ppgrid, "p grid for the pressure stage");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check) return run_check(g);
    if (*tau) return run_tau(g);
    if (*approx) return run_approx(g, k, adjacency);
    if (*modulus) return run_modulus(g, approx_path, p, k0);
    if (*confdim) return run_confdim(g, k0, adjacency, weights_out, weights_p);
    if (*pressure) return run_pressure(g, weights_path, sgrid, tau2);
    if (*report) return run_report(g, k0, adjacency, weights_p, sgrid, ppgrid);
  } catch (const AssumptionError& e) {
    std::cerr << "assumption failure: " << e.what() << "\n";
    return kAssumption;
  } catch (const ResourceError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kResource;
  } catch (const NonConvergenceError& e) {
    std::cerr << "no convergence: " << e.what() << "\n";
    return kNonConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
