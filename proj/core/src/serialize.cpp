#include "racmod/serialize.hpp"

#include <cmath>
#include <sstream>

#include "racmod/error.hpp"

namespace racmod {

namespace {

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json vertex_set_json(VertexSet s) {
  Json a = Json::array();
  for (int v : members(s)) a.push_back(v + 1);
  return a;
}

Json curve_list_json(const std::vector<Curve>& curves) {
  Json a = Json::array();
  for (const auto& c : curves) a.push_back(c);
  return a;
}

Json critical_json(const CriticalExponent& ce) {
  return Json{{"q", ce.q},
              {"target_slope", ce.target_slope},
              {"estimate", ce.estimate},
              {"bracketed", ce.bracketed},
              {"warnings", ce.warnings}};
}

Json sweep_params(const SweepOptions& o, int k_min, int k_max, const std::vector<double>& p_grid) {
  return Json{{"k_min", k_min},
              {"k_max", k_max},
              {"p_grid", p_grid},
              {"k0", o.k0},
              {"adjacency", o.adjacency_radius},
              {"tolerance", o.tolerance},
              {"assume_ok", o.assume_ok}};
}

}  // namespace

Json big_to_json(const BigInt& v) {
  static const BigInt limit = BigInt(1) << 53;
  if (v < limit && v > -limit) return Json(static_cast<long long>(v));
  return Json(v.str());
}

Json graph_json(const SimplicialGraph& g) {
  Json edges = Json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u + 1, v + 1});
  Json j{{"n", g.vertex_count()}, {"edges", edges}};
  if (!g.labels().empty()) j["labels"] = g.labels();
  return j;
}

SimplicialGraph graph_from_json(const Json& j) { return parse_graph(j.dump(), GraphFormat::kJson); }

Json assumptions_json(const AssumptionReport& r, const SimplicialGraph& g) {
  Json j{{"infinite", r.infinite},
         {"hyperbolic", r.hyperbolic},
         {"boundary_connected", r.boundary_connected},
         {"ok", r.ok()}};
  Json w = Json::object();
  if (r.infinite_witness) w["complete_graph"] = vertex_set_json(*r.infinite_witness);
  if (r.square_witness) {
    Json sq = Json::array();
    for (int v : *r.square_witness) sq.push_back(v + 1);
    w["square"] = sq;
  }
  if (r.separating_clique) w["separating_clique"] = vertex_set_json(*r.separating_clique);
  j["witnesses"] = w;
  j["summary"] = r.describe(g);
  return j;
}

Json growth_json(const GrowthReport& r, double tolerance) {
  Json counts = Json::array();
  for (const auto& a : r.sphere_counts) counts.push_back(big_to_json(a));
  return Json{{"params", {{"q", r.q}, {"kmax", static_cast<int>(r.sphere_counts.size()) - 1},
                          {"tolerance", tolerance}}},
              {"q", r.q},
              {"finite", r.finite},
              {"tau", r.finite ? Json(nullptr) : Json(r.tau)},
              {"radius", number_or_null(r.radius)},
              {"sphere_counts", counts}};
}

Json tau_shift_json(const std::vector<TauShiftRow>& rows, double tolerance) {
  Json a = Json::array();
  for (const auto& r : rows) {
    a.push_back(Json{{"q", r.q}, {"tau", r.tau}, {"residual_shift", r.residual}});
  }
  return Json{{"params", {{"tolerance", tolerance}}}, {"rows", a}};
}

Json approximation_json(const Approximation& a) {
  Json tiles = Json::array();
  for (std::size_t t = 0; t < a.tile_count(); ++t) {
    tiles.push_back(Json{{"id", t}, {"word", format_word(a.spec(), a.word(static_cast<int>(t)))}});
  }
  Json inc = Json::array();
  for (std::size_t i = 0; i < a.incidence().size(); ++i)
    for (int j : a.incidence()[i])
      if (static_cast<int>(i) < j) inc.push_back({i, j});
  Json dead = Json::array();
  for (const auto& w : a.dead_ends()) dead.push_back(format_word(a.spec(), w));
  return Json{{"graph", graph_json(a.spec().graph())},
              {"scale", a.scale()},
              {"adjacency", a.adjacency_radius()},
              {"ball_size", a.ball_size()},
              {"tiles", tiles},
              {"incidence", inc},
              {"ancestry", a.ancestry()},
              {"dead_ends", dead}};
}

Approximation approximation_from_json(const Json& j) {
  for (const char* key : {"graph", "scale", "adjacency", "tiles", "incidence"}) {
    if (!j.contains(key)) throw ParseError(std::string("approximation file lacks \"") + key + "\"");
  }
  const SimplicialGraph g = graph_from_json(j.at("graph"));
  ApproximationOptions opts;
  opts.assume_ok = true;
  Approximation a = build_approximation(GroupSpec(g, 2), j.at("scale").get<int>(),
                                        j.at("adjacency").get<int>(), opts);
  const Json& tiles = j.at("tiles");
  bool same = tiles.size() == a.tile_count() && j.at("incidence").size() == a.edge_count();
  for (std::size_t t = 0; same && t < tiles.size(); ++t) {
    same = tiles[t].at("word").get<std::string>() == format_word(a.spec(), a.word(static_cast<int>(t)));
  }
  for (std::size_t e = 0; same && e < j.at("incidence").size(); ++e) {
    const auto& pr = j.at("incidence")[e];
    same = a.incident(pr.at(0).get<int>(), pr.at(1).get<int>());
  }
  if (!same) throw ValidationError("approximation file does not match its graph, scale and adjacency");
  return a;
}

Json modulus_result_json(const ModulusResult& r, const CurveFamily& family, double tolerance) {
  return Json{{"params", {{"p", r.p},
                          {"scale", family.scale},
                          {"k0", family.separation_scale},
                          {"tolerance", tolerance}}},
              {"modulus", r.modulus},
              {"certificate", number_or_null(r.certificate)},
              {"lower_bound", r.lower_bound},
              {"upper_bound", r.upper_bound},
              {"gap", number_or_null(r.gap)},
              {"iterations", r.iterations},
              {"tiles", family.tile_count},
              {"weights", r.weights.values},
              {"active_curves", curve_list_json(r.active_curves)}};
}

Json decay_table_json(const CriticalExponentReport& r, const SweepOptions& options,
                      const std::vector<double>& p_grid, int q) {
  int k_min = r.sweep.table.empty() ? 0 : r.sweep.table.front().k;
  int k_max = r.sweep.table.empty() ? 0 : r.sweep.table.back().k;
  Json table = Json::array();
  for (const auto& c : r.sweep.table) {
    table.push_back(Json{{"k", c.k}, {"p", c.p}, {"modulus", c.modulus}, {"log_modulus", c.log_modulus}});
  }
  Json slopes = Json::array();
  for (const auto& s : r.slopes) {
    slopes.push_back(Json{{"p", s.p},
                          {"slope", number_or_null(s.slope)},
                          {"intercept", s.intercept},
                          {"rms_residual", s.rms_residual},
                          {"scales", s.scales}});
  }
  Json tiles = Json::object();
  for (auto [k, n] : r.sweep.tiles_per_scale) tiles[std::to_string(k)] = n;
  Json params = sweep_params(options, k_min, k_max, p_grid);
  params["q"] = q;
  return Json{{"params", params},
              {"tiles_per_scale", tiles},
              {"table", table},
              {"slopes", slopes},
              {"critical_exponent", critical_json(r.estimate)}};
}

std::string decay_table_csv(const std::vector<DecayCell>& table) {
  std::ostringstream out;
  out.precision(17);
  out << "k,p,modulus,log_modulus\n";
  for (const auto& c : table) out << c.k << ',' << c.p << ',' << c.modulus << ',' << c.log_modulus << '\n';
  return out.str();
}

Json weights_json(const WeightSequence& ws) {
  Json scales = Json::array();
  for (const auto& s : ws.scales) {
    scales.push_back(Json{{"scale", s.scale}, {"multiplicity", s.multiplicity}, {"values", s.values}});
  }
  return Json{{"params", {{"p", ws.p}}},
              {"decay", {{"K", ws.decay_K}, {"lambda", ws.decay_lambda}}},
              {"scales", scales}};
}

WeightSequence weights_from_json(const Json& j) {
  if (!j.contains("scales") || !j.at("scales").is_array()) {
    throw ParseError("weights file lacks a \"scales\" array");
  }
  WeightSequence ws;
  if (j.contains("params")) ws.p = j.at("params").value("p", 0.0);
  if (j.contains("decay")) {
    ws.decay_K = j.at("decay").value("K", 0.0);
    ws.decay_lambda = j.at("decay").value("lambda", 0.0);
  }
  for (const auto& s : j.at("scales")) {
    ScaleWeights sw;
    sw.scale = s.at("scale").get<int>();
    sw.multiplicity = s.value("multiplicity", 1.0);
    sw.values = s.at("values").get<std::vector<double>>();
    for (double v : sw.values)
      if (!(v >= 0)) throw ValidationError("weights must be nonnegative");
    ws.scales.push_back(std::move(sw));
  }
  return ws;
}

Json pressure_json(const PressureEstimate& pe, const ConvexityReport& cv,
                   const std::vector<double>& p_grid) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < pe.s_grid.size(); ++i) {
    rows.push_back(Json{{"s", pe.s_grid[i]}, {"P", pe.P_values[i]}, {"bracketed", static_cast<bool>(pe.bracketed[i])}});
  }
  return Json{{"params", {{"q", pe.q}, {"s_grid", pe.s_grid}, {"p_grid", p_grid},
                          {"scales_used", pe.scales_used}}},
              {"s0", pe.s0},
              {"p_step", pe.p_step},
              {"values", rows},
              {"convexity", {{"params", {{"epsilon", cv.epsilon}}},
                             {"triples_checked", cv.triples_checked},
                             {"violations", cv.violations},
                             {"worst_violation", cv.worst_violation}}},
              {"warnings", pe.warnings}};
}

std::string pressure_csv(const PressureEstimate& pe) {
  std::ostringstream out;
  out.precision(17);
  out << "s,P,bracketed\n";
  for (std::size_t i = 0; i < pe.s_grid.size(); ++i) {
    out << pe.s_grid[i] << ',' << pe.P_values[i] << ',' << (pe.bracketed[i] ? 1 : 0) << '\n';
  }
  return out.str();
}

Json theorem1_json(const Theorem1Bounds& b, double Q2, double tau2, int q, double lambda) {
  return Json{{"params", {{"Q2", Q2}, {"tau2", tau2}, {"q", q}, {"lambda", lambda}}},
              {"lower", b.lower},
              {"upper", b.upper},
              {"C", b.C}};
}

Json report_json(const BoundsReport& r) {
  const ReportOptions& o = r.options;
  Json j;
  j["graph"] = Json{{"params", {{"vertices", r.vertices}, {"edges", r.edges}}},
                    {"clique_counts", r.clique_counts},
                    {"assumptions", nullptr},
                    {"assumptions_bypassed", r.assumptions_bypassed}};
  j["graph"]["assumptions"] = Json{{"infinite", r.assumptions.infinite},
                                   {"hyperbolic", r.assumptions.hyperbolic},
                                   {"boundary_connected", r.assumptions.boundary_connected},
                                   {"summary", r.assumption_summary}};

  Json growth{{"params", {{"q", r.q}, {"tolerance", o.growth_tolerance}}},
              {"tau2", r.tau2},
              {"tau_q", r.tau_q},
              {"s0", optional_json(r.s0)}};
  j["growth"] = growth;

  if (r.modulus) {
    Json m = decay_table_json(*r.modulus, o.sweep, o.p_grid, 2);
    m["q_est_2"] = critical_json(*r.q_est_2);
    m["q_est_q"] = critical_json(*r.q_est_q);
    j["modulus"] = m;
  } else {
    j["modulus"] = nullptr;
  }

  if (r.decay) {
    j["decay"] = Json{{"params", {{"weights_p", *r.weights_p}, {"k_min", o.k_min}, {"k_max", o.k_max}}},
                      {"K", r.decay->K},
                      {"lambda", r.decay->lambda}};
  } else {
    j["decay"] = nullptr;
  }

  if (r.pressure) {
    Json p = pressure_json(*r.pressure, *r.convexity, o.pressure_p_grid);
    p["params"]["weights_p"] = *r.weights_p;
    p["P_at_zero"] = *r.pressure_at_zero;
    p["P_at_s0"] = *r.pressure_at_s0;
    p["convexity_lower_bound"] = *r.convexity_bound;
    j["pressure"] = p;
  } else {
    j["pressure"] = nullptr;
  }

  j["bounds"] = Json{{"params", {{"Q2", r.q2_input},
                                 {"Q2_source", r.q2_source},
                                 {"tau2", r.tau2},
                                 {"q", r.q},
                                 {"lambda", r.decay ? Json(r.decay->lambda) : Json(nullptr)}}},
                     {"lower", optional_json(r.lower_bound)},
                     {"upper", optional_json(r.upper_bound)},
                     {"C", optional_json(r.C)},
                     {"consistent", optional_json(r.consistent)}};

  Json failures = Json::array();
  for (const auto& f : r.failures) failures.push_back(Json{{"stage", f.stage}, {"kind", f.kind}, {"message", f.message}});
  j["failures"] = failures;
  j["caveats"] = r.caveats;
  j["seed"] = o.seed;
  return j;
}

}  // namespace racmod
