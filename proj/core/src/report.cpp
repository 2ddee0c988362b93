#include "racmod/report.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "racmod/error.hpp"
#include "racmod/growth.hpp"

namespace racmod {

Theorem1Bounds theorem1_bounds(double Q2, double tau2, int q, double lambda) {
  if (!(Q2 >= 1.0)) throw DomainError("Q2 must be >= 1");
  if (!(tau2 > 0.0)) throw DomainError("tau2 must be > 0");
  if (q < 2) throw DomainError("q must be >= 2");
  if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("lambda must lie in (0, 1)");
  const double lq = std::log(static_cast<double>(q - 1));
  Theorem1Bounds b;
  b.C = 1.0 / std::log(1.0 / lambda);
  b.lower = q == 2 ? Q2 : Q2 * (1.0 + lq / tau2);
  b.upper = q == 2 ? tau2 * b.C : (tau2 + lq) * b.C;
  return b;
}

namespace {

// Runs f; on failure either records it (keep_going) or rethrows the same
// error class with the stage name prefixed. Returns whether f succeeded.
bool run_stage(BoundsReport& rep, const std::string& stage, const std::function<void()>& f) {
  auto fail = [&](const std::exception& e, const char* kind) {
    rep.failures.push_back({stage, kind, e.what()});
    return rep.options.keep_going;
  };
  const std::string prefix = stage + ": ";
  try {
    f();
    return true;
  } catch (const AssumptionError& e) {
    if (!fail(e, "assumption")) throw AssumptionError(prefix + e.what());
  } catch (const ResourceError& e) {
    if (!fail(e, "resource")) throw ResourceError(prefix + e.what());
  } catch (const NonConvergenceError& e) {
    if (!fail(e, "nonconvergence")) throw NonConvergenceError(prefix + e.what());
  } catch (const DomainError& e) {
    if (!fail(e, "domain")) throw DomainError(prefix + e.what());
  } catch (const Error& e) {
    if (!fail(e, "error")) throw Error(prefix + e.what());
  }
  return false;
}

std::vector<double> default_s_grid(double s0) {
  std::vector<double> g{s0};
  for (double s = std::ceil(s0 / 0.25) * 0.25; s <= 1.0 + 1e-12; s += 0.25) {
    const double r = std::round(s * 1e12) / 1e12;
    if (r > s0 + 1e-9) g.push_back(r == 0.0 ? 0.0 : r);
  }
  return g;
}

double value_at(const PressureEstimate& pe, double s) {
  for (std::size_t i = 0; i < pe.s_grid.size(); ++i)
    if (std::abs(pe.s_grid[i] - s) < 1e-12) return pe.P_values[i];
  throw DomainError("s grid does not contain the requested point");
}

}  // namespace

BoundsReport full_report(const SimplicialGraph& graph, const ReportOptions& options) {
  BoundsReport rep;
  rep.options = options;
  if (rep.options.p_grid.empty()) rep.options.p_grid = parse_grid("1.0:3.0:0.1");
  if (rep.options.pressure_p_grid.empty()) rep.options.pressure_p_grid = parse_grid("0:6:0.05");
  const ReportOptions& opt = rep.options;
  if (opt.q < 2) throw DomainError("q must be >= 2");
  rep.q = opt.q;

  rep.vertices = graph.vertex_count();
  rep.edges = graph.edge_count();
  rep.assumptions = check_assumptions(graph);
  rep.assumption_summary = rep.assumptions.describe(graph);
  if (!rep.assumptions.ok()) {
    if (!opt.sweep.assume_ok) throw AssumptionError("check: " + rep.assumption_summary);
    rep.assumptions_bypassed = true;
  }

  bool have_tau = run_stage(rep, "growth", [&] {
    const CliqueSet cliques = enumerate_cliques(graph);
    rep.clique_counts = cliques.counts();
    rep.tau2 = growth_rate(clique_polynomial(GroupSpec(graph, 2), cliques), opt.growth_tolerance).tau;
    rep.tau_q = opt.q == 2 ? rep.tau2
                           : growth_rate(clique_polynomial(GroupSpec(graph, opt.q), cliques),
                                         opt.growth_tolerance)
                                 .tau;
    if (opt.q >= 3) rep.s0 = s_zero(rep.tau2, opt.q);
  });

  bool have_modulus = run_stage(rep, "modulus", [&] {
    SweepOptions so = opt.sweep;
    so.assume_ok = true;  // already gated above
    rep.modulus = critical_exponent(graph, opt.k_min, opt.k_max, opt.p_grid, 2, so);
    rep.q_est_2 = rep.modulus->estimate;
    rep.q_est_q = estimate_critical_exponent(rep.modulus->slopes, opt.q);
  });

  if (opt.q2) {
    rep.q2_input = *opt.q2;
    rep.q2_source = opt.q2_source;
  } else if (have_modulus) {
    rep.q2_input = std::max(1.0, rep.q_est_2->estimate);
    rep.q2_source = "estimated";
  }

  bool have_decay = have_modulus && run_stage(rep, "decay", [&] {
    const double p = opt.weights_p ? *opt.weights_p
                                   : select_weights_exponent(rep.modulus->sweep, rep.q_est_2->estimate);
    rep.weights_p = p;
    WeightSequence ws = weights_from_sweep(rep.modulus->sweep, p);
    rep.decay = fit_decay(ws);
  });

  if (have_decay && have_tau && opt.q >= 3) {
    run_stage(rep, "pressure", [&] {
      WeightSequence ws = weights_from_sweep(rep.modulus->sweep, *rep.weights_p);
      ws.decay_K = rep.decay->K;
      ws.decay_lambda = rep.decay->lambda;
      PressureOptions po;
      po.s_grid = opt.s_grid.empty() ? default_s_grid(*rep.s0) : opt.s_grid;
      po.p_grid = opt.pressure_p_grid;
      po.tau2 = rep.tau2;
      rep.pressure = estimate_pressure(ws, opt.q, po);
      rep.convexity = convexity_check(*rep.pressure);
      rep.pressure_at_s0 = value_at(*rep.pressure, *rep.s0);
      rep.pressure_at_zero = value_at(*rep.pressure, 0.0);
      rep.convexity_bound = convexity_lower_bound(*rep.pressure_at_zero, *rep.s0);
    });
  }

  if (have_tau && (opt.q2 || have_modulus)) {
    run_stage(rep, "bounds", [&] {
      const double lq = std::log(static_cast<double>(opt.q - 1));
      if (!(rep.q2_input >= 1.0)) throw DomainError("Q2 must be >= 1");
      rep.lower_bound = opt.q == 2 ? rep.q2_input : rep.q2_input * (1.0 + lq / rep.tau2);
      if (have_decay) {
        const Theorem1Bounds b = theorem1_bounds(rep.q2_input, rep.tau2, opt.q, rep.decay->lambda);
        rep.lower_bound = b.lower;
        rep.upper_bound = b.upper;
        rep.C = b.C;
        if (rep.q2_input <= rep.tau2 * b.C) rep.consistent = b.lower <= b.upper;
      }
    });
  }

  rep.caveats.push_back(
      "building modulus modelled as (q-1)^k times the apartment modulus with comparability "
      "constant D = 1");
  rep.caveats.push_back(
      "C = 1/log(1/lambda) comes from the fitted weight decay; the theorem only asserts that "
      "some C exists");
  if (rep.q2_source == "estimated") {
    rep.caveats.push_back("Q2 was not supplied; Q_est(2) from the modulus sweep was used");
  }
  if (rep.consistent && !*rep.consistent) {
    rep.caveats.push_back("lower bound exceeds upper bound: the decay fit is suspect");
  }
  return rep;
}

}  // namespace racmod
