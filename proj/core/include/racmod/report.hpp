#pragma once

#include <optional>
#include <string>
#include <vector>

#include "racmod/critical.hpp"
#include "racmod/graph.hpp"
#include "racmod/pressure.hpp"

namespace racmod {

struct Theorem1Bounds {
  double lower = 0.0;  // Q2 (1 + log(q-1)/tau2)
  double upper = 0.0;  // (tau2 + log(q-1)) / log(1/lambda)
  double C = 0.0;      // 1 / log(1/lambda)
};

// Domain: Q2 >= 1, tau2 > 0, q >= 2, 0 < lambda < 1; each violation raises
// a DomainError naming the parameter.
Theorem1Bounds theorem1_bounds(double Q2, double tau2, int q, double lambda);

struct ReportOptions {
  int q = 3;
  std::optional<double> q2;             // lower bound for Q(2); Q_est(2) when absent
  std::string q2_source = "user";       // user | topological | estimated
  int k_min = 3;
  int k_max = 7;
  std::vector<double> p_grid;           // modulus grid; default 1.0:3.0:0.1
  std::optional<double> weights_p;      // default: select_weights_exponent above Q_est(2)
  std::vector<double> s_grid;           // default: s0, then multiples of 1/4 up to 1
  std::vector<double> pressure_p_grid;  // default 0:6:0.05
  int sphere_kmax = 10;
  double growth_tolerance = 1e-12;
  SweepOptions sweep;
  bool keep_going = false;
  std::uint64_t seed = 0;               // recorded; every stage is deterministic
};

struct StageFailure {
  std::string stage;
  std::string kind;  // assumption | resource | nonconvergence | domain | error
  std::string message;
};

struct BoundsReport {
  // Graph summary.
  int vertices = 0;
  std::size_t edges = 0;
  std::vector<std::size_t> clique_counts;
  AssumptionReport assumptions;
  std::string assumption_summary;
  bool assumptions_bypassed = false;

  int q = 3;
  double tau2 = 0.0;
  double tau_q = 0.0;
  std::optional<double> s0;

  double q2_input = 0.0;
  std::string q2_source;

  std::optional<CriticalExponentReport> modulus;   // sweep, slopes
  std::optional<CriticalExponent> q_est_2;
  std::optional<CriticalExponent> q_est_q;
  std::optional<double> weights_p;
  std::optional<DecayFit> decay;

  std::optional<PressureEstimate> pressure;
  std::optional<ConvexityReport> convexity;
  std::optional<double> pressure_at_zero;
  std::optional<double> pressure_at_s0;
  std::optional<double> convexity_bound;   // P_est(0) (1 - 1/s0)

  std::optional<double> lower_bound;
  std::optional<double> upper_bound;
  std::optional<double> C;
  // lower <= upper is expected whenever Q2 <= tau2 / log(1/lambda).
  std::optional<bool> consistent;

  ReportOptions options;
  std::vector<StageFailure> failures;
  std::vector<std::string> caveats;
};

// cliques -> tau -> approximations -> modulus sweep -> decay fit -> pressure
// -> bounds. Errors are rethrown with the stage name prefixed, unless
// options.keep_going, in which case they are recorded and later stages that
// do not depend on the failed one still run.
BoundsReport full_report(const SimplicialGraph& graph, const ReportOptions& options);

}  // namespace racmod
