#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "racmod/graph.hpp"
#include "racmod/modulus.hpp"

namespace racmod {

// One (k, p) cell of the decay table, on the apartment side (q = 2).
struct DecayCell {
  int k = 0;
  double p = 1.0;
  double modulus = 0.0;
  double log_modulus = 0.0;
};

struct SlopeFit {
  double p = 1.0;
  double slope = 0.0;        // sigma(p): d log Mod / dk
  double intercept = 0.0;
  double rms_residual = 0.0;
  std::vector<int> scales;   // the k values used
};

struct CriticalExponent {
  int q = 2;
  double target_slope = 0.0;  // -log(q-1)
  double estimate = 0.0;      // Q_est(q)
  bool bracketed = false;     // sigma crosses the target inside the grid
  std::vector<std::string> warnings;
};

struct FitOptions {
  // Quality warning when a slope fit's RMS residual (in log units) exceeds this.
  double residual_threshold = 0.1;
};

// Least-squares slope of log Mod against k for every p, over the last
// ceil(half) of the distinct scales in the table.
std::vector<SlopeFit> fit_slopes(const std::vector<DecayCell>& table);

// Q_est(q): the p where sigma(p) = -log(q-1), by linear interpolation along
// the p grid (the zero crossing of sigma when q = 2).
CriticalExponent estimate_critical_exponent(const std::vector<SlopeFit>& slopes, int q,
                                            const FitOptions& options = {});

struct SweepOptions {
  int k0 = 2;                 // separation scale (d0 proxy)
  int adjacency_radius = 2;   // A
  double tolerance = 1e-8;
  bool assume_ok = false;
  std::size_t tile_cap = 2'000'000;
};

struct ModulusSweep {
  std::vector<DecayCell> table;
  // Solver output per (k, p), for weights and audits.
  std::map<std::pair<int, double>, ModulusResult> results;
  std::map<int, std::size_t> tiles_per_scale;
};

// Solves Mod_p(F0, G_k^W) on the graph's Coxeter group for every k in
// [k_min, k_max] and p in p_grid. Active sets are carried from one p to the
// next on each scale.
ModulusSweep modulus_sweep(const SimplicialGraph& graph, int k_min, int k_max,
                           const std::vector<double>& p_grid, const SweepOptions& options = {});

struct CriticalExponentReport {
  ModulusSweep sweep;
  std::vector<SlopeFit> slopes;
  CriticalExponent estimate;
};

// Requires at least three scales and a grid inside [1, p_max].
CriticalExponentReport critical_exponent(const SimplicialGraph& graph, int k_min, int k_max,
                                         const std::vector<double>& p_grid, int q,
                                         const SweepOptions& options = {},
                                         const FitOptions& fit = {});

// "a:b:step" -> inclusive grid; a single number -> one point.
std::vector<double> parse_grid(const std::string& spec);

}  // namespace racmod
