#pragma once

#include <optional>
#include <string>
#include <vector>

#include "racmod/critical.hpp"

namespace racmod {

// Weights of one scale. Every value stands for `multiplicity` tiles, which
// lets synthetic families use non-integer shell sizes.
struct ScaleWeights {
  int scale = 0;
  std::vector<double> values;
  double multiplicity = 1.0;
};

// rho on G = union of the G_k^W, with |w| the scale of w.
struct WeightSequence {
  double p = 0.0;  // modulus exponent the weights were solved at (0 if synthetic)
  std::vector<ScaleWeights> scales;
  double decay_K = 0.0;
  double decay_lambda = 0.0;
};

// Collects rho_k from a modulus sweep at exponent p.
WeightSequence weights_from_sweep(const ModulusSweep& sweep, double p);

// Synthetic family: rho(w) = K lambda^k on shells of size exp(tau k).
WeightSequence geometric_weights(double tau, double K, double lambda, int k_min, int k_max);

struct DecayFit {
  double K = 0.0;
  double lambda = 0.0;
};

// Envelope rho_k(w) <= K lambda^k: log lambda is the least-squares slope of
// log max_w rho_k(w) against k, K the smallest prefactor covering every
// scale. Throws DomainError("no exponential envelope") when lambda >= 1.
DecayFit fit_decay(const WeightSequence& ws);

// Among the grid exponents above `above` whose weights admit a decay fit,
// the one with the smallest lambda (the sharpest upper bound). Throws
// DomainError when none does.
double select_weights_exponent(const ModulusSweep& sweep, double above);

// (tau2 + log(q-1)) / log(1/lambda)
double upper_bound_from_decay(double tau2, int q, double lambda);

// -tau2 / log(q-1); q >= 3.
double s_zero(double tau2, int q);

struct PressureOptions {
  std::vector<double> s_grid;
  std::vector<double> p_grid;
  int k_max = 0;                   // 0: use every scale present
  std::optional<double> tau2;      // s0 from tau2 when given, else from shell sizes
};

struct PressureEstimate {
  int q = 3;
  std::vector<double> s_grid;
  std::vector<double> P_values;
  std::vector<bool> bracketed;     // sign change of g(s, p) found inside the p grid
  double s0 = 0.0;
  double p_step = 0.0;
  std::vector<int> scales_used;    // window of the shell-rate fits
  std::vector<std::string> warnings;
};

// Shell term T_k(s,p) = sum_{|w| = k} (q-1)^{s k} rho(w)^p over tiles with
// rho(w) > 0; its exponential rate g(s,p) is the least-squares slope of
// log T_k over the last ceil(half) of the scales. P_est(s) is the first
// zero crossing of g along the p grid, linearly interpolated.
PressureEstimate estimate_pressure(const WeightSequence& ws, int q, const PressureOptions& options);

struct ConvexityReport {
  std::size_t triples_checked = 0;
  std::size_t violations = 0;
  double worst_violation = 0.0;  // max of P(c) - chord(c) - eps, <= 0 when convex
  double epsilon = 0.0;
};

// For every grid triple a < c < b with a >= s0, checks
// P(c) <= t P(a) + (1-t) P(b) + epsilon, c = t a + (1-t) b. The default
// epsilon is twice the p grid step.
ConvexityReport convexity_check(const PressureEstimate& pe, std::optional<double> epsilon = {});

// P0 (1 - 1/s0); with s0 = -tau2/log(q-1) this is P0 (1 + log(q-1)/tau2).
double convexity_lower_bound(double P0, double s0);

}  // namespace racmod
