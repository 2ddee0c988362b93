#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "racmod/curves.hpp"
#include "racmod/error.hpp"
#include "racmod/ipm.hpp"

namespace racmod {

// rho: tiles -> [0, inf) on one scale.
struct WeightFunction {
  int scale = 0;
  std::vector<double> values;
};

// L_rho(curve): sum of rho over the distinct tiles the curve meets.
double rho_length(const WeightFunction& rho, std::span<const int> curve);

// M_p(rho) = sum over tiles of rho^p.
double p_mass(const WeightFunction& rho, double p);

struct Admissibility {
  bool admissible = false;
  double min_length = 0.0;
  Curve worst;  // a curve attaining min_length; empty for an empty family
};

// min over the family of L_rho >= 1 - tolerance, via shortest_curves.
Admissibility is_admissible(const WeightFunction& rho, const CurveFamily& family,
                            double tolerance = 0.0);

struct ModulusProblem {
  CurveFamily family;
  double p = 2.0;
};

struct SolveOptions {
  double tolerance = 1e-8;   // admissibility slack accepted at termination
  int max_rounds = 2000;     // constraint generation rounds
  // Violated curves added per source sector and round.
  std::size_t curves_per_sector = 8;
  // Initial active set; when empty, the hop-count shortest curves are used.
  std::vector<Curve> initial_curves;
  IpmOptions inner;
};

struct ModulusResult {
  double p = 2.0;
  double modulus = 0.0;        // M_p(weights)
  WeightFunction weights;
  std::vector<Curve> active_curves;
  // min L_rho - 1 over the whole family at termination; >= -tolerance.
  double certificate = 0.0;
  // Certified enclosure of the optimum: a dual value below and the mass of
  // the rescaled admissible weights rho / min L_rho above.
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  // upper_bound / lower_bound - 1
  double gap = 0.0;
  int iterations = 0;
};

// Thrown when max_rounds is hit; carries the best weights rescaled to be
// admissible.
class ModulusNonConvergence : public NonConvergenceError {
 public:
  ModulusNonConvergence(const std::string& what, ModulusResult best)
      : NonConvergenceError(what), best_(std::move(best)) {}
  const ModulusResult& best() const { return best_; }

 private:
  ModulusResult best_;
};

// Constraint generation: solve the program restricted to the active curves,
// add the most violated curves of every source sector (shortest-path
// separation), repeat until no curve is shorter than 1 - tolerance.
ModulusResult solve_modulus(const CurveFamily& family, double p, const SolveOptions& options = {});
ModulusResult solve_modulus(const ModulusProblem& problem, const SolveOptions& options = {});

// (q-1)^k times the apartment modulus: the building-side value with the
// comparability constant taken as 1.
double building_modulus(double apartment_modulus, int q, int k);
double building_modulus(const ModulusResult& apartment, int q, int k);

struct BruteForceOptions {
  std::size_t max_tiles = 12;
  std::size_t max_curves_lp = 10;   // vertex enumeration limit for p = 1
  double gap_tolerance = 1e-10;
  int max_sweeps = 2'000'000;
};

// Independent oracle for small explicit families. p > 1: grid-seeded exact
// coordinate ascent on the dual, stopped on a primal/dual gap certificate.
// p = 1: vertex enumeration of the dual linear program.
double brute_force_modulus(const CurveFamily& family, double p,
                           const BruteForceOptions& options = {});
double brute_force_modulus(const ModulusProblem& problem, const BruteForceOptions& options = {});

}  // namespace racmod
