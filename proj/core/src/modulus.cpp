#include "racmod/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace racmod {

double rho_length(const WeightFunction& rho, std::span<const int> curve) {
  std::vector<int> tiles(curve.begin(), curve.end());
  std::sort(tiles.begin(), tiles.end());
  tiles.erase(std::unique(tiles.begin(), tiles.end()), tiles.end());
  double sum = 0.0;
  for (int t : tiles) {
    if (t < 0 || static_cast<std::size_t>(t) >= rho.values.size()) {
      throw ValidationError("unknown tile id " + std::to_string(t) + " at scale " +
                            std::to_string(rho.scale));
    }
    sum += rho.values[t];
  }
  return sum;
}

double p_mass(const WeightFunction& rho, double p) {
  if (!(p >= 1.0)) throw DomainError("p-mass needs p >= 1");
  double sum = 0.0;
  for (double v : rho.values) sum += std::pow(v, p);
  return sum;
}

Admissibility is_admissible(const WeightFunction& rho, const CurveFamily& family,
                            double tolerance) {
  Admissibility out;
  if (family.empty()) {
    out.admissible = true;
    out.min_length = std::numeric_limits<double>::infinity();
    return out;
  }
  const auto sc = shortest_curves(family, rho.values);
  out.min_length = sc.front().length;
  out.worst = sc.front().curve;
  out.admissible = out.min_length >= 1.0 - tolerance;
  return out;
}

double building_modulus(double apartment_modulus, int q, int k) {
  if (q < 2) throw DomainError("q must be >= 2");
  if (k < 0) throw DomainError("scale k must be >= 0");
  return std::pow(static_cast<double>(q - 1), k) * apartment_modulus;
}

double building_modulus(const ModulusResult& apartment, int q, int k) {
  if (k != apartment.weights.scale) {
    throw DomainError("scale " + std::to_string(k) + " does not match the apartment scale " +
                      std::to_string(apartment.weights.scale));
  }
  return building_modulus(apartment.modulus, q, k);
}

namespace {

std::vector<int> tile_set(const Curve& c) {
  std::vector<int> t(c.begin(), c.end());
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

}  // namespace

ModulusResult solve_modulus(const CurveFamily& family, double p, const SolveOptions& options) {
  if (!(p >= 1.0)) throw DomainError("modulus exponent p must be >= 1");
  ModulusResult res;
  res.p = p;
  res.weights.scale = family.scale;
  res.weights.values.assign(family.tile_count, 0.0);
  if (family.empty()) {
    res.certificate = std::numeric_limits<double>::infinity();
    return res;
  }

  std::set<std::vector<int>> seen;
  std::vector<Curve> active;
  std::vector<std::vector<int>> rows;
  auto add = [&](const Curve& c) {
    std::vector<int> key = tile_set(c);
    if (seen.insert(key).second) {
      active.push_back(c);
      rows.push_back(std::move(key));
      return true;
    }
    return false;
  };

  if (!options.initial_curves.empty()) {
    for (const Curve& c : options.initial_curves) {
      for (int t : c) {
        if (t < 0 || static_cast<std::size_t>(t) >= family.tile_count) {
          throw ValidationError("initial curve meets unknown tile " + std::to_string(t));
        }
      }
      add(c);
    }
  } else {
    const std::vector<double> ones(family.tile_count, 1.0);
    for (const auto& wc : shortest_curves(family, ones)) add(wc.curve);
  }

  std::vector<double> rho(family.tile_count, 0.0);
  double min_len = 0.0;
  double lower = 0.0;
  IpmOptions inner = options.inner;
  for (int round = 1; round <= options.max_rounds; ++round) {
    res.iterations = round;
    // Restrict to tiles met by some active curve; the rest are 0 at the optimum.
    std::vector<int> support;
    for (const auto& r : rows) support.insert(support.end(), r.begin(), r.end());
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    PowerProgram prog;
    prog.p = p;
    prog.variables = support.size();
    prog.rows.reserve(rows.size());
    for (const auto& r : rows) {
      std::vector<int> local;
      local.reserve(r.size());
      for (int t : r)
        local.push_back(static_cast<int>(std::lower_bound(support.begin(), support.end(), t) -
                                         support.begin()));
      prog.rows.push_back(std::move(local));
    }
    const IpmResult sol = solve_power_program(prog, inner);
    std::fill(rho.begin(), rho.end(), 0.0);
    for (std::size_t i = 0; i < support.size(); ++i) rho[support[i]] = std::max(sol.x[i], 0.0);
    lower = sol.dual_bound;

    const auto sc = shortest_curves(family, rho, options.curves_per_sector, 1.0 - options.tolerance);
    min_len = sc.front().length;
    if (min_len >= 1.0 - options.tolerance) break;

    bool grew = false;
    for (const auto& wc : sc) {
      if (wc.length >= 1.0 - options.tolerance) break;
      grew |= add(wc.curve);
    }
    if (!grew) {
      // The separation returned only active curves: the inner solve is not
      // accurate enough. Tighten once, then accept.
      if (inner.tolerance > 1e-15) {
        inner.tolerance *= 1e-2;
        continue;
      }
      break;
    }
    if (round == options.max_rounds) {
      ModulusResult best = res;
      const double scale = min_len > 0 ? 1.0 / min_len : 0.0;
      best.weights.values = rho;
      for (double& v : best.weights.values) v *= scale;
      best.modulus = p_mass(best.weights, p);
      best.active_curves = active;
      best.certificate = min_len > 0 ? 0.0 : -1.0;
      throw ModulusNonConvergence(
          "modulus constraint generation did not converge in " +
              std::to_string(options.max_rounds) + " rounds (min rho-length " +
              std::to_string(min_len) + ")",
          std::move(best));
    }
  }

  res.weights.values = rho;
  res.modulus = p_mass(res.weights, p);
  res.active_curves = std::move(active);
  res.certificate = min_len - 1.0;
  const double upper = min_len < 1.0 ? res.modulus / std::pow(min_len, p) : res.modulus;
  // Widened by a floating-point summation allowance so that the enclosure
  // also covers rounding in the two evaluations.
  const double slack = 8.0 * static_cast<double>(family.tile_count + res.active_curves.size()) *
                       std::numeric_limits<double>::epsilon();
  res.lower_bound = lower - slack * std::max(std::abs(lower), upper);
  res.upper_bound = upper * (1.0 + slack);
  res.gap = lower > 0 ? std::max(0.0, upper / lower - 1.0) : std::numeric_limits<double>::infinity();
  return res;
}

ModulusResult solve_modulus(const ModulusProblem& problem, const SolveOptions& options) {
  return solve_modulus(problem.family, problem.p, options);
}

}  // namespace racmod
