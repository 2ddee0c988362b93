#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "racmod/graph.hpp"
#include "racmod/polynomial.hpp"
#include "racmod/words.hpp"

namespace racmod {

// Growth series of Gamma_q written as Gamma(t) = (1 + (q-1)t)^d / N(t), with
//   N(t) = sum over cliques T of (-(q-1)t)^|T| (1 + (q-1)t)^(d - |T|)
// and d the size of the largest clique.
struct CliquePolynomial {
  int q = 2;
  IntPolynomial numerator;      // N(t); N(0) = 1
  int denominator_power = 0;    // d

  // (1 + (q-1)t)^d, the numerator of the growth series itself.
  IntPolynomial series_numerator() const;
};

CliquePolynomial clique_polynomial(const GroupSpec& spec, const CliqueSet& cliques);

// Sphere counts a_0..a_kmax from the recurrence N(t) * Gamma(t) = (1+(q-1)t)^d.
std::vector<BigInt> series_coefficients(const CliquePolynomial& poly, int k_max);

struct BfsOptions {
  std::size_t ball_cap = 4'000'000;
};

// Exact sphere counts by breadth-first search in the Cayley graph, each
// element stored once as its ShortLex normal form. Throws ResourceError when
// the ball would exceed options.ball_cap elements.
std::vector<BigInt> sphere_counts_bfs(const GroupSpec& spec, int k_max,
                                      const BfsOptions& options = {});

// Smallest positive real root of N, if any. std::nullopt means the series
// has no positive singularity (finite group).
std::optional<double> smallest_positive_root(const CliquePolynomial& poly,
                                             double tolerance = 1e-12);

struct GrowthRate {
  double radius = 0.0;  // smallest root r of N in (0, 1]
  double tau = 0.0;     // log(1 / r), natural log
};

// Bisection on a Sturm-isolated bracket; `tolerance` bounds the relative
// width of the final bracket on r, hence the absolute error on tau.
// Throws DomainError for finite groups or when N has no root in (0, 1].
GrowthRate growth_rate(const CliquePolynomial& poly, double tolerance = 1e-12);

struct GrowthReport {
  int q = 2;
  std::vector<BigInt> sphere_counts;
  bool finite = false;
  double radius = 0.0;  // +inf for finite groups
  double tau = 0.0;
};

GrowthReport growth_report(const GroupSpec& spec, int k_max, double tolerance = 1e-12);

struct TauShiftRow {
  int q = 2;
  double tau = 0.0;
  double residual = 0.0;  // tau(q) - tau(2) - log(q-1)
};

std::vector<TauShiftRow> tau_shift_check(const SimplicialGraph& graph,
                                         const std::vector<int>& q_list,
                                         double tolerance = 1e-12);

}  // namespace racmod
