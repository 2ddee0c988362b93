#include "racmod/growth.hpp"

#include <cmath>
#include <limits>
#include <unordered_set>

#include "racmod/error.hpp"

namespace racmod {

namespace {

IntPolynomial power_of(const IntPolynomial& base, int e) {
  IntPolynomial r(std::vector<BigInt>{1});
  for (int i = 0; i < e; ++i) r = r * base;
  return r;
}

}  // namespace

IntPolynomial CliquePolynomial::series_numerator() const {
  return power_of(IntPolynomial(std::vector<BigInt>{1, q - 1}), denominator_power);
}

CliquePolynomial clique_polynomial(const GroupSpec& spec, const CliqueSet& cliques) {
  CliquePolynomial out;
  out.q = spec.q();
  const int d = static_cast<int>(cliques.max_size());
  out.denominator_power = d;
  const BigInt qm1 = spec.q() - 1;
  const IntPolynomial one_plus(std::vector<BigInt>{1, qm1});
  const IntPolynomial minus_t(std::vector<BigInt>{0, -qm1});
  IntPolynomial sum;
  for (int m = 0; m <= d; ++m) {
    const BigInt count = cliques.count(static_cast<std::size_t>(m));
    if (count == 0) continue;
    sum = sum + count * (power_of(minus_t, m) * power_of(one_plus, d - m));
  }
  out.numerator = sum;
  return out;
}

std::vector<BigInt> series_coefficients(const CliquePolynomial& poly, int k_max) {
  if (k_max < 0) throw DomainError("k_max must be >= 0");
  const IntPolynomial& n = poly.numerator;
  if (n.is_zero() || n.coefficient(0) != 1) {
    throw DomainError("clique polynomial has N(0) != 1; recurrence is not viable");
  }
  const IntPolynomial top = poly.series_numerator();
  std::vector<BigInt> a(static_cast<std::size_t>(k_max) + 1);
  for (int k = 0; k <= k_max; ++k) {
    BigInt v = top.coefficient(k);
    for (int j = 1; j <= std::min(k, n.degree()); ++j) v -= n.coefficient(j) * a[k - j];
    a[k] = v;
  }
  return a;
}

std::vector<BigInt> sphere_counts_bfs(const GroupSpec& spec, int k_max,
                                      const BfsOptions& options) {
  if (k_max < 0) throw DomainError("k_max must be >= 0");
  const std::vector<Letter> gens = generators(spec);
  std::vector<BigInt> counts{1};
  std::vector<Word> sphere{Word{}};
  std::size_t ball = 1;
  for (int k = 0; k < k_max; ++k) {
    std::unordered_set<std::string> seen;
    std::vector<Word> next;
    for (const Word& g : sphere) {
      for (Letter x : gens) {
        Word w = g;
        w.push_back(x);
        Word h = normal_form(spec, w);
        if (static_cast<int>(h.size()) != k + 1) continue;
        if (seen.insert(word_key(h)).second) {
          if (ball + next.size() + 1 > options.ball_cap) {
            throw ResourceError("ball size exceeds cap of " + std::to_string(options.ball_cap) +
                                " elements at radius " + std::to_string(k + 1));
          }
          next.push_back(std::move(h));
        }
      }
    }
    ball += next.size();
    counts.emplace_back(next.size());
    sphere = std::move(next);
  }
  return counts;
}

namespace {

Rational exact(double x) { return Rational(x); }

// Bisection on (lo, hi] keeping exactly the smallest root inside.
double bisect_smallest(const SturmChain& chain, double lo, double hi, double tolerance) {
  while (hi - lo > tolerance * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (chain.roots_in(exact(lo), exact(mid)) >= 1) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::optional<double> smallest_positive_root(const CliquePolynomial& poly, double tolerance) {
  const RatPolynomial p = to_rational(poly.numerator);
  if (p.degree() <= 0) return std::nullopt;
  const SturmChain chain(p);
  const Rational bound = root_bound(chain.squarefree());
  const double hi = static_cast<double>(bound) * 2.0;
  if (chain.roots_in(Rational(0), exact(hi)) == 0) return std::nullopt;
  return bisect_smallest(chain, 0.0, hi, tolerance);
}

GrowthRate growth_rate(const CliquePolynomial& poly, double tolerance) {
  if (!(tolerance > 0)) throw DomainError("tolerance must be positive");
  const RatPolynomial p = to_rational(poly.numerator);
  if (p.degree() <= 0) {
    throw DomainError("finite or amenable-growth input: N(t) is constant (finite group)");
  }
  const SturmChain chain(p);
  // A smallest root at t = 1 means subexponential (amenable) growth.
  const int at_one = p(Rational(1)) == 0 ? 1 : 0;
  if (chain.roots_in(Rational(0), Rational(1)) - at_one == 0) {
    throw DomainError("finite or amenable-growth input: N(t) has no root in (0, 1)");
  }
  GrowthRate out;
  out.radius = bisect_smallest(chain, 0.0, 1.0, tolerance);
  out.tau = -std::log(out.radius);
  return out;
}

GrowthReport growth_report(const GroupSpec& spec, int k_max, double tolerance) {
  const CliquePolynomial poly = clique_polynomial(spec, enumerate_cliques(spec.graph()));
  GrowthReport r;
  r.q = spec.q();
  r.sphere_counts = series_coefficients(poly, k_max);
  if (const auto root = smallest_positive_root(poly, tolerance); !root) {
    r.finite = true;
    r.radius = std::numeric_limits<double>::infinity();
    r.tau = 0.0;
  } else if (*root >= 1.0 - tolerance) {
    // Subexponential growth: the smallest root sits at t = 1.
    r.radius = 1.0;
    r.tau = 0.0;
  } else {
    const GrowthRate g = growth_rate(poly, tolerance);
    r.radius = g.radius;
    r.tau = g.tau;
  }
  return r;
}

std::vector<TauShiftRow> tau_shift_check(const SimplicialGraph& graph,
                                         const std::vector<int>& q_list, double tolerance) {
  if (graph.is_complete()) {
    throw AssumptionError("tau shift check needs an infinite group; the graph is complete");
  }
  const CliqueSet cliques = enumerate_cliques(graph);
  const double tau2 = growth_rate(clique_polynomial(GroupSpec(graph, 2), cliques), tolerance).tau;
  std::vector<TauShiftRow> rows;
  for (int q : q_list) {
    const GroupSpec spec(graph, q);
    TauShiftRow row;
    row.q = q;
    row.tau = q == 2 ? tau2 : growth_rate(clique_polynomial(spec, cliques), tolerance).tau;
    row.residual = row.tau - tau2 - std::log(static_cast<double>(q - 1));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace racmod
