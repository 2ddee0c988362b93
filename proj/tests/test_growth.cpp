#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "racmod/error.hpp"
#include "racmod/growth.hpp"
#include "racmod/words.hpp"

using namespace racmod;

namespace {

const double kTau5 = std::log((3.0 + std::sqrt(5.0)) / 2.0);
const double kTauDodec = std::log(4.0 + std::sqrt(15.0));

std::vector<long long> to_ll(const std::vector<BigInt>& v) {
  std::vector<long long> out;
  for (const auto& x : v) out.push_back(static_cast<long long>(x));
  return out;
}

Word random_word(std::mt19937& rng, const GroupSpec& spec, int len) {
  const auto gens = generators(spec);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  Word w;
  for (int i = 0; i < len; ++i) w.push_back(gens[pick(rng)]);
  return w;
}

}  // namespace

TEST_CASE("normal forms are canonical") {
  const GroupSpec spec(graphs::cycle(5), 3);
  std::mt19937 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const Word w = random_word(rng, spec, 1 + trial % 12);
    const Word nf = normal_form(spec, w);
    CHECK(normal_form(spec, nf) == nf);
    // w w^{-1} is trivial and the normal form of w^{-1} w^{-1}^{-1} is nf again.
    Word ww = w;
    const Word inv = inverse(spec, w);
    ww.insert(ww.end(), inv.begin(), inv.end());
    CHECK(normal_form(spec, ww).empty());
    CHECK(normal_form(spec, inverse(spec, inv)) == nf);
    CHECK(nf.size() <= w.size());
    CHECK(distance(spec, w, nf) == 0);
  }
}

TEST_CASE("commuting letters reorder, same-vertex letters merge") {
  const GroupSpec spec(graphs::cycle(5), 3);
  const Letter a{0, 1}, b{1, 1}, c{2, 1};
  CHECK(normal_form(spec, Word{b, a}) == Word{a, b});    // 0 and 1 commute
  CHECK(normal_form(spec, Word{c, a}) == Word{c, a});    // 0 and 2 do not
  CHECK(normal_form(spec, Word{a, b, a}) == Word{Letter{0, 2}, b});
  CHECK(normal_form(spec, Word{a, a, a}).empty());
}

TEST_CASE("clique polynomials") {
  const auto p5 = clique_polynomial(GroupSpec(graphs::cycle(5), 2),
                                    enumerate_cliques(graphs::cycle(5)));
  CHECK(to_string(p5.numerator) == "1 - 3t + t^2");
  const auto pd = clique_polynomial(GroupSpec(graphs::dodecahedron(), 2),
                                    enumerate_cliques(graphs::dodecahedron()));
  CHECK(to_string(pd.numerator) == "1 - 9t + 9t^2 - t^3");
  const SimplicialGraph point(1, {});
  const auto p1 = clique_polynomial(GroupSpec(point, 2), enumerate_cliques(point));
  CHECK_FALSE(smallest_positive_root(p1).has_value());
  CHECK(std::isinf(growth_report(GroupSpec(point, 2), 3).radius));
}

TEST_CASE("series coefficients") {
  const auto g5 = graphs::cycle(5);
  const auto poly2 = clique_polynomial(GroupSpec(g5, 2), enumerate_cliques(g5));
  CHECK(to_ll(series_coefficients(poly2, 3)) == std::vector<long long>{1, 5, 15, 40});
  const auto poly3 = clique_polynomial(GroupSpec(g5, 3), enumerate_cliques(g5));
  CHECK(series_coefficients(poly3, 1)[1] == 10);
  const auto k2 = graphs::complete(2);
  const auto s = series_coefficients(clique_polynomial(GroupSpec(k2, 2), enumerate_cliques(k2)), 8);
  CHECK(s[2] == 1);
  for (int k = 3; k <= 8; ++k) CHECK(s[k] == 0);
}

TEST_CASE("sphere counts agree with the Tits representation") {
  for (const auto& g : {graphs::cycle(5), graphs::cycle(6), graphs::dodecahedron()}) {
    const int kmax = g.vertex_count() > 6 ? 4 : 7;
    const auto expected = oracle::coxeter_sphere_counts(g, kmax);
    CHECK(to_ll(sphere_counts_bfs(GroupSpec(g, 2), kmax)) == expected);
    CHECK(to_ll(series_coefficients(clique_polynomial(GroupSpec(g, 2), enumerate_cliques(g)), kmax)) ==
          expected);
  }
}

TEST_CASE("series and BFS agree for q > 2") {
  for (int q : {3, 4}) {
    const GroupSpec spec(graphs::cycle(5), q);
    const auto poly = clique_polynomial(spec, enumerate_cliques(spec.graph()));
    CHECK(series_coefficients(poly, 5) == sphere_counts_bfs(spec, 5));
  }
}

TEST_CASE("BFS honours the ball cap") {
  BfsOptions opts;
  opts.ball_cap = 1000;
  CHECK_THROWS_AS(sphere_counts_bfs(GroupSpec(graphs::dodecahedron(), 2), 6, opts), ResourceError);
}

TEST_CASE("growth rates match closed forms and the long double oracle") {
  const auto g5 = graphs::cycle(5);
  const auto r5 = growth_rate(clique_polynomial(GroupSpec(g5, 2), enumerate_cliques(g5)));
  CHECK(r5.tau == doctest::Approx(kTau5).epsilon(1e-12));
  CHECK(std::abs(r5.tau - 0.9624237) < 1e-7);
  const auto gd = graphs::dodecahedron();
  const auto cd = enumerate_cliques(gd);
  CHECK(std::abs(growth_rate(clique_polynomial(GroupSpec(gd, 2), cd)).tau - kTauDodec) < 1e-9);
  CHECK(std::abs(growth_rate(clique_polynomial(GroupSpec(gd, 3), cd)).tau - 2.7565843) < 1e-7);

  std::mt19937 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 5 + trial % 4;
    std::bernoulli_distribution coin(0.4);
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (coin(rng)) e.emplace_back(u, v);
    const SimplicialGraph g(n, e);
    for (int q : {2, 3}) {
      const auto expected = oracle::growth_rate(oracle::clique_counts(g), q);
      const auto poly = clique_polynomial(GroupSpec(g, q), enumerate_cliques(g));
      if (!expected) continue;
      CHECK(growth_rate(poly).tau == doctest::Approx(static_cast<double>(*expected)).epsilon(1e-9));
    }
  }
}

TEST_CASE("amenable and finite inputs are refused") {
  const auto sq = graphs::cycle(4);
  CHECK_THROWS_AS(growth_rate(clique_polynomial(GroupSpec(sq, 2), enumerate_cliques(sq))),
                  DomainError);
  const auto k3 = graphs::complete(3);
  CHECK_THROWS_AS(growth_rate(clique_polynomial(GroupSpec(k3, 2), enumerate_cliques(k3))),
                  DomainError);
  CHECK_THROWS_AS(GroupSpec(graphs::cycle(5), 1), DomainError);
}

TEST_CASE("tau shift") {
  for (const auto& g : {graphs::cycle(5), graphs::dodecahedron()}) {
    const auto rows = tau_shift_check(g, {2, 3, 4, 7});
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].residual == 0.0);
    for (const auto& r : rows) CHECK(std::abs(r.residual) < 1e-9);
  }
}

TEST_CASE("sphere count ratios approach e^tau") {
  const auto g = graphs::cycle(5);
  const auto a = series_coefficients(clique_polynomial(GroupSpec(g, 2), enumerate_cliques(g)), 20);
  const double ratio = static_cast<double>(a[20]) / static_cast<double>(a[19]);
  CHECK(std::abs(ratio / std::exp(kTau5) - 1.0) < 0.02);
}

TEST_CASE("normal form enumeration matches the series") {
  const GroupSpec spec(graphs::cycle(5), 3);
  const auto poly = clique_polynomial(spec, enumerate_cliques(spec.graph()));
  const auto a = series_coefficients(poly, 4);
  for (int k = 0; k <= 4; ++k) {
    std::size_t count = for_each_normal_form(spec, k, [&](const Word& w) {
      CHECK(normal_form(spec, w) == w);
    });
    CHECK(BigInt(count) == a[k]);
  }
}

TEST_CASE("relabelling the graph leaves growth unchanged") {
  const auto g = graphs::dodecahedron();
  const std::vector<int> perm{5, 11, 0, 7, 2, 9, 4, 1, 10, 3, 8, 6};
  const auto h = g.relabelled(perm);
  for (int q : {2, 3}) {
    const auto a = growth_report(GroupSpec(g, q), 4);
    const auto b = growth_report(GroupSpec(h, q), 4);
    CHECK(a.sphere_counts == b.sphere_counts);
    CHECK(a.tau == b.tau);
    CHECK(sphere_counts_bfs(GroupSpec(h, q), 3) == sphere_counts_bfs(GroupSpec(g, q), 3));
  }
}
