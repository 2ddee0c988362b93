#include <doctest.h>

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "racmod/error.hpp"
#include "racmod/graph.hpp"

using namespace racmod;

namespace {

SimplicialGraph random_graph(std::mt19937& rng, int n, double density) {
  std::bernoulli_distribution coin(density);
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) e.emplace_back(u, v);
  return SimplicialGraph(n, e);
}

}  // namespace

TEST_CASE("edge list parsing") {
  const auto g = parse_graph("# pentagon\n1 2\n2 3\n3 4\n4 5\n5 1\n", GraphFormat::kEdgeList);
  CHECK(g.vertex_count() == 5);
  CHECK(g.edge_count() == 5);
  CHECK(g.adjacent(0, 4));
  CHECK_FALSE(g.adjacent(0, 2));
}

TEST_CASE("loops and duplicates are rejected") {
  CHECK_THROWS_AS(parse_graph("3 3\n", GraphFormat::kEdgeList), ValidationError);
  CHECK_THROWS_AS(parse_graph("1 2\n2 1\n", GraphFormat::kEdgeList), ValidationError);
  CHECK_THROWS_AS(parse_graph("1 x\n", GraphFormat::kEdgeList), ParseError);
  CHECK_THROWS_AS(parse_graph(R"({"n": 2, "edges": [[1, 3]]})", GraphFormat::kJson),
                  ValidationError);
  CHECK_THROWS_AS(parse_graph(R"({"edges": []})", GraphFormat::kJson), ParseError);
}

TEST_CASE("json round trip keeps labels") {
  const auto g = parse_graph(R"({"n": 3, "edges": [[1, 2], [2, 3]], "labels": ["a", "b", "c"]})",
                             GraphFormat::kJson);
  const auto h = parse_graph(graph_to_json(g), GraphFormat::kJson);
  CHECK(h.edges() == g.edges());
  CHECK(h.labels() == g.labels());
  CHECK(h.label(1) == "b");
}

TEST_CASE("clique counts of the named graphs") {
  CHECK(enumerate_cliques(graphs::cycle(5)).counts() == std::vector<std::size_t>{1, 5, 5});
  CHECK(enumerate_cliques(graphs::dodecahedron()).counts() ==
        std::vector<std::size_t>{1, 12, 30, 20});
  CHECK(enumerate_cliques(graphs::complete(3)).counts() == std::vector<std::size_t>{1, 3, 3, 1});
}

TEST_CASE("clique counts agree with subset enumeration") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + trial % 9;
    const auto g = random_graph(rng, n, 0.2 + 0.05 * (trial % 12));
    CHECK(enumerate_cliques(g).counts() == oracle::clique_counts(g));
  }
}

TEST_CASE("each clique is listed once and is complete") {
  const auto g = graphs::dodecahedron();
  const auto cs = enumerate_cliques(g);
  for (std::size_t k = 0; k < cs.by_size.size(); ++k) {
    auto level = cs.by_size[k];
    std::sort(level.begin(), level.end());
    CHECK(std::adjacent_find(level.begin(), level.end()) == level.end());
    for (VertexSet s : level) {
      CHECK(static_cast<std::size_t>(std::popcount(s)) == k);
      CHECK(g.is_clique(s));
    }
  }
}

TEST_CASE("assumption checks and witnesses") {
  SUBCASE("pentagon passes") {
    const auto r = check_assumptions(graphs::cycle(5));
    CHECK(r.infinite);
    CHECK(r.hyperbolic);
    CHECK(r.boundary_connected);
    CHECK_NOTHROW(require_assumptions(graphs::cycle(5)));
  }
  SUBCASE("square is not hyperbolic") {
    const auto g = graphs::cycle(4);
    const auto r = check_assumptions(g);
    CHECK_FALSE(r.hyperbolic);
    REQUIRE(r.square_witness);
    const auto& w = *r.square_witness;
    REQUIRE(w.size() == 4);
    for (int i = 0; i < 4; ++i) {
      CHECK(g.adjacent(w[i], w[(i + 1) % 4]));
      CHECK_FALSE(g.adjacent(w[i], w[(i + 2) % 4]));
    }
    CHECK_THROWS_AS(require_assumptions(g), AssumptionError);
  }
  SUBCASE("two triangles sharing a vertex") {
    const auto g = parse_graph("1 2\n2 3\n3 1\n3 4\n4 5\n5 3\n", GraphFormat::kEdgeList);
    const auto r = check_assumptions(g);
    CHECK_FALSE(r.boundary_connected);
    REQUIRE(r.separating_clique);
    CHECK(*r.separating_clique == bit(2));
    CHECK(r.describe(g).find("{3}") != std::string::npos);
  }
  SUBCASE("complete graph gives a finite group") {
    const auto r = check_assumptions(graphs::complete(4));
    CHECK_FALSE(r.infinite);
    CHECK(r.infinite_witness == graphs::complete(4).all_vertices());
  }
}

TEST_CASE("separating clique witnesses really separate") {
  std::mt19937 rng(11);
  int seen = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = random_graph(rng, 6 + trial % 4, 0.45);
    const auto r = check_assumptions(g);
    if (r.boundary_connected || !r.infinite || !r.separating_clique || *r.separating_clique == 0)
      continue;
    const VertexSet c = *r.separating_clique;
    CHECK(g.is_clique(c));
    CHECK(g.components(g.all_vertices() & ~c).size() >= 2);
    ++seen;
  }
  CHECK(seen > 0);
}

TEST_CASE("relabelling preserves clique counts and assumptions") {
  std::mt19937 rng(3);
  const auto g = graphs::dodecahedron();
  std::vector<int> perm(12);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  const auto h = g.relabelled(perm);
  CHECK(enumerate_cliques(h).counts() == enumerate_cliques(g).counts());
  CHECK(check_assumptions(h).ok());
}
