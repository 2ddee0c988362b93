#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace racmod {

// Vertex subsets are stored as 64-bit masks; graphs are limited to 64
// vertices, which is far beyond what the growth and modulus code can use.
using VertexSet = std::uint64_t;

inline constexpr int kMaxVertices = 64;

inline constexpr VertexSet bit(int v) { return VertexSet{1} << v; }

std::vector<int> members(VertexSet s);

// Finite simplicial graph on vertices 0..n-1. Indices are 1-based only at
// the I/O boundary.
class SimplicialGraph {
 public:
  SimplicialGraph() = default;

  // Throws ValidationError on loops, duplicate edges or out-of-range indices.
  SimplicialGraph(int n, const std::vector<std::pair<int, int>>& edges,
                  std::vector<std::string> labels = {});

  int vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }

  // Sorted (u < v) 0-based edge list.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(int v) const;

  bool adjacent(int u, int v) const { return (adj_[u] >> v) & 1U; }
  VertexSet neighbours(int v) const { return adj_[v]; }
  VertexSet all_vertices() const;

  bool is_clique(VertexSet s) const;
  bool is_complete() const;

  // Connected components of the subgraph induced on `within`.
  std::vector<VertexSet> components(VertexSet within) const;

  // Same graph with vertex v renamed to perm[v].
  SimplicialGraph relabelled(const std::vector<int>& perm) const;

 private:
  int n_ = 0;
  std::vector<VertexSet> adj_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::string> labels_;
};

enum class GraphFormat { kJson, kEdgeList };

// JSON: {"n": int, "edges": [[i,j],...], "labels": [...]} (1-based).
// Edge list: one "i j" pair per line, '#' starts a comment; a line holding a
// single index declares an isolated vertex.
SimplicialGraph parse_graph(std::string_view source, GraphFormat format);

// Picks the format from the file extension (.json, otherwise edge list).
SimplicialGraph load_graph(const std::string& path);

std::string graph_to_json(const SimplicialGraph& g);

// Complete subgraphs grouped by size; by_size[0] holds the empty set.
struct CliqueSet {
  std::vector<std::vector<VertexSet>> by_size;

  std::size_t count(std::size_t size) const {
    return size < by_size.size() ? by_size[size].size() : 0;
  }
  std::size_t max_size() const { return by_size.empty() ? 0 : by_size.size() - 1; }
  std::vector<std::size_t> counts() const;
};

CliqueSet enumerate_cliques(const SimplicialGraph& g);

struct AssumptionReport {
  bool infinite = true;
  bool hyperbolic = true;
  bool boundary_connected = true;

  // Each is set exactly when the matching flag is false. For infinite the
  // witness is the whole vertex set (a complete graph), for hyperbolic an
  // induced chordless 4-cycle in cyclic order, for boundary_connected a
  // separating clique (empty when g itself is disconnected).
  std::optional<VertexSet> infinite_witness;
  std::optional<std::vector<int>> square_witness;
  std::optional<VertexSet> separating_clique;

  bool ok() const { return infinite && hyperbolic && boundary_connected; }
  std::string describe(const SimplicialGraph& g) const;
};

AssumptionReport check_assumptions(const SimplicialGraph& g);

// Throws AssumptionError carrying the witness description if any check fails.
void require_assumptions(const SimplicialGraph& g);

namespace graphs {

SimplicialGraph cycle(int n);
SimplicialGraph complete(int n);
// Face-adjacency graph of the regular dodecahedron (the icosahedron graph).
SimplicialGraph dodecahedron();

}  // namespace graphs

}  // namespace racmod
