#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "racmod/graph.hpp"

namespace racmod {

// Graph product of cyclic groups Z/q over a simplicial graph. q = 2 is the
// right-angled Coxeter group of the graph.
class GroupSpec {
 public:
  GroupSpec(SimplicialGraph graph, int q);

  const SimplicialGraph& graph() const { return graph_; }
  int q() const { return q_; }
  int vertex_count() const { return graph_.vertex_count(); }
  // |S^q| = n (q - 1): every nontrivial power of every vertex generator.
  int generator_count() const { return graph_.vertex_count() * (q_ - 1); }

 private:
  SimplicialGraph graph_;
  int q_;
};

// The syllable s_vertex^power, 1 <= power < q. Each letter has length one.
struct Letter {
  std::uint16_t vertex = 0;
  std::uint16_t power = 1;

  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

// All n(q-1) generators ordered by (vertex, power); this is the ShortLex
// alphabet order.
std::vector<Letter> generators(const GroupSpec& spec);

Word inverse(const GroupSpec& spec, std::span<const Letter> w);

// Geodesic word for the element spelled by w. Letters merge with the last
// same-vertex letter reachable through commuting letters; powers add mod q.
Word reduce(const GroupSpec& spec, std::span<const Letter> w);

// Lexicographically least word among the commutation shuffles of a reduced
// word.
Word shortlex(const GroupSpec& spec, std::span<const Letter> reduced);

Word normal_form(const GroupSpec& spec, std::span<const Letter> w);

// Word length of the element g^{-1} h.
int distance(const GroupSpec& spec, std::span<const Letter> g, std::span<const Letter> h);

// True iff nf followed by x is again a ShortLex normal form, given that nf
// is one. Scans back through letters commuting with x.
bool extends_normal_form(const GroupSpec& spec, std::span<const Letter> nf, Letter x);

// Calls visit(nf) for every normal form of length exactly k, in ShortLex
// order. Returns the number visited.
std::size_t for_each_normal_form(const GroupSpec& spec, int k,
                                 const std::function<void(const Word&)>& visit);

std::string word_key(std::span<const Letter> w);

// 1-based "s3 s1^2 ..." rendering.
std::string format_word(const GroupSpec& spec, std::span<const Letter> w);

}  // namespace racmod
