#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "racmod/words.hpp"

namespace racmod {

struct ApproximationOptions {
  // Skip the graph criteria (the CLI's --assume-ok).
  bool assume_ok = false;
  std::size_t tile_cap = 2'000'000;
};

// Discrete model of the boundary of W at scale k. Tiles are the length-k
// elements whose ShortLex normal form extends to length k+1; the group
// element stands in for the tile's centre.
//
// Two tiles g, h are incident when h is reached from g by a path of at most
// A generator steps that never enters the ball of radius k-1. With A = 2
// this links gs and gt exactly when s and t commute and both lower the
// length, i.e. the chambers share a vertex of the Davis complex.
class Approximation {
 public:
  Approximation(GroupSpec spec, int scale, int adjacency_radius, std::vector<Word> tiles,
                std::vector<std::vector<int>> incidence, std::vector<int> ancestry,
                std::vector<Word> dead_ends, std::size_t ball_size);

  const GroupSpec& spec() const { return spec_; }
  int scale() const { return scale_; }
  // A, the proxy for the approximation constant kappa.
  int adjacency_radius() const { return adjacency_radius_; }
  std::size_t tile_count() const { return tiles_.size(); }

  const std::vector<Word>& tiles() const { return tiles_; }
  const Word& word(int tile) const { return tiles_[tile]; }
  const std::vector<std::vector<int>>& incidence() const { return incidence_; }
  bool incident(int a, int b) const;
  std::size_t edge_count() const;

  // ancestry()[t] is the tile of scale k-1 given by dropping the last letter
  // of t's normal form; empty at scale 0.
  const std::vector<int>& ancestry() const { return ancestry_; }

  // Length-k elements with no length-(k+1) continuation, excluded from tiles.
  const std::vector<Word>& dead_ends() const { return dead_ends_; }
  // #{g : |g| <= k}
  std::size_t ball_size() const { return ball_size_; }

  // Tile index for a normal form, or -1.
  int find(const Word& nf) const;

 private:
  GroupSpec spec_;
  int scale_;
  int adjacency_radius_;
  std::vector<Word> tiles_;
  std::vector<std::vector<int>> incidence_;
  std::vector<int> ancestry_;
  std::vector<Word> dead_ends_;
  std::size_t ball_size_;
  std::unordered_map<std::string, int> index_;
};

// Requires q = 2, k >= 0 and A >= 1. Throws AssumptionError with the graph
// witness unless options.assume_ok, ResourceError past options.tile_cap.
Approximation build_approximation(const GroupSpec& spec, int k, int adjacency_radius,
                                  const ApproximationOptions& options = {});

}  // namespace racmod
