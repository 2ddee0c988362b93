#include "racmod/approximation.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "racmod/error.hpp"

namespace racmod {

Approximation::Approximation(GroupSpec spec, int scale, int adjacency_radius,
                             std::vector<Word> tiles, std::vector<std::vector<int>> incidence,
                             std::vector<int> ancestry, std::vector<Word> dead_ends,
                             std::size_t ball_size)
    : spec_(std::move(spec)),
      scale_(scale),
      adjacency_radius_(adjacency_radius),
      tiles_(std::move(tiles)),
      incidence_(std::move(incidence)),
      ancestry_(std::move(ancestry)),
      dead_ends_(std::move(dead_ends)),
      ball_size_(ball_size) {
  for (std::size_t i = 0; i < tiles_.size(); ++i) {
    index_.emplace(word_key(tiles_[i]), static_cast<int>(i));
  }
}

bool Approximation::incident(int a, int b) const {
  const auto& row = incidence_[a];
  return std::binary_search(row.begin(), row.end(), b);
}

std::size_t Approximation::edge_count() const {
  std::size_t twice = 0;
  for (const auto& row : incidence_) twice += row.size();
  return twice / 2;
}

int Approximation::find(const Word& nf) const {
  auto it = index_.find(word_key(nf));
  return it == index_.end() ? -1 : it->second;
}

namespace {

bool extendable(const GroupSpec& spec, const Word& nf, const std::vector<Letter>& gens) {
  return std::any_of(gens.begin(), gens.end(),
                     [&](Letter x) { return extends_normal_form(spec, nf, x); });
}

// Normal forms of length k that extend to length k+1, in ShortLex order.
std::vector<Word> level_tiles(const GroupSpec& spec, int k, std::size_t cap,
                              std::vector<Word>* dead_ends) {
  const std::vector<Letter> gens = generators(spec);
  std::vector<Word> tiles;
  for_each_normal_form(spec, k, [&](const Word& w) {
    if (extendable(spec, w, gens)) {
      if (tiles.size() >= cap) {
        throw ResourceError("approximation at scale " + std::to_string(k) +
                            " exceeds tile cap of " + std::to_string(cap));
      }
      tiles.push_back(w);
    } else if (dead_ends) {
      dead_ends->push_back(w);
    }
  });
  return tiles;
}

}  // namespace

Approximation build_approximation(const GroupSpec& spec, int k, int adjacency_radius,
                                  const ApproximationOptions& options) {
  if (spec.q() != 2) {
    throw DomainError("approximations are built for q = 2 only (got q = " +
                      std::to_string(spec.q()) + ")");
  }
  if (k < 0) throw DomainError("scale k must be >= 0");
  if (adjacency_radius < 1) throw DomainError("adjacency radius A must be >= 1");
  if (!options.assume_ok) require_assumptions(spec.graph());

  std::size_t ball = 0;
  for (int j = 0; j <= k; ++j) {
    ball += for_each_normal_form(spec, j, [](const Word&) {});
    if (ball > options.tile_cap * 64) {
      throw ResourceError("ball of radius " + std::to_string(j) + " too large for tile cap " +
                          std::to_string(options.tile_cap));
    }
  }

  std::vector<Word> dead;
  std::vector<Word> tiles = level_tiles(spec, k, options.tile_cap, &dead);

  std::unordered_map<std::string, int> index;
  for (std::size_t i = 0; i < tiles.size(); ++i) index.emplace(word_key(tiles[i]), static_cast<int>(i));

  // Incidence: bounded BFS from each tile, staying at length >= k.
  const std::vector<Letter> gens = generators(spec);
  std::vector<std::vector<int>> incidence(tiles.size());
  for (std::size_t t = 0; t < tiles.size(); ++t) {
    std::unordered_set<std::string> seen{word_key(tiles[t])};
    std::vector<Word> frontier{tiles[t]};
    for (int step = 0; step < adjacency_radius && !frontier.empty(); ++step) {
      std::vector<Word> next;
      for (const Word& x : frontier) {
        for (Letter s : gens) {
          Word w = x;
          w.push_back(s);
          Word y = normal_form(spec, w);
          if (static_cast<int>(y.size()) < k) continue;
          std::string key = word_key(y);
          if (!seen.insert(key).second) continue;
          if (static_cast<int>(y.size()) == k) {
            if (auto it = index.find(key); it != index.end()) {
              incidence[t].push_back(it->second);
            }
          }
          next.push_back(std::move(y));
        }
      }
      frontier = std::move(next);
    }
    std::sort(incidence[t].begin(), incidence[t].end());
  }

  std::vector<int> ancestry;
  if (k >= 1) {
    const std::vector<Word> parents = level_tiles(spec, k - 1, options.tile_cap, nullptr);
    std::unordered_map<std::string, int> parent_index;
    for (std::size_t i = 0; i < parents.size(); ++i)
      parent_index.emplace(word_key(parents[i]), static_cast<int>(i));
    ancestry.reserve(tiles.size());
    for (const Word& w : tiles) {
      const Word prefix(w.begin(), w.end() - 1);
      ancestry.push_back(parent_index.at(word_key(prefix)));
    }
  }

  return Approximation(spec, k, adjacency_radius, std::move(tiles), std::move(incidence),
                       std::move(ancestry), std::move(dead), ball);
}

}  // namespace racmod
