#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "racmod/approximation.hpp"

namespace racmod {

// A combinatorial curve: the tiles it meets, in path order. Repeats are
// allowed; lengths count each tile once.
using Curve = std::vector<int>;

// A family of curves on one scale. Two kinds:
//  - kPaths: every incidence path whose end tiles lie under distinct,
//    non-incident ancestors at the separation scale k0 (the large-diameter
//    family). `curves` then holds a capped explicit enumeration.
//  - kExplicit: exactly the listed curves.
struct CurveFamily {
  enum class Kind { kPaths, kExplicit };

  Kind kind = Kind::kExplicit;
  int scale = 0;
  int separation_scale = 0;
  std::size_t tile_count = 0;

  // kPaths data.
  std::vector<std::vector<int>> incidence;
  std::vector<int> sector;                   // tile -> ancestor tile at scale k0
  std::vector<std::vector<int>> far_sectors; // sector -> sectors it may connect to
  std::size_t sector_count = 0;
  // Some incidence path joins two far sectors.
  bool has_paths = false;

  std::vector<Curve> curves;
  // kPaths: true when the explicit enumeration stopped at the cap.
  bool truncated = false;

  // No qualifying curve exists; the modulus is 0 by convention.
  bool empty() const;
};

CurveFamily explicit_family(std::size_t tile_count, std::vector<Curve> curves, int scale = 0);

// Builds the large-diameter family on `approx` with d0 proxied by k0. The
// scale-k0 incidence is rebuilt from approx.spec(). At most `cap` curves are
// enumerated explicitly: simple paths v0..vm with v0 < vm, ordered by start
// tile then lexicographically, ending at the first tile that qualifies.
CurveFamily build_curve_family(const Approximation& approx, int k0, std::size_t cap = 0);

struct WeightedCurve {
  Curve curve;
  double length = 0.0;
};

// Shortest curves for node weights rho. For path families, node-weighted
// Dijkstra from each source sector: the cheapest path to any far sector,
// then the cheapest paths to further far tiles while shorter than `below`,
// at most `per_sector` curves in all. For explicit families, every curve.
// Sorted by length, ties by sector / list order.
std::vector<WeightedCurve> shortest_curves(const CurveFamily& family, std::span<const double> rho,
                                           std::size_t per_sector = 1,
                                           double below = std::numeric_limits<double>::infinity());

}  // namespace racmod
