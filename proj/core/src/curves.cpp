#include "racmod/curves.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "racmod/error.hpp"

namespace racmod {

bool CurveFamily::empty() const {
  return kind == Kind::kExplicit ? curves.empty() : !has_paths;
}

CurveFamily explicit_family(std::size_t tile_count, std::vector<Curve> curves, int scale) {
  for (const Curve& c : curves) {
    if (c.empty()) throw ValidationError("explicit curve with no tiles");
    for (int t : c) {
      if (t < 0 || static_cast<std::size_t>(t) >= tile_count) {
        throw ValidationError("curve meets unknown tile " + std::to_string(t));
      }
    }
  }
  CurveFamily f;
  f.kind = CurveFamily::Kind::kExplicit;
  f.scale = scale;
  f.tile_count = tile_count;
  f.curves = std::move(curves);
  return f;
}

namespace {

std::vector<int> tile_components(const std::vector<std::vector<int>>& incidence) {
  std::vector<int> comp(incidence.size(), -1);
  int next = 0;
  for (std::size_t s = 0; s < incidence.size(); ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{static_cast<int>(s)};
    comp[s] = next;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : incidence[u]) {
        if (comp[v] < 0) {
          comp[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  return comp;
}

void enumerate_paths(CurveFamily& f, std::size_t cap) {
  if (cap == 0) return;
  std::vector<std::vector<char>> far(f.sector_count, std::vector<char>(f.sector_count, 0));
  for (std::size_t a = 0; a < f.sector_count; ++a)
    for (int b : f.far_sectors[a]) far[a][b] = 1;

  const std::size_t budget = 2'000'000 + 1000 * cap;
  std::size_t steps = 0;
  std::vector<char> on_path(f.tile_count, 0);
  for (std::size_t start = 0; start < f.tile_count && f.curves.size() < cap; ++start) {
    const int s0 = f.sector[start];
    if (f.far_sectors[s0].empty()) continue;
    Curve path{static_cast<int>(start)};
    std::vector<std::size_t> next_idx{0};
    on_path[start] = 1;
    while (!path.empty() && f.curves.size() < cap) {
      if (++steps > budget) {
        f.truncated = true;
        return;
      }
      const int u = path.back();
      std::size_t& i = next_idx.back();
      if (i == f.incidence[u].size()) {
        on_path[u] = 0;
        path.pop_back();
        next_idx.pop_back();
        continue;
      }
      const int v = f.incidence[u][i++];
      if (on_path[v]) continue;
      if (far[s0][f.sector[v]]) {
        if (static_cast<int>(start) < v) {
          Curve c = path;
          c.push_back(v);
          f.curves.push_back(std::move(c));
        }
        continue;
      }
      on_path[v] = 1;
      path.push_back(v);
      next_idx.push_back(0);
    }
    for (int t : path) on_path[t] = 0;
  }
  // Stopped because of the cap with more curves possibly available.
  if (f.curves.size() >= cap) f.truncated = true;
}

}  // namespace

CurveFamily build_curve_family(const Approximation& approx, int k0, std::size_t cap) {
  const int k = approx.scale();
  if (k0 < 1 || k0 >= k) {
    throw DomainError("separation scale k0 must satisfy 1 <= k0 < k (k0 = " + std::to_string(k0) +
                      ", k = " + std::to_string(k) + ")");
  }
  ApproximationOptions opts;
  opts.assume_ok = true;
  const Approximation coarse =
      build_approximation(approx.spec(), k0, approx.adjacency_radius(), opts);

  CurveFamily f;
  f.kind = CurveFamily::Kind::kPaths;
  f.scale = k;
  f.separation_scale = k0;
  f.tile_count = approx.tile_count();
  f.incidence = approx.incidence();
  f.sector_count = coarse.tile_count();
  f.sector.resize(f.tile_count);
  for (std::size_t t = 0; t < f.tile_count; ++t) {
    const Word& w = approx.word(static_cast<int>(t));
    const Word prefix(w.begin(), w.begin() + k0);
    const int a = coarse.find(prefix);
    if (a < 0) throw Error("internal: ancestor of tile " + std::to_string(t) + " not a tile");
    f.sector[t] = a;
  }
  f.far_sectors.resize(f.sector_count);
  for (std::size_t a = 0; a < f.sector_count; ++a)
    for (std::size_t b = 0; b < f.sector_count; ++b)
      if (a != b && !coarse.incident(static_cast<int>(a), static_cast<int>(b)))
        f.far_sectors[a].push_back(static_cast<int>(b));

  // Nonempty iff a component of the incidence graph meets two far sectors.
  const std::vector<int> comp = tile_components(f.incidence);
  const int ncomp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  std::vector<std::vector<int>> sectors_in(static_cast<std::size_t>(ncomp));
  for (std::size_t t = 0; t < f.tile_count; ++t) sectors_in[comp[t]].push_back(f.sector[t]);
  for (auto& ss : sectors_in) {
    std::sort(ss.begin(), ss.end());
    ss.erase(std::unique(ss.begin(), ss.end()), ss.end());
    for (int a : ss) {
      for (int b : f.far_sectors[a]) {
        if (std::binary_search(ss.begin(), ss.end(), b)) {
          f.has_paths = true;
          break;
        }
      }
      if (f.has_paths) break;
    }
  }
  if (f.has_paths) enumerate_paths(f, cap);
  return f;
}

namespace {

double curve_length(const Curve& c, std::span<const double> rho, std::vector<char>& mark) {
  double sum = 0.0;
  for (int t : c) {
    if (!mark[t]) {
      mark[t] = 1;
      sum += rho[t];
    }
  }
  for (int t : c) mark[t] = 0;
  return sum;
}

}  // namespace

std::vector<WeightedCurve> shortest_curves(const CurveFamily& family, std::span<const double> rho,
                                           std::size_t per_sector, double below) {
  if (rho.size() != family.tile_count) {
    throw ValidationError("weight vector has " + std::to_string(rho.size()) +
                          " entries, family has " + std::to_string(family.tile_count) + " tiles");
  }
  std::vector<WeightedCurve> out;
  if (family.kind == CurveFamily::Kind::kExplicit) {
    std::vector<char> mark(family.tile_count, 0);
    out.reserve(family.curves.size());
    for (const Curve& c : family.curves) out.push_back({c, curve_length(c, rho, mark)});
  } else if (family.has_paths) {
    const double inf = std::numeric_limits<double>::infinity();
    const std::size_t n = family.tile_count;
    std::vector<std::vector<int>> members(family.sector_count);
    for (std::size_t t = 0; t < n; ++t) members[family.sector[t]].push_back(static_cast<int>(t));
    std::vector<double> dist(n);
    std::vector<int> parent(n);
    std::vector<char> target(n), done(n);
    for (std::size_t a = 0; a < family.sector_count; ++a) {
      if (family.far_sectors[a].empty() || members[a].empty()) continue;
      std::fill(dist.begin(), dist.end(), inf);
      std::fill(parent.begin(), parent.end(), -1);
      std::fill(target.begin(), target.end(), 0);
      std::fill(done.begin(), done.end(), 0);
      for (int b : family.far_sectors[a])
        for (int t : members[b]) target[t] = 1;
      using Item = std::pair<double, int>;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
      for (int t : members[a]) {
        dist[t] = rho[t];
        pq.emplace(dist[t], t);
      }
      std::size_t found = 0;
      while (!pq.empty() && found < per_sector) {
        auto [d, u] = pq.top();
        pq.pop();
        if (done[u]) continue;
        done[u] = 1;
        if (target[u]) {
          // Curves end at their first far tile, so targets are not expanded.
          if (found > 0 && !(d < below)) break;
          Curve c;
          for (int t = u; t >= 0; t = parent[t]) c.push_back(t);
          std::reverse(c.begin(), c.end());
          out.push_back({std::move(c), d});
          ++found;
          continue;
        }
        for (int v : family.incidence[u]) {
          const double nd = d + rho[v];
          if (nd < dist[v]) {
            dist[v] = nd;
            parent[v] = u;
            pq.emplace(nd, v);
          }
        }
      }
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const WeightedCurve& x, const WeightedCurve& y) { return x.length < y.length; });
  return out;
}

}  // namespace racmod
