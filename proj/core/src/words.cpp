#include "racmod/words.hpp"

#include <algorithm>

#include "racmod/error.hpp"

namespace racmod {

GroupSpec::GroupSpec(SimplicialGraph graph, int q) : graph_(std::move(graph)), q_(q) {
  if (q < 2) throw DomainError("q must be >= 2, got " + std::to_string(q));
  if (q > 65535) throw DomainError("q too large: " + std::to_string(q));
}

std::vector<Letter> generators(const GroupSpec& spec) {
  std::vector<Letter> out;
  out.reserve(static_cast<std::size_t>(spec.generator_count()));
  for (int v = 0; v < spec.vertex_count(); ++v)
    for (int a = 1; a < spec.q(); ++a)
      out.push_back({static_cast<std::uint16_t>(v), static_cast<std::uint16_t>(a)});
  return out;
}

Word inverse(const GroupSpec& spec, std::span<const Letter> w) {
  Word out(w.rbegin(), w.rend());
  for (auto& x : out) x.power = static_cast<std::uint16_t>(spec.q() - x.power);
  return out;
}

namespace {

bool commute(const SimplicialGraph& g, int u, int v) { return g.adjacent(u, v); }

void append_reduced(const GroupSpec& spec, Word& r, Letter x) {
  const auto& g = spec.graph();
  for (std::size_t i = r.size(); i-- > 0;) {
    const int v = r[i].vertex;
    if (v == x.vertex) {
      const int p = (r[i].power + x.power) % spec.q();
      if (p == 0) {
        r.erase(r.begin() + static_cast<std::ptrdiff_t>(i));
      } else {
        r[i].power = static_cast<std::uint16_t>(p);
      }
      return;
    }
    if (!commute(g, v, x.vertex)) break;
  }
  r.push_back(x);
}

}  // namespace

Word reduce(const GroupSpec& spec, std::span<const Letter> w) {
  Word r;
  r.reserve(w.size());
  for (Letter x : w) append_reduced(spec, r, x);
  return r;
}

Word shortlex(const GroupSpec& spec, std::span<const Letter> reduced) {
  // Repeatedly move to the front the smallest letter that commutes with
  // everything before it (the minimal letters of the trace).
  const auto& g = spec.graph();
  Word rest(reduced.begin(), reduced.end());
  Word out;
  out.reserve(rest.size());
  while (!rest.empty()) {
    std::size_t best = 0;
    VertexSet seen = 0;
    bool have = false;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      const int v = rest[i].vertex;
      if ((seen & ~g.neighbours(v)) == 0 && !(seen & bit(v))) {
        if (!have || rest[i] < rest[best]) {
          best = i;
          have = true;
        }
      }
      seen |= bit(v);
    }
    out.push_back(rest[best]);
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return out;
}

Word normal_form(const GroupSpec& spec, std::span<const Letter> w) {
  const Word r = reduce(spec, w);
  return shortlex(spec, r);
}

int distance(const GroupSpec& spec, std::span<const Letter> g, std::span<const Letter> h) {
  Word w = inverse(spec, g);
  w.insert(w.end(), h.begin(), h.end());
  return static_cast<int>(reduce(spec, w).size());
}

bool extends_normal_form(const GroupSpec& spec, std::span<const Letter> nf, Letter x) {
  const auto& g = spec.graph();
  for (std::size_t i = nf.size(); i-- > 0;) {
    const int v = nf[i].vertex;
    if (v == x.vertex) return false;        // would merge: not reduced
    if (!g.adjacent(v, x.vertex)) return true;
    if (v > x.vertex) return false;          // x could move left past a larger letter
  }
  return true;
}

std::size_t for_each_normal_form(const GroupSpec& spec, int k,
                                 const std::function<void(const Word&)>& visit) {
  if (k < 0) return 0;
  const std::vector<Letter> gens = generators(spec);
  Word w;
  w.reserve(static_cast<std::size_t>(k));
  std::size_t count = 0;
  // Iterative DFS in lexicographic order; next[i] is the next generator index
  // to try at depth i.
  std::vector<std::size_t> next(static_cast<std::size_t>(k) + 1, 0);
  if (k == 0) {
    visit(w);
    return 1;
  }
  std::size_t depth = 0;
  while (true) {
    if (next[depth] == gens.size()) {
      if (depth == 0) break;
      next[depth] = 0;
      --depth;
      w.pop_back();
      continue;
    }
    const Letter x = gens[next[depth]++];
    if (!extends_normal_form(spec, w, x)) continue;
    w.push_back(x);
    if (static_cast<int>(w.size()) == k) {
      visit(w);
      ++count;
      w.pop_back();
    } else {
      ++depth;
    }
  }
  return count;
}

std::string word_key(std::span<const Letter> w) {
  std::string key;
  key.reserve(w.size() * 4);
  for (Letter x : w) {
    key.push_back(static_cast<char>(x.vertex & 0xff));
    key.push_back(static_cast<char>(x.vertex >> 8));
    key.push_back(static_cast<char>(x.power & 0xff));
    key.push_back(static_cast<char>(x.power >> 8));
  }
  return key;
}

std::string format_word(const GroupSpec& spec, std::span<const Letter> w) {
  if (w.empty()) return "e";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += 's' + spec.graph().label(w[i].vertex);
    if (w[i].power != 1) s += '^' + std::to_string(w[i].power);
  }
  return s;
}

}  // namespace racmod
