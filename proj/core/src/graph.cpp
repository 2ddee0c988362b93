#include "racmod/graph.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "racmod/error.hpp"

namespace racmod {

std::vector<int> members(VertexSet s) {
  std::vector<int> out;
  while (s != 0) {
    out.push_back(std::countr_zero(s));
    s &= s - 1;
  }
  return out;
}

SimplicialGraph::SimplicialGraph(int n,
                                 const std::vector<std::pair<int, int>>& edges,
                                 std::vector<std::string> labels)
    : n_(n), adj_(static_cast<std::size_t>(std::max(n, 0)), 0), labels_(std::move(labels)) {
  if (n < 0 || n > kMaxVertices) {
    throw ValidationError("vertex count " + std::to_string(n) + " outside [0, " +
                          std::to_string(kMaxVertices) + "]");
  }
  if (!labels_.empty() && static_cast<int>(labels_.size()) != n) {
    throw ValidationError("labels has " + std::to_string(labels_.size()) +
                          " entries, expected " + std::to_string(n));
  }
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n) {
      throw ValidationError("edge (" + std::to_string(u + 1) + "," + std::to_string(v + 1) +
                            ") has a vertex outside [1.." + std::to_string(n) + "]");
    }
    if (u == v) {
      throw ValidationError("loop at vertex " + std::to_string(u + 1));
    }
    if (adjacent(u, v)) {
      throw ValidationError("duplicate edge (" + std::to_string(u + 1) + "," +
                            std::to_string(v + 1) + ")");
    }
    adj_[u] |= bit(v);
    adj_[v] |= bit(u);
    edges_.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(edges_.begin(), edges_.end());
}

std::string SimplicialGraph::label(int v) const {
  return labels_.empty() ? std::to_string(v + 1) : labels_[v];
}

VertexSet SimplicialGraph::all_vertices() const {
  return n_ == 64 ? ~VertexSet{0} : bit(n_) - 1;
}

bool SimplicialGraph::is_clique(VertexSet s) const {
  for (int v : members(s)) {
    if ((s & ~bit(v) & ~adj_[v]) != 0) return false;
  }
  return true;
}

bool SimplicialGraph::is_complete() const { return is_clique(all_vertices()); }

std::vector<VertexSet> SimplicialGraph::components(VertexSet within) const {
  std::vector<VertexSet> out;
  VertexSet left = within;
  while (left != 0) {
    VertexSet comp = left & (~left + 1);
    VertexSet frontier = comp;
    while (frontier != 0) {
      VertexSet next = 0;
      for (int v : members(frontier)) next |= adj_[v];
      next &= within & ~comp;
      comp |= next;
      frontier = next;
    }
    out.push_back(comp);
    left &= ~comp;
  }
  return out;
}

SimplicialGraph SimplicialGraph::relabelled(const std::vector<int>& perm) const {
  std::vector<std::pair<int, int>> e;
  e.reserve(edges_.size());
  for (auto [u, v] : edges_) e.emplace_back(perm[u], perm[v]);
  std::vector<std::string> lab;
  if (!labels_.empty()) {
    lab.resize(labels_.size());
    for (int v = 0; v < n_; ++v) lab[perm[v]] = labels_[v];
  }
  return SimplicialGraph(n_, e, std::move(lab));
}

namespace {

SimplicialGraph parse_json(std::string_view source) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(source);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("graph JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("graph JSON: top level must be an object");
  if (!j.contains("n") || !j["n"].is_number_integer()) {
    throw ParseError("graph JSON: field \"n\" missing or not an integer");
  }
  int n = j["n"].get<int>();
  std::vector<std::pair<int, int>> edges;
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) throw ParseError("graph JSON: field \"edges\" must be an array");
    std::size_t idx = 0;
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
          !e[1].is_number_integer()) {
        throw ParseError("graph JSON: edges[" + std::to_string(idx) +
                         "] must be a pair of integers");
      }
      edges.emplace_back(e[0].get<int>() - 1, e[1].get<int>() - 1);
      ++idx;
    }
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    if (!j["labels"].is_array()) throw ParseError("graph JSON: field \"labels\" must be an array");
    for (const auto& l : j["labels"]) {
      labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
    }
  }
  return SimplicialGraph(n, edges, std::move(labels));
}

SimplicialGraph parse_edge_list(std::string_view source) {
  std::istringstream in{std::string(source)};
  std::string line;
  int line_no = 0;
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<long> values;
    std::string tok;
    while (fields >> tok) {
      std::size_t used = 0;
      long value = 0;
      try {
        value = std::stol(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) {
        throw ParseError("edge list line " + std::to_string(line_no) + ": '" + tok +
                         "' is not an integer");
      }
      if (value < 1 || value > kMaxVertices) {
        throw ParseError("edge list line " + std::to_string(line_no) + ": vertex " + tok +
                         " outside [1.." + std::to_string(kMaxVertices) + "]");
      }
      values.push_back(value);
    }
    if (values.empty()) continue;
    if (values.size() > 2) {
      throw ParseError("edge list line " + std::to_string(line_no) +
                       ": expected \"i j\", got " + std::to_string(values.size()) + " fields");
    }
    for (long v : values) n = std::max(n, static_cast<int>(v));
    if (values.size() == 2) {
      edges.emplace_back(static_cast<int>(values[0]) - 1, static_cast<int>(values[1]) - 1);
    }
  }
  return SimplicialGraph(n, edges);
}

}  // namespace

SimplicialGraph parse_graph(std::string_view source, GraphFormat format) {
  if (source.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    throw ParseError("graph source is empty");
  }
  return format == GraphFormat::kJson ? parse_json(source) : parse_edge_list(source);
}

SimplicialGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const bool json = path.size() >= 5 && path.substr(path.size() - 5) == ".json";
  return parse_graph(buf.str(), json ? GraphFormat::kJson : GraphFormat::kEdgeList);
}

std::string graph_to_json(const SimplicialGraph& g) {
  nlohmann::json j;
  j["n"] = g.vertex_count();
  j["edges"] = nlohmann::json::array();
  for (auto [u, v] : g.edges()) j["edges"].push_back({u + 1, v + 1});
  if (!g.labels().empty()) j["labels"] = g.labels();
  return j.dump();
}

std::vector<std::size_t> CliqueSet::counts() const {
  std::vector<std::size_t> out;
  out.reserve(by_size.size());
  for (const auto& level : by_size) out.push_back(level.size());
  return out;
}

CliqueSet enumerate_cliques(const SimplicialGraph& g) {
  // Every clique is reached once, by extending it with vertices larger than
  // its current maximum that lie in the common neighbourhood.
  CliqueSet out;
  out.by_size.push_back({0});
  struct Frame {
    VertexSet clique;
    VertexSet candidates;
    std::size_t size;
  };
  std::vector<Frame> stack{{0, g.all_vertices(), 0}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    for (int v : members(f.candidates)) {
      VertexSet higher = v == 63 ? 0 : ~(bit(v + 1) - 1);
      Frame child{f.clique | bit(v), f.candidates & g.neighbours(v) & higher, f.size + 1};
      if (out.by_size.size() <= child.size) out.by_size.resize(child.size + 1);
      out.by_size[child.size].push_back(child.clique);
      if (child.candidates != 0) stack.push_back(child);
    }
  }
  for (auto& level : out.by_size) std::sort(level.begin(), level.end());
  return out;
}

namespace {

std::string format_set(const SimplicialGraph& g, const std::vector<int>& vs) {
  std::string s = "{";
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) s += ",";
    s += g.label(vs[i]);
  }
  return s + "}";
}

}  // namespace

std::string AssumptionReport::describe(const SimplicialGraph& g) const {
  std::string s;
  if (!infinite) {
    s += "group is finite: the graph is complete on " + format_set(g, members(*infinite_witness)) +
         "; ";
  }
  if (!hyperbolic) {
    s += "not hyperbolic: induced square " + format_set(g, *square_witness) + "; ";
  }
  if (!boundary_connected) {
    if (*separating_clique == g.all_vertices() && g.is_complete()) {
      s += "boundary not connected: graph is complete; ";
    } else if (*separating_clique == 0) {
      s += "boundary not connected: graph is disconnected; ";
    } else {
      s += "boundary not connected: clique " + format_set(g, members(*separating_clique)) +
           " separates the graph; ";
    }
  }
  if (s.empty()) return "all graph criteria hold";
  s.resize(s.size() - 2);
  return s;
}

AssumptionReport check_assumptions(const SimplicialGraph& g) {
  AssumptionReport r;
  const int n = g.vertex_count();
  if (g.is_complete()) {
    r.infinite = false;
    r.infinite_witness = g.all_vertices();
  }

  // An induced square is a,b,c,d with a~b~c~d~a and a!~c, b!~d.
  for (int a = 0; a < n && r.hyperbolic; ++a) {
    for (int c = a + 1; c < n && r.hyperbolic; ++c) {
      if (g.adjacent(a, c)) continue;
      std::vector<int> common = members(g.neighbours(a) & g.neighbours(c));
      for (std::size_t i = 0; i < common.size() && r.hyperbolic; ++i) {
        for (std::size_t j = i + 1; j < common.size(); ++j) {
          if (!g.adjacent(common[i], common[j])) {
            r.hyperbolic = false;
            r.square_witness = std::vector<int>{a, common[i], c, common[j]};
            break;
          }
        }
      }
    }
  }

  if (!r.infinite) {
    r.boundary_connected = false;
    r.separating_clique = g.all_vertices();
  } else {
    const CliqueSet cliques = enumerate_cliques(g);
    for (const auto& level : cliques.by_size) {
      for (VertexSet c : level) {
        if (g.components(g.all_vertices() & ~c).size() >= 2) {
          r.boundary_connected = false;
          r.separating_clique = c;
          break;
        }
      }
      if (!r.boundary_connected) break;
    }
  }
  return r;
}

void require_assumptions(const SimplicialGraph& g) {
  const AssumptionReport r = check_assumptions(g);
  if (!r.ok()) throw AssumptionError(r.describe(g));
}

namespace graphs {

SimplicialGraph cycle(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return SimplicialGraph(n, e);
}

SimplicialGraph complete(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return SimplicialGraph(n, e);
}

SimplicialGraph dodecahedron() {
  // Faces: 0 = top, 1..5 = upper belt, 6..10 = lower belt, 11 = bottom.
  // Upper face i touches lower faces i+5 and the next one around the belt.
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < 5; ++i) {
    const int up = 1 + i;
    const int up_next = 1 + (i + 1) % 5;
    const int low = 6 + i;
    const int low_next = 6 + (i + 1) % 5;
    e.emplace_back(0, up);
    e.emplace_back(up, up_next);
    e.emplace_back(up, low);
    e.emplace_back(up, low_next);
    e.emplace_back(low, low_next);
    e.emplace_back(low, 11);
  }
  return SimplicialGraph(12, e);
}

}  // namespace graphs

}  // namespace racmod
