#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdgraph/rng.hpp"

namespace pdgraph {

using VertexId = std::uint32_t;

/// Undirected simple graph with dense vertex ids 0..n-1 (creation order)
/// and sorted per-vertex neighbor lists. Duplication appends a filtered
/// copy of the source's list; sortedness gives O(deg) intersections for
/// clique counting.
class Graph {
 public:
  Graph() = default;

  explicit Graph(std::size_t n) : adj_(n) {}

  std::size_t n() const { return adj_.size(); }
  std::size_t edge_count() const { return edges_; }
  std::size_t degree(VertexId v) const { return adj_[v].size(); }
  std::span<const VertexId> neighbors(VertexId v) const { return adj_[v]; }

  bool has_edge(VertexId v, VertexId w) const {
    const auto& a = adj_[v];
    return std::binary_search(a.begin(), a.end(), w);
  }

  VertexId add_vertex() {
    adj_.emplace_back();
    return static_cast<VertexId>(adj_.size() - 1);
  }

  /// Both endpoints must exist; the edge must not.
  void add_edge(VertexId v, VertexId w) {
    if (v == w) throw std::invalid_argument("self-loop");
    insert_sorted(adj_[v], w);
    insert_sorted(adj_[w], v);
    ++edges_;
  }

  /// Appends vertex n connected to `nbrs` (each < n, strictly increasing).
  VertexId add_vertex_with_neighbors(std::vector<VertexId> nbrs) {
    VertexId id = static_cast<VertexId>(adj_.size());
    for (VertexId w : nbrs) adj_[w].push_back(id);  // id is the max, stays sorted
    edges_ += nbrs.size();
    adj_.push_back(std::move(nbrs));
    return id;
  }

  /// Checks symmetry, sortedness, absence of loops/duplicates and the
  /// edge-count bookkeeping. Intended for tests.
  bool check_invariants() const {
    std::size_t half_sum = 0;
    for (VertexId v = 0; v < adj_.size(); ++v) {
      const auto& a = adj_[v];
      if (!std::is_sorted(a.begin(), a.end())) return false;
      if (std::adjacent_find(a.begin(), a.end()) != a.end()) return false;
      for (VertexId w : a) {
        if (w == v || w >= adj_.size()) return false;
        if (!has_edge(w, v)) return false;
      }
      half_sum += a.size();
    }
    return half_sum == 2 * edges_;
  }

  /// Vertices of the connected component containing v (union-find not
  /// needed; BFS suffices here).
  std::size_t component_size(VertexId v) const {
    std::vector<char> seen(n(), 0);
    std::vector<VertexId> stack{v};
    seen[v] = 1;
    std::size_t cnt = 0;
    while (!stack.empty()) {
      VertexId u = stack.back();
      stack.pop_back();
      ++cnt;
      for (VertexId w : adj_[u])
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    return cnt;
  }

  bool is_connected() const {
    return n() == 0 || component_size(0) == n();
  }

  /// True iff the non-isolated part is a single component (plus any
  /// number of isolated vertices).
  bool is_one_component_plus_isolates() const {
    VertexId start = 0;
    bool found = false;
    std::size_t non_isolated = 0;
    for (VertexId v = 0; v < n(); ++v) {
      if (degree(v) > 0) {
        ++non_isolated;
        if (!found) {
          start = v;
          found = true;
        }
      }
    }
    if (!found) return true;
    return component_size(start) == non_isolated;
  }

  bool is_bipartite() const {
    std::vector<int> color(n(), -1);
    for (VertexId s = 0; s < n(); ++s) {
      if (color[s] != -1 || degree(s) == 0) continue;
      color[s] = 0;
      std::vector<VertexId> stack{s};
      while (!stack.empty()) {
        VertexId u = stack.back();
        stack.pop_back();
        for (VertexId w : adj_[u]) {
          if (color[w] == -1) {
            color[w] = 1 - color[u];
            stack.push_back(w);
          } else if (color[w] == color[u]) {
            return false;
          }
        }
      }
    }
    return true;
  }

 private:
  static void insert_sorted(std::vector<VertexId>& a, VertexId w) {
    auto it = std::lower_bound(a.begin(), a.end(), w);
    if (it != a.end() && *it == w) throw std::invalid_argument("duplicate edge");
    a.insert(it, w);
  }

  std::vector<std::vector<VertexId>> adj_;
  std::size_t edges_ = 0;
};

// ---------------------------------------------------------------------------
// Seed graphs

struct SeedSpec {
  enum class Kind { Complete, Cycle, Path, Star, EdgeList };
  Kind kind = Kind::Complete;
  std::size_t m = 3;  // vertex count for the named families
  std::vector<std::pair<VertexId, VertexId>> edges;  // Kind::EdgeList
  std::size_t edge_list_n = 0;

  std::size_t vertex_count() const {
    return kind == Kind::EdgeList ? edge_list_n : m;
  }

  static SeedSpec complete(std::size_t m) { return {Kind::Complete, m, {}, 0}; }
  static SeedSpec cycle(std::size_t m) { return {Kind::Cycle, m, {}, 0}; }
  static SeedSpec path(std::size_t m) { return {Kind::Path, m, {}, 0}; }
  static SeedSpec star(std::size_t m) { return {Kind::Star, m, {}, 0}; }
  static SeedSpec edge_list(std::size_t n,
                            std::vector<std::pair<VertexId, VertexId>> e) {
    return {Kind::EdgeList, 0, std::move(e), n};
  }
};

/// Parses names of the form k3, cycle(5), path(4), star(6).
inline SeedSpec parse_seed_name(const std::string& name) {
  auto arg = [&](std::size_t prefix) {
    if (name.back() != ')') throw std::invalid_argument("bad seed name: " + name);
    return static_cast<std::size_t>(
        std::stoul(name.substr(prefix, name.size() - prefix - 1)));
  };
  if (name.size() >= 2 && name[0] == 'k' &&
      name.find_first_not_of("0123456789", 1) == std::string::npos)
    return SeedSpec::complete(std::stoul(name.substr(1)));
  if (name.rfind("cycle(", 0) == 0) return SeedSpec::cycle(arg(6));
  if (name.rfind("path(", 0) == 0) return SeedSpec::path(arg(5));
  if (name.rfind("star(", 0) == 0) return SeedSpec::star(arg(5));
  throw std::invalid_argument("unknown seed graph: " + name);
}

/// Edge-list file: header "n <n0>", then one "u v" pair per line.
inline SeedSpec read_edge_list(std::istream& in) {
  std::string tag;
  std::size_t n = 0;
  if (!(in >> tag >> n) || tag != "n")
    throw std::invalid_argument("edge list: expected header 'n <n0>'");
  std::vector<std::pair<VertexId, VertexId>> edges;
  VertexId u, v;
  while (in >> u >> v) edges.emplace_back(u, v);
  return SeedSpec::edge_list(n, std::move(edges));
}

inline SeedSpec read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open edge list: " + path);
  return read_edge_list(in);
}

inline Graph build_seed(const SeedSpec& spec, bool allow_disconnected = false) {
  std::size_t m = spec.vertex_count();
  if (m < 2) throw std::invalid_argument("seed graph needs at least 2 vertices");
  Graph g(m);
  switch (spec.kind) {
    case SeedSpec::Kind::Complete:
      for (VertexId v = 0; v < m; ++v)
        for (VertexId w = v + 1; w < m; ++w) g.add_edge(v, w);
      break;
    case SeedSpec::Kind::Cycle:
      if (m < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
      for (VertexId v = 0; v < m; ++v)
        g.add_edge(v, static_cast<VertexId>((v + 1) % m));
      break;
    case SeedSpec::Kind::Path:
      for (VertexId v = 0; v + 1 < m; ++v) g.add_edge(v, v + 1);
      break;
    case SeedSpec::Kind::Star:
      for (VertexId v = 1; v < m; ++v) g.add_edge(0, v);
      break;
    case SeedSpec::Kind::EdgeList:
      for (auto [u, v] : spec.edges) {
        if (u >= m || v >= m)
          throw std::invalid_argument("edge list id out of range");
        g.add_edge(u, v);
      }
      break;
  }
  if (!allow_disconnected && !g.is_connected())
    throw std::invalid_argument("seed graph is not connected");
  return g;
}

// ---------------------------------------------------------------------------
// The duplication dynamics

struct ModelParams {
  double p = 0.5;
  SeedSpec seed;
  std::size_t n_target = 0;
  std::vector<std::size_t> checkpoints;  // increasing, within (n0, n_target]
  std::uint64_t master_seed = 0;
  std::size_t replicate_count = 1;

  std::size_t n0() const { return seed.vertex_count(); }

  void validate() const {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("p outside [0,1]");
    if (n_target < n0()) throw std::invalid_argument("n_target below n0");
    std::size_t prev = n0();
    for (std::size_t c : checkpoints) {
      if (c <= prev || c > n_target)
        throw std::invalid_argument("checkpoints must be increasing within (n0, n_target]");
      prev = c;
    }
    if (replicate_count < 1) throw std::invalid_argument("replicate_count < 1");
  }
};

/// Geometric default checkpoint grid {n0*2^j} within (n0, n_target].
inline std::vector<std::size_t> geometric_checkpoints(std::size_t n0,
                                                      std::size_t n_target) {
  std::vector<std::size_t> cps;
  for (std::size_t c = 2 * n0; c <= n_target; c *= 2) cps.push_back(c);
  if (cps.empty() || cps.back() != n_target) cps.push_back(n_target);
  return cps;
}

/// One partial duplication step: pick a source uniformly, copy each of its
/// edges independently with probability p. The new vertex is not linked to
/// the source. Draw order is fixed (source first, then retention coins in
/// neighbor-sorted order) so runs are reproducible.
inline VertexId duplicate_step(Graph& g, double p, Rng& rng) {
  std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(g.n() - 1));
  VertexId src = pick(rng);
  std::vector<VertexId> kept;
  if (p >= 1.0) {
    auto nb = g.neighbors(src);
    kept.assign(nb.begin(), nb.end());
  } else if (p > 0.0) {
    std::bernoulli_distribution coin(p);
    kept.reserve(g.degree(src));
    for (VertexId w : g.neighbors(src))
      if (coin(rng)) kept.push_back(w);
  }
  return g.add_vertex_with_neighbors(std::move(kept));
}

using GrowObserver = std::function<void(const Graph&)>;

/// Runs duplicate_step until n_target vertices; the observer fires exactly
/// at each checkpoint size (read-only access).
inline void grow_to(Graph& g, std::size_t n_target, double p, Rng& rng,
                    std::span<const std::size_t> checkpoints = {},
                    const GrowObserver& observer = {}) {
  std::size_t ci = 0;
  while (ci < checkpoints.size() && checkpoints[ci] <= g.n()) {
    if (checkpoints[ci] < g.n())
      throw std::invalid_argument("checkpoint below current size");
    if (observer) observer(g);
    ++ci;
  }
  while (g.n() < n_target) {
    duplicate_step(g, p, rng);
    if (ci < checkpoints.size() && checkpoints[ci] == g.n()) {
      if (observer) observer(g);
      ++ci;
    }
  }
}

// ---------------------------------------------------------------------------
// Continuous time (PDt)

struct PDtClock {
  double t = 0.0;
};

/// One PDt event: each of the n vertices duplicates at rate 1 + 1/n, so the
/// total rate is n + 1 and the source is uniform. Returns the event time.
inline double pdt_advance(Graph& g, PDtClock& clock, double p, Rng& rng) {
  std::exponential_distribution<double> gap(static_cast<double>(g.n()) + 1.0);
  clock.t += gap(rng);
  duplicate_step(g, p, rng);
  return clock.t;
}

/// Runs PDt until the clock would pass `horizon`; g is the state at that time.
inline void pdt_run_until(Graph& g, PDtClock& clock, double p, double horizon,
                          Rng& rng) {
  while (true) {
    std::exponential_distribution<double> gap(static_cast<double>(g.n()) + 1.0);
    double next = clock.t + gap(rng);
    if (next > horizon) {
      clock.t = horizon;
      return;
    }
    clock.t = next;
    duplicate_step(g, p, rng);
  }
}

}  // namespace pdgraph
