#pragma once

// Test-only oracles, independent of the library's evaluation paths:
// exhaustive enumeration of all duplication outcomes, and naive
// subset-enumeration clique counting.

#include <cstdint>
#include <functional>
#include <vector>

#include "pdgraph/graph.hpp"

namespace pdgraph::oracle {

/// Exact E[f(G_n)] by enumerating every (source, retention-mask) outcome of
/// every step from g to n_target vertices. Exponential cost; tiny horizons only.
inline double enumerate_expected(const Graph& g, double p, std::size_t n_target,
                                 const std::function<double(const Graph&)>& f) {
  if (g.n() >= n_target) return f(g);
  double acc = 0.0;
  double inv_n = 1.0 / static_cast<double>(g.n());
  for (VertexId src = 0; src < g.n(); ++src) {
    auto nb = g.neighbors(src);
    std::size_t d = nb.size();
    for (std::uint64_t mask = 0; mask < (1ULL << d); ++mask) {
      double prob = inv_n;
      std::vector<VertexId> kept;
      for (std::size_t i = 0; i < d; ++i) {
        if (mask & (1ULL << i)) {
          prob *= p;
          kept.push_back(nb[i]);
        } else {
          prob *= 1.0 - p;
        }
      }
      if (prob == 0.0) continue;
      Graph g2 = g;
      g2.add_vertex_with_neighbors(std::move(kept));
      acc += prob * enumerate_expected(g2, p, n_target, f);
    }
  }
  return acc;
}

/// Counts k-cliques by testing every k-subset of vertices. O(n^k).
inline std::int64_t naive_count_cliques(const Graph& g, int k) {
  std::int64_t count = 0;
  std::vector<VertexId> pick(k);
  std::function<void(int, VertexId)> rec = [&](int depth, VertexId start) {
    if (depth == k) {
      ++count;
      return;
    }
    for (VertexId v = start; v < g.n(); ++v) {
      bool ok = true;
      for (int i = 0; i < depth && ok; ++i) ok = g.has_edge(pick[i], v);
      if (!ok) continue;
      pick[depth] = v;
      rec(depth + 1, v + 1);
    }
  };
  rec(0, 0);
  return count;
}

/// Uniform random graph on n vertices with edge probability q (test inputs).
inline Graph random_graph(std::size_t n, double q, Rng& rng) {
  Graph g(n);
  std::bernoulli_distribution coin(q);
  for (VertexId v = 0; v < n; ++v)
    for (VertexId w = v + 1; w < n; ++w)
      if (coin(rng)) g.add_edge(v, w);
  return g;
}

}  // namespace pdgraph::oracle
