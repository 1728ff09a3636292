#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "pdgraph/graph.hpp"

namespace pdgraph {

constexpr int kDefaultKMax = 6;

// ---------------------------------------------------------------------------
// Degree histogram and derived quantities

struct DegreeHistogram {
  std::vector<std::int64_t> counts;  // counts[k] = F_k
  std::size_t n = 0;

  std::int64_t f(std::size_t k) const {
    return k < counts.size() ? counts[k] : 0;
  }
  std::size_t max_degree() const { return counts.empty() ? 0 : counts.size() - 1; }
};

inline DegreeHistogram degree_histogram(const Graph& g) {
  DegreeHistogram h;
  h.n = g.n();
  for (VertexId v = 0; v < g.n(); ++v) {
    std::size_t d = g.degree(v);
    if (d >= h.counts.size()) h.counts.resize(d + 1, 0);
    ++h.counts[d];
  }
  return h;
}

/// H_q^o = sum_k F_k^o q^k, the pgf of the degree of a uniform vertex.
inline double pgf(const DegreeHistogram& h, double q) {
  double acc = 0.0, qk = 1.0;
  for (std::size_t k = 0; k < h.counts.size(); ++k) {
    acc += static_cast<double>(h.counts[k]) * qk;
    qk *= q;
  }
  return acc / static_cast<double>(h.n);
}

/// S_k = sum_l l(l-1)...(l-k+1) F_l, the k-th factorial moment of the
/// degree sequence (number of ordered k-stars).
inline double count_stars(const DegreeHistogram& h, int k) {
  if (k < 0) throw std::invalid_argument("count_stars: k < 0");
  if (k == 0) return static_cast<double>(h.n);
  double acc = 0.0;
  for (std::size_t l = static_cast<std::size_t>(k); l < h.counts.size(); ++l) {
    double fall = 1.0;
    for (int j = 0; j < k; ++j) fall *= static_cast<double>(l - j);
    acc += fall * static_cast<double>(h.counts[l]);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Clique counting

namespace detail {

inline void intersect_sorted(std::span<const VertexId> a,
                             std::span<const VertexId> b,
                             std::vector<VertexId>& out) {
  out.clear();
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib)
      ++ia;
    else if (*ib < *ia)
      ++ib;
    else {
      out.push_back(*ia);
      ++ia;
      ++ib;
    }
  }
}

// Ordered backtracking: candidates are common neighbors larger than the
// last clique vertex, so every clique is found exactly once.
inline std::int64_t extend_count(const Graph& g, const std::vector<VertexId>& cand,
                                 int depth) {
  if (depth == 0) return 1;
  if (depth == 1) return static_cast<std::int64_t>(cand.size());
  std::int64_t total = 0;
  std::vector<VertexId> next;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    VertexId v = cand[i];
    next.clear();
    auto nb = g.neighbors(v);
    auto it = std::upper_bound(nb.begin(), nb.end(), v);
    std::span<const VertexId> above{it, nb.end()};
    std::span<const VertexId> rest{cand.data() + i + 1, cand.size() - i - 1};
    intersect_sorted(above, rest, next);
    total += extend_count(g, next, depth - 1);
  }
  return total;
}

inline void extend_list(const Graph& g, std::vector<VertexId>& clique,
                        const std::vector<VertexId>& cand, int depth,
                        std::vector<std::vector<VertexId>>& out,
                        std::size_t cap) {
  if (depth == 0) {
    if (out.size() >= cap)
      throw std::runtime_error("clique enumeration exceeded safety cap");
    out.push_back(clique);
    return;
  }
  std::vector<VertexId> next;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    VertexId v = cand[i];
    next.clear();
    auto nb = g.neighbors(v);
    auto it = std::upper_bound(nb.begin(), nb.end(), v);
    std::span<const VertexId> above{it, nb.end()};
    std::span<const VertexId> rest{cand.data() + i + 1, cand.size() - i - 1};
    intersect_sorted(above, rest, next);
    clique.push_back(v);
    extend_list(g, clique, next, depth - 1, out, cap);
    clique.pop_back();
  }
}

}  // namespace detail

/// Exact number of k-cliques, 2 <= k <= k_max.
inline std::int64_t count_cliques(const Graph& g, int k, int k_max = kDefaultKMax) {
  if (k < 2 || k > k_max) throw std::invalid_argument("count_cliques: k out of range");
  if (k == 2) return static_cast<std::int64_t>(g.edge_count());
  std::int64_t total = 0;
  std::vector<VertexId> cand;
  for (VertexId v = 0; v < g.n(); ++v) {
    auto nb = g.neighbors(v);
    auto it = std::upper_bound(nb.begin(), nb.end(), v);
    cand.assign(it, nb.end());
    total += detail::extend_count(g, cand, k - 1);
  }
  return total;
}

/// All k-cliques as sorted vertex lists; capped for safety.
inline std::vector<std::vector<VertexId>> list_cliques(const Graph& g, int k,
                                                       std::size_t cap = 100000) {
  if (k < 2) throw std::invalid_argument("list_cliques: k < 2");
  std::vector<std::vector<VertexId>> out;
  std::vector<VertexId> clique, cand;
  for (VertexId v = 0; v < g.n(); ++v) {
    auto nb = g.neighbors(v);
    auto it = std::upper_bound(nb.begin(), nb.end(), v);
    cand.assign(it, nb.end());
    clique.assign(1, v);
    detail::extend_list(g, clique, cand, k - 1, out, cap);
  }
  return out;
}

/// Unordered pairs of k-cliques bucketed by shared-vertex count l.
struct CliquePairProfile {
  int k = 0;
  std::vector<std::int64_t> pairs;  // pairs[l] = C_{k,l}, l = 0..k-1
  std::int64_t total_cliques = 0;
};

inline CliquePairProfile count_clique_pairs(const Graph& g, int k,
                                            std::size_t cap = 100000) {
  auto cliques = list_cliques(g, k, cap);
  CliquePairProfile prof;
  prof.k = k;
  prof.pairs.assign(static_cast<std::size_t>(k), 0);
  prof.total_cliques = static_cast<std::int64_t>(cliques.size());
  std::vector<VertexId> shared;
  for (std::size_t i = 0; i < cliques.size(); ++i)
    for (std::size_t j = i + 1; j < cliques.size(); ++j) {
      detail::intersect_sorted(cliques[i], cliques[j], shared);
      ++prof.pairs[shared.size()];
    }
  return prof;
}

// ---------------------------------------------------------------------------
// Transitivity and moments

/// Tr = 6 C_3 / S_2; empty when S_2 = 0 (undefined, not zero).
inline std::optional<double> transitivity(const Graph& g) {
  auto h = degree_histogram(g);
  double s2 = count_stars(h, 2);
  if (s2 == 0.0) return std::nullopt;
  return 6.0 * static_cast<double>(count_cliques(g, 3)) / s2;
}

/// Stirling numbers of the second kind, S2(l, m) for l, m <= lmax.
inline std::vector<std::vector<double>> stirling2_table(int lmax) {
  std::vector<std::vector<double>> s(lmax + 1, std::vector<double>(lmax + 1, 0.0));
  s[0][0] = 1.0;
  for (int l = 1; l <= lmax; ++l)
    for (int m = 1; m <= l; ++m)
      s[l][m] = static_cast<double>(m) * s[l - 1][m] + s[l - 1][m - 1];
  return s;
}

/// M_l = sum_k k^l F_k^o, the l-th moment of the degree distribution.
inline double moment_of_degree(const DegreeHistogram& h, int l) {
  double acc = 0.0;
  for (std::size_t k = 0; k < h.counts.size(); ++k)
    acc += std::pow(static_cast<double>(k), l) * static_cast<double>(h.counts[k]);
  if (l == 0) acc = static_cast<double>(h.n);  // 0^0 = 1
  return acc / static_cast<double>(h.n);
}

/// Same moment through M_l = sum_m S2(l,m) S_m^o (Stirling expansion).
inline double moment_of_degree_stirling(const DegreeHistogram& h, int l) {
  auto s2 = stirling2_table(l);
  double acc = 0.0;
  for (int m = 0; m <= l; ++m)
    acc += s2[l][m] * count_stars(h, m) / static_cast<double>(h.n);
  return acc;
}

// ---------------------------------------------------------------------------
// Snapshots

struct ObservableSnapshot {
  std::size_t n = 0;
  std::optional<double> t;  // PDt runs only
  DegreeHistogram degree_hist;
  std::map<int, std::int64_t> cliques;        // k -> C_k
  std::map<int, double> stars;                // k -> S_k
  std::map<VertexId, std::size_t> tracked_degrees;
  std::optional<double> transitivity;
};

inline ObservableSnapshot take_snapshot(const Graph& g, int k_max = kDefaultKMax,
                                        std::span<const VertexId> tracked = {},
                                        std::optional<double> t = std::nullopt) {
  ObservableSnapshot s;
  s.n = g.n();
  s.t = t;
  s.degree_hist = degree_histogram(g);
  for (int k = 2; k <= k_max; ++k) s.cliques[k] = count_cliques(g, k, k_max);
  for (int k = 1; k <= k_max; ++k) s.stars[k] = count_stars(s.degree_hist, k);
  for (VertexId v : tracked) s.tracked_degrees[v] = g.degree(v);
  double s2 = s.stars.at(2);
  if (s2 > 0.0)
    s.transitivity = 6.0 * static_cast<double>(s.cliques.at(3)) / s2;
  return s;
}

inline nlohmann::json snapshot_to_json(const ObservableSnapshot& s) {
  nlohmann::json j;
  j["n"] = s.n;
  if (s.t) j["t"] = *s.t;
  nlohmann::json f = nlohmann::json::object();
  for (std::size_t k = 0; k < s.degree_hist.counts.size(); ++k)
    if (s.degree_hist.counts[k] != 0) f[std::to_string(k)] = s.degree_hist.counts[k];
  j["F"] = f;
  nlohmann::json c = nlohmann::json::object(), st = nlohmann::json::object();
  for (auto [k, v] : s.cliques) c[std::to_string(k)] = v;
  for (auto [k, v] : s.stars) st[std::to_string(k)] = v;
  j["C"] = c;
  j["S"] = st;
  nlohmann::json td = nlohmann::json::object();
  for (auto [v, d] : s.tracked_degrees) td[std::to_string(v)] = d;
  j["trackedDegrees"] = td;
  if (s.transitivity)
    j["transitivity"] = *s.transitivity;
  else
    j["transitivity"] = nullptr;
  return j;
}

}  // namespace pdgraph
