#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "pdgraph/exact_laws.hpp"
#include "pdgraph/graph.hpp"
#include "pdgraph/observables.hpp"
#include "pdgraph/rng.hpp"

namespace pdgraph {

// ---------------------------------------------------------------------------
// Streaming statistics (Welford, with pairwise merge)

class StreamingStat {
 public:
  void push(double x) {
    ++count_;
    double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
    min_ = std::min(min_, x);
    max_ = std::max(max_, x);
  }

  /// Chan et al. parallel merge; associative and commutative up to
  /// floating-point rounding.
  void merge(const StreamingStat& o) {
    if (o.count_ == 0) return;
    if (count_ == 0) {
      *this = o;
      return;
    }
    double na = static_cast<double>(count_), nb = static_cast<double>(o.count_);
    double delta = o.mean_ - mean_;
    double n = na + nb;
    mean_ += delta * nb / n;
    m2_ += o.m2_ + delta * delta * na * nb / n;
    count_ += o.count_;
    min_ = std::min(min_, o.min_);
    max_ = std::max(max_, o.max_);
  }

  std::size_t count() const { return count_; }
  double mean() const { return mean_; }
  double variance() const {
    return count_ > 1 ? std::max(0.0, m2_) / static_cast<double>(count_ - 1)
                      : std::numeric_limits<double>::quiet_NaN();
  }
  double se() const {
    return count_ > 1 ? std::sqrt(variance() / static_cast<double>(count_))
                      : std::numeric_limits<double>::quiet_NaN();
  }
  double min() const { return min_; }
  double max() const { return max_; }

 private:
  std::size_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double min_ = std::numeric_limits<double>::infinity();
  double max_ = -std::numeric_limits<double>::infinity();
};

// ---------------------------------------------------------------------------
// Observable plans

struct ObservableSpec {
  std::string id;
  // nullopt = undefined for this replicate (excluded from the aggregate;
  // the defined-count is what StreamingStat::count reports).
  std::function<std::optional<double>(const Graph&)> eval;
};

inline ObservableSpec obs_clique_count(int k, int k_max = kDefaultKMax) {
  return {"C" + std::to_string(k), [k, k_max](const Graph& g) {
            return static_cast<double>(count_cliques(g, k, k_max));
          }};
}

inline ObservableSpec obs_star_count(int k) {
  return {"S" + std::to_string(k), [k](const Graph& g) {
            return count_stars(degree_histogram(g), k);
          }};
}

inline ObservableSpec obs_isolated_fraction() {
  return {"F0o", [](const Graph& g) {
            auto h = degree_histogram(g);
            return static_cast<double>(h.f(0)) / static_cast<double>(h.n);
          }};
}

inline ObservableSpec obs_tracked_degree(VertexId v) {
  return {"D" + std::to_string(v),
          [v](const Graph& g) { return static_cast<double>(g.degree(v)); }};
}

inline ObservableSpec obs_transitivity() {
  return {"Tr", [](const Graph& g) -> std::optional<double> {
            auto tr = transitivity(g);
            if (!tr) return std::nullopt;
            return *tr;
          }};
}

/// n^{-k p^{k-1}} C_k(n), the martingale scaling of the clique count.
inline ObservableSpec obs_scaled_clique(int k, double p, int k_max = kDefaultKMax) {
  double a = static_cast<double>(k) * std::pow(p, k - 1);
  return {"M_C" + std::to_string(k), [k, a, k_max](const Graph& g) {
            return std::pow(static_cast<double>(g.n()), -a) *
                   static_cast<double>(count_cliques(g, k, k_max));
          }};
}

// ---------------------------------------------------------------------------
// Ensemble runner

struct EnsembleResult {
  std::vector<std::size_t> checkpoints;
  std::vector<std::string> observable_ids;
  // stats[checkpoint_index][observable_index]
  std::vector<std::vector<StreamingStat>> stats;

  const StreamingStat& at(std::size_t cp_idx, const std::string& id) const {
    for (std::size_t j = 0; j < observable_ids.size(); ++j)
      if (observable_ids[j] == id) return stats[cp_idx][j];
    throw std::invalid_argument("unknown observable id: " + id);
  }
};

/// Runs independent replicates of the PDn growth and folds checkpoint
/// observables into streaming statistics. Replicate r is seeded with
/// hash(master_seed, r); replicates are grouped into fixed-size blocks
/// whose partial stats are merged in block order, so the result does not
/// depend on the worker count or scheduling.
inline EnsembleResult run_ensemble(const ModelParams& params,
                                   const std::vector<ObservableSpec>& plan,
                                   unsigned workers = 1) {
  params.validate();
  if (plan.empty()) throw std::invalid_argument("run_ensemble: empty plan");
  std::vector<std::size_t> cps = params.checkpoints;
  if (cps.empty()) cps.push_back(params.n_target);

  constexpr std::size_t kBlock = 256;
  std::size_t n_blocks = (params.replicate_count + kBlock - 1) / kBlock;
  using BlockStats = std::vector<std::vector<StreamingStat>>;
  std::vector<BlockStats> blocks(n_blocks);

  auto run_block = [&](std::size_t b) {
    BlockStats bs(cps.size(), std::vector<StreamingStat>(plan.size()));
    std::size_t lo = b * kBlock;
    std::size_t hi = std::min(lo + kBlock, params.replicate_count);
    for (std::size_t r = lo; r < hi; ++r) {
      Rng rng = replicate_rng(params.master_seed, r);
      Graph g = build_seed(params.seed);
      std::size_t ci = 0;
      grow_to(g, params.n_target, params.p, rng, cps, [&](const Graph& snap) {
        for (std::size_t j = 0; j < plan.size(); ++j)
          if (auto v = plan[j].eval(snap)) bs[ci][j].push(*v);
        ++ci;
      });
    }
    blocks[b] = std::move(bs);
  };

  if (workers <= 1 || n_blocks <= 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) run_block(b);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t b = next.fetch_add(1); b < n_blocks;
             b = next.fetch_add(1))
          run_block(b);
      });
    for (auto& th : pool) th.join();
  }

  EnsembleResult res;
  res.checkpoints = cps;
  for (const auto& o : plan) res.observable_ids.push_back(o.id);
  res.stats.assign(cps.size(), std::vector<StreamingStat>(plan.size()));
  for (std::size_t b = 0; b < n_blocks; ++b)
    for (std::size_t i = 0; i < cps.size(); ++i)
      for (std::size_t j = 0; j < plan.size(); ++j)
        res.stats[i][j].merge(blocks[b][i][j]);
  return res;
}

// ---------------------------------------------------------------------------
// Comparison against exact laws

struct ComparisonReport {
  std::string observable;
  std::size_t n = 0;
  double mc_mean = 0.0;
  double mc_se = 0.0;
  std::size_t count = 0;
  double oracle = 0.0;
  double z = 0.0;
  bool pass = false;
};

inline ComparisonReport compare_one(const std::string& id, std::size_t n,
                                    const StreamingStat& stat, double oracle,
                                    double z_threshold = 4.0) {
  ComparisonReport r;
  r.observable = id;
  r.n = n;
  r.mc_mean = stat.mean();
  r.mc_se = stat.se();
  r.count = stat.count();
  r.oracle = oracle;
  double diff = r.mc_mean - oracle;
  if (r.mc_se > 0.0 && std::isfinite(r.mc_se)) {
    r.z = diff / r.mc_se;
    r.pass = std::abs(r.z) <= z_threshold;
  } else {
    // degenerate sample (se = 0 or single replicate): hard equality
    r.z = diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    r.pass = diff == 0.0;
  }
  return r;
}

/// One report per checkpoint for a single observable; oracle_at(n) supplies
/// the exact value.
inline std::vector<ComparisonReport> compare(
    const EnsembleResult& res, const std::string& id,
    const std::function<double(std::size_t)>& oracle_at,
    double z_threshold = 4.0) {
  std::vector<ComparisonReport> out;
  for (std::size_t i = 0; i < res.checkpoints.size(); ++i) {
    std::size_t n = res.checkpoints[i];
    out.push_back(compare_one(id, n, res.at(i, id), oracle_at(n), z_threshold));
  }
  return out;
}

/// Tracks the scaled clique count n^{-k p^{k-1}} C_k(n) across checkpoints
/// and tests the constancy of its expectation: the oracle at n is
/// C_k(n0) n^{-a} prod (m+a)/m, which the martingale property pins down.
inline std::vector<ComparisonReport> scaled_martingale_track(
    const ModelParams& params, int k, unsigned workers = 1,
    double z_threshold = 4.0, int k_max = kDefaultKMax) {
  Graph g0 = build_seed(params.seed);
  double ck0 = static_cast<double>(count_cliques(g0, k, k_max));
  if (ck0 <= 0.0)
    throw std::invalid_argument("scaled_martingale_track: seed has no k-clique");
  double a = static_cast<double>(k) * std::pow(params.p, k - 1);
  auto res = run_ensemble(params, {obs_scaled_clique(k, params.p, k_max)}, workers);
  return compare(res, "M_C" + std::to_string(k), [&](std::size_t n) {
    return ck0 * std::pow(static_cast<double>(n), -a) *
           laws::gamma_ratio_product(params.n0(), n, a);
  }, z_threshold);
}

}  // namespace pdgraph
