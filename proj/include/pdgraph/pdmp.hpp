#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "pdgraph/graph.hpp"
#include "pdgraph/observables.hpp"
#include "pdgraph/rng.hpp"

namespace pdgraph::pdmp {

/// Logistic flow: solution of dx/dt = p x (1-x) after time s,
///   x e^{ps} / (1 - x + x e^{ps}).
inline double flow(double x, double p, double s) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double eps = std::exp(p * s);
  return x * eps / (1.0 - x + x * eps);
}

/// Flow in log-space: log x' = log x + ps - log1p(x (e^{ps} - 1)).
/// Exact for arbitrarily small x (x = e^{lx} underflows gracefully to 0).
inline double flow_log(double lx, double p, double s) {
  if (lx == -std::numeric_limits<double>::infinity()) return lx;
  if (lx >= 0.0) return 0.0;
  double ps = p * s;
  double x = std::exp(lx);
  return lx + ps - std::log1p(x * std::expm1(ps));
}

/// Integral of the flow over [0, s] started at x:
/// (1/p) log(1 - x + x e^{ps}), and x s when p = 0.
inline double flow_integral(double x, double p, double s) {
  if (p == 0.0 || x <= 0.0) return x * s;
  if (x >= 1.0) return s;
  return std::log1p(x * std::expm1(p * s)) / p;
}

/// The auxiliary process: logistic drift p x (1-x), jumps x -> px at the
/// events of a unit-rate Poisson process. Event-driven and exact: no time
/// discretization. The state is tracked in log-space so the subcritical
/// decay to 0 does not underflow.
class SimulateX {
 public:
  SimulateX(double x0, double p) : p_(p) {
    if (x0 < 0.0 || x0 > 1.0) throw std::invalid_argument("SimulateX: x0 outside [0,1]");
    lx_ = x0 > 0.0 ? std::log(x0) : -std::numeric_limits<double>::infinity();
  }

  double x() const { return lx_ < -745.0 ? 0.0 : std::exp(lx_); }
  double log_x() const { return lx_; }
  double t() const { return t_; }
  std::size_t jump_count() const { return jumps_; }
  /// Time integral of X accumulated so far (exact between jumps).
  double integral() const { return integral_; }

  /// Advances to time `horizon` (absolute).
  void run_until(double horizon, Rng& rng) {
    std::exponential_distribution<double> gap(1.0);
    while (true) {
      double next = t_ + gap(rng);
      if (next > horizon) {
        double s = horizon - t_;
        integral_ += flow_integral(x(), p_, s);
        lx_ = flow_log(lx_, p_, s);
        t_ = horizon;
        return;
      }
      double s = next - t_;
      integral_ += flow_integral(x(), p_, s);
      lx_ = flow_log(lx_, p_, s);
      lx_ += p_ > 0.0 ? std::log(p_) : -std::numeric_limits<double>::infinity();
      t_ = next;
      ++jumps_;
    }
  }

  void reset_integral() { integral_ = 0.0; }

 private:
  double p_;
  double lx_;
  double t_ = 0.0;
  double integral_ = 0.0;
  std::size_t jumps_ = 0;
};

inline double simulate_x(double x0, double p, double horizon, Rng& rng) {
  SimulateX sim(x0, p);
  sim.run_until(horizon, rng);
  return sim.x();
}

// ---------------------------------------------------------------------------
// Duality between the PDt degree pgf and the auxiliary process

struct MeanWithError {
  double mean = 0.0;
  double se = 0.0;
  std::size_t count = 0;
};

struct DualityResult {
  MeanWithError lhs;  // E[H^o_{1-x}(G_t) | G_0]
  MeanWithError rhs;  // E[sum_k F^o_k(G_0) (1 - X_t)^k | X_0 = x]
  double z() const {
    double s = std::sqrt(lhs.se * lhs.se + rhs.se * rhs.se);
    double d = lhs.mean - rhs.mean;
    return s > 0.0 ? d / s : (d == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
  }
};

/// Monte Carlo check of E[H~_x(t) | G_0] = E[H~_{X_t}(0) | X_0 = x] where
/// H~_x = H^o_{1-x}. Both sides reported with standard errors; the caller
/// judges. replicates counts each side.
inline DualityResult duality_check(const SeedSpec& seed, double x, double p,
                                   double t, std::size_t replicates,
                                   std::uint64_t master_seed) {
  if (replicates < 2) throw std::invalid_argument("duality_check: replicates < 2");
  Graph g0 = build_seed(seed);
  DegreeHistogram h0 = degree_histogram(g0);

  auto accumulate = [replicates](auto&& sample) {
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t r = 0; r < replicates; ++r) {
      double v = sample(r);
      sum += v;
      sumsq += v * v;
    }
    MeanWithError m;
    m.count = replicates;
    m.mean = sum / static_cast<double>(replicates);
    double var = (sumsq - sum * m.mean) / static_cast<double>(replicates - 1);
    m.se = std::sqrt(std::max(0.0, var) / static_cast<double>(replicates));
    return m;
  };

  DualityResult res;
  res.lhs = accumulate([&](std::size_t r) {
    Rng rng = replicate_rng(master_seed, r);
    Graph g = g0;
    PDtClock clock;
    pdt_run_until(g, clock, p, t, rng);
    return pgf(degree_histogram(g), 1.0 - x);
  });
  res.rhs = accumulate([&](std::size_t r) {
    Rng rng = replicate_rng(master_seed ^ 0x9e3779b97f4a7c15ULL, r);
    double xt = simulate_x(x, p, t, rng);
    return pgf(h0, 1.0 - xt);
  });
  return res;
}

}  // namespace pdgraph::pdmp
