#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace pdgraph::laws {

// ---------------------------------------------------------------------------
// Gamma utilities

/// prod_{k=n0}^{n-1} (k+a)/k = Gamma(n+a)Gamma(n0) / (Gamma(n)Gamma(n0+a)).
/// Direct multiplication for short products, log-gamma otherwise.
inline double gamma_ratio_product(std::size_t n0, std::size_t n, double a) {
  if (a <= -static_cast<double>(n0))
    throw std::invalid_argument("gamma_ratio_product: a <= -n0");
  if (n < n0) throw std::invalid_argument("gamma_ratio_product: n < n0");
  if (n - n0 <= 64) {
    double prod = 1.0;
    for (std::size_t k = n0; k < n; ++k)
      prod *= (static_cast<double>(k) + a) / static_cast<double>(k);
    return prod;
  }
  double dn = static_cast<double>(n), dn0 = static_cast<double>(n0);
  return std::exp(std::lgamma(dn + a) - std::lgamma(dn) + std::lgamma(dn0) -
                  std::lgamma(dn0 + a));
}

/// n^a Gamma(n0)/Gamma(n0+a), the large-n asymptote of the product above.
inline double gamma_asymptote(std::size_t n0, double a, std::size_t n) {
  double dn0 = static_cast<double>(n0);
  return std::exp(a * std::log(static_cast<double>(n)) + std::lgamma(dn0) -
                  std::lgamma(dn0 + a));
}

// ---------------------------------------------------------------------------
// Critical values

namespace detail {

template <class F>
double bisect(F f, double lo, double hi, double tol = 1e-12, int max_iter = 200) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0))
    throw std::invalid_argument("bisect: no sign change on bracket");
  for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

/// p* solves p e^p = 1, equivalently p + log p = 0. p + log p is increasing
/// on (0,1], negative at 0.1 and positive at 1.
inline double p_star() {
  return detail::bisect([](double p) { return p + std::log(p); }, 0.1, 1.0);
}

/// p_k solves pk + p^k = 1 on (0,1); the left side is increasing in p.
inline double star_critical(int k) {
  if (k < 1) throw std::invalid_argument("star_critical: k < 1");
  return detail::bisect(
      [k](double p) { return p * k + std::pow(p, k) - 1.0; }, 0.0, 1.0);
}

/// k^{-1/(k-1)}, the threshold for C_k^o to diverge.
inline double clique_critical(int k) {
  if (k < 2) throw std::invalid_argument("clique_critical: k < 2");
  return std::pow(static_cast<double>(k), -1.0 / (k - 1.0));
}

/// Root b > 1 of p(b-1) = 1 - p^{b-1}. b = 1 always solves it; a root
/// b > 1 exists iff p < p*, where the derivative p + log p at b=1 is
/// negative so g dips below zero before growing linearly. No-solution is
/// reported as an empty optional via NaN-free signaling: we throw instead.
inline double chung_exponent(double p) {
  if (p <= 0.0 || p >= p_star())
    throw std::invalid_argument("chung_exponent: requires 0 < p < p*");
  auto g = [p](double b) {
    return p * (b - 1.0) - 1.0 + std::pow(p, b - 1.0);
  };
  double hi = 1.0 + 1.0 / p + 1.0;  // p(b-1) <= 1 forces b <= 1 + 1/p
  return detail::bisect(g, 1.0 + 1e-9, hi, 1e-12, 400);
}

// ---------------------------------------------------------------------------
// Cliques and stars

/// E[C_k(n)] = C_k(n0) prod_{m=n0}^{n-1} (m + k p^{k-1})/m.
inline double expected_cliques(double ck_n0, int k, double p, std::size_t n0,
                               std::size_t n) {
  if (k < 2) throw std::invalid_argument("expected_cliques: k < 2");
  double a = static_cast<double>(k) * std::pow(p, k - 1);
  return ck_n0 * gamma_ratio_product(n0, n, a);
}

inline double expected_cliques_asymptote(double ck_n0, int k, double p,
                                         std::size_t n0, std::size_t n) {
  double a = static_cast<double>(k) * std::pow(p, k - 1);
  return ck_n0 * gamma_asymptote(n0, a, n);
}

/// Propagates the coupled recursions
///   E[S_j(n+1)] = (1 + (pj+p^j)/n) E[S_j(n)] + p j(j-1)/n E[S_{j-1}(n)]
/// from n0 to n; returns (E[S_1(n)], ..., E[S_k(n)]).
inline std::vector<double> expected_stars_vector(std::vector<double> s_seed,
                                                 double p, std::size_t n0,
                                                 std::size_t n) {
  int k = static_cast<int>(s_seed.size());
  if (k < 1) throw std::invalid_argument("expected_stars_vector: empty seed");
  std::vector<double> s = std::move(s_seed);
  for (std::size_t m = n0; m < n; ++m) {
    double dm = static_cast<double>(m);
    for (int j = k; j >= 1; --j) {  // descending: uses S_{j-1} at time m
      double growth = (p * j + std::pow(p, j)) / dm;
      double coupling = (j >= 2) ? p * j * (j - 1.0) / dm * s[j - 2] : 0.0;
      s[j - 1] += growth * s[j - 1] + coupling;
    }
  }
  return s;
}

inline double expected_stars(const std::vector<double>& s_seed, int k, double p,
                             std::size_t n0, std::size_t n) {
  if (k < 1 || k > static_cast<int>(s_seed.size()))
    throw std::invalid_argument("expected_stars: k out of range of seed values");
  return expected_stars_vector(
      std::vector<double>(s_seed.begin(), s_seed.begin() + k), p, n0, n)[k - 1];
}

/// Closed form for E[S_2(n)]; p > 0 (contains 2/p).
inline double expected_s2_closed(double s2_n0, double s1_n0, double p,
                                 std::size_t n0, std::size_t n) {
  if (p <= 0.0) throw std::invalid_argument("expected_s2_closed: p = 0");
  double q2 = s2_n0 + 2.0 / p * s1_n0;
  return q2 * gamma_ratio_product(n0, n, 2.0 * p + p * p) -
         2.0 / p * s1_n0 * gamma_ratio_product(n0, n, 2.0 * p);
}

/// Coefficients a_l = prod_{m=l}^{k-1} m(m+1) / (k - m + p^{k-1} - p^{m-1})
/// making Q_k = sum_l a_l S_l satisfy a pure (1 + (pk+p^k)/n) recursion.
inline std::vector<double> star_combination_coefficients(int k, double p) {
  if (k < 1) throw std::invalid_argument("star_combination_coefficients: k < 1");
  if (p <= 0.0)
    throw std::invalid_argument("star_combination_coefficients: requires p > 0");
  std::vector<double> a(static_cast<std::size_t>(k));
  a[k - 1] = 1.0;  // empty product
  double pk1 = std::pow(p, k - 1);
  for (int l = k - 1; l >= 1; --l) {
    double denom = static_cast<double>(k - l) + pk1 - std::pow(p, l - 1);
    if (denom <= 0.0)
      throw std::runtime_error("star_combination_coefficients: nonpositive denominator");
    a[l - 1] = a[l] * static_cast<double>(l) * (l + 1.0) / denom;
  }
  return a;
}

/// Joint propagation of E[C_{k,l}], E[C_k] and E[C_k^2] via the l-pair
/// recursions. Seed pair counts come from explicit enumeration on G_{n0}.
struct CliqueSecondMoment {
  double mean = 0.0;
  double second_moment = 0.0;
  double variance = 0.0;
  std::vector<double> pair_means;  // E[C_{k,l}(n)], l = 0..k-1
};

inline CliqueSecondMoment expected_clique_second_moment(
    double ck_n0, const std::vector<double>& pairs_n0, int k, double p,
    std::size_t n0, std::size_t n) {
  if (static_cast<int>(pairs_n0.size()) != k)
    throw std::invalid_argument("expected_clique_second_moment: need k pair buckets");
  double pk1 = std::pow(p, k - 1);
  std::vector<double> cl = pairs_n0;
  double c = ck_n0;
  double c2 = ck_n0 * ck_n0;
  std::vector<double> next(cl.size());
  for (std::size_t m = n0; m < n; ++m) {
    double dm = static_cast<double>(m);
    for (int l = 0; l <= k - 2; ++l) {
      double self = (2.0 * (k - l) * pk1 + l * std::pow(p, 2 * k - l - 1)) / dm;
      double up = 2.0 * (l + 1) * pk1 / dm;
      next[l] = cl[l] + self * cl[l] + up * cl[l + 1];
    }
    {
      int l = k - 1;
      double self = (2.0 * pk1 + (k - 1.0) * std::pow(p, k)) / dm;
      next[l] = cl[l] + self * cl[l] + k * pk1 / dm * c;
    }
    double cross = 0.0;
    for (int l = 1; l <= k - 1; ++l)
      cross += l * std::pow(p, k - 1 - l) * cl[l];
    c2 = (1.0 + 2.0 * k * pk1 / dm) * c2 +
         2.0 * std::pow(p, k) / dm * cross + k * pk1 / dm * c;
    c *= 1.0 + k * pk1 / dm;
    cl.swap(next);
  }
  CliqueSecondMoment out;
  out.mean = c;
  out.second_moment = c2;
  out.variance = c2 - c * c;
  if (out.variance < -1e-9 * c * c)
    throw std::runtime_error("expected_clique_second_moment: negative variance");
  out.pair_means = std::move(cl);
  return out;
}

// ---------------------------------------------------------------------------
// Expected degree profile

/// Exact propagation of E[F_k(n)] (absolute counts) by the one-step law:
///   E[F_k(n+1)] = E[F_k(n)] + (p(k-1)F^o_{k-1} - pk F^o_k
///                 + sum_{l>=k} F^o_l C(l,k) p^k (1-p)^{l-k})
/// with F^o = F/n. Support grows by one per step and is kept in full.
inline std::vector<double> expected_degree_profile(std::vector<double> f_seed,
                                                   double p, std::size_t n0,
                                                   std::size_t n) {
  std::vector<double> f = std::move(f_seed);
  std::vector<double> next, binom;
  for (std::size_t m = n0; m < n; ++m) {
    double dm = static_cast<double>(m);
    std::size_t sup = f.size();
    next.assign(sup + 1, 0.0);
    for (std::size_t k = 0; k < sup; ++k) next[k] = f[k];
    // degree bumps of existing vertices
    for (std::size_t k = 1; k <= sup; ++k) {
      double gain = p * static_cast<double>(k - 1) *
                    (k - 1 < sup ? f[k - 1] : 0.0) / dm;
      double loss = (k < sup) ? p * static_cast<double>(k) * f[k] / dm : 0.0;
      next[k] += gain;
      if (k < sup) next[k] -= loss;
    }
    // binomially thinned degree of the new vertex
    for (std::size_t l = 0; l < sup; ++l) {
      if (f[l] == 0.0) continue;
      double w = f[l] / dm;
      if (p <= 0.0) {
        next[0] += w;
        continue;
      }
      if (p >= 1.0) {
        next[l] += w;
        continue;
      }
      binom.assign(l + 1, 0.0);
      double b = std::pow(1.0 - p, static_cast<double>(l));
      for (std::size_t j = 0; j <= l; ++j) {
        binom[j] = b;
        if (j < l)
          b *= static_cast<double>(l - j) / static_cast<double>(j + 1) * p /
               (1.0 - p);
      }
      for (std::size_t j = 0; j <= l; ++j) next[j] += w * binom[j];
    }
    f.swap(next);
  }
  return f;
}

// ---------------------------------------------------------------------------
// Degree law of a tracked initial vertex

struct DegreeLaw {
  std::size_t n0 = 0, n = 0;
  int a = 0;
  double p = 0.0;
  std::vector<double> pmf;  // index i -> P(D(n) = a + i)
  std::vector<double> cdf;

  double mean() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < pmf.size(); ++i)
      acc += pmf[i] * static_cast<double>(a + static_cast<int>(i));
    return acc;
  }
};

/// CDF recursion Phi_l(n+1) = Phi_l(n) - (pl/n)(Phi_l(n) - Phi_{l-1}(n)),
/// Phi_l(n0) = 1_{l>=a}. Numerically stable: preserves monotonicity in l
/// and values in [0,1]. This is the primary evaluation path.
inline DegreeLaw degree_law(std::size_t n0, int a, double p, std::size_t n) {
  if (a < 1 || a > static_cast<int>(n0) - 1)
    throw std::invalid_argument("degree_law: a outside [1, n0-1]");
  if (n < n0) throw std::invalid_argument("degree_law: n < n0");
  std::size_t span = n - n0;
  std::size_t lmax = static_cast<std::size_t>(a) + span;
  // phi[i] = Phi_{a+i-1}; phi[0] is Phi_{a-1} = 0 forever.
  std::vector<double> phi(lmax - a + 2, 1.0);
  phi[0] = 0.0;
  for (std::size_t m = n0; m < n; ++m) {
    double dm = static_cast<double>(m);
    double prev_old = phi[0];
    for (std::size_t i = 1; i < phi.size(); ++i) {
      double cur = phi[i];
      double l = static_cast<double>(a) + static_cast<double>(i) - 1.0;
      phi[i] = cur - p * l / dm * (cur - prev_old);
      prev_old = cur;
    }
  }
  DegreeLaw law;
  law.n0 = n0;
  law.n = n;
  law.a = a;
  law.p = p;
  law.cdf.assign(phi.begin() + 1, phi.end());
  law.pmf.resize(law.cdf.size());
  double prev = 0.0;
  for (std::size_t i = 0; i < law.cdf.size(); ++i) {
    law.pmf[i] = std::max(0.0, law.cdf[i] - prev);
    prev = law.cdf[i];
  }
  return law;
}

namespace detail {

inline double binom(double n, int k) {
  if (k < 0) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r *= (n - (k - i)) / static_cast<double>(i);
  return r;
}

}  // namespace detail

/// Alternating-sum pmf
///   P(D(n)=l | D(n0)=a) = sum_{m=a}^{l} (-1)^{m-a} C(l-1,m-1) C(m-1,a-1)
///                         prod_{j=n0}^{n-1} (1 - pm/j)
/// with compensated summation. Cancels catastrophically for large n - n0;
/// used only as a cross-check of the Phi recursion.
inline double degree_pmf_alternating(std::size_t n0, int a, double p,
                                     std::size_t n, int l) {
  if (l < a) return 0.0;
  double sum = 0.0, comp = 0.0;
  for (int m = a; m <= l; ++m) {
    double prod = 1.0;
    for (std::size_t j = n0; j < n; ++j)
      prod *= 1.0 - p * static_cast<double>(m) / static_cast<double>(j);
    double term = detail::binom(l - 1.0, m - 1) * detail::binom(m - 1.0, a - 1) * prod;
    if ((m - a) % 2 == 1) term = -term;
    double y = term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

/// Polya-urn pmf for p = 1: C(n-n0, l-a) a^{(l-a)} (n0-a)^{(n-n0-l+a)} / n0^{(n-n0)}
/// with rising factorials m^{(k)} = m(m+1)...(m+k-1).
inline double polya_pmf(std::size_t n0, int a, std::size_t n, int l) {
  int steps = static_cast<int>(n - n0);
  int up = l - a;
  if (up < 0 || up > steps) return 0.0;
  auto rising = [](double m, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= m + i;
    return r;
  };
  return detail::binom(static_cast<double>(steps), up) * rising(a, up) *
         rising(static_cast<double>(n0) - a, steps - up) /
         rising(static_cast<double>(n0), steps);
}

/// E[n^{-mp} D(n)^{(m)}] = a^{(m)} n^{-mp} prod_{l=n0}^{n-1} (l+mp)/l.
inline double degree_scaled_moment(std::size_t n0, int a, double p, int m,
                                   std::size_t n) {
  if (m < 1) throw std::invalid_argument("degree_scaled_moment: m < 1");
  double rising = 1.0;
  for (int i = 0; i < m; ++i) rising *= static_cast<double>(a + i);
  return rising * std::pow(static_cast<double>(n), -m * p) *
         gamma_ratio_product(n0, n, m * p);
}

/// lim_n E[n^{-mp} D(n)^{(m)}] = a^{(m)} Gamma(n0)/Gamma(n0+mp) = E[D(inf)^m].
inline double degree_limit_moment(std::size_t n0, int a, double p, int m) {
  if (m < 1) throw std::invalid_argument("degree_limit_moment: m < 1");
  double rising = 1.0;
  for (int i = 0; i < m; ++i) rising *= static_cast<double>(a + i);
  double dn0 = static_cast<double>(n0);
  return rising * std::exp(std::lgamma(dn0) - std::lgamma(dn0 + m * p));
}

// ---------------------------------------------------------------------------
// The limit of the isolated-vertex fraction (via the dual PDMP moments)

/// E[X_inf^k] = (1 - (1/p) log(1/p)) prod_{l=1}^{k-1} (1 - (1-p^l)/(pl)),
/// the stationary moments of the dual process; requires p > p*.
inline double x_moment(double p, int k) {
  if (k < 1) throw std::invalid_argument("x_moment: k < 1");
  if (p <= p_star()) throw std::invalid_argument("x_moment: requires p > p*");
  double m = 1.0 - std::log(1.0 / p) / p;
  for (int l = 1; l <= k - 1; ++l)
    m *= 1.0 - (1.0 - std::pow(p, l)) / (p * l);
  return m;
}

struct IsolatedLimit {
  double value = 1.0;
  bool supercritical = false;  // false: p <= p*, limit is 1
};

/// Limit of E[F_0^o(n)]: 1 for p <= p*, otherwise
/// x_inf = 1 - sum_{k>=1} S_k^o(n0)/k! (-1)^{k-1} E[X_inf^k].
/// The sum is finite for finite seeds (S_k^o(n0) = 0 beyond the max degree).
inline IsolatedLimit isolated_limit_x_infinity(double p,
                                               const std::vector<double>& s_circ_seed) {
  IsolatedLimit out;
  if (p <= p_star()) return out;
  out.supercritical = true;
  double sum = 0.0, factorial = 1.0;
  for (std::size_t k = 1; k <= s_circ_seed.size(); ++k) {
    factorial *= static_cast<double>(k);
    double sk = s_circ_seed[k - 1];
    if (sk == 0.0) continue;
    double term = sk / factorial * x_moment(p, static_cast<int>(k));
    sum += (k % 2 == 1) ? term : -term;
  }
  out.value = 1.0 - sum;
  return out;
}

// ---------------------------------------------------------------------------
// Transitivity scaling

struct TransitivityScaling {
  double finite_ratio = 0.0;      // E[6 C_3(n)] / E[S_2(n)]
  double exponent = 0.0;          // -2p(1-p)
  double asymptotic_constant = 0.0;
};

inline TransitivityScaling transitivity_scaling(double c3_n0, double s2_n0,
                                                double s1_n0, double p,
                                                std::size_t n0, std::size_t n) {
  if (p <= 0.0) throw std::invalid_argument("transitivity_scaling: requires p > 0");
  if (s2_n0 <= 0.0)
    throw std::invalid_argument("transitivity_scaling: seed must have S_2 > 0");
  TransitivityScaling out;
  double ec3 = expected_cliques(c3_n0, 3, p, n0, n);
  double es2 = expected_s2_closed(s2_n0, s1_n0, p, n0, n);
  out.finite_ratio = 6.0 * ec3 / es2;
  out.exponent = -2.0 * p * (1.0 - p);
  double dn0 = static_cast<double>(n0);
  out.asymptotic_constant = 6.0 * c3_n0 / (s2_n0 + 2.0 / p * s1_n0) *
                            std::exp(std::lgamma(dn0 + 2.0 * p + p * p) -
                                     std::lgamma(dn0 + 3.0 * p * p));
  return out;
}

}  // namespace pdgraph::laws
