#include <catch2/catch_amalgamated.hpp>

#include "oracle.hpp"
#include "pdgraph/exact_laws.hpp"
#include "pdgraph/graph.hpp"
#include "pdgraph/observables.hpp"

using namespace pdgraph;
namespace L = pdgraph::laws;

TEST_CASE("gamma ratio product") {
  CHECK(L::gamma_ratio_product(3, 10, 0.0) == 1.0);
  CHECK(L::gamma_ratio_product(3, 5, 1.0) == Catch::Approx(5.0 / 3.0).epsilon(1e-14));
  CHECK(L::gamma_ratio_product(3, 3, 2.5) == 1.0);  // empty product
  CHECK_THROWS(L::gamma_ratio_product(3, 10, -3.0));

  // product converges to its Gamma asymptote
  for (double a : {0.5, 1.0, 2.0, 3.0}) {
    double prod = L::gamma_ratio_product(3, 1000000, a);
    double asym = L::gamma_asymptote(3, a, 1000000);
    CHECK(prod / asym == Catch::Approx(1.0).epsilon(1e-4));
  }
}

TEST_CASE("expected cliques") {
  // p = 0: exponent k p^{k-1} = 0, expectation constant
  CHECK(L::expected_cliques(3.0, 2, 0.0, 3, 100) == 3.0);
  CHECK(L::expected_cliques(0.0, 4, 0.7, 3, 100) == 0.0);
  // K_3, k=2, p=0.5: 3 * (4/3)(5/4) = 5
  CHECK(L::expected_cliques(3.0, 2, 0.5, 3, 5) == Catch::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("expected cliques matches exhaustive enumeration") {
  Graph k3 = build_seed(SeedSpec::complete(3));
  double brute = oracle::enumerate_expected(k3, 0.5, 5, [](const Graph& g) {
    return static_cast<double>(count_cliques(g, 2));
  });
  CHECK(brute == Catch::Approx(5.0).epsilon(1e-12));
  CHECK(L::expected_cliques(3.0, 2, 0.5, 3, 5) == Catch::Approx(brute).epsilon(1e-12));

  double brute3 = oracle::enumerate_expected(k3, 0.7, 5, [](const Graph& g) {
    return static_cast<double>(count_cliques(g, 3));
  });
  CHECK(L::expected_cliques(1.0, 3, 0.7, 3, 5) == Catch::Approx(brute3).epsilon(1e-12));
}

TEST_CASE("expected stars recursion") {
  // K_3 seed: S_1 = 6, S_2 = 6. One step at p=1 gives degrees {3,3,2,2},
  // so S_2 = 16; the recursion gives (1 + 3/3)*6 + (2/3)*6 = 16.
  CHECK(L::expected_stars({6.0, 6.0}, 2, 1.0, 3, 4) == Catch::Approx(16.0));
  // p = 0: constant
  CHECK(L::expected_stars({6.0, 6.0}, 2, 0.0, 3, 50) == Catch::Approx(6.0));
  // S_1 propagation equals 2 E[C_2]
  for (double p : {0.3, 0.6, 0.9}) {
    double s1 = L::expected_stars({6.0}, 1, p, 3, 200);
    double c2 = L::expected_cliques(3.0, 2, p, 3, 200);
    CHECK(s1 == Catch::Approx(2.0 * c2).epsilon(1e-10));
  }
}

TEST_CASE("expected S_2 recursion equals closed form") {
  for (double p : {0.3, 0.6, 0.9}) {
    for (std::size_t n : {10u, 100u, 1000u, 10000u}) {
      double rec = L::expected_stars({6.0, 6.0}, 2, p, 3, n);
      double closed = L::expected_s2_closed(6.0, 6.0, p, 3, n);
      CHECK(rec == Catch::Approx(closed).epsilon(1e-9));
    }
  }
  CHECK_THROWS(L::expected_s2_closed(6.0, 6.0, 0.0, 3, 10));
}

TEST_CASE("expected stars matches exhaustive enumeration") {
  Graph k3 = build_seed(SeedSpec::complete(3));
  double brute = oracle::enumerate_expected(k3, 0.6, 5, [](const Graph& g) {
    return count_stars(degree_histogram(g), 2);
  });
  CHECK(L::expected_stars({6.0, 6.0}, 2, 0.6, 3, 5) == Catch::Approx(brute).epsilon(1e-12));
}

TEST_CASE("star combination coefficients") {
  auto a2 = L::star_combination_coefficients(2, 0.5);
  CHECK(a2[1] == 1.0);
  CHECK(a2[0] == Catch::Approx(2.0 / 0.5));

  for (int k : {1, 3, 5}) {
    auto a = L::star_combination_coefficients(k, 0.7);
    CHECK(a.back() == 1.0);
  }

  // closure: (pl + p^l) a_l + p l(l+1) a_{l+1} = (pk + p^k) a_l
  int k = 4;
  double p = 0.7;
  auto a = L::star_combination_coefficients(k, p);
  double rhs_coeff = p * k + std::pow(p, k);
  for (int l = 1; l <= k - 1; ++l) {
    double lhs = (p * l + std::pow(p, l)) * a[l - 1] + p * l * (l + 1.0) * a[l];
    CHECK(lhs == Catch::Approx(rhs_coeff * a[l - 1]).epsilon(1e-12));
  }
  CHECK_THROWS(L::star_combination_coefficients(3, 0.0));
}

TEST_CASE("Q_k closure of the propagated star expectations") {
  // Q_k(n) = sum a_l E[S_l(n)] must satisfy Q_k(n+1) = (1+(pk+p^k)/n) Q_k(n).
  std::vector<double> seed{6.0, 6.0, 0.0, 0.0, 0.0, 0.0};  // K_3
  for (int k = 1; k <= 6; ++k) {
    for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      auto a = L::star_combination_coefficients(k, p);
      for (std::size_t n : {3u, 10u, 57u}) {
        auto sn = L::expected_stars_vector(
            std::vector<double>(seed.begin(), seed.begin() + k), p, 3, n);
        auto sn1 = L::expected_stars_vector(
            std::vector<double>(seed.begin(), seed.begin() + k), p, 3, n + 1);
        double qn = 0.0, qn1 = 0.0;
        for (int l = 1; l <= k; ++l) {
          qn += a[l - 1] * sn[l - 1];
          qn1 += a[l - 1] * sn1[l - 1];
        }
        double growth = 1.0 + (p * k + std::pow(p, k)) / static_cast<double>(n);
        CHECK(qn1 == Catch::Approx(growth * qn).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("clique second moment propagation") {
  // p = 0: everything frozen, variance 0
  auto frozen = L::expected_clique_second_moment(3.0, {0.0, 0.0}, 2, 0.0, 3, 40);
  CHECK(frozen.mean == 3.0);
  CHECK(frozen.variance == Catch::Approx(0.0).margin(1e-12));

  // p = 1, K_3, k = 3, one step: C_3 becomes 2 surely, second moment 4
  auto one = L::expected_clique_second_moment(1.0, {0.0, 0.0, 0.0}, 3, 1.0, 3, 4);
  CHECK(one.mean == Catch::Approx(2.0));
  CHECK(one.second_moment == Catch::Approx(4.0));
  CHECK(one.variance == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("clique second moment matches exhaustive enumeration") {
  Graph k3 = build_seed(SeedSpec::complete(3));
  double brute2 = oracle::enumerate_expected(k3, 0.5, 5, [](const Graph& g) {
    double c = static_cast<double>(count_cliques(g, 2));
    return c * c;
  });
  auto prof = count_clique_pairs(k3, 2);
  std::vector<double> pairs(prof.pairs.begin(), prof.pairs.end());
  auto prop = L::expected_clique_second_moment(3.0, pairs, 2, 0.5, 3, 5);
  CHECK(prop.second_moment == Catch::Approx(brute2).epsilon(1e-12));

  // pair means must keep C(C,2) consistency with the second moment:
  // E[C^2] = 2 sum_l E[C_{k,l}] + E[C]
  double pair_sum = 0.0;
  for (double v : prop.pair_means) pair_sum += v;
  CHECK(prop.second_moment == Catch::Approx(2.0 * pair_sum + prop.mean).epsilon(1e-10));
}

TEST_CASE("expected degree profile") {
  // p = 0, K_3 seed: 3 vertices of degree 2, the rest isolated
  auto f = L::expected_degree_profile({0.0, 0.0, 3.0}, 0.0, 3, 20);
  CHECK(f[0] == Catch::Approx(17.0));
  CHECK(f[2] == Catch::Approx(3.0));

  // p = 1, K_2 seed, one step: degrees become {2,1,1} for either source
  auto f2 = L::expected_degree_profile({0.0, 2.0}, 1.0, 2, 3);
  CHECK(f2[1] == Catch::Approx(2.0));
  CHECK(f2[2] == Catch::Approx(1.0));

  // mass conservation and first-moment identity at p = 0.37, K_4 seed
  auto f3 = L::expected_degree_profile({0.0, 0.0, 0.0, 4.0}, 0.37, 4, 200);
  double mass = 0.0, first = 0.0;
  for (std::size_t k = 0; k < f3.size(); ++k) {
    mass += f3[k];
    first += static_cast<double>(k) * f3[k];
  }
  CHECK(mass == Catch::Approx(200.0).epsilon(1e-8));
  double ec2 = L::expected_cliques(6.0, 2, 0.37, 4, 200);
  CHECK(first == Catch::Approx(2.0 * ec2).epsilon(1e-8));
}

TEST_CASE("degree profile matches exhaustive enumeration") {
  Graph k3 = build_seed(SeedSpec::complete(3));
  auto prop = L::expected_degree_profile({0.0, 0.0, 3.0}, 0.6, 3, 5);
  for (std::size_t k = 0; k < prop.size(); ++k) {
    double brute = oracle::enumerate_expected(k3, 0.6, 5, [k](const Graph& g) {
      return static_cast<double>(degree_histogram(g).f(k));
    });
    CHECK(prop[k] == Catch::Approx(brute).margin(1e-12));
  }
}

TEST_CASE("degree law basics") {
  // n = n0: point mass at a
  auto law = L::degree_law(4, 2, 0.7, 4);
  REQUIRE(law.pmf.size() == 1);
  CHECK(law.pmf[0] == 1.0);

  // p=1, n0=2, a=1, n=4: uniform on {1,2,3}
  auto u = L::degree_law(2, 1, 1.0, 4);
  REQUIRE(u.pmf.size() == 3);
  for (double v : u.pmf) CHECK(v == Catch::Approx(1.0 / 3.0).epsilon(1e-12));

  CHECK_THROWS(L::degree_law(4, 0, 0.7, 10));
  CHECK_THROWS(L::degree_law(4, 4, 0.7, 10));
}

TEST_CASE("degree law is a valid distribution") {
  for (double p : {0.0, 0.4, 0.7, 1.0}) {
    auto law = L::degree_law(4, 2, p, 60);
    double total = 0.0, prev = 0.0;
    for (std::size_t i = 0; i < law.pmf.size(); ++i) {
      CHECK(law.pmf[i] >= 0.0);
      total += law.pmf[i];
      CHECK(law.cdf[i] >= prev);
      prev = law.cdf[i];
    }
    CHECK(total == Catch::Approx(1.0).margin(1e-10));
    CHECK(law.cdf.back() == Catch::Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("alternating sum agrees with the Phi recursion for short horizons") {
  for (double p : {0.3, 0.7, 1.0}) {
    for (std::size_t n : {5u, 15u, 33u}) {  // n - n0 <= 30
      auto law = L::degree_law(3, 2, p, n);
      for (std::size_t i = 0; i < law.pmf.size(); ++i) {
        int l = law.a + static_cast<int>(i);
        double alt = L::degree_pmf_alternating(3, 2, p, n, l);
        CHECK(law.pmf[i] == Catch::Approx(alt).margin(1e-9));
      }
    }
  }
}

TEST_CASE("p=1 degree law equals the Polya urn closed form") {
  for (std::size_t n0 : {2u, 3u, 4u, 5u}) {
    for (int a = 1; a < static_cast<int>(n0); ++a) {
      std::size_t n = n0 + 20;
      auto law = L::degree_law(n0, a, 1.0, n);
      for (std::size_t i = 0; i < law.pmf.size(); ++i) {
        int l = a + static_cast<int>(i);
        CHECK(law.pmf[i] == Catch::Approx(L::polya_pmf(n0, a, n, l)).margin(1e-12));
      }
    }
  }
}

TEST_CASE("degree scaled moments") {
  // empty product at n = n0
  CHECK(L::degree_scaled_moment(4, 2, 0.7, 1, 4) ==
        Catch::Approx(2.0 * std::pow(4.0, -0.7)));

  // p=1, a=1, n0=2, m=1: limit Gamma(2)/Gamma(3) = 1/2 (Beta(1,1) mean)
  CHECK(L::degree_limit_moment(2, 1, 1.0, 1) == Catch::Approx(0.5).epsilon(1e-12));

  // pmf mean consistency: E[D(n)] = a prod (l+p)/l
  for (double p : {0.4, 0.8}) {
    std::size_t n = 100;
    auto law = L::degree_law(4, 2, p, n);
    double scaled = L::degree_scaled_moment(4, 2, p, 1, n);
    double mean_from_formula = scaled * std::pow(static_cast<double>(n), p);
    CHECK(law.mean() == Catch::Approx(mean_from_formula).epsilon(1e-8));
  }

  // finite-n value converges to the limit moment
  double fin = L::degree_scaled_moment(4, 2, 0.6, 2, 2000000);
  double lim = L::degree_limit_moment(4, 2, 0.6, 2);
  CHECK(fin == Catch::Approx(lim).epsilon(1e-4));
}

TEST_CASE("critical values") {
  double ps = L::p_star();
  CHECK(std::abs(ps * std::exp(ps) - 1.0) < 1e-12);
  CHECK(ps == Catch::Approx(0.567143).margin(5e-7));

  CHECK(L::star_critical(2) == Catch::Approx(std::sqrt(2.0) - 1.0).margin(1e-10));
  CHECK(L::clique_critical(2) == 0.5);
  CHECK(L::clique_critical(3) == Catch::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));

  CHECK(L::chung_exponent(0.5) == Catch::Approx(2.0).margin(1e-10));
  CHECK_THROWS(L::chung_exponent(0.6));  // >= p*: no root b > 1
}

TEST_CASE("x moments") {
  for (int k : {1, 2, 5}) CHECK(L::x_moment(1.0, k) == Catch::Approx(1.0));
  CHECK(L::x_moment(0.8, 1) == Catch::Approx(1.0 - 1.25 * std::log(1.25)).epsilon(1e-12));
  // nonincreasing in k, values in (0, 1]
  double prev = 1.0;
  for (int k = 1; k <= 8; ++k) {
    double m = L::x_moment(0.7, k);
    CHECK(m > 0.0);
    CHECK(m <= prev + 1e-15);
    prev = m;
  }
  CHECK_THROWS(L::x_moment(0.5, 1));
  // E[X_inf] -> 0 as p -> p* from above
  CHECK(L::x_moment(L::p_star() + 1e-8, 1) == Catch::Approx(0.0).margin(1e-6));
}

TEST_CASE("isolated vertex limit") {
  // p <= p*: limit 1, flagged subcritical
  auto sub = L::isolated_limit_x_infinity(0.4, {2.0, 2.0});
  CHECK(sub.value == 1.0);
  CHECK(!sub.supercritical);

  // p = 1, K_3 seed (S_1^o = 2, S_2^o = 2): x_inf = 1 - (2 - 1) = 0
  auto full = L::isolated_limit_x_infinity(1.0, {2.0, 2.0});
  CHECK(full.supercritical);
  CHECK(full.value == Catch::Approx(0.0).margin(1e-12));

  // K_3 at p = 0.8: strictly between 0 and 1
  auto mid = L::isolated_limit_x_infinity(0.8, {2.0, 2.0});
  CHECK(mid.value > 0.0);
  CHECK(mid.value < 1.0);
}

TEST_CASE("transitivity scaling") {
  // no seed triangle: ratio 0 at every n
  auto zero = L::transitivity_scaling(0.0, 6.0, 6.0, 0.5, 4, 100);
  CHECK(zero.finite_ratio == 0.0);

  // p = 1: exponent vanishes, ratio tends to a constant
  auto flat = L::transitivity_scaling(1.0, 6.0, 6.0, 1.0, 3, 100);
  CHECK(flat.exponent == 0.0);

  CHECK_THROWS(L::transitivity_scaling(1.0, 6.0, 6.0, 0.0, 3, 100));
}

TEST_CASE("isolated fraction expectation is nondecreasing (submartingale)") {
  for (double p : {0.3, 0.567, 0.9}) {
    auto f = L::expected_degree_profile({0.0, 0.0, 3.0}, p, 3, 4);
    double prev = f[0] / 4.0;
    std::vector<double> cur = f;
    for (std::size_t n = 4; n < 120; ++n) {
      cur = L::expected_degree_profile(cur, p, n, n + 1);
      double frac = cur[0] / static_cast<double>(n + 1);
      CHECK(frac >= prev - 1e-12);
      prev = frac;
    }
  }
}
