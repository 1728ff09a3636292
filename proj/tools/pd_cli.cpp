// Command-line front end: grows PDn/PDt graphs, evaluates the exact laws,
// and emits CSV (primary) or JSON (mirror) for offline analysis.
//
// Exit codes: 0 ok, 1 statistical failure, 2 usage/config error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pdgraph/ensemble.hpp"
#include "pdgraph/exact_laws.hpp"
#include "pdgraph/graph.hpp"
#include "pdgraph/observables.hpp"
#include "pdgraph/pdmp.hpp"

using namespace pdgraph;
namespace L = pdgraph::laws;
namespace P = pdgraph::pdmp;

namespace {

// 17 significant digits: round-trip safe for doubles.
std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct Output {
  std::string path;  // empty = stdout
  std::ostream& stream() {
    if (path.empty()) return std::cout;
    if (!file.is_open()) {
      file.open(path);
      if (!file) throw CLI::ValidationError("--out", "cannot open " + path);
    }
    return file;
  }
  std::ofstream file;
};

SeedSpec resolve_seed(const std::string& name, const std::string& file) {
  if (!file.empty()) return read_edge_list_file(file);
  return parse_seed_name(name);
}

std::vector<double> seed_star_counts(const Graph& g, int k_max) {
  auto h = degree_histogram(g);
  std::vector<double> s;
  for (int k = 1; k <= k_max; ++k) s.push_back(count_stars(h, k));
  return s;
}

void log_config(const std::string& cmd, const nlohmann::json& cfg) {
  std::cerr << "# " << cmd << " config " << cfg.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"partial duplication random graph laboratory"};
  app.require_subcommand(1);

  std::string seed_name = "k3";
  std::string seed_file;
  std::string out_path;
  double p = 0.5;
  std::uint64_t master_seed = 0;
  unsigned workers = 1;
  int k_max = kDefaultKMax;

  auto add_common = [&](CLI::App* cmd, bool with_p = true) {
    cmd->add_option("--seed-graph", seed_name, "k2..k8, cycle(m), path(m), star(m)");
    cmd->add_option("--seed-graph-file", seed_file, "edge list file (header 'n <n0>')");
    cmd->add_option("--out", out_path, "output file (default stdout)");
    if (with_p) cmd->add_option("--p", p, "edge retention probability")->check(CLI::Range(0.0, 1.0));
  };

  // --- simulate ---------------------------------------------------------
  auto* sim = app.add_subcommand("simulate", "Monte Carlo ensemble vs exact laws");
  std::size_t n_target = 100;
  std::size_t replicates = 10000;
  std::vector<std::string> track{"c2"};
  std::vector<std::size_t> checkpoint_opt;
  double z_threshold = 4.0;
  bool json_mirror = false;
  add_common(sim);
  sim->add_option("--n", n_target, "growth horizon");
  sim->add_option("--replicates", replicates, "independent replicates");
  sim->add_option("--track", track,
                  "observables: c<k>, s<k>, f0, tr, d<vertex>, m<k> (scaled C_k)");
  sim->add_option("--checkpoints", checkpoint_opt, "explicit checkpoint sizes");
  sim->add_option("--master-seed", master_seed, "64-bit master seed");
  sim->add_option("--workers", workers, "worker threads");
  sim->add_option("--z-threshold", z_threshold, "pass/fail threshold");
  sim->add_option("--k-max", k_max, "largest clique size measured");
  sim->add_flag("--json", json_mirror, "emit the JSON mirror instead of CSV");

  // --- expect -----------------------------------------------------------
  auto* expect = app.add_subcommand("expect", "deterministic exact-law values");
  std::string law = "cliques";
  int law_k = 2;
  std::size_t law_n = 100;
  expect->add_option("law", law,
                     "cliques|stars|second-moment|degree-profile|transitivity");
  add_common(expect);
  expect->add_option("--k", law_k, "subgraph size");
  expect->add_option("--n", law_n, "target size");

  // --- degree-law -------------------------------------------------------
  auto* dlaw = app.add_subcommand("degree-law", "tracked initial-vertex degree law");
  std::size_t dl_n0 = 4, dl_n = 50;
  int dl_a = 2;
  dlaw->add_option("--n0", dl_n0, "initial graph size");
  dlaw->add_option("--a", dl_a, "initial degree of the tracked vertex");
  dlaw->add_option("--p", p, "edge retention probability")->check(CLI::Range(0.0, 1.0));
  dlaw->add_option("--n", dl_n, "target size");
  dlaw->add_option("--out", out_path, "output file (default stdout)");

  // --- pdmp -------------------------------------------------------------
  auto* pdmp_cmd = app.add_subcommand("pdmp", "auxiliary process simulation");
  double x0 = 0.5, horizon = 100.0, burn_in = 0.0;
  std::size_t pdmp_reps = 1000;
  bool dump_replicates = false;
  pdmp_cmd->add_option("--p", p, "jump factor / drift parameter")->check(CLI::Range(0.0, 1.0));
  pdmp_cmd->add_option("--x0", x0, "initial state")->check(CLI::Range(0.0, 1.0));
  pdmp_cmd->add_option("--t", horizon, "time horizon");
  pdmp_cmd->add_option("--burn-in", burn_in, "discard before time-averaging");
  pdmp_cmd->add_option("--replicates", pdmp_reps, "independent runs");
  pdmp_cmd->add_option("--master-seed", master_seed, "64-bit master seed");
  pdmp_cmd->add_option("--out", out_path, "output file (default stdout)");
  pdmp_cmd->add_flag("--dump", dump_replicates, "one row per replicate");

  // --- duality ----------------------------------------------------------
  auto* dual = app.add_subcommand("duality", "pgf duality check");
  double dual_x = 0.5, dual_t = 2.0;
  std::size_t dual_reps = 50000;
  add_common(dual);
  dual->add_option("--x", dual_x, "dual process start")->check(CLI::Range(0.0, 1.0));
  dual->add_option("--t", dual_t, "time horizon");
  dual->add_option("--replicates", dual_reps, "replicates per side");
  dual->add_option("--master-seed", master_seed, "64-bit master seed");

  // --- critical ---------------------------------------------------------
  auto* crit = app.add_subcommand("critical", "critical values of the model");
  std::optional<double> chung_p;
  crit->add_option("--chung-p", chung_p, "also solve p(b-1) = 1 - p^{b-1}");
  crit->add_option("--out", out_path, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  Output out;
  out.path = out_path;

  try {
    if (*sim) {
      SeedSpec seed = resolve_seed(seed_name, seed_file);
      ModelParams params;
      params.p = p;
      params.seed = seed;
      params.n_target = n_target;
      params.checkpoints = checkpoint_opt.empty()
                               ? geometric_checkpoints(seed.vertex_count(), n_target)
                               : checkpoint_opt;
      params.master_seed = master_seed;
      params.replicate_count = replicates;
      params.validate();
      log_config("simulate", {{"p", p},
                              {"n", n_target},
                              {"replicates", replicates},
                              {"masterSeed", master_seed},
                              {"workers", workers}});

      Graph g0 = build_seed(seed);
      auto h0 = degree_histogram(g0);
      std::size_t n0 = g0.n();

      std::vector<ObservableSpec> plan;
      std::vector<std::function<double(std::size_t)>> oracles;
      for (const auto& t : track) {
        if (t.size() >= 2 && t[0] == 'c') {
          int k = std::stoi(t.substr(1));
          double ck0 = static_cast<double>(count_cliques(g0, k, k_max));
          plan.push_back(obs_clique_count(k, k_max));
          oracles.push_back([=](std::size_t n) {
            return L::expected_cliques(ck0, k, p, n0, n);
          });
        } else if (t.size() >= 2 && t[0] == 's') {
          int k = std::stoi(t.substr(1));
          auto s0 = seed_star_counts(g0, k);
          plan.push_back(obs_star_count(k));
          oracles.push_back([=](std::size_t n) {
            return L::expected_stars(s0, k, p, n0, n);
          });
        } else if (t == "f0") {
          std::vector<double> f0(h0.counts.begin(), h0.counts.end());
          plan.push_back(obs_isolated_fraction());
          oracles.push_back([=](std::size_t n) {
            auto f = L::expected_degree_profile(f0, p, n0, n);
            return f[0] / static_cast<double>(n);
          });
        } else if (t == "tr") {
          plan.push_back(obs_transitivity());
          oracles.push_back({});  // no oracle: reported without comparison
        } else if (t.size() >= 2 && t[0] == 'd') {
          VertexId v = static_cast<VertexId>(std::stoul(t.substr(1)));
          int a = static_cast<int>(g0.degree(v));
          plan.push_back(obs_tracked_degree(v));
          oracles.push_back([=](std::size_t n) {
            return L::degree_scaled_moment(n0, a, p, 1, n) *
                   std::pow(static_cast<double>(n), p);
          });
        } else if (t.size() >= 2 && t[0] == 'm') {
          int k = std::stoi(t.substr(1));
          double ck0 = static_cast<double>(count_cliques(g0, k, k_max));
          double aexp = static_cast<double>(k) * std::pow(p, k - 1);
          plan.push_back(obs_scaled_clique(k, p, k_max));
          oracles.push_back([=](std::size_t n) {
            return ck0 * std::pow(static_cast<double>(n), -aexp) *
                   L::gamma_ratio_product(n0, n, aexp);
          });
        } else {
          throw CLI::ValidationError("--track", "unknown observable " + t);
        }
      }

      auto res = run_ensemble(params, plan, workers);
      bool any_fail = false;
      nlohmann::json jrows = nlohmann::json::array();
      auto& os = out.stream();
      if (!json_mirror)
        os << "observable,n,count,mean,se,oracle,z,pass\n";
      for (std::size_t i = 0; i < res.checkpoints.size(); ++i) {
        for (std::size_t j = 0; j < plan.size(); ++j) {
          const auto& st = res.stats[i][j];
          std::size_t n = res.checkpoints[i];
          std::string oracle_s = "", z_s = "", pass_s = "";
          nlohmann::json jr{{"observable", plan[j].id},
                            {"n", n},
                            {"count", st.count()},
                            {"mean", st.mean()},
                            {"se", st.se()}};
          if (oracles[j]) {
            auto rep = compare_one(plan[j].id, n, st, oracles[j](n), z_threshold);
            any_fail = any_fail || !rep.pass;
            oracle_s = num(rep.oracle);
            z_s = num(rep.z);
            pass_s = rep.pass ? "1" : "0";
            jr["oracle"] = rep.oracle;
            jr["z"] = rep.z;
            jr["pass"] = rep.pass;
          }
          if (json_mirror) {
            jrows.push_back(jr);
          } else {
            os << plan[j].id << "," << n << "," << st.count() << ","
               << num(st.mean()) << "," << num(st.se()) << "," << oracle_s << ","
               << z_s << "," << pass_s << "\n";
          }
        }
      }
      if (json_mirror) os << jrows.dump(2) << "\n";
      std::cerr << "# note: " << oracles.size()
                << " simultaneous comparisons; z-threshold " << z_threshold
                << " keeps the family-wise false-alarm rate low (Bonferroni)\n";
      return any_fail ? 1 : 0;
    }

    if (*expect) {
      SeedSpec seed = resolve_seed(seed_name, seed_file);
      Graph g0 = build_seed(seed);
      std::size_t n0 = g0.n();
      auto& os = out.stream();
      log_config("expect", {{"law", law}, {"p", p}, {"k", law_k}, {"n", law_n}});
      if (law == "cliques") {
        double ck0 = static_cast<double>(count_cliques(g0, law_k, std::max(k_max, law_k)));
        os << "law,k,n,p,value,asymptote\n";
        os << "cliques," << law_k << "," << law_n << "," << num(p) << ","
           << num(L::expected_cliques(ck0, law_k, p, n0, law_n)) << ","
           << num(L::expected_cliques_asymptote(ck0, law_k, p, n0, law_n)) << "\n";
      } else if (law == "stars") {
        auto s0 = seed_star_counts(g0, law_k);
        os << "law,k,n,p,value\n";
        os << "stars," << law_k << "," << law_n << "," << num(p) << ","
           << num(L::expected_stars(s0, law_k, p, n0, law_n)) << "\n";
      } else if (law == "second-moment") {
        double ck0 = static_cast<double>(count_cliques(g0, law_k, std::max(k_max, law_k)));
        auto prof = count_clique_pairs(g0, law_k);
        std::vector<double> pairs(prof.pairs.begin(), prof.pairs.end());
        auto r = L::expected_clique_second_moment(ck0, pairs, law_k, p, n0, law_n);
        os << "law,k,n,p,value,variance\n";
        os << "second-moment," << law_k << "," << law_n << "," << num(p) << ","
           << num(r.second_moment) << "," << num(r.variance) << "\n";
      } else if (law == "degree-profile") {
        auto h0 = degree_histogram(g0);
        std::vector<double> f0(h0.counts.begin(), h0.counts.end());
        auto f = L::expected_degree_profile(f0, p, n0, law_n);
        os << "k,expected_count\n";
        for (std::size_t k = 0; k < f.size(); ++k)
          os << k << "," << num(f[k]) << "\n";
      } else if (law == "transitivity") {
        double c30 = static_cast<double>(count_cliques(g0, 3));
        auto h0 = degree_histogram(g0);
        auto r = L::transitivity_scaling(c30, count_stars(h0, 2),
                                         count_stars(h0, 1), p, n0, law_n);
        os << "law,n,p,ratio,exponent,asymptotic_constant\n";
        os << "transitivity," << law_n << "," << num(p) << ","
           << num(r.finite_ratio) << "," << num(r.exponent) << ","
           << num(r.asymptotic_constant) << "\n";
      } else {
        throw CLI::ValidationError("law", "unknown law " + law);
      }
      return 0;
    }

    if (*dlaw) {
      log_config("degree-law", {{"n0", dl_n0}, {"a", dl_a}, {"p", p}, {"n", dl_n}});
      auto lawv = L::degree_law(dl_n0, dl_a, p, dl_n);
      auto& os = out.stream();
      os << "l,pmf,cdf\n";
      for (std::size_t i = 0; i < lawv.pmf.size(); ++i)
        os << (dl_a + static_cast<int>(i)) << "," << num(lawv.pmf[i]) << ","
           << num(lawv.cdf[i]) << "\n";
      return 0;
    }

    if (*pdmp_cmd) {
      log_config("pdmp", {{"p", p}, {"x0", x0}, {"t", horizon},
                          {"burnIn", burn_in}, {"replicates", pdmp_reps},
                          {"masterSeed", master_seed}});
      auto& os = out.stream();
      StreamingStat final_x, time_avg;
      if (dump_replicates) os << "replicate,x_T,time_average\n";
      for (std::size_t r = 0; r < pdmp_reps; ++r) {
        Rng rng = replicate_rng(master_seed, r);
        P::SimulateX simx(x0, p);
        simx.run_until(burn_in, rng);
        simx.reset_integral();
        simx.run_until(horizon, rng);
        double avg = horizon > burn_in ? simx.integral() / (horizon - burn_in)
                                       : simx.x();
        final_x.push(simx.x());
        time_avg.push(avg);
        if (dump_replicates)
          os << r << "," << num(simx.x()) << "," << num(avg) << "\n";
      }
      if (!dump_replicates) {
        os << "quantity,mean,se,n\n";
        os << "x_T," << num(final_x.mean()) << "," << num(final_x.se()) << ","
           << final_x.count() << "\n";
        os << "time_average," << num(time_avg.mean()) << ","
           << num(time_avg.se()) << "," << time_avg.count() << "\n";
      }
      return 0;
    }

    if (*dual) {
      SeedSpec seed = resolve_seed(seed_name, seed_file);
      log_config("duality", {{"p", p}, {"x", dual_x}, {"t", dual_t},
                             {"replicates", dual_reps}, {"masterSeed", master_seed}});
      auto res = P::duality_check(seed, dual_x, p, dual_t, dual_reps, master_seed);
      auto& os = out.stream();
      os << "side,mean,se,n\n";
      os << "graph_pgf," << num(res.lhs.mean) << "," << num(res.lhs.se) << ","
         << res.lhs.count << "\n";
      os << "dual_process," << num(res.rhs.mean) << "," << num(res.rhs.se) << ","
         << res.rhs.count << "\n";
      os << "z," << num(res.z()) << ",,\n";
      return std::abs(res.z()) <= 4.0 ? 0 : 1;
    }

    if (*crit) {
      auto& os = out.stream();
      os << "quantity,value\n";
      os << "p_star," << num(L::p_star()) << "\n";
      for (int k = 2; k <= 6; ++k)
        os << "p_" << k << "," << num(L::star_critical(k)) << "\n";
      for (int k = 2; k <= 6; ++k)
        os << "clique_crit_" << k << "," << num(L::clique_critical(k)) << "\n";
      if (chung_p) {
        if (*chung_p >= L::p_star() || *chung_p <= 0.0)
          os << "chung_b,no-solution\n";
        else
          os << "chung_b," << num(L::chung_exponent(*chung_p)) << "\n";
      }
      return 0;
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
