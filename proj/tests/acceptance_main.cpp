// Acceptance suite: runs every gate criterion end to end and prints one
// pass/fail line per criterion. Exit code is the number of failures.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "test_support.hpp"
#include "valnet/cli.hpp"
#include "valnet/compare.hpp"
#include "valnet/contagion.hpp"
#include "valnet/dichotomize.hpp"
#include "valnet/graph.hpp"
#include "valnet/io.hpp"
#include "valnet/metrics.hpp"
#include "valnet/netgen.hpp"
#include "valnet/rng.hpp"

using namespace valnet;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome pass(std::string detail) { return {true, std::move(detail)}; }
Outcome fail(std::string detail) { return {false, std::move(detail)}; }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

// ---------------------------------------------------------------------------
// 1. exact circuit oracles
Outcome circuit_oracles() {
  const ValuedGraph triangle =
      build_valued_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
  const ConductanceMatrix tri = effective_conductance(triangle);
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if (std::abs(1.0 / tri(i, j) - 2.0 / 3.0) > 1e-9) {
        return fail("triangle resistance " + fmt(1.0 / tri(i, j)) + " != 2/3");
      }
    }
  }

  const ValuedGraph path = build_valued_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  const ConductanceMatrix p = effective_conductance(path);
  if (std::abs(1.0 / p(0, 2) - 2.0) > 1e-9) {
    return fail("path end-to-end resistance " + fmt(1.0 / p(0, 2)) + " != 2");
  }

  Rng rng(101);
  int checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(12));
    const ValuedGraph tree = test::random_tree(n, rng);
    const ConductanceMatrix c = effective_conductance(tree);
    const DistanceMatrix d = geodesic_distances(tree);
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        // on a tree the geodesic length is the path sum of reciprocal weights
        if (std::abs(1.0 / c(a, b) - d(a, b)) > 1e-9) {
          return fail("tree resistance != path sum at n=" + std::to_string(n));
        }
        ++checked;
      }
    }
  }
  return pass("triangle, series path and " + std::to_string(checked) +
              " tree pairs exact to 1e-9");
}

// ---------------------------------------------------------------------------
// 2. Rayleigh monotonicity
Outcome rayleigh_monotonicity() {
  Rng rng(202);
  int inserted = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(28));  // n <= 30
    const ValuedGraph g = test::random_graph(n, 0.25, rng);
    std::vector<std::pair<int, int>> absent;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (g.weight(i, j) == 0.0) absent.emplace_back(i, j);
      }
    }
    if (absent.empty()) continue;
    const auto [a, b] = absent[rng.below(absent.size())];
    Eigen::MatrixXd w = g.weights();
    const double weight = 0.25 + 2.0 * rng.uniform();
    w(a, b) = weight;
    w(b, a) = weight;
    const ConductanceMatrix before = effective_conductance(g);
    const ConductanceMatrix after = effective_conductance(ValuedGraph(n, std::move(w)));
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (after(i, j) < before(i, j) - 1e-9) {
          return fail("conductance dropped after inserting an edge (n=" +
                      std::to_string(n) + ")");
        }
      }
    }
    ++inserted;
  }
  return pass(std::to_string(inserted) + " random edge insertions, no decrease");
}

// ---------------------------------------------------------------------------
// 3. rank discrepancy identities
Outcome rank_discrepancy_identities() {
  RankVector a;
  RankVector b;
  a.ranks = {3, 1, 4, 2};
  b.ranks = {3, 1, 4, 2};
  if (rank_discrepancy(a, b) != 0.0) return fail("nonzero on identical rankings");

  a.ranks = {1, 2, 3};
  b.ranks = {2, 1, 3};
  const double expected = std::sqrt(2.0) / 3.0;
  if (std::abs(rank_discrepancy(a, b) - expected) > 1e-12) {
    return fail("swap-top-two value " + fmt(rank_discrepancy(a, b)));
  }

  Rng rng(303);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(20));
    RankVector ra;
    RankVector rb;
    ra.ranks.resize(n);
    rb.ranks.resize(n);
    for (int i = 0; i < n; ++i) ra.ranks[i] = rb.ranks[i] = i + 1;
    rng.shuffle(ra.ranks);
    rng.shuffle(rb.ranks);
    if (rank_discrepancy(ra, rb) != rank_discrepancy(rb, ra)) {
      return fail("asymmetric at trial " + std::to_string(trial));
    }
  }
  return pass("identity, swap-top-two and symmetry over 1000 pairs");
}

// ---------------------------------------------------------------------------
// 4. dichotomization laws
Outcome dichotomization_laws() {
  Rng rng(404);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 4 + static_cast<int>(rng.below(47));  // n <= 50
    const ValuedGraph g = test::random_connected_graph(n, 0.2, rng);

    const std::vector<double> cuts = ladder(LadderKind::Threshold, g, 50);
    for (std::size_t s = 1; s < cuts.size(); ++s) {
      const UndirectedBinaryGraph lo = threshold_graph(g, cuts[s - 1]);
      const UndirectedBinaryGraph hi = threshold_graph(g, cuts[s]);
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          if (hi.edge(i, j) && !lo.edge(i, j)) {
            return fail("threshold nesting violated at trial " + std::to_string(trial));
          }
        }
      }
    }

    const std::uint64_t seed = 7000 + trial;
    const int kmax = std::min(n - 1, 12);
    DirectedBinaryGraph prev = censor_topk(g, 1, seed);
    for (int k = 1; k <= kmax; ++k) {
      const DirectedBinaryGraph cur = censor_topk(g, k, seed);
      for (int i = 0; i < n; ++i) {
        int outdegree = 0;
        for (int j = 0; j < n; ++j) {
          if (cur.arc(i, j)) ++outdegree;
          if (k > 1 && prev.arc(i, j) && !cur.arc(i, j)) {
            return fail("censoring nesting violated at trial " + std::to_string(trial));
          }
        }
        if (outdegree > k) {
          return fail("outdegree " + std::to_string(outdegree) + " exceeds k=" +
                      std::to_string(k));
        }
      }
      prev = cur;
    }
  }
  return pass("nesting and outdegree bounds hold on 100 graphs up to n=50");
}

// ---------------------------------------------------------------------------
// 5. exhaustive-oracle dominance
Outcome oracle_dominance() {
  Rng rng(505);
  int graphs = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 4 + trial % 3;  // 4, 5, 6
    const ValuedGraph g = test::random_connected_graph(n, 0.5, rng);
    const std::uint64_t seed = 11000 + trial;
    const int replicates = 3;

    const SweepResult thresh =
        sweep(g, DichotomizeMethod::Threshold, ladder(LadderKind::Threshold, g, 6),
              replicates, all_statistics(), seed);
    std::vector<double> ks;
    for (int k = 1; k <= n - 1; ++k) ks.push_back(k);
    const SweepResult censor =
        sweep(g, DichotomizeMethod::Censor, ks, replicates, all_statistics(), seed);

    const auto oracle =
        brute_force_best_binary_all(g, all_statistics(), 6, replicates, seed);
    std::map<Statistic, double> topt;
    std::map<Statistic, double> copt;
    for (const auto& o : thresh.optima) topt[o.statistic] = o.mean_discrepancy;
    for (const auto& o : censor.optima) copt[o.statistic] = o.mean_discrepancy;
    for (Statistic s : all_statistics()) {
      if (oracle.at(s).discrepancy > topt.at(s) ||
          oracle.at(s).discrepancy > copt.at(s)) {
        return fail(std::string("oracle beaten for ") +
                    std::string(statistic_name(s)) + " at trial " +
                    std::to_string(trial));
      }
    }
    ++graphs;
  }
  return pass("oracle <= both sweep optima for 7 statistics on " +
              std::to_string(graphs) + " graphs");
}

// ---------------------------------------------------------------------------
// 6. generator calibration
Outcome generator_calibration() {
  GenConfig gamma_cfg;
  gamma_cfg.n = 450;  // > 10^5 pair draws
  gamma_cfg.family = Family::Gamma;
  gamma_cfg.mu_offset = 3.0;
  const auto [gamma_graph, gl] = sample_graph(gamma_cfg, 606);
  double sum = 0.0;
  double sum2 = 0.0;
  long count = 0;
  for (int i = 0; i < gamma_cfg.n; ++i) {
    for (int j = i + 1; j < gamma_cfg.n; ++j) {
      const double v = gamma_graph.weight(i, j);
      sum += v;
      sum2 += v * v;
      ++count;
    }
  }
  const double mean = sum / count;
  const double var = sum2 / count - mean * mean;
  if (std::abs(mean - 3.0) > 0.03) return fail("Gamma mean " + fmt(mean));
  if (std::abs(var - 1.0) > 0.05) return fail("Gamma variance " + fmt(var));

  GenConfig pois_cfg;
  pois_cfg.n = 200;
  pois_cfg.family = Family::Poisson;
  const auto [pois_graph, pl] = sample_graph(pois_cfg, 607);
  long zeros = 0;
  long pairs = 0;
  for (int i = 0; i < pois_cfg.n; ++i) {
    for (int j = i + 1; j < pois_cfg.n; ++j) {
      if (pois_graph.weight(i, j) == 0.0) ++zeros;
      ++pairs;
    }
  }
  const double zero_frac = static_cast<double>(zeros) / pairs;
  const double expected_zero = std::exp(-std::exp(-1.0));
  if (std::abs(zero_frac - expected_zero) > 0.03 * expected_zero) {
    return fail("Poisson zero fraction " + fmt(zero_frac) + " vs " +
                fmt(expected_zero));
  }

  GenConfig alpha_cfg;
  alpha_cfg.n = 10000;
  alpha_cfg.sigma_alpha = 2.5;
  const LatentState latents = sample_latents(alpha_cfg, 608);
  double asum = 0.0;
  double asum2 = 0.0;
  for (double a : latents.alpha) {
    asum += a;
    asum2 += a * a;
  }
  const double amean = asum / alpha_cfg.n;
  const double sd = std::sqrt(asum2 / alpha_cfg.n - amean * amean);
  if (std::abs(sd - 2.5) > 0.03 * 2.5) return fail("alpha sd " + fmt(sd));

  return pass("Gamma mean " + fmt(mean) + ", var " + fmt(var) + "; zero frac " +
              fmt(zero_frac) + "; alpha sd " + fmt(sd));
}

// ---------------------------------------------------------------------------
// 7. self-recovery of a binary-valued graph
Outcome self_recovery() {
  Rng rng(707);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(10, 10);
  for (int i = 0; i < 10; ++i) {
    for (int j = i + 1; j < 10; ++j) {
      if (rng.uniform() < 0.45) {
        w(i, j) = 1.0;
        w(j, i) = 1.0;
      }
    }
  }
  const ValuedGraph g(10, w);
  const SweepResult result = sweep(g, DichotomizeMethod::Threshold,
                                   {0.0, 0.5, 1.0}, 3, all_statistics(), 708);
  for (const auto& o : result.optima) {
    if (o.mean_discrepancy != 0.0) {
      return fail(std::string(statistic_name(o.statistic)) + " optimum " +
                  fmt(o.mean_discrepancy) + " != 0");
    }
    if (o.parameter >= 1.0) {
      return fail("optimum threshold not inside (0,1)");
    }
  }
  return pass("all 7 statistics report zero discrepancy at the recovering threshold");
}

// ---------------------------------------------------------------------------
// 8. contagion exactness
Outcome contagion_exactness() {
  Rng rng(808);
  const ValuedGraph g = test::random_connected_graph(50, 0.3, rng);
  LmConfig cfg;
  cfg.mu_lm = 0.4;
  cfg.gamma_lm = 0.6;
  cfg.beta = 0.25;
  cfg.sigma_eps = 0.0;
  cfg.seed = 809;
  const ContagionPanel panel = simulate_two_step(g, cfg);
  const FitResult fit = ols_fit(panel, g);
  if (std::abs(fit.mu_hat - cfg.mu_lm) > 1e-8 ||
      std::abs(fit.gamma_hat - cfg.gamma_lm) > 1e-8 ||
      std::abs(fit.beta_hat - cfg.beta) > 1e-8) {
    return fail("noiseless recovery off: beta_hat = " + fmt(fit.beta_hat));
  }

  LmConfig noisy = cfg;
  noisy.sigma_eps = 0.5;
  const ContagionPanel noisy_panel = simulate_two_step(g, noisy);
  const FitResult base = ols_fit(noisy_panel, g);
  for (double s : {2.0, 10.0, 0.5}) {
    const ValuedGraph scaled(g.size(), (g.weights() * s).eval());
    const FitResult sf = ols_fit(noisy_panel, scaled);
    if (std::abs(s * sf.beta_hat - base.beta_hat) >
        1e-10 * std::max(1.0, std::abs(base.beta_hat))) {
      return fail("beta scaling law violated at s=" + fmt(s));
    }
  }
  return pass("noiseless recovery to 1e-8; beta scales exactly as 1/s");
}

// ---------------------------------------------------------------------------
// 9. heterogeneity trend in the linear-model MSE ratio
Outcome heterogeneity_trend() {
  const int pairs = 30;
  const std::vector<int> k_ladder = {1, 2, 3, 4, 5, 6, 8, 10, 12, 16, 20, 25};
  const int replicates = 30;

  int high_wins = 0;
  std::vector<double> high_ratios;
  for (int p = 0; p < pairs; ++p) {
    double min_ratio[2] = {0.0, 0.0};
    const double sigmas[2] = {0.1, 10.0};
    for (int side = 0; side < 2; ++side) {
      GenConfig gen;
      gen.n = 100;
      gen.family = Family::Gamma;
      gen.sigma_alpha = sigmas[side];
      const auto [g, latents] = sample_graph(gen, 90000 + p);
      LmConfig lm;
      lm.mu_lm = 0.0;
      lm.gamma_lm = 0.5;
      lm.beta = 0.1;
      lm.sigma_eps = 1.0;
      lm.seed = 91000 + p;
      const MseExperimentResult result = mse_experiment(g, lm, k_ladder, replicates);
      min_ratio[side] = result.min_ratio;
    }
    if (min_ratio[1] > min_ratio[0]) ++high_wins;
    high_ratios.push_back(min_ratio[1]);
  }
  std::sort(high_ratios.begin(), high_ratios.end());
  const double median_high =
      (high_ratios[pairs / 2 - 1] + high_ratios[pairs / 2]) / 2.0;
  const double win_rate = static_cast<double>(high_wins) / pairs;
  if (win_rate < 0.9) {
    return fail("high-heterogeneity minimal ratio larger in only " +
                std::to_string(high_wins) + "/30 pairs");
  }
  if (median_high <= 10.0) {
    return fail("median high-heterogeneity minimal ratio " + fmt(median_high) +
                " <= 10");
  }
  return pass("ratio larger in " + std::to_string(high_wins) +
              "/30 pairs; median minimal ratio " + fmt(median_high));
}

// ---------------------------------------------------------------------------
// 10. directional replication on EIES-like data
Outcome directional_replication() {
  ValuedGraph* graph = nullptr;
  ValuedGraph loaded = build_valued_graph(2, {});
  std::string source;
  const char* env = std::getenv("VALNET_EIES_EDGELIST");
  if (env != nullptr && std::filesystem::exists(env)) {
    loaded = io::symmetrize_arcs(io::read_weighted_edgelist(env),
                                 io::SymmetrizeRule::Mean);
    graph = &loaded;
    source = "EIES data from VALNET_EIES_EDGELIST";
  } else {
    // public data set unavailable: same directional check on a synthetic
    // high-heterogeneity 32-node Poisson graph
    GenConfig gen;
    gen.n = 32;
    gen.family = Family::Poisson;
    gen.sigma_alpha = 10.0;
    loaded = sample_graph(gen, 1000).first;
    graph = &loaded;
    source = "synthetic sigma_alpha=10 Poisson fallback";
  }

  const int replicates = 10;
  const std::uint64_t seed = 1001;
  std::vector<double> ks;
  for (int k = 1; k <= std::min(24, graph->size() - 1); ++k) ks.push_back(k);
  const SweepResult censor =
      sweep(*graph, DichotomizeMethod::Censor, ks, replicates, all_statistics(), seed);
  const SweepResult thresh =
      sweep(*graph, DichotomizeMethod::Threshold,
            ladder(LadderKind::Threshold, *graph, 24), replicates, all_statistics(),
            seed);

  std::map<Statistic, double> copt;
  for (const auto& o : censor.optima) copt[o.statistic] = o.mean_discrepancy;
  int threshold_wins = 0;
  for (const auto& o : thresh.optima) {
    if (o.mean_discrepancy < copt.at(o.statistic)) ++threshold_wins;
  }
  if (threshold_wins < 5) {
    return fail("thresholding beats censoring on only " +
                std::to_string(threshold_wins) + "/7 measures (" + source + ")");
  }
  return pass("thresholding beats censoring on " + std::to_string(threshold_wins) +
              "/7 measures (" + source + ")");
}

// ---------------------------------------------------------------------------
// 11. manifest rerun determinism
Outcome manifest_determinism() {
  test::TempDir tmp;
  io::ExperimentConfig cfg;
  cfg.generation = GenConfig{};
  cfg.generation->n = 20;
  cfg.generation->family = Family::Gamma;
  cfg.generation->sigma_alpha = 1.0;
  cfg.generation->seed = 1100;
  cfg.replicates = 4;
  cfg.ladder.steps = 6;
  cfg.seed = 1101;
  cfg.out_dir = (tmp.path() / "run1").string();
  {
    std::ofstream out(tmp.path() / "config.json");
    out << io::to_json(cfg);
  }
  auto run = [](const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("valnet");
    for (const auto& a : args) argv.push_back(a.c_str());
    // keep the tool's progress lines out of the per-criterion report
    std::ostringstream sink;
    auto* old = std::cout.rdbuf(sink.rdbuf());
    const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data());
    std::cout.rdbuf(old);
    return code;
  };
  if (run({"sweep", "--config", (tmp.path() / "config.json").string()}) != 0) {
    return fail("initial sweep run failed");
  }
  if (run({"sweep", "--config", (tmp.path() / "run1" / "manifest.json").string(),
           "--out", (tmp.path() / "run2").string()}) != 0) {
    return fail("manifest rerun failed");
  }
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
  };
  for (const char* name : {"records.csv", "optima.csv"}) {
    const std::string a = slurp(tmp.path() / "run1" / name);
    const std::string b = slurp(tmp.path() / "run2" / name);
    if (a.empty() || a != b) {
      return fail(std::string(name) + " differs between run and manifest rerun");
    }
  }
  return pass("manifest rerun reproduces records.csv and optima.csv bit-for-bit");
}

struct Criterion {
  int number;
  std::string title;
  std::function<Outcome()> fn;
  double budget_seconds;  // 0 = no stated budget
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "circuit oracles exact", circuit_oracles, 1.0},
      {2, "Rayleigh monotonicity on 200 random graphs", rayleigh_monotonicity, 30.0},
      {3, "rank discrepancy identities", rank_discrepancy_identities, 0.0},
      {4, "dichotomization laws on 100 random graphs", dichotomization_laws, 0.0},
      {5, "exhaustive-oracle dominance (50 graphs, n=4..6)", oracle_dominance, 300.0},
      {6, "generator calibration", generator_calibration, 0.0},
      {7, "binary self-recovery through the sweep", self_recovery, 0.0},
      {8, "contagion exactness and scaling laws", contagion_exactness, 0.0},
      {9, "heterogeneity trend in MSE ratios", heterogeneity_trend, 600.0},
      {10, "directional replication (thresholding vs censoring)",
       directional_replication, 0.0},
      {11, "manifest rerun determinism", manifest_determinism, 0.0},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criterion.fn();
    } catch (const std::exception& e) {
      outcome = fail(std::string("exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (criterion.budget_seconds > 0.0 && elapsed > criterion.budget_seconds) {
      outcome.pass = false;
      outcome.detail += " [exceeded " + fmt(criterion.budget_seconds) + "s budget]";
    }
    std::cout << (outcome.pass ? "[PASS]" : "[FAIL]") << " criterion "
              << criterion.number << ": " << criterion.title << " - "
              << outcome.detail << " (" << fmt(elapsed) << "s)\n";
    if (!outcome.pass) ++failures;
  }
  if (failures > 0) {
    std::cout << failures << " criterion(s) failed\n";
  } else {
    std::cout << "all criteria passed\n";
  }
  return failures;
}
