#include "valnet/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "valnet/compare.hpp"
#include "valnet/contagion.hpp"
#include "valnet/dichotomize.hpp"
#include "valnet/io.hpp"
#include "valnet/metrics.hpp"
#include "valnet/netgen.hpp"

namespace valnet::cli {

namespace {

namespace fs = std::filesystem;

struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> replicates;
};

struct InputFlags {
  std::string graph_path;
  std::string format = "graph";
  std::string rule = "mean";
  bool clamp_negative = false;
};

io::ExperimentConfig base_config(const CommonFlags& common) {
  io::ExperimentConfig cfg;
  if (!common.config_path.empty()) cfg = io::load_config_file(common.config_path);
  if (!common.out_dir.empty()) cfg.out_dir = common.out_dir;
  if (common.seed) cfg.seed = *common.seed;
  if (common.replicates) cfg.replicates = *common.replicates;
  return cfg;
}

void apply_input_flags(io::ExperimentConfig& cfg, const InputFlags& input) {
  if (!input.graph_path.empty()) {
    cfg.input_path = input.graph_path;
    cfg.input_format = io::input_format_from_name(input.format);
    cfg.symmetrize = io::symmetrize_rule_from_name(input.rule);
    cfg.clamp_negative = input.clamp_negative;
    cfg.generation.reset();
  }
}

ValuedGraph load_graph(const io::ExperimentConfig& cfg) {
  if (cfg.generation) {
    GenConfig gen = *cfg.generation;
    if (gen.family == Family::VarianceHetero) {
      return sample_variance_hetero_graph(gen, gen.seed);
    }
    return sample_graph(gen, gen.seed).first;
  }
  switch (cfg.input_format) {
    case io::InputFormat::Graph:
      return io::read_valued_graph(*cfg.input_path);
    case io::InputFormat::EdgeList:
      return io::symmetrize_arcs(io::read_weighted_edgelist(*cfg.input_path),
                                 cfg.symmetrize);
    case io::InputFormat::Dense: {
      io::DenseReadOptions options;
      options.clamp_negative = cfg.clamp_negative;
      io::DenseReadReport report;
      ValuedGraph g = io::read_dense_matrix(*cfg.input_path, options, &report);
      if (report.clamped > 0) {
        std::cerr << "valnet: clamped " << report.clamped
                  << " negative entries to zero\n";
      }
      return g;
    }
  }
  throw std::logic_error("load_graph: unhandled input format");
}

std::vector<double> ladder_for(const io::ExperimentConfig& cfg,
                               DichotomizeMethod method, const ValuedGraph& g) {
  if (!cfg.ladder.explicit_values.empty()) return cfg.ladder.explicit_values;
  return ladder(method == DichotomizeMethod::Censor ? LadderKind::Outdegree
                                                    : LadderKind::Threshold,
                g, cfg.ladder.steps);
}

void write_latents_csv(const fs::path& path, const LatentState& latents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << "node,alpha";
  if (latents.positions) out << ",pos_x,pos_y";
  if (latents.clusters) out << ",cluster";
  out << '\n';
  for (std::size_t i = 0; i < latents.alpha.size(); ++i) {
    out << i << ',' << io::format_double(latents.alpha[i]);
    if (latents.positions) {
      out << ',' << io::format_double((*latents.positions)[i].x) << ','
          << io::format_double((*latents.positions)[i].y);
    }
    if (latents.clusters) out << ',' << (*latents.clusters)[i];
    out << '\n';
  }
}

int do_generate(std::optional<std::uint64_t> seed_override,
                const io::ExperimentConfig& cfg_in, bool grid_list,
                std::optional<int> grid_index) {
  io::ExperimentConfig cfg = cfg_in;
  const fs::path out_dir = cfg.out_dir;

  if (grid_list) {
    fs::create_directories(out_dir);
    std::ofstream out(out_dir / "grid.json", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write grid.json");
    out << io::to_json(parameter_grid()) << '\n';
    std::cout << "wrote " << (out_dir / "grid.json").string() << '\n';
    return 0;
  }
  if (grid_index) {
    const auto grid = parameter_grid();
    if (*grid_index < 0 || *grid_index >= static_cast<int>(grid.size())) {
      throw std::invalid_argument("grid index out of range [0, " +
                                  std::to_string(grid.size()) + ")");
    }
    cfg.generation = grid[*grid_index].config;
    cfg.input_path.reset();
  }
  if (!cfg.generation) {
    throw std::invalid_argument(
        "generate: no generation config (pass --config, generator flags or "
        "--grid-index)");
  }
  if (seed_override) cfg.generation->seed = *seed_override;
  cfg.seed = cfg.generation->seed;
  cfg.validate();

  fs::create_directories(out_dir);
  if (cfg.generation->family == Family::VarianceHetero) {
    const ValuedGraph g =
        sample_variance_hetero_graph(*cfg.generation, cfg.generation->seed);
    io::write_valued_graph(out_dir / "graph.csv", g);
  } else {
    const auto [g, latents] = sample_graph(*cfg.generation, cfg.generation->seed);
    io::write_valued_graph(out_dir / "graph.csv", g);
    write_latents_csv(out_dir / "latents.csv", latents);
  }
  io::write_manifest(out_dir, "generate", cfg);
  std::cout << "wrote " << (out_dir / "graph.csv").string() << '\n';
  return 0;
}

int do_ingest(const io::ExperimentConfig& cfg_in) {
  io::ExperimentConfig cfg = cfg_in;
  cfg.validate();
  if (!cfg.input_path) {
    throw std::invalid_argument("ingest: --input is required");
  }
  const ValuedGraph g = load_graph(cfg);
  const fs::path out_dir = cfg.out_dir;
  io::write_valued_graph(out_dir / "graph.csv", g);
  io::write_manifest(out_dir, "ingest", cfg);
  std::cout << "wrote " << (out_dir / "graph.csv").string() << " (" << g.size()
            << " nodes)\n";
  return 0;
}

int do_dichotomize(const io::ExperimentConfig& cfg_in, const std::string& method_flag,
                   std::optional<double> param_flag) {
  io::ExperimentConfig cfg = cfg_in;
  if (!method_flag.empty()) cfg.methods = {method_from_name(method_flag)};
  if (param_flag) cfg.ladder.explicit_values = {*param_flag};
  if (cfg.methods.size() != 1) {
    throw std::invalid_argument("dichotomize: exactly one --method required");
  }
  if (cfg.ladder.explicit_values.size() != 1) {
    throw std::invalid_argument("dichotomize: exactly one --param required");
  }
  cfg.validate();

  const ValuedGraph g = load_graph(cfg);
  const double param = cfg.ladder.explicit_values[0];
  const fs::path out_dir = cfg.out_dir;
  fs::create_directories(out_dir);

  if (cfg.methods[0] == DichotomizeMethod::Threshold) {
    io::write_undirected_binary_graph(out_dir / "binary.csv",
                                      threshold_graph(g, param));
  } else {
    const double rounded = std::round(param);
    if (std::abs(param - rounded) > 1e-9 || rounded < 1.0) {
      throw std::invalid_argument("dichotomize: censoring --param must be an integer >= 1");
    }
    const int k = static_cast<int>(rounded);
    const DirectedBinaryGraph directed = censor_topk(g, k, cfg.seed);
    io::write_directed_binary_graph(out_dir / "directed.csv", directed);
    io::write_undirected_binary_graph(out_dir / "binary.csv", symmetrize_or(directed));
  }
  io::write_manifest(out_dir, "dichotomize", cfg);
  std::cout << "wrote " << (out_dir / "binary.csv").string() << '\n';
  return 0;
}

int do_metrics(const io::ExperimentConfig& cfg_in) {
  io::ExperimentConfig cfg = cfg_in;
  cfg.validate();
  const ValuedGraph g = load_graph(cfg);

  const DistanceMatrix distances = geodesic_distances(g);
  const std::vector<double> geo_close = harmonic_closeness(distances);
  const ConductanceMatrix conductance = effective_conductance(g);
  const std::vector<double> ohm_close = ohmic_closeness(conductance);
  const std::vector<double> betweenness = ohmic_betweenness_fp(g);
  const DiameterResult geo_diam = geodesic_diameter(distances);
  const DiameterResult ohm_diam = ohmic_diameter(conductance);
  const GraphStats stats = graph_stats(g);

  const fs::path out_dir = cfg.out_dir;
  fs::create_directories(out_dir);
  {
    std::ofstream out(out_dir / "metrics.csv", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write metrics.csv");
    out << "node,geo_closeness,ohm_closeness,ohm_betweenness\n";
    for (int i = 0; i < g.size(); ++i) {
      out << i << ',' << io::format_double(geo_close[i]) << ','
          << io::format_double(ohm_close[i]) << ','
          << io::format_double(betweenness[i]) << '\n';
    }
  }
  {
    std::ofstream out(out_dir / "summary.csv", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write summary.csv");
    out << "geo_diam,ohm_diam,geo_diam_excluded_pairs,ohm_diam_excluded_pairs,"
           "density,mean_degree,isolates\n";
    out << io::format_double(geo_diam.value) << ',' << io::format_double(ohm_diam.value)
        << ',' << (geo_diam.excluded_pairs ? 1 : 0) << ','
        << (ohm_diam.excluded_pairs ? 1 : 0) << ',' << io::format_double(stats.density)
        << ',' << io::format_double(stats.mean_degree) << ',' << stats.isolates << '\n';
  }
  io::write_manifest(out_dir, "metrics", cfg);
  std::cout << "wrote " << (out_dir / "metrics.csv").string() << '\n';
  return 0;
}

int do_sweep(const io::ExperimentConfig& cfg_in) {
  io::ExperimentConfig cfg = cfg_in;
  cfg.validate();
  const ValuedGraph g = load_graph(cfg);

  std::vector<SweepResult> results;
  for (DichotomizeMethod method : cfg.methods) {
    results.push_back(sweep(g, method, ladder_for(cfg, method, g), cfg.replicates,
                            cfg.statistics, cfg.seed));
  }
  io::write_sweep_results(results, cfg.out_dir);
  io::write_manifest(cfg.out_dir, "sweep", cfg);
  std::cout << "wrote " << (fs::path(cfg.out_dir) / "records.csv").string() << " and "
            << (fs::path(cfg.out_dir) / "optima.csv").string() << '\n';
  return 0;
}

int do_contagion(const io::ExperimentConfig& cfg_in) {
  io::ExperimentConfig cfg = cfg_in;
  cfg.validate();
  if (!cfg.lm) {
    throw std::invalid_argument("contagion: no linear-model config (set \"lm\" in "
                                "--config or pass the --lm-* flags)");
  }
  const ValuedGraph g = load_graph(cfg);

  std::vector<int> k_ladder = cfg.contagion_ladder;
  if (k_ladder.empty()) {
    const int top = std::min(24, g.size() - 1);
    for (int k = 1; k <= top; ++k) k_ladder.push_back(k);
  }
  LmConfig lm = *cfg.lm;
  lm.seed = cfg.seed;  // the master seed governs the experiment
  const MseExperimentResult result = mse_experiment(g, lm, k_ladder, cfg.replicates);

  io::write_contagion_results(result, cfg.out_dir);
  io::write_manifest(cfg.out_dir, "contagion", cfg);
  std::cout << "wrote " << (fs::path(cfg.out_dir) / "contagion.csv").string()
            << " (min MSE ratio " << io::format_double(result.min_ratio) << " at k="
            << result.min_ratio_k << ")\n";
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"valued-network dichotomization workbench"};
  app.require_subcommand(1);

  int exit_code = 0;
  CommonFlags common;
  app.add_option("--seed", common.seed, "master seed (overrides config)");
  app.add_option("--config", common.config_path, "JSON config or manifest file");
  app.add_option("--out", common.out_dir, "output directory");
  app.add_option("--replicates", common.replicates, "replicates (overrides config)");

  // generate
  auto* generate = app.add_subcommand("generate", "draw a valued graph from the model");
  generate->fallthrough();
  GenConfig gen_flags;
  bool grid_list = false;
  std::optional<int> grid_index;
  std::string family_flag;
  std::string geometry_flag;
  generate->add_option("--n", gen_flags.n, "node count");
  generate->add_option("--family", family_flag, "gamma | poisson | variance_hetero");
  generate->add_option("--sigma-alpha", gen_flags.sigma_alpha, "node effect spread");
  generate->add_option("--geometry", geometry_flag,
                       "none | ring | cloud | cluster_attract | cluster_repel");
  generate->add_option("--gamma-geo", gen_flags.gamma_geo, "distance coefficient");
  generate->add_option("--lambda", gen_flags.lambda, "cluster propensity");
  generate->add_option("--chi", gen_flags.chi, "assortative mixing");
  generate->add_option("--mu-base", gen_flags.mu_base, "variance-hetero mean");
  generate->add_option("--c-var", gen_flags.c_var, "variance-hetero concentration");
  generate->add_option("--mu-offset", gen_flags.mu_offset, "constant link-parameter offset");
  generate->add_flag("--grid-list", grid_list, "write the full parameter grid as JSON");
  generate->add_option("--grid-index", grid_index, "generate one grid configuration");
  generate->callback([&] {
    io::ExperimentConfig cfg;
    if (!common.config_path.empty()) {
      cfg = io::load_config_file(common.config_path);
    } else if (!grid_list && !grid_index) {
      if (!family_flag.empty()) gen_flags.family = io::family_from_name(family_flag);
      if (!geometry_flag.empty()) {
        gen_flags.geometry = io::geometry_from_name(geometry_flag);
      }
      cfg.generation = gen_flags;
    }
    if (!common.out_dir.empty()) cfg.out_dir = common.out_dir;
    if (common.seed) cfg.seed = *common.seed;
    exit_code = do_generate(common.seed, cfg, grid_list, grid_index);
  });

  // ingest
  auto* ingest = app.add_subcommand("ingest", "convert real data to the canonical format");
  ingest->fallthrough();
  InputFlags ingest_input;
  ingest->add_option("--input", ingest_input.graph_path, "input file")->required();
  ingest->add_option("--format", ingest_input.format, "edgelist | dense");
  ingest->add_option("--rule", ingest_input.rule, "sum | max | mean (edgelist symmetrization)");
  ingest->add_flag("--clamp-negative", ingest_input.clamp_negative,
                   "clamp negative dense entries to zero");
  ingest->callback([&] {
    io::ExperimentConfig cfg = base_config(common);
    apply_input_flags(cfg, ingest_input);
    exit_code = do_ingest(cfg);
  });

  // dichotomize
  auto* dichotomize = app.add_subcommand("dichotomize", "threshold or censor a valued graph");
  dichotomize->fallthrough();
  InputFlags dich_input;
  std::string dich_method;
  std::optional<double> dich_param;
  dichotomize->add_option("--graph", dich_input.graph_path, "canonical graph file");
  dichotomize->add_option("--format", dich_input.format, "graph | edgelist | dense");
  dichotomize->add_option("--rule", dich_input.rule, "edgelist symmetrization rule");
  dichotomize->add_option("--method", dich_method, "threshold | censor");
  dichotomize->add_option("--param", dich_param, "threshold value or outdegree k");
  dichotomize->callback([&] {
    io::ExperimentConfig cfg = base_config(common);
    apply_input_flags(cfg, dich_input);
    exit_code = do_dichotomize(cfg, dich_method, dich_param);
  });

  // metrics
  auto* metrics = app.add_subcommand("metrics", "per-node statistics of one graph");
  metrics->fallthrough();
  InputFlags metrics_input;
  metrics->add_option("graph", metrics_input.graph_path, "graph file")->required();
  metrics->add_option("--format", metrics_input.format, "graph | edgelist | dense");
  metrics->add_option("--rule", metrics_input.rule, "edgelist symmetrization rule");
  metrics->callback([&] {
    io::ExperimentConfig cfg = base_config(common);
    apply_input_flags(cfg, metrics_input);
    exit_code = do_metrics(cfg);
  });

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "ladder sweep with per-statistic optima");
  sweep_cmd->fallthrough();
  InputFlags sweep_input;
  std::vector<std::string> method_flags;
  std::vector<std::string> stat_flags;
  std::optional<int> steps_flag;
  std::vector<double> ladder_values;
  sweep_cmd->add_option("--graph", sweep_input.graph_path, "canonical graph file");
  sweep_cmd->add_option("--format", sweep_input.format, "graph | edgelist | dense");
  sweep_cmd->add_option("--rule", sweep_input.rule, "edgelist symmetrization rule");
  sweep_cmd->add_option("--methods", method_flags, "threshold and/or censor");
  sweep_cmd->add_option("--steps", steps_flag, "ladder length");
  sweep_cmd->add_option("--ladder", ladder_values, "explicit ladder values");
  sweep_cmd->add_option("--stats", stat_flags, "statistics subset (default: all)");
  sweep_cmd->callback([&] {
    io::ExperimentConfig cfg = base_config(common);
    apply_input_flags(cfg, sweep_input);
    if (!method_flags.empty()) {
      cfg.methods.clear();
      for (const auto& m : method_flags) cfg.methods.push_back(method_from_name(m));
    }
    if (steps_flag) cfg.ladder.steps = *steps_flag;
    if (!ladder_values.empty()) cfg.ladder.explicit_values = ladder_values;
    if (!stat_flags.empty()) {
      cfg.statistics.clear();
      for (const auto& s : stat_flags) cfg.statistics.insert(statistic_from_name(s));
    }
    exit_code = do_sweep(cfg);
  });

  // contagion
  auto* contagion = app.add_subcommand("contagion", "two-step linear model MSE experiment");
  contagion->fallthrough();
  InputFlags contagion_input;
  LmConfig lm_flags;
  bool any_lm_flag = false;
  std::vector<int> k_ladder_flag;
  contagion->add_option("--graph", contagion_input.graph_path, "canonical graph file");
  contagion->add_option("--format", contagion_input.format, "graph | edgelist | dense");
  contagion->add_option("--rule", contagion_input.rule, "edgelist symmetrization rule");
  contagion->add_option("--lm-mu", lm_flags.mu_lm, "intercept")
      ->each([&](const std::string&) { any_lm_flag = true; });
  contagion->add_option("--lm-gamma", lm_flags.gamma_lm, "autoregression")
      ->each([&](const std::string&) { any_lm_flag = true; });
  contagion->add_option("--lm-beta", lm_flags.beta, "contagion coefficient")
      ->each([&](const std::string&) { any_lm_flag = true; });
  contagion->add_option("--sigma-eps", lm_flags.sigma_eps, "noise sd")
      ->each([&](const std::string&) { any_lm_flag = true; });
  contagion->add_option("--rho-deg", lm_flags.rho_deg, "degree/outcome correlation")
      ->each([&](const std::string&) { any_lm_flag = true; });
  contagion->add_option("--k-ladder", k_ladder_flag, "outdegree ladder");
  contagion->callback([&] {
    io::ExperimentConfig cfg = base_config(common);
    apply_input_flags(cfg, contagion_input);
    if (any_lm_flag || !cfg.lm) cfg.lm = lm_flags;
    if (!k_ladder_flag.empty()) cfg.contagion_ladder = k_ladder_flag;
    exit_code = do_contagion(cfg);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "valnet: " << e.what() << '\n';
    return 1;
  }
  return exit_code;
}

}  // namespace valnet::cli
