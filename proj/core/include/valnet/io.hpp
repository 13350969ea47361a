// File formats, configuration and result serialization.
//
// Canonical on-disk graph format: a CSV weighted edge list sorted by
// (src, dst) with a `# valnet-graph v1 n=<N> kind=<kind>` header line, so a
// graph round-trips exactly (including isolated nodes). Result CSVs use
// locale-independent formatting with 17 significant digits; every output
// directory receives a manifest.json sufficient to reproduce it bit-for-bit.
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "valnet/compare.hpp"
#include "valnet/contagion.hpp"
#include "valnet/graph.hpp"
#include "valnet/netgen.hpp"

namespace valnet::io {

/// Locale-independent formatting, 17 significant digits (round-trip exact).
std::string format_double(double value);

/// Strict locale-independent parse; throws std::invalid_argument.
double parse_double(std::string_view text);

/// Raw directed weighted arcs as ingested from an edge-list file.
struct ArcMatrix {
  int n = 0;
  Eigen::MatrixXd arcs;
};

/// Reads CSV rows `src,dst,weight` (0-based integer ids, optional header
/// row, `#` comments ignored). Node count is taken from a `n=` header when
/// present, otherwise inferred as max id + 1. Throws with the line number on
/// malformed rows, negative weights, self-loops and duplicate arcs.
ArcMatrix read_weighted_edgelist(const std::filesystem::path& path);

enum class SymmetrizeRule { Sum, Max, Mean };

std::string_view symmetrize_rule_name(SymmetrizeRule rule);
SymmetrizeRule symmetrize_rule_from_name(std::string_view name);

/// Collapses the two arcs of each pair into one undirected tie.
ValuedGraph symmetrize_arcs(const ArcMatrix& arcs, SymmetrizeRule rule);

struct DenseReadOptions {
  bool clamp_negative = false;  // clamp negatives to 0 instead of rejecting
  double symmetry_tol = 1e-9;
};

struct DenseReadReport {
  int clamped = 0;
};

/// Reads an n x n comma-separated matrix (one row per line). The matrix must
/// be symmetric within tolerance; the diagonal is ignored. Negative entries
/// are rejected unless clamping is requested.
ValuedGraph read_dense_matrix(const std::filesystem::path& path,
                              const DenseReadOptions& options = {},
                              DenseReadReport* report = nullptr);

void write_valued_graph(const std::filesystem::path& path, const ValuedGraph& g);
ValuedGraph read_valued_graph(const std::filesystem::path& path);
void write_directed_binary_graph(const std::filesystem::path& path,
                                 const DirectedBinaryGraph& g);
void write_undirected_binary_graph(const std::filesystem::path& path,
                                   const UndirectedBinaryGraph& g);

/// Ladder specification: explicit parameter values when given, otherwise
/// each method derives its natural `steps`-point ladder (outdegrees 1..steps
/// for censoring, positive-weight quantiles for thresholding).
struct LadderSpec {
  int steps = 24;
  std::vector<double> explicit_values;
};

enum class InputFormat { Graph, EdgeList, Dense };

std::string_view input_format_name(InputFormat format);
InputFormat input_format_from_name(std::string_view name);

/// Full experiment description; the JSON schema behind --config files and
/// manifests. Exactly one of `generation` and `input_path` must be set.
struct ExperimentConfig {
  std::optional<GenConfig> generation;
  std::optional<std::string> input_path;
  InputFormat input_format = InputFormat::Graph;
  SymmetrizeRule symmetrize = SymmetrizeRule::Mean;
  bool clamp_negative = false;
  std::vector<DichotomizeMethod> methods = {DichotomizeMethod::Threshold,
                                            DichotomizeMethod::Censor};
  LadderSpec ladder;
  std::set<Statistic> statistics = all_statistics();
  int replicates = 10;
  std::optional<LmConfig> lm;
  std::vector<int> contagion_ladder;  // empty: defaults to 1..min(24, n-1)
  std::string out_dir = ".";
  std::uint64_t seed = 0;

  void validate() const;
};

std::string to_json(const GenConfig& config);
GenConfig gen_config_from_json(const std::string& text);
std::string to_json(const std::vector<GridEntry>& grid);
std::string to_json(const LmConfig& config);
LmConfig lm_config_from_json(const std::string& text);
std::string to_json(const ExperimentConfig& config);
ExperimentConfig experiment_config_from_json(const std::string& text);

/// Loads a --config file: accepts a plain ExperimentConfig, a manifest (the
/// embedded config is extracted), or for `generate` a bare GenConfig.
ExperimentConfig load_config_file(const std::filesystem::path& path);

/// records.csv (method, parameter, replicate, statistic, discrepancy) and
/// optima.csv (statistic, method, parameter, discrepancy, arcs_per_node).
void write_sweep_results(const std::vector<SweepResult>& sweeps,
                         const std::filesystem::path& dir);

/// contagion.csv (k, replicate, beta_hat, se, tstat, mse_ratio); k = 0 rows
/// are the valued-adjacency fits.
void write_contagion_results(const MseExperimentResult& result,
                             const std::filesystem::path& dir);

/// manifest.json: version, subcommand and the full resolved configuration.
void write_manifest(const std::filesystem::path& dir, const std::string& subcommand,
                    const ExperimentConfig& config);

std::string_view family_name(Family family);
Family family_from_name(std::string_view name);
std::string_view geometry_name(Geometry geometry);
Geometry geometry_from_name(std::string_view name);

}  // namespace valnet::io
