// Valued-network generation from a latent-variable GLM. Per-node effects,
// optional latent geometry or cluster labels feed a symmetric link parameter;
// a positivity transform then drives a Gamma or Poisson tie draw per pair.
// Every pair uses its own counter-derived random stream, so a (config, seed)
// pair yields a bitwise-identical graph regardless of evaluation order.
#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "valnet/graph.hpp"

namespace valnet {

enum class Family { Gamma, Poisson, VarianceHetero };

enum class Geometry { None, Ring, Cloud, ClusterAttract, ClusterRepel };

struct GenConfig {
  int n = 50;
  Family family = Family::Gamma;
  double sigma_alpha = 0.0;  // spread of per-node popularity/gregariousness
  Geometry geometry = Geometry::None;
  double gamma_geo = 0.0;    // distance-vs-connectivity coefficient (Ring/Cloud)
  double lambda = 0.0;       // same-cluster propensity; positive attracts
  double chi = 0.0;          // assortative mixing of the node effects
  double mu_base = 0.0;      // mean tie value of the variance-heterogeneity model
  double c_var = 1.0;        // concentration of the variance-heterogeneity model
  double mu_offset = 0.0;    // constant added to every link parameter
                             // (calibration hook; 0 in normal use)
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument on violated invariants.
  void validate() const;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// Realized latent variables behind one generated graph. Positions are
/// present exactly for Ring/Cloud geometry, cluster labels (values 1..3)
/// exactly for the cluster geometries.
struct LatentState {
  std::vector<double> alpha;
  std::optional<std::vector<Vec2>> positions;
  std::optional<std::vector<int>> clusters;
};

LatentState sample_latents(const GenConfig& config, std::uint64_t seed);

/// Symmetric link parameter for the pair (i, j):
///   alpha_i + alpha_j + chi*alpha_i*alpha_j - gamma*|d_i - d_j|
///   + lambda*[same cluster] + mu_offset
/// Terms whose latents are absent contribute zero. Requires i != j.
double link_param(const LatentState& latents, int i, int j, const GenConfig& config);

/// Positivity transform: exp(mu - 1) below 1, identity at and above 1.
/// Continuous, nondecreasing, strictly positive.
double positivize(double mu);

/// Draws a valued graph from the Gamma or Poisson family. Gamma ties have
/// mean positivize(mu) and unit variance; Poisson ties are counts with mean
/// positivize(mu). Throws for the VarianceHetero family.
std::pair<ValuedGraph, LatentState> sample_graph(const GenConfig& config,
                                                 std::uint64_t seed);

/// Variance-heterogeneity model: ties are mu_base plus noise whose variance
/// is the product of per-node Gamma(c)/c factors, passed through positivize
/// to keep them positive. Requires family == VarianceHetero and c_var > 0.
ValuedGraph sample_variance_hetero_graph(const GenConfig& config, std::uint64_t seed);

struct GridEntry {
  GenConfig config;
  bool linear_model_only = false;  // node counts above 200 are generated for
                                   // the linear-model experiments only
};

/// Full simulation parameter grid: the cross product of node counts, effect
/// spreads, geometries with their strengths, mixing factors and families,
/// with incompatible combinations excluded.
std::vector<GridEntry> parameter_grid();

}  // namespace valnet
