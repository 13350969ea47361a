// Agreement between a valued graph and its binary compressions.
//
// Node statistics are compared two ways: by top-weighted rank discrepancy
// (ties in rank randomly assorted) and by scale-adjusted squared deviation,
// where a fitted scalar converts the binary statistic into the units of the
// valued one. Scalar statistics (diameters) fit the scale jointly across the
// replicates at each ladder parameter. A sweep walks a threshold or outdegree
// ladder and selects the per-statistic optimum; an exhaustive oracle searches
// the entire space of undirected binary graphs for small n.
//
// Rank tie assortment uses one seed per (statistic, replicate), shared
// between the valued and binary rankings. Identical score vectors therefore
// rank identically, which makes self-recovery exact; and because the oracle
// evaluates candidates with the very seeds the sweep uses, the oracle's
// optimum can never exceed a sweep optimum on tie-free valued graphs.
#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string_view>
#include <vector>

#include "valnet/graph.hpp"

namespace valnet {

/// Descending-score ranking, 1 = highest score. Tied blocks receive a
/// uniformly random permutation of their rank positions, driven by `seed`.
struct RankVector {
  std::vector<int> ranks;
  std::uint64_t seed = 0;
};

RankVector rank_scores(const std::vector<double>& scores, std::uint64_t seed);

/// Top-weighted rank discrepancy: mean of (Ra_i - Rb_i)^2 / sqrt(Ra_i Rb_i).
/// Zero iff the rankings are identical. Throws on length mismatch.
double rank_discrepancy(const RankVector& ra, const RankVector& rb);

/// Least-squares scale fit of stat_bin onto stat_val, returning the mean
/// squared residual. The fitted scalar is <bin,val>/<bin,bin> (zero for an
/// all-zero stat_bin). Throws on length mismatch.
double value_discrepancy(const std::vector<double>& stat_bin,
                         const std::vector<double>& stat_val);

enum class Statistic {
  GeoRank,       // harmonic geodesic closeness, rank comparison
  OhmRank,       // Ohmic closeness, rank comparison
  OhmBetwRank,   // fixed-power Ohmic betweenness, rank comparison
  GeoValue,      // harmonic geodesic closeness, scale-adjusted values
  OhmValue,      // Ohmic closeness, scale-adjusted values
  GeoDiam,       // geodesic diameter
  OhmDiam,       // Ohmic diameter
};

enum class DichotomizeMethod { Threshold, Censor };

const std::set<Statistic>& all_statistics();
std::string_view statistic_name(Statistic s);
Statistic statistic_from_name(std::string_view name);
std::string_view method_name(DichotomizeMethod m);
DichotomizeMethod method_from_name(std::string_view name);

struct SweepRecord {
  double parameter = 0.0;
  int replicate = 0;
  Statistic statistic = Statistic::GeoRank;
  double discrepancy = 0.0;
};

struct SweepOptimum {
  Statistic statistic = Statistic::GeoRank;
  double parameter = 0.0;
  double mean_discrepancy = 0.0;
  double mean_arcs_per_node = 0.0;  // realized mean degree at the optimum
};

struct SweepResult {
  DichotomizeMethod method = DichotomizeMethod::Threshold;
  int replicates = 0;
  std::uint64_t seed = 0;
  std::vector<SweepRecord> records;   // (parameter, replicate, statistic) order
  std::vector<SweepOptimum> optima;   // one row per requested statistic
};

/// Walks the ladder: dichotomizes at every parameter, computes the requested
/// statistics on each binary graph and their discrepancy against the valued
/// graph. Replicates re-randomize only censoring tie-breaks and rank
/// assortment. Optima take the per-statistic minimum of the mean-discrepancy
/// curve, resolving exact ties to the smallest parameter. Throws on an empty
/// ladder, and for the Censor method on non-integral or sub-1 parameters.
SweepResult sweep(const ValuedGraph& g, DichotomizeMethod method,
                  const std::vector<double>& params, int replicates,
                  const std::set<Statistic>& statistics, std::uint64_t seed);

struct BruteForceResult {
  UndirectedBinaryGraph graph;
  double discrepancy = 0.0;
};

/// Exhaustive search over all 2^(n(n-1)/2) undirected binary graphs for the
/// one closest to the valued graph under each requested statistic, evaluated
/// exactly as a sweep cell would (same replicate seeds). Refuses n > max_n.
std::map<Statistic, BruteForceResult> brute_force_best_binary_all(
    const ValuedGraph& g, const std::set<Statistic>& statistics, int max_n = 6,
    int replicates = 1, std::uint64_t seed = 0);

/// Single-statistic convenience wrapper.
BruteForceResult brute_force_best_binary(const ValuedGraph& g, Statistic statistic,
                                         int max_n = 6, int replicates = 1,
                                         std::uint64_t seed = 0);

}  // namespace valnet
