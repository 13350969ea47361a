#include "valnet/compare.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "valnet/dichotomize.hpp"
#include "valnet/metrics.hpp"
#include "valnet/rng.hpp"

namespace valnet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr std::uint64_t kRankStream = 0x21;
constexpr std::uint64_t kCensorStream = 0x22;

// One assortment seed per (statistic, replicate), shared between the valued
// and binary rankings of that statistic.
std::uint64_t rank_seed(std::uint64_t seed, Statistic s, int replicate) {
  return derive_seed(derive_seed(derive_seed(seed, kRankStream),
                                 static_cast<std::uint64_t>(s)),
                     static_cast<std::uint64_t>(replicate));
}

// Censoring tie-break seed per replicate, shared across ladder parameters so
// top-k nesting in k holds within a replicate.
std::uint64_t censor_seed(std::uint64_t seed, int replicate) {
  return derive_seed(derive_seed(seed, kCensorStream),
                     static_cast<std::uint64_t>(replicate));
}

bool is_rank_stat(Statistic s) {
  return s == Statistic::GeoRank || s == Statistic::OhmRank ||
         s == Statistic::OhmBetwRank;
}

bool is_value_stat(Statistic s) {
  return s == Statistic::GeoValue || s == Statistic::OhmValue;
}

bool is_diam_stat(Statistic s) {
  return s == Statistic::GeoDiam || s == Statistic::OhmDiam;
}

struct StatNeeds {
  bool geodesic = false;
  bool conductance = false;
  bool betweenness = false;
};

StatNeeds needs_of(const std::set<Statistic>& stats) {
  StatNeeds needs;
  for (Statistic s : stats) {
    switch (s) {
      case Statistic::GeoRank:
      case Statistic::GeoValue:
      case Statistic::GeoDiam:
        needs.geodesic = true;
        break;
      case Statistic::OhmRank:
      case Statistic::OhmValue:
      case Statistic::OhmDiam:
        needs.conductance = true;
        break;
      case Statistic::OhmBetwRank:
        needs.betweenness = true;
        break;
    }
  }
  return needs;
}

// Node statistics and diameters of one graph; diameters are +inf when the
// graph has no edges.
struct StatsBundle {
  std::vector<double> geo_close;
  std::vector<double> ohm_close;
  std::vector<double> betweenness;
  double geo_diam = kInf;
  double ohm_diam = kInf;
  double arcs_per_node = 0.0;
};

template <typename GraphT>
StatsBundle compute_stats(const GraphT& g, const StatNeeds& needs, bool has_edges) {
  StatsBundle bundle;
  if (needs.geodesic) {
    const DistanceMatrix d = geodesic_distances(g);
    bundle.geo_close = harmonic_closeness(d);
    if (has_edges) bundle.geo_diam = geodesic_diameter(d).value;
  }
  if (needs.conductance) {
    const ConductanceMatrix c = effective_conductance(g);
    bundle.ohm_close = ohmic_closeness(c);
    if (has_edges) bundle.ohm_diam = ohmic_diameter(c).value;
  }
  if (needs.betweenness) bundle.betweenness = ohmic_betweenness_fp(g);
  return bundle;
}

StatsBundle valued_stats(const ValuedGraph& g, const StatNeeds& needs) {
  const bool has_edges = !g.upper_triangle_entries().empty();
  return compute_stats(g, needs, has_edges);
}

StatsBundle binary_stats(const UndirectedBinaryGraph& g, const StatNeeds& needs) {
  const bool has_edges = g.edge_count() > 0;
  StatsBundle bundle = compute_stats(g, needs, has_edges);
  bundle.arcs_per_node = 2.0 * static_cast<double>(g.edge_count()) / g.size();
  return bundle;
}

const std::vector<double>& node_scores(const StatsBundle& b, Statistic s) {
  switch (s) {
    case Statistic::GeoRank:
    case Statistic::GeoValue:
      return b.geo_close;
    case Statistic::OhmRank:
    case Statistic::OhmValue:
      return b.ohm_close;
    case Statistic::OhmBetwRank:
      return b.betweenness;
    default:
      throw std::logic_error("node_scores: diameter statistic has no node scores");
  }
}

double diam_value(const StatsBundle& b, Statistic s) {
  return s == Statistic::GeoDiam ? b.geo_diam : b.ohm_diam;
}

// Valued-side reference: statistics plus the per-replicate rankings (the
// assortment seeds are fixed per (statistic, replicate), so these are shared
// by every evaluation in the run).
struct Reference {
  StatsBundle stats;
  std::map<Statistic, std::vector<RankVector>> ranks_by_rep;
};

Reference make_reference(const ValuedGraph& g, const std::set<Statistic>& stats,
                         int replicates, std::uint64_t seed) {
  Reference ref;
  ref.stats = valued_stats(g, needs_of(stats));
  for (Statistic s : stats) {
    if (!is_rank_stat(s)) continue;
    std::vector<RankVector> per_rep;
    per_rep.reserve(replicates);
    for (int r = 0; r < replicates; ++r) {
      per_rep.push_back(rank_scores(node_scores(ref.stats, s), rank_seed(seed, s, r)));
    }
    ref.ranks_by_rep.emplace(s, std::move(per_rep));
  }
  return ref;
}

double rank_cell_discrepancy(const Reference& ref, const StatsBundle& bin,
                             Statistic s, int replicate, std::uint64_t seed) {
  const RankVector bin_rank =
      rank_scores(node_scores(bin, s), rank_seed(seed, s, replicate));
  return rank_discrepancy(ref.ranks_by_rep.at(s)[replicate], bin_rank);
}

// Joint scale fit of the replicate diameters onto the valued diameter; the
// summation order here is shared by the sweep and the exhaustive oracle.
std::vector<double> diam_joint_discrepancies(const std::vector<double>& d_bin,
                                             double d_val) {
  std::vector<double> out(d_bin.size(), kInf);
  double num = 0.0;
  double den = 0.0;
  for (double d : d_bin) {
    if (!std::isfinite(d)) return out;  // an edgeless replicate poisons the cell
    num += d * d_val;
    den += d * d;
  }
  const double c = den > 0.0 ? num / den : 0.0;
  for (std::size_t r = 0; r < d_bin.size(); ++r) {
    const double dev = c * d_bin[r] - d_val;
    out[r] = dev * dev;
  }
  return out;
}

double mean_of(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

void validate_sweep_args(const std::vector<double>& params, int replicates,
                         const std::set<Statistic>& statistics,
                         DichotomizeMethod method) {
  if (params.empty()) throw std::invalid_argument("sweep: empty ladder");
  if (replicates < 1) throw std::invalid_argument("sweep: replicates must be >= 1");
  if (statistics.empty()) throw std::invalid_argument("sweep: no statistics requested");
  if (method == DichotomizeMethod::Censor) {
    for (double p : params) {
      const double rounded = std::round(p);
      if (!(p >= 1.0) || std::abs(p - rounded) > 1e-9) {
        throw std::invalid_argument(
            "sweep: censoring parameters must be integers >= 1, got " +
            std::to_string(p));
      }
    }
  } else {
    for (double p : params) {
      if (!(p >= 0.0)) {
        throw std::invalid_argument("sweep: thresholds must be >= 0");
      }
    }
  }
}

bool positive_weights_distinct(const ValuedGraph& g) {
  std::vector<double> w;
  for (const auto& e : g.upper_triangle_entries()) w.push_back(e.weight);
  std::sort(w.begin(), w.end());
  return std::adjacent_find(w.begin(), w.end()) == w.end();
}

}  // namespace

RankVector rank_scores(const std::vector<double>& scores, std::uint64_t seed) {
  const int n = static_cast<int>(scores.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });

  RankVector result;
  result.seed = seed;
  result.ranks.assign(n, 0);
  Rng rng(seed);
  int block_start = 0;
  while (block_start < n) {
    int block_end = block_start + 1;
    while (block_end < n && scores[order[block_end]] == scores[order[block_start]]) {
      ++block_end;
    }
    std::vector<int> block(order.begin() + block_start, order.begin() + block_end);
    rng.shuffle(block);
    for (int offset = 0; offset < block_end - block_start; ++offset) {
      result.ranks[block[offset]] = block_start + offset + 1;
    }
    block_start = block_end;
  }
  return result;
}

double rank_discrepancy(const RankVector& ra, const RankVector& rb) {
  if (ra.ranks.size() != rb.ranks.size()) {
    throw std::invalid_argument("rank_discrepancy: length mismatch");
  }
  const auto n = ra.ranks.size();
  if (n == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double diff = static_cast<double>(ra.ranks[i] - rb.ranks[i]);
    sum += diff * diff /
           std::sqrt(static_cast<double>(ra.ranks[i]) * static_cast<double>(rb.ranks[i]));
  }
  return sum / static_cast<double>(n);
}

double value_discrepancy(const std::vector<double>& stat_bin,
                         const std::vector<double>& stat_val) {
  if (stat_bin.size() != stat_val.size()) {
    throw std::invalid_argument("value_discrepancy: length mismatch");
  }
  const auto n = stat_bin.size();
  if (n == 0) return 0.0;
  double dot = 0.0;
  double norm2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    dot += stat_bin[i] * stat_val[i];
    norm2 += stat_bin[i] * stat_bin[i];
  }
  const double c = norm2 > 0.0 ? dot / norm2 : 0.0;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double resid = c * stat_bin[i] - stat_val[i];
    rss += resid * resid;
  }
  return rss / static_cast<double>(n);
}

const std::set<Statistic>& all_statistics() {
  static const std::set<Statistic> all = {
      Statistic::GeoRank,  Statistic::OhmRank,  Statistic::OhmBetwRank,
      Statistic::GeoValue, Statistic::OhmValue, Statistic::GeoDiam,
      Statistic::OhmDiam,
  };
  return all;
}

std::string_view statistic_name(Statistic s) {
  switch (s) {
    case Statistic::GeoRank: return "geo_rank";
    case Statistic::OhmRank: return "ohm_rank";
    case Statistic::OhmBetwRank: return "ohm_betw_rank";
    case Statistic::GeoValue: return "geo_value";
    case Statistic::OhmValue: return "ohm_value";
    case Statistic::GeoDiam: return "geo_diam";
    case Statistic::OhmDiam: return "ohm_diam";
  }
  throw std::invalid_argument("statistic_name: unknown statistic");
}

Statistic statistic_from_name(std::string_view name) {
  for (Statistic s : all_statistics()) {
    if (statistic_name(s) == name) return s;
  }
  throw std::invalid_argument("statistic_from_name: unknown statistic '" +
                              std::string(name) + "'");
}

std::string_view method_name(DichotomizeMethod m) {
  return m == DichotomizeMethod::Threshold ? "threshold" : "censor";
}

DichotomizeMethod method_from_name(std::string_view name) {
  if (name == "threshold") return DichotomizeMethod::Threshold;
  if (name == "censor") return DichotomizeMethod::Censor;
  throw std::invalid_argument("method_from_name: unknown method '" +
                              std::string(name) + "'");
}

SweepResult sweep(const ValuedGraph& g, DichotomizeMethod method,
                  const std::vector<double>& params, int replicates,
                  const std::set<Statistic>& statistics, std::uint64_t seed) {
  validate_sweep_args(params, replicates, statistics, method);

  const StatNeeds needs = needs_of(statistics);
  const Reference ref = make_reference(g, statistics, replicates, seed);
  // censored graphs are seed-independent when the positive weights are all
  // distinct, so one dichotomization per parameter suffices
  const bool reuse_across_reps =
      method == DichotomizeMethod::Threshold || positive_weights_distinct(g);

  SweepResult result;
  result.method = method;
  result.replicates = replicates;
  result.seed = seed;

  struct ParamSummary {
    double parameter;
    std::map<Statistic, double> mean_discrepancy;
    double mean_arcs_per_node;
  };
  std::vector<ParamSummary> summaries;

  for (double p : params) {
    std::vector<StatsBundle> bundles;
    bundles.reserve(reuse_across_reps ? 1 : replicates);
    for (int r = 0; r < (reuse_across_reps ? 1 : replicates); ++r) {
      const UndirectedBinaryGraph binary =
          method == DichotomizeMethod::Threshold
              ? threshold_graph(g, p)
              : censor_then_symmetrize(g, static_cast<int>(std::lround(p)),
                                       censor_seed(seed, r));
      bundles.push_back(binary_stats(binary, needs));
    }
    const auto bundle_for = [&](int r) -> const StatsBundle& {
      return bundles[reuse_across_reps ? 0 : r];
    };

    // per-replicate discrepancies, diameters filled in after the joint fit
    std::map<Statistic, std::vector<double>> cell;
    for (Statistic s : statistics) cell[s].assign(replicates, kInf);
    for (int r = 0; r < replicates; ++r) {
      for (Statistic s : statistics) {
        if (is_rank_stat(s)) {
          cell[s][r] = rank_cell_discrepancy(ref, bundle_for(r), s, r, seed);
        } else if (is_value_stat(s)) {
          cell[s][r] = value_discrepancy(node_scores(bundle_for(r), s),
                                         node_scores(ref.stats, s));
        }
      }
    }
    for (Statistic s : statistics) {
      if (!is_diam_stat(s)) continue;
      std::vector<double> d_bin(replicates);
      for (int r = 0; r < replicates; ++r) d_bin[r] = diam_value(bundle_for(r), s);
      cell[s] = diam_joint_discrepancies(d_bin, diam_value(ref.stats, s));
    }

    ParamSummary summary;
    summary.parameter = p;
    double arcs = 0.0;
    for (int r = 0; r < replicates; ++r) arcs += bundle_for(r).arcs_per_node;
    summary.mean_arcs_per_node = arcs / replicates;
    for (Statistic s : statistics) summary.mean_discrepancy[s] = mean_of(cell[s]);
    summaries.push_back(std::move(summary));

    for (int r = 0; r < replicates; ++r) {
      for (Statistic s : statistics) {
        result.records.push_back({p, r, s, cell[s][r]});
      }
    }
  }

  for (Statistic s : statistics) {
    const ParamSummary* best = nullptr;
    for (const auto& summary : summaries) {
      if (best == nullptr) {
        best = &summary;
        continue;
      }
      const double cur = summary.mean_discrepancy.at(s);
      const double so_far = best->mean_discrepancy.at(s);
      if (cur < so_far ||
          (cur == so_far && summary.parameter < best->parameter)) {
        best = &summary;
      }
    }
    result.optima.push_back({s, best->parameter, best->mean_discrepancy.at(s),
                             best->mean_arcs_per_node});
  }
  return result;
}

std::map<Statistic, BruteForceResult> brute_force_best_binary_all(
    const ValuedGraph& g, const std::set<Statistic>& statistics, int max_n,
    int replicates, std::uint64_t seed) {
  const int n = g.size();
  if (n > max_n) {
    throw std::invalid_argument(
        "brute_force_best_binary: refusing exhaustive search for n = " +
        std::to_string(n) + " > max_n = " + std::to_string(max_n));
  }
  if (statistics.empty()) {
    throw std::invalid_argument("brute_force_best_binary: no statistics requested");
  }
  if (replicates < 1) {
    throw std::invalid_argument("brute_force_best_binary: replicates must be >= 1");
  }

  const StatNeeds needs = needs_of(statistics);
  const Reference ref = make_reference(g, statistics, replicates, seed);

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  const std::uint64_t count = 1ULL << pairs.size();

  std::map<Statistic, double> best_disc;
  std::map<Statistic, std::uint64_t> best_mask;
  for (Statistic s : statistics) best_disc[s] = kInf;

  std::vector<double> cell(replicates);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    Eigen::MatrixXi edges = Eigen::MatrixXi::Zero(n, n);
    for (std::size_t b = 0; b < pairs.size(); ++b) {
      if (mask & (1ULL << b)) {
        edges(pairs[b].first, pairs[b].second) = 1;
        edges(pairs[b].second, pairs[b].first) = 1;
      }
    }
    const UndirectedBinaryGraph candidate(n, std::move(edges));
    const StatsBundle bundle = binary_stats(candidate, needs);

    for (Statistic s : statistics) {
      double mean;
      if (is_rank_stat(s)) {
        for (int r = 0; r < replicates; ++r) {
          cell[r] = rank_cell_discrepancy(ref, bundle, s, r, seed);
        }
        mean = mean_of(cell);
      } else if (is_value_stat(s)) {
        std::fill(cell.begin(), cell.end(),
                  value_discrepancy(node_scores(bundle, s), node_scores(ref.stats, s)));
        mean = mean_of(cell);
      } else {
        const std::vector<double> d_bin(replicates, diam_value(bundle, s));
        mean = mean_of(diam_joint_discrepancies(d_bin, diam_value(ref.stats, s)));
      }
      if (mean < best_disc[s]) {
        best_disc[s] = mean;
        best_mask[s] = mask;
      }
    }
  }

  std::map<Statistic, BruteForceResult> out;
  for (Statistic s : statistics) {
    if (!std::isfinite(best_disc[s])) {
      throw std::runtime_error(
          "brute_force_best_binary: no candidate yields a finite discrepancy for " +
          std::string(statistic_name(s)));
    }
    Eigen::MatrixXi edges = Eigen::MatrixXi::Zero(n, n);
    for (std::size_t b = 0; b < pairs.size(); ++b) {
      if (best_mask[s] & (1ULL << b)) {
        edges(pairs[b].first, pairs[b].second) = 1;
        edges(pairs[b].second, pairs[b].first) = 1;
      }
    }
    out.emplace(s, BruteForceResult{UndirectedBinaryGraph(n, std::move(edges)),
                                    best_disc[s]});
  }
  return out;
}

BruteForceResult brute_force_best_binary(const ValuedGraph& g, Statistic statistic,
                                         int max_n, int replicates,
                                         std::uint64_t seed) {
  auto results = brute_force_best_binary_all(g, {statistic}, max_n, replicates, seed);
  return std::move(results.at(statistic));
}

}  // namespace valnet
