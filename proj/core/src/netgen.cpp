#include "valnet/netgen.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "valnet/rng.hpp"

namespace valnet {

namespace {

// stream tags; values are arbitrary but frozen (changing them changes draws)
constexpr std::uint64_t kAlphaStream = 0x01;
constexpr std::uint64_t kPositionStream = 0x02;
constexpr std::uint64_t kClusterStream = 0x03;
constexpr std::uint64_t kTieStream = 0x04;

bool has_positions(Geometry g) { return g == Geometry::Ring || g == Geometry::Cloud; }

bool has_clusters(Geometry g) {
  return g == Geometry::ClusterAttract || g == Geometry::ClusterRepel;
}

}  // namespace

void GenConfig::validate() const {
  if (n < 2) throw std::invalid_argument("GenConfig: n must be >= 2");
  if (sigma_alpha < 0.0) throw std::invalid_argument("GenConfig: sigma_alpha must be >= 0");
  if (gamma_geo < 0.0) throw std::invalid_argument("GenConfig: gamma_geo must be >= 0");
  if (family == Family::VarianceHetero && !(c_var > 0.0)) {
    throw std::invalid_argument("GenConfig: c_var must be > 0");
  }
  if (has_positions(geometry) && lambda != 0.0) {
    throw std::invalid_argument(
        "GenConfig: cluster propensity set with point geometry; only one of "
        "geometry and clusters may be active");
  }
  if (has_clusters(geometry) && gamma_geo != 0.0) {
    throw std::invalid_argument(
        "GenConfig: distance coefficient set with cluster geometry; only one "
        "of geometry and clusters may be active");
  }
}

LatentState sample_latents(const GenConfig& config, std::uint64_t seed) {
  config.validate();
  const int n = config.n;
  LatentState state;

  state.alpha.resize(n);
  Rng alpha_rng(derive_seed(seed, kAlphaStream));
  for (int i = 0; i < n; ++i) {
    state.alpha[i] = config.sigma_alpha == 0.0 ? 0.0
                                               : config.sigma_alpha * alpha_rng.normal();
  }

  if (config.geometry == Geometry::Ring) {
    std::vector<Vec2> pos(n);
    for (int i = 0; i < n; ++i) {
      const double angle = 2.0 * M_PI * static_cast<double>(i) / n;
      pos[i] = {std::cos(angle), std::sin(angle)};
    }
    state.positions = std::move(pos);
  } else if (config.geometry == Geometry::Cloud) {
    std::vector<Vec2> pos(n);
    Rng pos_rng(derive_seed(seed, kPositionStream));
    for (int i = 0; i < n; ++i) {
      pos[i].x = pos_rng.normal();
      pos[i].y = pos_rng.normal();
    }
    state.positions = std::move(pos);
  } else if (has_clusters(config.geometry)) {
    std::vector<int> labels(n);
    Rng cluster_rng(derive_seed(seed, kClusterStream));
    for (int i = 0; i < n; ++i) {
      labels[i] = 1 + static_cast<int>(cluster_rng.below(3));
    }
    state.clusters = std::move(labels);
  }
  return state;
}

double link_param(const LatentState& latents, int i, int j, const GenConfig& config) {
  if (i == j) throw std::invalid_argument("link_param: i and j must differ");
  const double ai = latents.alpha[i];
  const double aj = latents.alpha[j];
  double mu = ai + aj + config.chi * ai * aj + config.mu_offset;
  if (latents.positions) {
    const Vec2& pi = (*latents.positions)[i];
    const Vec2& pj = (*latents.positions)[j];
    mu -= config.gamma_geo * std::hypot(pi.x - pj.x, pi.y - pj.y);
  }
  if (latents.clusters) {
    if ((*latents.clusters)[i] == (*latents.clusters)[j]) mu += config.lambda;
  }
  return mu;
}

double positivize(double mu) { return mu < 1.0 ? std::exp(mu - 1.0) : mu; }

std::pair<ValuedGraph, LatentState> sample_graph(const GenConfig& config,
                                                 std::uint64_t seed) {
  config.validate();
  if (config.family != Family::Gamma && config.family != Family::Poisson) {
    throw std::invalid_argument(
        "sample_graph: family must be Gamma or Poisson; use "
        "sample_variance_hetero_graph for the variance-heterogeneity model");
  }
  const int n = config.n;
  LatentState latents = sample_latents(config, seed);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  const std::uint64_t tie_seed = derive_seed(seed, kTieStream);

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double mu_pos = positivize(link_param(latents, i, j, config));
      Rng pair_rng(pair_seed(tie_seed, i, j));
      double value = 0.0;
      if (config.family == Family::Gamma) {
        value = pair_rng.gamma(mu_pos * mu_pos) / mu_pos;
        // extreme negative link parameters underflow the Gamma draw; clamp to
        // keep the family's ties strictly positive
        if (value <= 0.0) value = std::numeric_limits<double>::min();
      } else {
        value = static_cast<double>(pair_rng.poisson(mu_pos));
      }
      w(i, j) = value;
      w(j, i) = value;
    }
  }
  return {ValuedGraph(n, std::move(w)), std::move(latents)};
}

ValuedGraph sample_variance_hetero_graph(const GenConfig& config, std::uint64_t seed) {
  config.validate();
  if (config.family != Family::VarianceHetero) {
    throw std::invalid_argument(
        "sample_variance_hetero_graph: family must be VarianceHetero");
  }
  const int n = config.n;
  const double c = config.c_var;

  // per-node variance factors, mean 1 for every c
  std::vector<double> alpha(n);
  Rng alpha_rng(derive_seed(seed, kAlphaStream));
  for (int i = 0; i < n; ++i) alpha[i] = alpha_rng.gamma(c) / c;

  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  const std::uint64_t tie_seed = derive_seed(seed, kTieStream);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Rng pair_rng(pair_seed(tie_seed, i, j));
      const double z = config.mu_base + std::sqrt(alpha[i] * alpha[j]) * pair_rng.normal();
      const double value = positivize(z);
      w(i, j) = value;
      w(j, i) = value;
    }
  }
  return ValuedGraph(n, std::move(w));
}

std::vector<GridEntry> parameter_grid() {
  const int geometric_nodes[] = {50, 100, 200};
  const int lm_only_nodes[] = {300, 400, 500, 600};
  const double sigma_alphas[] = {0.1, 0.5, 1.0, 2.5, 10.0, 100.0};
  const double strengths[] = {0.25, 3.0};
  const double chis[] = {0.0, 0.5, -0.5};
  const Family families[] = {Family::Gamma, Family::Poisson};

  std::vector<GridEntry> grid;
  auto push_configs = [&](int n, bool lm_only) {
    for (double sa : sigma_alphas) {
      for (double chi : chis) {
        for (Family fam : families) {
          GenConfig base;
          base.n = n;
          base.family = fam;
          base.sigma_alpha = sa;
          base.chi = chi;

          // geometry None carries no strength parameter
          grid.push_back({base, lm_only});

          for (double s : strengths) {
            GenConfig ring = base;
            ring.geometry = Geometry::Ring;
            ring.gamma_geo = s;
            grid.push_back({ring, lm_only});

            GenConfig cloud = base;
            cloud.geometry = Geometry::Cloud;
            cloud.gamma_geo = s;
            grid.push_back({cloud, lm_only});

            GenConfig attract = base;
            attract.geometry = Geometry::ClusterAttract;
            attract.lambda = s;
            grid.push_back({attract, lm_only});

            GenConfig repel = base;
            repel.geometry = Geometry::ClusterRepel;
            repel.lambda = -s;
            grid.push_back({repel, lm_only});
          }
        }
      }
    }
  };
  for (int n : geometric_nodes) push_configs(n, false);
  for (int n : lm_only_nodes) push_configs(n, true);
  return grid;
}

}  // namespace valnet
