#include "valnet/contagion.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "valnet/dichotomize.hpp"
#include "valnet/rng.hpp"

namespace valnet {

namespace {

constexpr std::uint64_t kPriorStream = 0x31;
constexpr std::uint64_t kNoiseStream = 0x32;
constexpr std::uint64_t kTieStream = 0x33;
constexpr std::uint64_t kReplicateStream = 0x34;

FitResult ols_fit_impl(const ContagionPanel& panel, const Eigen::MatrixXd& adjacency) {
  const auto n = static_cast<Eigen::Index>(panel.y0.size());
  if (panel.y1.size() != panel.y0.size()) {
    throw std::invalid_argument("ols_fit: panel outcome lengths differ");
  }
  if (adjacency.rows() != n || adjacency.cols() != n) {
    throw std::invalid_argument("ols_fit: adjacency size does not match panel");
  }
  if (n < 4) {
    throw std::invalid_argument("ols_fit: need n >= 4 for three coefficients");
  }

  const Eigen::Map<const Eigen::VectorXd> y0(panel.y0.data(), n);
  const Eigen::Map<const Eigen::VectorXd> y1(panel.y1.data(), n);

  Eigen::MatrixXd design(n, 3);
  design.col(0).setOnes();
  design.col(1) = y0;
  design.col(2) = adjacency * y0;

  // identifiability: each non-intercept column must carry variation beyond
  // the span of the preceding ones
  const auto check_column = [&](int col, const char* what) {
    const Eigen::MatrixXd prior = design.leftCols(col);
    const Eigen::VectorXd x = design.col(col);
    const Eigen::VectorXd fitted =
        prior * (prior.transpose() * prior).ldlt().solve(prior.transpose() * x);
    const double scale = std::max(x.norm(), 1.0);
    if ((x - fitted).norm() <= 1e-10 * scale) {
      throw std::invalid_argument(
          std::string("ols_fit: design is rank deficient; the ") + what +
          " column is collinear with the preceding columns");
    }
  };
  check_column(1, "prior-outcome (y0)");
  check_column(2, "exposure");

  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(design);
  const double cond = svd.singularValues()(0) /
                      svd.singularValues()(svd.singularValues().size() - 1);

  const Eigen::MatrixXd xtx = design.transpose() * design;
  const Eigen::LDLT<Eigen::MatrixXd> xtx_solver(xtx);
  const Eigen::Vector3d coef = xtx_solver.solve(design.transpose() * y1);

  const Eigen::VectorXd resid = y1 - design * coef;
  const double rss = resid.squaredNorm();
  const double sigma2 = rss / static_cast<double>(n - 3);
  const Eigen::Matrix3d cov =
      sigma2 * xtx_solver.solve(Eigen::Matrix3d::Identity());

  FitResult fit;
  fit.mu_hat = coef(0);
  fit.gamma_hat = coef(1);
  fit.beta_hat = coef(2);
  fit.se_mu = std::sqrt(std::max(cov(0, 0), 0.0));
  fit.se_gamma = std::sqrt(std::max(cov(1, 1), 0.0));
  fit.se_beta = std::sqrt(std::max(cov(2, 2), 0.0));
  fit.residual_variance = sigma2;
  fit.design_condition = cond;
  return fit;
}

}  // namespace

void LmConfig::validate() const {
  if (sigma_eps < 0.0) throw std::invalid_argument("LmConfig: sigma_eps must be >= 0");
  if (std::abs(rho_deg) > 1.0) {
    throw std::invalid_argument("LmConfig: rho_deg must lie in [-1, 1]");
  }
}

ContagionPanel simulate_two_step(const ValuedGraph& g, const LmConfig& cfg) {
  cfg.validate();
  const int n = g.size();
  ContagionPanel panel;
  panel.config = cfg;
  panel.y0.resize(n);
  panel.y1.resize(n);

  Eigen::VectorXd degree = g.weights().rowwise().sum();
  const double deg_mean = degree.mean();
  const double deg_var =
      (degree.array() - deg_mean).square().sum() / static_cast<double>(n);
  const double deg_sd = std::sqrt(deg_var);

  Rng prior_rng(derive_seed(cfg.seed, kPriorStream));
  const bool blend = cfg.rho_deg != 0.0 && deg_sd > 0.0;
  const double rho = cfg.rho_deg;
  for (int i = 0; i < n; ++i) {
    const double z = prior_rng.normal();
    if (blend) {
      const double standardized = (degree(i) - deg_mean) / deg_sd;
      panel.y0[i] = rho * standardized + std::sqrt(1.0 - rho * rho) * z;
    } else {
      panel.y0[i] = z;
    }
  }

  Rng noise_rng(derive_seed(cfg.seed, kNoiseStream));
  for (int i = 0; i < n; ++i) {
    double exposure = 0.0;
    for (int j = 0; j < n; ++j) exposure += g.weight(i, j) * panel.y0[j];
    const double eps = cfg.sigma_eps == 0.0 ? 0.0 : cfg.sigma_eps * noise_rng.normal();
    panel.y1[i] = cfg.mu_lm + cfg.gamma_lm * panel.y0[i] + cfg.beta * exposure + eps;
  }
  return panel;
}

FitResult ols_fit(const ContagionPanel& panel, const ValuedGraph& adjacency) {
  return ols_fit_impl(panel, adjacency.weights());
}

FitResult ols_fit(const ContagionPanel& panel, const UndirectedBinaryGraph& adjacency) {
  return ols_fit_impl(panel, adjacency.edges().cast<double>());
}

double beta_tstat(const FitResult& fit, double beta_true) {
  if (!(fit.se_beta > 0.0)) {
    throw std::invalid_argument("beta_tstat: zero standard error");
  }
  return (fit.beta_hat - beta_true) / fit.se_beta;
}

MseExperimentResult mse_experiment(const ValuedGraph& g, const LmConfig& cfg,
                                   const std::vector<int>& k_ladder, int replicates) {
  cfg.validate();
  if (replicates < 2) {
    throw std::invalid_argument("mse_experiment: replicates must be >= 2");
  }
  if (k_ladder.empty()) throw std::invalid_argument("mse_experiment: empty ladder");
  for (int k : k_ladder) {
    if (k < 1) throw std::invalid_argument("mse_experiment: k must be >= 1");
  }

  MseExperimentResult result;
  const double beta_true = cfg.beta;
  const auto squared_error = [beta_true](double beta_hat) {
    const double d = beta_hat - beta_true;
    return d * d;
  };
  const auto tstat_or_nan = [beta_true](const FitResult& fit) {
    return fit.se_beta > 0.0 ? (fit.beta_hat - beta_true) / fit.se_beta
                             : std::numeric_limits<double>::quiet_NaN();
  };

  double valued_sum = 0.0;
  int valued_count = 0;
  std::vector<double> k_sum(k_ladder.size(), 0.0);
  std::vector<int> k_count(k_ladder.size(), 0);
  std::vector<int> k_excluded(k_ladder.size(), 0);

  for (int rep = 0; rep < replicates; ++rep) {
    LmConfig rep_cfg = cfg;
    rep_cfg.seed = derive_seed(derive_seed(cfg.seed, kReplicateStream),
                               static_cast<std::uint64_t>(rep));
    const ContagionPanel panel = simulate_two_step(g, rep_cfg);

    try {
      const FitResult fit = ols_fit(panel, g);
      valued_sum += squared_error(fit.beta_hat);
      ++valued_count;
      result.details.push_back({0, rep, fit.beta_hat, fit.se_beta, tstat_or_nan(fit)});
    } catch (const std::invalid_argument&) {
      ++result.valued_excluded;
    }

    const std::uint64_t tie_seed = derive_seed(
        derive_seed(cfg.seed, kTieStream), static_cast<std::uint64_t>(rep));
    for (std::size_t ki = 0; ki < k_ladder.size(); ++ki) {
      const UndirectedBinaryGraph binary =
          censor_then_symmetrize(g, k_ladder[ki], tie_seed);
      try {
        const FitResult fit = ols_fit(panel, binary);
        k_sum[ki] += squared_error(fit.beta_hat);
        ++k_count[ki];
        result.details.push_back(
            {k_ladder[ki], rep, fit.beta_hat, fit.se_beta, tstat_or_nan(fit)});
      } catch (const std::invalid_argument&) {
        ++k_excluded[ki];
      }
    }
  }

  if (valued_count == 0) {
    throw std::runtime_error("mse_experiment: every valued-adjacency fit failed");
  }
  result.mse_valued = valued_sum / valued_count;
  // noise-free panels recover beta to rounding error; a denominator at that
  // scale is the exact-arithmetic zero and the ratio is reported as infinite
  const double degenerate_mse = 1e-20 * (1.0 + beta_true * beta_true);
  result.valued_mse_zero = result.mse_valued <= degenerate_mse;

  result.min_ratio = std::numeric_limits<double>::infinity();
  result.min_ratio_k = 0;
  for (std::size_t ki = 0; ki < k_ladder.size(); ++ki) {
    MseCell cell;
    cell.k = k_ladder[ki];
    cell.excluded = k_excluded[ki];
    if (k_count[ki] == 0) {
      cell.mse_ratio = std::numeric_limits<double>::quiet_NaN();
    } else if (result.valued_mse_zero) {
      cell.mse_ratio = std::numeric_limits<double>::infinity();
    } else {
      cell.mse_ratio = (k_sum[ki] / k_count[ki]) / result.mse_valued;
    }
    if (std::isfinite(cell.mse_ratio) && cell.mse_ratio < result.min_ratio) {
      result.min_ratio = cell.mse_ratio;
      result.min_ratio_k = cell.k;
    }
    result.cells.push_back(cell);
  }
  return result;
}

}  // namespace valnet
