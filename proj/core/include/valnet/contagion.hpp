// Two-time-step linear contagion model. Outcomes are generated on the valued
// graph; the contagion coefficient is then re-estimated with either the true
// valued adjacency or a censored-symmetrized binary one, and the information
// loss is summarized by the mean-squared-error ratio of the two estimates.
#pragma once

#include <cstdint>
#include <vector>

#include "valnet/graph.hpp"

namespace valnet {

struct LmConfig {
  double mu_lm = 0.0;      // intercept
  double gamma_lm = 0.0;   // autoregression on the prior outcome
  double beta = 0.0;       // contagion coefficient
  double sigma_eps = 1.0;  // noise sd of the second-step disturbance, >= 0
  double rho_deg = 0.0;    // target corr(weighted degree, prior outcome), in [-1,1]
  std::uint64_t seed = 0;

  void validate() const;
};

struct ContagionPanel {
  std::vector<double> y0;
  std::vector<double> y1;
  LmConfig config;
};

struct FitResult {
  double mu_hat = 0.0;
  double gamma_hat = 0.0;
  double beta_hat = 0.0;
  double se_mu = 0.0;
  double se_gamma = 0.0;
  double se_beta = 0.0;
  double residual_variance = 0.0;
  double design_condition = 0.0;  // singular-value ratio of the design matrix
};

/// Draws prior outcomes as standard normals blended with the standardized
/// weighted degree to hit rho_deg, then applies the model exactly:
///   y1_i = mu + gamma*y0_i + beta * sum_j w_ij y0_j + eps_i.
/// When the degree sequence is constant the blend is skipped (rho_deg is
/// unattainable) and y0 stays standard normal.
ContagionPanel simulate_two_step(const ValuedGraph& g, const LmConfig& cfg);

/// OLS of y1 on [1, y0, exposure], exposure_i = sum_j adjacency_ij * y0_j.
/// Conventional standard errors. Throws an identifiability error naming the
/// collinear column on rank-deficient designs (e.g. an empty adjacency).
/// Requires n >= 4.
FitResult ols_fit(const ContagionPanel& panel, const ValuedGraph& adjacency);
FitResult ols_fit(const ContagionPanel& panel, const UndirectedBinaryGraph& adjacency);

/// (beta_hat - beta_true) / se(beta_hat); throws on a zero standard error.
double beta_tstat(const FitResult& fit, double beta_true);

struct MseCell {
  int k = 0;
  double mse_ratio = 0.0;  // +inf when the valued-fit MSE is exactly zero
  int excluded = 0;        // replicates dropped due to fit errors
};

struct MseDetailRow {
  int k = 0;  // 0 marks the valued-adjacency fit
  int replicate = 0;
  double beta_hat = 0.0;
  double se = 0.0;
  double tstat = 0.0;  // NaN when the standard error is zero
};

struct MseExperimentResult {
  std::vector<MseCell> cells;
  double mse_valued = 0.0;
  bool valued_mse_zero = false;
  int valued_excluded = 0;
  double min_ratio = 0.0;
  int min_ratio_k = 0;
  std::vector<MseDetailRow> details;
};

/// For each replicate: simulate a fresh panel on the valued graph, fit it
/// with the valued adjacency and with every censored-symmetrized binary
/// adjacency in the ladder (fresh tie-break seed per replicate). Reports
/// MSE(beta_hat_k) / MSE(beta_hat_valued) per k and the minimum over the
/// ladder. Failed fits are excluded from the means and counted. Requires
/// replicates >= 2 and a nonempty ladder.
MseExperimentResult mse_experiment(const ValuedGraph& g, const LmConfig& cfg,
                                   const std::vector<int>& k_ladder, int replicates);

}  // namespace valnet
