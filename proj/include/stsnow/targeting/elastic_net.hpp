#pragma once

// Elastic-net targeting of the auxiliary panel: coordinate-descent solver for
//   min_b  1/(2T) ||y - X b||^2 + lambda [ (1-alpha)/2 ||b||_2^2 + alpha ||b||_1 ]
// and BIC selection of (lambda, alpha) over a two-dimensional grid.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "stsnow/common/errors.hpp"

namespace stsnow::targeting {

struct ElasticNetOptions {
  double tol = 1e-8;       // objective-decrease convergence tolerance
  int max_sweeps = 10000;
};

namespace detail {

inline double soft_threshold(double z, double g) {
  if (z > g) return z - g;
  if (z < -g) return z + g;
  return 0.0;
}

inline double objective(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                        const Eigen::VectorXd& beta, double lambda, double alpha) {
  const double T = static_cast<double>(y.size());
  const double rss = (y - X * beta).squaredNorm();
  return rss / (2.0 * T) +
         lambda * ((1.0 - alpha) * 0.5 * beta.squaredNorm() + alpha * beta.lpNorm<1>());
}

}  // namespace detail

// Coordinate descent on the raw objective (no internal standardization); the
// caller is responsible for centering/scaling when required.
inline Eigen::VectorXd elastic_net(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                                   double lambda, double alpha,
                                   const ElasticNetOptions& opts = {}) {
  const int T = static_cast<int>(y.size());
  const int k = static_cast<int>(X.cols());
  if (X.rows() != T) throw ConfigError("elastic_net: y and X row counts differ");
  if (!(lambda >= 0.0)) throw ConfigError("elastic_net: lambda must be nonnegative");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("elastic_net: alpha must lie in [0,1]");

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(k);
  Eigen::VectorXd resid = y;
  Eigen::VectorXd col_ss(k);
  for (int j = 0; j < k; ++j) col_ss(j) = X.col(j).squaredNorm() / T;

  double obj = detail::objective(y, X, beta, lambda, alpha);
  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    double max_delta = 0.0;
    for (int j = 0; j < k; ++j) {
      const double bj = beta(j);
      const double rho = X.col(j).dot(resid) / T + col_ss(j) * bj;
      const double denom = col_ss(j) + lambda * (1.0 - alpha);
      double bnew = 0.0;
      if (denom > 0.0) bnew = detail::soft_threshold(rho, lambda * alpha) / denom;
      if (bnew != bj) {
        resid += X.col(j) * (bj - bnew);
        beta(j) = bnew;
        max_delta = std::max(max_delta, std::abs(bnew - bj));
      }
    }
    const double obj_new = detail::objective(y, X, beta, lambda, alpha);
    const bool obj_done = obj - obj_new < opts.tol * (1.0 + std::abs(obj_new));
    const bool coef_done = max_delta < 1e-10 * (1.0 + beta.cwiseAbs().maxCoeff());
    if (obj_done && coef_done) return beta;
    obj = obj_new;
  }
  throw NumericalError("elastic_net: coordinate descent did not converge");
}

struct TargetingResult {
  std::vector<int> selected;    // column indices with nonzero coefficients
  Eigen::VectorXd coefficients; // on the original (unstandardized) scale
  double lambda = 0.0;
  double alpha = 1.0;
  double bic = 0.0;
  Eigen::VectorXd col_mean, col_sd;  // standardization record
  double y_mean = 0.0;
};

struct TargetingOptions {
  std::vector<double> alpha_grid;   // default 0.1..1.0 step 0.1
  int n_lambda = 50;                // log-spaced, 4 decades below lambda_max
  ElasticNetOptions solver;
};

// BIC-selected elastic net of the (differenced) target on the (differenced)
// panel. Variables are centered and scaled internally; the reported
// coefficients are rescaled back, so the selected support is scale invariant.
inline TargetingResult target_panel(const Eigen::VectorXd& target, const Eigen::MatrixXd& panel,
                                    const TargetingOptions& opts = {}) {
  const int T = static_cast<int>(target.size());
  const int n = static_cast<int>(panel.cols());
  if (panel.rows() != T) throw ConfigError("target_panel: dimension mismatch");

  std::vector<double> alphas = opts.alpha_grid;
  if (alphas.empty())
    for (int i = 1; i <= 10; ++i) alphas.push_back(0.1 * i);
  if (opts.n_lambda < 1) throw ConfigError("target_panel: empty lambda grid");

  TargetingResult res;
  res.y_mean = target.mean();
  Eigen::VectorXd y = target.array() - res.y_mean;
  res.col_mean = panel.colwise().mean();
  Eigen::MatrixXd X = panel.rowwise() - res.col_mean.transpose();
  res.col_sd.resize(n);
  for (int j = 0; j < n; ++j) {
    const double sd = std::sqrt(X.col(j).squaredNorm() / T);
    res.col_sd(j) = sd;
    if (sd > 0.0) X.col(j) /= sd;
  }

  // lambda_max: smallest penalty zeroing every coefficient at given alpha.
  const double max_grad = (X.transpose() * y).cwiseAbs().maxCoeff() / T;

  double best_bic = 1e300;
  Eigen::VectorXd best_beta = Eigen::VectorXd::Zero(n);
  for (double alpha : alphas) {
    const double lmax = max_grad / std::max(alpha, 0.05);
    for (int li = 0; li < opts.n_lambda; ++li) {
      const double lambda =
          opts.n_lambda == 1 ? lmax
                             : lmax * std::pow(10.0, -4.0 * li / (opts.n_lambda - 1.0));
      Eigen::VectorXd beta = elastic_net(y, X, lambda, alpha, opts.solver);
      const double rss = (y - X * beta).squaredNorm();
      int df = 0;
      for (int j = 0; j < n; ++j) df += beta(j) != 0.0 ? 1 : 0;
      const double bic = T * std::log(std::max(rss / T, 1e-300)) + df * std::log(T);
      if (bic < best_bic) {
        best_bic = bic;
        best_beta = beta;
        res.lambda = lambda;
        res.alpha = alpha;
      }
    }
  }

  res.bic = best_bic;
  res.coefficients = Eigen::VectorXd::Zero(n);
  res.selected.clear();
  for (int j = 0; j < n; ++j) {
    if (best_beta(j) != 0.0) {
      res.selected.push_back(j);
      res.coefficients(j) = res.col_sd(j) > 0.0 ? best_beta(j) / res.col_sd(j) : 0.0;
    }
  }
  return res;
}

}  // namespace stsnow::targeting
