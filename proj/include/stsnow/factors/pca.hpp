#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <tuple>

#include "stsnow/common/errors.hpp"

namespace stsnow::factors {

enum class Frequency { Monthly, Weekly };

// First-step estimates of the I(1) factor model x_t = Lambda f_t + eps_t,
// f_t = f_{t-1} + u_t with Var(u_t) = I_r. Estimated by PCA on the first
// differences of x after per-series standardization; factors are recovered by
// cumulating the rescaled principal-component scores.
struct FactorDecomposition {
  Eigen::MatrixXd loadings;      // n x r, in (level-difference) data units
  Eigen::MatrixXd loadings_std;  // n x r, in standardized-difference units
  Eigen::MatrixXd factors;       // T x r, factors(0,.) = 0, delta f_t = u_t
  Eigen::VectorXd idio_var;      // n, residual variance of the differenced data
  Eigen::VectorXd delta_mean;    // scaling record of the differences
  Eigen::VectorXd delta_sd;
  Frequency freq = Frequency::Monthly;

  int n() const { return static_cast<int>(loadings.rows()); }
  int r() const { return static_cast<int>(loadings.cols()); }
};

namespace detail {

struct PcaWork {
  Eigen::MatrixXd W;          // standardized differences, (T-1) x n
  Eigen::VectorXd mean, sd;   // column scaling
  Eigen::VectorXd eigenvalues;  // of W'W/(T_d - 1), descending
  Eigen::MatrixXd eigenvectors;
};

inline PcaWork standardize_differences(const Eigen::MatrixXd& X) {
  const int T = static_cast<int>(X.rows());
  const int n = static_cast<int>(X.cols());
  if (T < 3) throw ConfigError("pca: need at least 3 observations");
  if (X.hasNaN()) throw ConfigError("pca: panel must be complete over the estimation window");
  const int Td = T - 1;
  PcaWork w;
  Eigen::MatrixXd D = X.bottomRows(Td) - X.topRows(Td);
  w.mean = D.colwise().mean();
  Eigen::MatrixXd C = D.rowwise() - w.mean.transpose();
  w.sd = (C.colwise().squaredNorm() / std::max(Td - 1, 1)).cwiseSqrt();
  for (int i = 0; i < n; ++i)
    if (w.sd(i) <= 0.0) throw ConfigError("pca: constant series at column " + std::to_string(i));
  w.W = C.array().rowwise() / w.sd.transpose().array();

  Eigen::MatrixXd S = w.W.transpose() * w.W / std::max(Td - 1, 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
  // SelfAdjointEigenSolver sorts ascending; flip to descending.
  w.eigenvalues = es.eigenvalues().reverse();
  w.eigenvectors = es.eigenvectors().rowwise().reverse();
  return w;
}

}  // namespace detail

inline FactorDecomposition pca_nonstationary(const Eigen::MatrixXd& X, int r,
                                             Frequency freq = Frequency::Monthly) {
  const int T = static_cast<int>(X.rows());
  const int n = static_cast<int>(X.cols());
  const int Td = T - 1;
  if (r < 1) throw ConfigError("pca: r must be >= 1");
  if (r > std::min(n, Td)) throw ConfigError("pca: r exceeds the rank of the differenced data");
  auto w = detail::standardize_differences(X);
  if (w.eigenvalues(r - 1) <= 1e-12 * w.eigenvalues(0))
    throw ConfigError("pca: differenced data has rank below r");

  FactorDecomposition dec;
  dec.freq = freq;
  dec.delta_mean = w.mean;
  dec.delta_sd = w.sd;

  Eigen::MatrixXd V = w.eigenvectors.leftCols(r);
  Eigen::MatrixXd U = w.W * V;  // principal-component scores, (T-1) x r
  Eigen::VectorXd score_sd =
      (U.colwise().squaredNorm() / std::max(Td - 1, 1)).cwiseSqrt();

  // Sign convention: first non-negligible loading of each factor >= 0.
  Eigen::MatrixXd Lstd = V * score_sd.asDiagonal();
  for (int mcol = 0; mcol < r; ++mcol) {
    const double colmax = Lstd.col(mcol).cwiseAbs().maxCoeff();
    for (int i = 0; i < n; ++i) {
      if (std::abs(Lstd(i, mcol)) > 1e-12 * colmax) {
        if (Lstd(i, mcol) < 0.0) {
          Lstd.col(mcol) = -Lstd.col(mcol);
          U.col(mcol) = -U.col(mcol);
        }
        break;
      }
    }
  }

  Eigen::MatrixXd u = U * score_sd.cwiseInverse().asDiagonal();  // unit-variance innovations
  dec.loadings_std = Lstd;
  dec.loadings = w.sd.asDiagonal() * Lstd;

  dec.factors = Eigen::MatrixXd::Zero(T, r);
  for (int t = 1; t < T; ++t) dec.factors.row(t) = dec.factors.row(t - 1) + u.row(t - 1);

  Eigen::MatrixXd resid = (w.W - u * Lstd.transpose());
  dec.idio_var = (resid.colwise().squaredNorm() / std::max(Td - 1, 1)).transpose();
  dec.idio_var = dec.idio_var.cwiseProduct(w.sd.cwiseProduct(w.sd));
  dec.idio_var = dec.idio_var.cwiseMax(1e-12);
  return dec;
}

// Bai-Ng information criteria IC1-IC3 evaluated on the standardized
// differenced panel; returns the minimizing factor counts over 0..r_max.
struct IcResult {
  int r1 = 0, r2 = 0, r3 = 0;
  Eigen::MatrixXd values;  // (r_max+1) x 3
};

inline IcResult ic_bai_ng(const Eigen::MatrixXd& X, int r_max) {
  if (r_max < 1) throw ConfigError("ic_bai_ng: r_max must be >= 1");
  auto w = detail::standardize_differences(X);
  const int n = static_cast<int>(X.cols());
  const int Td = static_cast<int>(X.rows()) - 1;
  r_max = std::min(r_max, std::min(n, Td));

  const double N = n, T = Td;
  const double c2 = std::min(N, T);
  const double total = w.eigenvalues.sum();

  IcResult res;
  res.values.resize(r_max + 1, 3);
  double best[3] = {1e300, 1e300, 1e300};
  int arg[3] = {0, 0, 0};
  double tail = total;
  for (int k = 0; k <= r_max; ++k) {
    if (k > 0) tail -= w.eigenvalues(k - 1);
    const double v = std::max(tail / N, 1e-300);
    const double lv = std::log(v);
    const double pen = (N + T) / (N * T);
    const double ic[3] = {lv + k * pen * std::log(N * T / (N + T)),
                          lv + k * pen * std::log(c2), lv + k * std::log(c2) / c2};
    for (int j = 0; j < 3; ++j) {
      res.values(k, j) = ic[j];
      if (ic[j] < best[j]) {
        best[j] = ic[j];
        arg[j] = k;
      }
    }
  }
  res.r1 = arg[0];
  res.r2 = arg[1];
  res.r3 = arg[2];
  return res;
}

}  // namespace stsnow::factors
