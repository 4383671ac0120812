#pragma once

// Augmented Dickey-Fuller unit-root test with BIC lag selection and p-values
// interpolated from simulated finite-sample quantile tables (df_tables.hpp).

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "stsnow/common/errors.hpp"
#include "stsnow/common/stats.hpp"
#include "stsnow/stationarity/df_tables.hpp"

namespace stsnow::stationarity {

enum class Deterministics { None, Const, ConstTrend };

struct AdfOptions {
  Deterministics deterministics = Deterministics::Const;
  int max_lag = -1;          // -1: ceil(12 * (T/100)^(1/4)) as usual
  bool select_lag_bic = true;
  bool gls_detrend = false;  // Elliott-Rothenberg-Stock style detrending
};

struct AdfResult {
  double statistic = 0.0;
  double p_value = 1.0;
  int lag = 0;
  int n_obs = 0;  // observations in the final test regression
};

namespace detail {

struct AdfFit {
  double stat = 0.0;
  double bic = 0.0;
  int n_obs = 0;
};

// Test regression dy_t = det + g*y_{t-1} + sum phi_i dy_{t-i} + e, returning
// the t statistic of g. `start` indexes the first usable dy observation.
inline AdfFit adf_regression(const Eigen::VectorXd& y, int lag, int start,
                             Deterministics det) {
  const int T = static_cast<int>(y.size());
  const int n = T - 1 - start;
  const int ndet = det == Deterministics::None ? 0 : (det == Deterministics::Const ? 1 : 2);
  const int k = 1 + lag + ndet;
  if (n <= k + 1) throw ConfigError("adf: series too short for the requested lag order");

  Eigen::MatrixXd X(n, k);
  Eigen::VectorXd dy(n);
  for (int i = 0; i < n; ++i) {
    const int t = start + 1 + i;  // dy_t = y_t - y_{t-1}
    dy(i) = y(t) - y(t - 1);
    X(i, 0) = y(t - 1);
    for (int j = 1; j <= lag; ++j) X(i, j) = y(t - j) - y(t - j - 1);
    if (ndet >= 1) X(i, 1 + lag) = 1.0;
    if (ndet == 2) X(i, 2 + lag) = static_cast<double>(t);
  }
  Eigen::MatrixXd XtX = X.transpose() * X;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(XtX);
  if (ldlt.info() != Eigen::Success)
    throw NumericalError("adf: singular regression (constant series?)");
  Eigen::VectorXd beta = ldlt.solve(X.transpose() * dy);
  Eigen::VectorXd resid = dy - X * beta;
  const double rss = resid.squaredNorm();
  if (!(rss > 0.0)) throw DataError("adf: degenerate series (zero residual variance)");
  const double s2 = rss / (n - k);
  Eigen::MatrixXd XtXinv = ldlt.solve(Eigen::MatrixXd::Identity(k, k));
  const double se = std::sqrt(s2 * XtXinv(0, 0));
  AdfFit fit;
  fit.stat = beta(0) / se;
  fit.bic = n * std::log(rss / n) + k * std::log(static_cast<double>(n));
  fit.n_obs = n;
  return fit;
}

inline const double (*case_table(Deterministics det, bool gls))[tables::kNumProbs] {
  if (gls) return det == Deterministics::ConstTrend ? tables::kGlsTrend : tables::kGlsConst;
  switch (det) {
    case Deterministics::None: return tables::kNone;
    case Deterministics::Const: return tables::kConst;
    case Deterministics::ConstTrend: return tables::kConstTrend;
  }
  return tables::kConst;
}

// Bilinear interpolation: linear in 1/T across table rows, linear in the
// probit of p along the quantile curve. Clamped to [5e-4, 0.9995].
inline double df_pvalue(double stat, int n_obs, Deterministics det, bool gls) {
  const auto* table = case_table(det, gls);
  const int S = tables::kNumSizes;
  const double invT = 1.0 / std::max(n_obs, 20);
  int hi = S - 1;
  while (hi > 0 && tables::kSampleSizes[hi - 1] >= n_obs) --hi;
  const int lo = std::max(hi - 1, 0);
  double w = 0.0;
  if (hi != lo) {
    const double a = 1.0 / tables::kSampleSizes[lo], b = 1.0 / tables::kSampleSizes[hi];
    w = (invT - a) / (b - a);
    w = std::clamp(w, 0.0, 1.0);
  }
  double q[tables::kNumProbs];
  for (int j = 0; j < tables::kNumProbs; ++j)
    q[j] = (1.0 - w) * table[lo][j] + w * table[hi][j];

  if (stat <= q[0]) return 5e-4;
  if (stat >= q[tables::kNumProbs - 1]) return 0.9995;
  int j = 0;
  while (stat > q[j + 1]) ++j;
  const double f = (stat - q[j]) / (q[j + 1] - q[j]);
  const double za = normal_quantile(tables::kProbs[j]);
  const double zb = normal_quantile(tables::kProbs[j + 1]);
  return normal_cdf(za + f * (zb - za));
}

// ERS quasi-difference detrending; returns the detrended series to feed the
// no-deterministics test regression.
inline Eigen::VectorXd gls_detrend(const Eigen::VectorXd& y, Deterministics det) {
  const int T = static_cast<int>(y.size());
  const double cbar = det == Deterministics::ConstTrend ? -13.5 : -7.0;
  const double abar = 1.0 + cbar / T;
  const int ndet = det == Deterministics::ConstTrend ? 2 : 1;
  Eigen::MatrixXd D(T, ndet);
  for (int t = 0; t < T; ++t) {
    D(t, 0) = 1.0;
    if (ndet == 2) D(t, 1) = t + 1;
  }
  Eigen::VectorXd yq(T);
  Eigen::MatrixXd Dq(T, ndet);
  yq(0) = y(0);
  Dq.row(0) = D.row(0);
  for (int t = 1; t < T; ++t) {
    yq(t) = y(t) - abar * y(t - 1);
    Dq.row(t) = D.row(t) - abar * D.row(t - 1);
  }
  Eigen::VectorXd beta = (Dq.transpose() * Dq).ldlt().solve(Dq.transpose() * yq);
  return y - D * beta;
}

}  // namespace detail

inline AdfResult adf_test(const Eigen::VectorXd& x, const AdfOptions& opts = {}) {
  const int T = static_cast<int>(x.size());
  if (T < 20) throw ConfigError("adf: need at least 20 observations");
  double span = x.maxCoeff() - x.minCoeff();
  if (!(span > 0.0)) throw DataError("adf: constant series");

  Eigen::VectorXd y = x;
  Deterministics reg_det = opts.deterministics;
  if (opts.gls_detrend) {
    Deterministics d = opts.deterministics == Deterministics::None ? Deterministics::Const
                                                                   : opts.deterministics;
    y = detail::gls_detrend(x, d);
    reg_det = Deterministics::None;
  }

  int max_lag = opts.max_lag;
  if (max_lag < 0)
    max_lag = static_cast<int>(std::ceil(12.0 * std::pow(T / 100.0, 0.25)));
  max_lag = std::min(max_lag, (T - 10) / 2);
  max_lag = std::max(max_lag, 0);

  int lag = max_lag;
  if (opts.select_lag_bic && max_lag > 0) {
    double best = 1e300;
    for (int p = 0; p <= max_lag; ++p) {
      // common estimation sample across candidate lag orders
      auto fit = detail::adf_regression(y, p, max_lag, reg_det);
      if (fit.bic < best) {
        best = fit.bic;
        lag = p;
      }
    }
  } else if (!opts.select_lag_bic) {
    lag = std::max(opts.max_lag, 0);
  }

  auto fit = detail::adf_regression(y, lag, lag, reg_det);
  AdfResult res;
  res.statistic = fit.stat;
  res.lag = lag;
  res.n_obs = fit.n_obs;
  res.p_value =
      detail::df_pvalue(fit.stat, fit.n_obs, opts.deterministics, opts.gls_detrend);
  return res;
}

}  // namespace stsnow::stationarity
