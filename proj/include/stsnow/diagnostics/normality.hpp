#pragma once

// Normality tests for standardized one-step-ahead prediction errors:
// Shapiro-Wilk (Royston's algorithm and normalizing transformation) and the
// Bowman-Shenton skewness/kurtosis statistic.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "stsnow/common/errors.hpp"
#include "stsnow/common/stats.hpp"
#include "stsnow/ssm/filter.hpp"

namespace stsnow::diagnostics {

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

namespace detail {

inline double poly(const double* c, int n, double x) {
  double v = c[n - 1];
  for (int i = n - 2; i >= 0; --i) v = v * x + c[i];
  return v;
}

}  // namespace detail

// Shapiro-Wilk W and its p-value (valid for 3 <= n <= 5000).
inline TestResult shapiro_wilk(const Eigen::VectorXd& x) {
  const int n = static_cast<int>(x.size());
  if (n < 3 || n > 5000) throw ConfigError("shapiro_wilk: sample size must be in [3, 5000]");
  std::vector<double> s(x.data(), x.data() + n);
  std::sort(s.begin(), s.end());
  if (s.back() - s.front() <= 0.0) throw DataError("shapiro_wilk: constant sample");

  // expected normal order statistics (Blom scores), normalized
  Eigen::VectorXd m(n);
  for (int i = 0; i < n; ++i) m(i) = normal_quantile((i + 1 - 0.375) / (n + 0.25));
  const double ssm_ = m.squaredNorm();
  Eigen::VectorXd a = m / std::sqrt(ssm_);

  if (n > 5) {
    // Royston's polynomial corrections to the two largest coefficients
    static const double c1[6] = {0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056};
    static const double c2[6] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
    const double u = 1.0 / std::sqrt(static_cast<double>(n));
    const double a_n = a(n - 1) + detail::poly(c1, 6, u);
    const double a_n1 = a(n - 2) + detail::poly(c2, 6, u);
    const double phi =
        (ssm_ - 2.0 * m(n - 1) * m(n - 1) - 2.0 * m(n - 2) * m(n - 2)) /
        (1.0 - 2.0 * a_n * a_n - 2.0 * a_n1 * a_n1);
    const double sphi = std::sqrt(phi);
    for (int i = 2; i < n - 2; ++i) a(i) = m(i) / sphi;
    a(n - 1) = a_n;
    a(0) = -a_n;
    a(n - 2) = a_n1;
    a(1) = -a_n1;
  } else if (n == 3) {
    a(0) = -std::sqrt(0.5);
    a(1) = 0.0;
    a(2) = std::sqrt(0.5);
  } else {
    static const double c1[6] = {0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056};
    const double u = 1.0 / std::sqrt(static_cast<double>(n));
    const double a_n = a(n - 1) + detail::poly(c1, 6, u);
    const double phi = (ssm_ - 2.0 * m(n - 1) * m(n - 1)) / (1.0 - 2.0 * a_n * a_n);
    const double sphi = std::sqrt(phi);
    for (int i = 1; i < n - 1; ++i) a(i) = m(i) / sphi;
    a(n - 1) = a_n;
    a(0) = -a_n;
  }

  double mean = 0.0;
  for (double v : s) mean += v;
  mean /= n;
  double num = 0.0, den = 0.0;
  for (int i = 0; i < n; ++i) {
    num += a(i) * s[i];
    den += (s[i] - mean) * (s[i] - mean);
  }
  const double w = num * num / den;

  TestResult res;
  res.statistic = w;
  const double lw = std::log(std::max(1.0 - w, 1e-15));
  if (n == 3) {
    res.p_value = std::clamp(
        6.0 / M_PI * (std::asin(std::sqrt(std::clamp(w, 0.75, 1.0))) - std::asin(std::sqrt(0.75))),
        0.0, 1.0);
  } else if (n <= 11) {
    const double g = -2.273 + 0.459 * n;
    const double mu = 0.5440 - 0.39978 * n + 0.025054 * n * n - 0.0006714 * n * n * n;
    const double sigma = std::exp(1.3822 - 0.77857 * n + 0.062767 * n * n - 0.0020322 * n * n * n);
    const double z = (-std::log(g - lw) - mu) / sigma;
    res.p_value = 1.0 - normal_cdf(z);
  } else {
    const double ln = std::log(static_cast<double>(n));
    const double mu = 0.0038915 * ln * ln * ln - 0.083751 * ln * ln - 0.31082 * ln - 1.5861;
    const double sigma = std::exp(0.0030302 * ln * ln - 0.082676 * ln - 0.4803);
    const double z = (lw - mu) / sigma;
    res.p_value = 1.0 - normal_cdf(z);
  }
  return res;
}

// Bowman-Shenton statistic T (skew^2/6 + (kurt-3)^2/24), chi-squared with two
// degrees of freedom under normality.
inline TestResult bowman_shenton(const Eigen::VectorXd& x) {
  const int n = static_cast<int>(x.size());
  if (n < 4) throw ConfigError("bowman_shenton: need at least 4 observations");
  const double mean = x.mean();
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = x(i) - mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  if (!(m2 > 0.0)) throw DataError("bowman_shenton: constant sample");
  const double skew = m3 / std::pow(m2, 1.5);
  const double kurt = m4 / (m2 * m2);
  TestResult res;
  res.statistic = n * (skew * skew / 6.0 + (kurt - 3.0) * (kurt - 3.0) / 24.0);
  res.p_value = chi2_sf(2.0, res.statistic);
  return res;
}

// Per-series normality report on the standardized innovations of a filter
// pass: burn-in periods and missing cells are dropped; no multiplicity
// adjustment is applied.
struct NormalityRow {
  int series = 0;
  int n = 0;
  double sw_stat = 0.0, sw_p = 1.0;
  double bs_stat = 0.0, bs_p = 1.0;
};

inline std::vector<NormalityRow> residual_normality_report(const ssm::FilterOutput& out) {
  std::vector<NormalityRow> rows;
  if (out.innovations.size() == 0) return rows;
  const Eigen::MatrixXd std_innov = ssm::standardized_innovations(out);
  const int T = static_cast<int>(std_innov.rows());
  const int p = static_cast<int>(std_innov.cols());
  for (int i = 0; i < p; ++i) {
    std::vector<double> cells;
    for (int t = out.d_diffuse; t < T; ++t)
      if (!ssm::is_missing(std_innov(t, i))) cells.push_back(std_innov(t, i));
    if (cells.size() < 4) continue;
    Eigen::Map<Eigen::VectorXd> v(cells.data(), cells.size());
    NormalityRow row;
    row.series = i;
    row.n = static_cast<int>(cells.size());
    auto sw = shapiro_wilk(v);
    auto bs = bowman_shenton(v);
    row.sw_stat = sw.statistic;
    row.sw_p = sw.p_value;
    row.bs_stat = bs.statistic;
    row.bs_p = bs.p_value;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace stsnow::diagnostics
