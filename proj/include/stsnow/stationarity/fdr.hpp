#pragma once

// Panel unit-root screening: per-series ADF statistics, a moving-block
// bootstrap of full cross-sections of differenced data (unit root imposed)
// for the null distribution, and step-up false-discovery-rate selection.

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "stsnow/common/errors.hpp"
#include "stsnow/common/parallel.hpp"
#include "stsnow/common/rng.hpp"
#include "stsnow/stationarity/adf.hpp"

namespace stsnow::stationarity {

struct FdrOptions {
  double level = 0.05;
  int block_len = 0;  // 0: ceil(T^{1/3})
  int n_boot = 999;
  std::uint64_t seed = 0;
  AdfOptions adf;
  unsigned n_threads = 0;
};

struct UnitRootReport {
  Eigen::VectorXd statistic;   // per series
  Eigen::VectorXd p_value;     // bootstrap p-values
  std::vector<int> lag;
  std::vector<bool> rejected;  // unit root rejected => classified I(0)
  double level = 0.05;
  int block_len = 0;
  int n_boot = 0;
  std::uint64_t seed = 0;
};

namespace detail {

// Benjamini-Hochberg step-up on p-values.
inline std::vector<bool> bh_step_up(const Eigen::VectorXd& p, double level) {
  const int n = static_cast<int>(p.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return p(a) < p(b); });
  int cutoff = -1;
  for (int k = n - 1; k >= 0; --k) {
    if (p(order[k]) <= level * (k + 1) / n) {
      cutoff = k;
      break;
    }
  }
  std::vector<bool> rejected(n, false);
  for (int k = 0; k <= cutoff; ++k) rejected[order[k]] = true;
  return rejected;
}

}  // namespace detail

inline UnitRootReport fdr_block_bootstrap(const Eigen::MatrixXd& panel,
                                          const FdrOptions& opts = {}) {
  const int T = static_cast<int>(panel.rows());
  const int n = static_cast<int>(panel.cols());
  if (panel.hasNaN()) throw ConfigError("fdr: panel must be complete");
  int block = opts.block_len > 0
                  ? opts.block_len
                  : static_cast<int>(std::ceil(std::pow(static_cast<double>(T), 1.0 / 3.0)));
  if (block >= T) throw ConfigError("fdr: block length must be smaller than T");

  UnitRootReport rep;
  rep.level = opts.level;
  rep.block_len = block;
  rep.n_boot = opts.n_boot;
  rep.seed = opts.seed;
  rep.statistic.resize(n);
  rep.p_value.resize(n);
  rep.lag.resize(n);

  for (int i = 0; i < n; ++i) {
    auto res = adf_test(panel.col(i), opts.adf);
    rep.statistic(i) = res.statistic;
    rep.lag[i] = res.lag;
  }

  // Differenced and column-centered panel: the resampled cross-section rows
  // keep the contemporaneous dependence, the blocks the serial dependence,
  // and cumulating the draws imposes the unit root on every series.
  const int Td = T - 1;
  Eigen::MatrixXd D = panel.bottomRows(Td) - panel.topRows(Td);
  Eigen::RowVectorXd mean = D.colwise().mean();
  D.rowwise() -= mean;

  Eigen::MatrixXd exceed = Eigen::MatrixXd::Zero(opts.n_boot, n);
  AdfOptions boot_adf = opts.adf;
  boot_adf.select_lag_bic = false;  // reuse the observed lag orders

  parallel_for(
      opts.n_boot,
      [&](std::size_t b) {
        auto rng = make_rng(opts.seed, b + 1);
        std::uniform_int_distribution<int> pick(0, Td - block);
        Eigen::MatrixXd Y(T, n);
        Y.row(0).setZero();
        int filled = 0;
        while (filled < Td) {
          const int start = pick(rng);
          const int len = std::min(block, Td - filled);
          Y.middleRows(1 + filled, len) = D.middleRows(start, len);
          filled += len;
        }
        for (int t = 1; t < T; ++t) Y.row(t) += Y.row(t - 1);
        for (int i = 0; i < n; ++i) {
          AdfOptions single = boot_adf;
          single.max_lag = rep.lag[i];
          auto res = adf_test(Y.col(i), single);
          if (res.statistic <= rep.statistic(i)) exceed(b, i) = 1.0;
        }
      },
      opts.n_threads);

  for (int i = 0; i < n; ++i)
    rep.p_value(i) = (1.0 + exceed.col(i).sum()) / (opts.n_boot + 1.0);
  rep.rejected = detail::bh_step_up(rep.p_value, opts.level);
  return rep;
}

}  // namespace stsnow::stationarity
