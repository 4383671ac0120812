#pragma once

// Monte Carlo experiments: concurrent nowcasting of the smooth-trend model
// with and without the auxiliary panel, the MSFE = variance + squared-bias
// decomposition, and the null density of the likelihood-ratio statistic for
// the slope/factor correlation.

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "stsnow/common/parallel.hpp"
#include "stsnow/common/rng.hpp"
#include "stsnow/common/stats.hpp"
#include "stsnow/factors/pca.hpp"
#include "stsnow/mcsim/dgp.hpp"
#include "stsnow/mcsim/sim_model.hpp"
#include "stsnow/ssm/filter.hpp"

namespace stsnow::mcsim {

enum class Schedule { Auto, FinalThird, LastOnly };

struct McOptions {
  int n_sim = 200;
  std::uint64_t seed = 1;
  Schedule schedule = Schedule::Auto;
  unsigned n_threads = 0;  // 0 = hardware
  bool estimate_meas_var = false;  // see sim_model.hpp
  mle::OptimOptions inner;
};

struct Decomposition {
  double msfe = 0.0, var = 0.0, bias2 = 0.0;
};

// Section-4 accuracy formulas: per time point, moments are taken across
// replications with 1/n_sim normalization, then averaged over the prediction
// window. With that normalization MSFE = var + bias^2 holds identically; long
// double accumulation keeps the identity at the 1e-10 level.
inline Decomposition decompose_errors(const Eigen::MatrixXd& errors) {
  const int n = static_cast<int>(errors.rows());   // replications
  const int h = static_cast<int>(errors.cols());   // prediction periods
  long double msfe = 0.0L, var = 0.0L, bias2 = 0.0L;
  for (int t = 0; t < h; ++t) {
    long double m1 = 0.0L, m2 = 0.0L;
    for (int j = 0; j < n; ++j) {
      const long double e = errors(j, t);
      m1 += e;
      m2 += e * e;
    }
    m1 /= n;
    m2 /= n;
    long double v = 0.0L;
    for (int j = 0; j < n; ++j) {
      const long double d = static_cast<long double>(errors(j, t)) - m1;
      v += d * d;
    }
    v /= n;
    msfe += m2;
    var += v;
    bias2 += m1 * m1;
  }
  Decomposition d;
  d.msfe = static_cast<double>(msfe / h);
  d.var = static_cast<double>(var / h);
  d.bias2 = static_cast<double>(bias2 / h);
  return d;
}

struct McCell {
  Regime regime = Regime::HomoskedasticDense;
  double rho = 0.0;
  int h = 0;
  int n_used = 0;
  int n_failed_reps = 0;    // replications dropped entirely
  int n_nonconverged = 0;   // step fits that fell back to the previous optimum
  Decomposition aux_L, aux_R, base_L, base_R;  // absolute
  double rel_msfe_L = 0.0, rel_var_L = 0.0, rel_bias2_L = 0.0;
  double rel_msfe_R = 0.0, rel_var_R = 0.0, rel_bias2_R = 0.0;
  double se_rel_msfe_R = 0.0;  // jackknife over replications
};

namespace detail {

struct RepResult {
  bool ok = false;
  int nonconverged = 0;
  std::vector<double> e_aux_L, e_aux_R, e_base_L, e_base_R;
};

inline RepResult run_replication(const DgpSpec& spec, int h, bool estimate_meas_var,
                                 const mle::OptimOptions& inner) {
  RepResult rep;
  SimData sim = simulate_dgp(spec);
  const int T = spec.T;
  rep.e_aux_L.resize(h);
  rep.e_aux_R.resize(h);
  rep.e_base_L.resize(h);
  rep.e_base_R.resize(h);

  SimHyper warm_base = moment_start(sim.y.head(T - h));
  SimHyper warm_aux = warm_base;

  ssm::FilterOptions fopts;
  fopts.store_series = false;
  fopts.store_cov = ssm::FilterOptions::StoreCov::Last;

  for (int s = 0; s < h; ++s) {
    const int t_now = T - h + s;
    const int Tw = t_now + 1;

    Eigen::MatrixXd y_base(Tw, 1);
    y_base.col(0) = sim.y.head(Tw);
    y_base(t_now, 0) = ssm::kMissing;

    auto fit_b = fit_sim_baseline(y_base.col(0), warm_base, estimate_meas_var, inner);
    if (fit_b.converged)
      warm_base = fit_b.hp;
    else
      ++rep.nonconverged;
    auto out_b = ssm::filter(build_sim_baseline(warm_base, data_scale(y_base)), y_base, fopts);
    rep.e_base_L[s] = out_b.filtered_state(0, 0) - sim.level(t_now);
    rep.e_base_R[s] = out_b.filtered_state(0, 1) - sim.slope(t_now);

    Eigen::MatrixXd Xw = sim.x.topRows(Tw);
    auto dec = factors::pca_nonstationary(Xw, 1);
    auto panel = collapse_panel(Xw, dec.loadings, dec.idio_var);
    auto fit_a = fit_sim_aux(y_base.col(0), panel, warm_aux, true, estimate_meas_var, inner);
    if (fit_a.converged)
      warm_aux = fit_a.hp;
    else
      ++rep.nonconverged;
    Eigen::MatrixXd obs(Tw, 2);
    obs.col(0) = y_base.col(0);
    obs.col(1) = panel.series;
    auto out_a = ssm::filter(build_sim_aux(warm_aux, panel.noise_var, data_scale(obs)), obs, fopts);
    rep.e_aux_L[s] = out_a.filtered_state(0, 0) - sim.level(t_now);
    rep.e_aux_R[s] = out_a.filtered_state(0, 1) - sim.slope(t_now);
  }
  rep.ok = true;
  return rep;
}

inline double jackknife_ratio_se(const Eigen::MatrixXd& num_err, const Eigen::MatrixXd& den_err) {
  const int n = static_cast<int>(num_err.rows());
  Eigen::VectorXd a = num_err.array().square().matrix().rowwise().mean();
  Eigen::VectorXd b = den_err.array().square().matrix().rowwise().mean();
  const double A = a.mean(), B = b.mean();
  double mean_loo = 0.0;
  Eigen::VectorXd loo(n);
  for (int j = 0; j < n; ++j) {
    loo(j) = (A * n - a(j)) / std::max(B * n - b(j), 1e-300);
    mean_loo += loo(j);
  }
  mean_loo /= n;
  double s = 0.0;
  for (int j = 0; j < n; ++j) s += (loo(j) - mean_loo) * (loo(j) - mean_loo);
  return std::sqrt(s * (n - 1) / n);
}

}  // namespace detail

inline int schedule_length(Schedule s, Regime regime, int T) {
  if (s == Schedule::FinalThird) return T / 3;
  if (s == Schedule::LastOnly) return 1;
  const bool appendix_regime = regime == Regime::Gaussian || regime == Regime::Exponential ||
                               regime == Regime::StudentT4;
  return appendix_regime ? 1 : T / 3;
}

inline McCell run_table2_cell(Regime regime, double rho, const McOptions& opts = {}) {
  DgpSpec base_spec;
  base_spec.regime = regime;
  base_spec.rho = rho;
  const int h = schedule_length(opts.schedule, regime, base_spec.T);

  std::vector<detail::RepResult> reps(opts.n_sim);
  parallel_for(
      opts.n_sim,
      [&](std::size_t j) {
        DgpSpec spec = base_spec;
        spec.seed = split_seed(opts.seed, j);
        try {
          reps[j] = detail::run_replication(spec, h, opts.estimate_meas_var, opts.inner);
        } catch (...) {
          reps[j].ok = false;
        }
      },
      opts.n_threads);

  McCell cell;
  cell.regime = regime;
  cell.rho = rho;
  cell.h = h;
  int n_ok = 0;
  for (const auto& r : reps) n_ok += r.ok ? 1 : 0;
  cell.n_used = n_ok;
  cell.n_failed_reps = opts.n_sim - n_ok;
  Eigen::MatrixXd eaL(n_ok, h), eaR(n_ok, h), ebL(n_ok, h), ebR(n_ok, h);
  int row = 0;
  for (const auto& r : reps) {
    if (!r.ok) continue;
    cell.n_nonconverged += r.nonconverged;
    for (int t = 0; t < h; ++t) {
      eaL(row, t) = r.e_aux_L[t];
      eaR(row, t) = r.e_aux_R[t];
      ebL(row, t) = r.e_base_L[t];
      ebR(row, t) = r.e_base_R[t];
    }
    ++row;
  }
  cell.aux_L = decompose_errors(eaL);
  cell.aux_R = decompose_errors(eaR);
  cell.base_L = decompose_errors(ebL);
  cell.base_R = decompose_errors(ebR);
  cell.rel_msfe_L = cell.aux_L.msfe / cell.base_L.msfe;
  cell.rel_var_L = cell.aux_L.var / cell.base_L.var;
  cell.rel_bias2_L = cell.aux_L.bias2 / std::max(cell.base_L.bias2, 1e-300);
  cell.rel_msfe_R = cell.aux_R.msfe / cell.base_R.msfe;
  cell.rel_var_R = cell.aux_R.var / cell.base_R.var;
  cell.rel_bias2_R = cell.aux_R.bias2 / std::max(cell.base_R.bias2, 1e-300);
  cell.se_rel_msfe_R = detail::jackknife_ratio_se(eaR, ebR);
  return cell;
}

struct McReport {
  std::vector<McCell> cells;
  int n_sim = 0;
  std::uint64_t seed = 0;
};

inline McReport run_table2(const std::vector<Regime>& regimes, const std::vector<double>& rhos,
                           const McOptions& opts = {}) {
  McReport report;
  report.n_sim = opts.n_sim;
  report.seed = opts.seed;
  std::uint64_t stream = 0;
  for (Regime reg : regimes)
    for (double rho : rhos) {
      McOptions cell_opts = opts;
      cell_opts.seed = split_seed(opts.seed, 1000 + stream++);
      report.cells.push_back(run_table2_cell(reg, rho, cell_opts));
    }
  return report;
}

// Null distribution of LR = -2 (loglik_restricted - loglik_unrestricted) for
// the hypothesis rho = 0, fitted on complete samples.
struct LrNullResult {
  Regime regime = Regime::Gaussian;
  std::vector<double> lr;  // clipped at zero
  double ks_chi2_1 = 0.0;
  double mean_lr = 0.0;
  double clip_frequency = 0.0;
  int n_failed = 0;
};

inline LrNullResult run_lr_null_cell(Regime regime, const McOptions& opts = {}) {
  struct Slot {
    bool ok = false;
    double lr_raw = 0.0;
  };
  std::vector<Slot> slots(opts.n_sim);
  parallel_for(
      opts.n_sim,
      [&](std::size_t j) {
        DgpSpec spec;
        spec.regime = regime;
        spec.rho = 0.0;
        spec.seed = split_seed(opts.seed, j);
        try {
          SimData sim = simulate_dgp(spec);
          auto dec = factors::pca_nonstationary(sim.x, 1);
          auto panel = collapse_panel(sim.x, dec.loadings, dec.idio_var);
          SimHyper start = moment_start(sim.y);
          auto restricted =
              fit_sim_aux(sim.y, panel, start, false, opts.estimate_meas_var, opts.inner);
          auto unrestricted =
              fit_sim_aux(sim.y, panel, restricted.hp, true, opts.estimate_meas_var, opts.inner);
          if (!restricted.converged || !unrestricted.converged) return;
          slots[j].lr_raw = 2.0 * (unrestricted.loglik - restricted.loglik);
          slots[j].ok = true;
        } catch (...) {
        }
      },
      opts.n_threads);

  LrNullResult res;
  res.regime = regime;
  int clipped = 0;
  for (const auto& s : slots) {
    if (!s.ok) {
      ++res.n_failed;
      continue;
    }
    if (s.lr_raw < 0.0) ++clipped;
    res.lr.push_back(std::max(s.lr_raw, 0.0));
  }
  res.clip_frequency = res.lr.empty() ? 0.0 : static_cast<double>(clipped) / res.lr.size();
  res.mean_lr = mean_of(res.lr);
  res.ks_chi2_1 = ks_distance(res.lr, [](double x) { return chi2_cdf(1.0, x); });
  return res;
}

inline std::vector<LrNullResult> run_lr_null(const std::vector<Regime>& regimes,
                                             const McOptions& opts = {}) {
  std::vector<LrNullResult> out;
  std::uint64_t stream = 0;
  for (Regime reg : regimes) {
    McOptions cell_opts = opts;
    cell_opts.seed = split_seed(opts.seed, 5000 + stream++);
    out.push_back(run_lr_null_cell(reg, cell_opts));
  }
  return out;
}

}  // namespace stsnow::mcsim
