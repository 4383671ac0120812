#pragma once

// Assembly of the labour-force state space models: the five-wave survey block
// with rotation-group-bias and autocorrelated survey errors, the optional
// claimant-counts block, and the Google-Trends factor block with its lagged,
// ARIMA and I(1)-idiosyncratic extensions.

#include <Eigen/Dense>
#include <cmath>
#include <memory>
#include <string>

#include "stsnow/common/errors.hpp"
#include "stsnow/lf/params.hpp"
#include "stsnow/ssm/model.hpp"

namespace stsnow::lf {

struct BuildOptions {
  double diffuse_scale = 1.0;  // multiplier on kappa for diffuse states
};

namespace detail {

// 2x2 seasonal rotation at frequency pi*l/6, plus the Nyquist state.
inline void fill_seasonal_transition(Eigen::MatrixXd& T, int off) {
  for (int l = 1; l <= 5; ++l) {
    const double h = M_PI * l / 6.0;
    const int i = off + 2 * (l - 1);
    T(i, i) = std::cos(h);
    T(i, i + 1) = std::sin(h);
    T(i + 1, i) = -std::sin(h);
    T(i + 1, i + 1) = std::cos(h);
  }
  T(off + 10, off + 10) = -1.0;
}

// Measurement pattern of a trend + seasonal block: level and the six cosine
// states.
inline void fill_trend_seasonal_row(Eigen::MatrixXd& Z, int row, int off) {
  Z(row, off) = 1.0;
  for (int l = 0; l < 6; ++l) Z(row, off + 2 + 2 * l) = 1.0;
}

inline void check_design_se(const Eigen::MatrixXd& c) {
  if (c.cols() != 5) throw DataError("design s.e. matrix must have 5 columns");
  for (int t = 0; t < c.rows(); ++t)
    for (int j = 0; j < 5; ++j)
      if (!std::isnan(c(t, j)) && !(c(t, j) > 0.0))
        throw DataError("nonpositive design s.e. at t=" + std::to_string(t) +
                        ", wave=" + std::to_string(j + 1));
}

// Correlation block of (eta_R_y, [eta_R_cc], u_1..u_r); rejects combinations
// that are not positive semidefinite.
inline void check_correlation_psd(const ModelSpec& spec, const HyperParams& hp) {
  const int k = 1 + (spec.include_cc ? 1 : 0) + (spec.include_gt ? spec.r : 0);
  if (k == 1) return;
  Eigen::MatrixXd C = Eigen::MatrixXd::Identity(k, k);
  int f0 = spec.include_cc ? 2 : 1;
  if (spec.include_cc) C(0, 1) = C(1, 0) = hp.rho_cc;
  if (spec.include_gt) {
    if (hp.rho_gt.size() != spec.r)
      throw ConfigError("hyperparams: rho_gt must have r entries");
    for (int m = 0; m < spec.r; ++m) C(0, f0 + m) = C(f0 + m, 0) = hp.rho_gt(m);
    if (hp.rho_cc_gt.size() > 0) {
      if (!spec.include_cc) throw ConfigError("hyperparams: rho_cc_gt requires the CC block");
      if (hp.rho_cc_gt.size() != spec.r)
        throw ConfigError("hyperparams: rho_cc_gt must have r entries");
      for (int m = 0; m < spec.r; ++m) C(1, f0 + m) = C(f0 + m, 1) = hp.rho_cc_gt(m);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(C, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) {
    std::string msg = "correlation parameters (rho_cc=" + std::to_string(hp.rho_cc);
    for (int m = 0; m < hp.rho_gt.size(); ++m)
      msg += ", rho_gt_" + std::to_string(m + 1) + "=" + std::to_string(hp.rho_gt(m));
    throw ParameterError(msg + ") give a non-PSD innovation block");
  }
}

inline void check_open_interval(double v, const char* name) {
  if (!(std::abs(v) < 1.0))
    throw ParameterError(std::string(name) + " must lie in (-1, 1)");
}

}  // namespace detail

// Assembles the state space model for any configuration of the family.
// Observation rows: 5 LFS waves, then the claimant counts, then the n GT
// series. The design standard errors c (T x 5) enter the measurement matrix
// through the time-varying survey-error columns; missing entries are replaced
// by 1 and the corresponding observations must be masked by the caller.
inline ssm::StateSpaceModel build(const ModelSpec& spec, const HyperParams& hp,
                                  const Eigen::MatrixXd& c, const BuildOptions& opts = {}) {
  spec.validate();
  detail::check_design_se(c);
  detail::check_open_interval(hp.delta, "delta");
  if (spec.include_cc) detail::check_open_interval(hp.rho_cc, "rho_cc");
  for (int m = 0; m < hp.rho_gt.size(); ++m) detail::check_open_interval(hp.rho_gt(m), "rho_gt");
  detail::check_correlation_psd(spec, hp);
  for (double s : {hp.sigma_R_y, hp.sigma_omega_y, hp.sigma_lambda, hp.sigma_L_y})
    if (!(s >= 0.0)) throw ParameterError("negative standard deviation");
  for (double s : hp.sigma_nu)
    if (!(s >= 0.0)) throw ParameterError("negative survey-error standard deviation");

  const StateLayout lay = layout_of(spec);
  const int m = lay.m;
  const int n_gt = spec.include_gt ? spec.n() : 0;
  const int p = 5 + (spec.include_cc ? 1 : 0) + n_gt;

  ssm::StateSpaceModel mod;
  mod.m = m;
  mod.p = p;
  mod.q = m;
  mod.T = Eigen::MatrixXd::Zero(m, m);
  mod.R = Eigen::MatrixXd::Identity(m, m);
  mod.Q = Eigen::MatrixXd::Zero(m, m);
  mod.Z = Eigen::MatrixXd::Zero(p, m);
  mod.h = Eigen::VectorXd::Zero(p);
  mod.a1 = Eigen::VectorXd::Zero(m);

  // --- LFS block transition ---
  mod.T(lay.L_y, lay.L_y) = 1.0;
  mod.T(lay.L_y, lay.R_y) = 1.0;
  mod.T(lay.R_y, lay.R_y) = 1.0;
  detail::fill_seasonal_transition(mod.T, lay.seasonal_y);
  for (int j = 0; j < 4; ++j) mod.T(lay.rgb + j, lay.rgb + j) = 1.0;
  // survey errors: e~_{j,t} = delta e~_{j-1,t-3} + nu_j
  const int sv = lay.survey;
  for (int j = 0; j < 4; ++j) mod.T(sv + 1 + j, sv + 5 + j) = hp.delta;
  for (int j = 0; j < 4; ++j) mod.T(sv + 5 + j, sv + 9 + j) = 1.0;
  for (int j = 0; j < 4; ++j) mod.T(sv + 9 + j, sv + j) = 1.0;

  // --- LFS block innovations ---
  mod.Q(lay.L_y, lay.L_y) = hp.sigma_L_y * hp.sigma_L_y;
  mod.Q(lay.R_y, lay.R_y) = hp.sigma_R_y * hp.sigma_R_y;
  for (int i = 0; i < 11; ++i)
    mod.Q(lay.seasonal_y + i, lay.seasonal_y + i) = hp.sigma_omega_y * hp.sigma_omega_y;
  for (int j = 0; j < 4; ++j)
    mod.Q(lay.rgb + j, lay.rgb + j) = hp.sigma_lambda * hp.sigma_lambda;
  for (int j = 0; j < 5; ++j) mod.Q(sv + j, sv + j) = hp.sigma_nu[j] * hp.sigma_nu[j];

  // --- LFS measurement ---
  for (int w = 0; w < 5; ++w) {
    detail::fill_trend_seasonal_row(mod.Z, w, lay.L_y);
    if (w >= 1) mod.Z(w, lay.rgb + (w - 1)) = 1.0;
    const double c0 = std::isnan(c(0, w)) ? 1.0 : c(0, w);
    mod.Z(w, sv + w) = c0;
  }

  // --- Claimant-counts block ---
  if (spec.include_cc) {
    const int cc = lay.cc;
    mod.T(cc, cc) = 1.0;
    mod.T(cc, cc + 1) = 1.0;
    mod.T(cc + 1, cc + 1) = 1.0;
    detail::fill_seasonal_transition(mod.T, cc + 2);
    mod.Q(cc, cc) = hp.sigma_L_cc * hp.sigma_L_cc;
    mod.Q(cc + 1, cc + 1) = hp.sigma_R_cc * hp.sigma_R_cc;
    for (int i = 0; i < 11; ++i)
      mod.Q(cc + 2 + i, cc + 2 + i) = hp.sigma_omega_cc * hp.sigma_omega_cc;
    mod.Q(lay.R_y, cc + 1) = mod.Q(cc + 1, lay.R_y) = hp.rho_cc * hp.sigma_R_y * hp.sigma_R_cc;
    detail::fill_trend_seasonal_row(mod.Z, 5, cc);
    mod.h(5) = hp.sigma_eps_cc * hp.sigma_eps_cc;
  }

  // --- Google-Trends factor block ---
  if (spec.include_gt) {
    const int f = lay.factor;
    const int gt_row0 = spec.include_cc ? 6 : 5;
    if (spec.factor_arima) {
      // States (f_{t-1}, df_t, phi2 df_{t-1}, phi3 df_{t-2} + gamma u_t);
      // innovation u enters twice, with loadings 1 and gamma.
      const auto& ar = *spec.factor_arima;
      mod.T(f, f) = 1.0;
      mod.T(f, f + 1) = 1.0;
      mod.T(f + 1, f + 1) = ar.phi1;
      mod.T(f + 1, f + 2) = 1.0;
      mod.T(f + 1, f + 3) = 1.0;
      mod.T(f + 2, f + 1) = ar.phi2;
      if (ar.phi2 != 0.0) mod.T(f + 3, f + 2) = ar.phi3 / ar.phi2;
      mod.Q(f + 1, f + 1) = 1.0;
      mod.Q(f + 1, f + 3) = mod.Q(f + 3, f + 1) = ar.gamma;
      mod.Q(f + 3, f + 3) = ar.gamma * ar.gamma;
      const double cross = hp.rho_gt(0) * hp.sigma_R_y;
      mod.Q(lay.R_y, f + 1) = mod.Q(f + 1, lay.R_y) = cross;
      mod.Q(lay.R_y, f + 3) = mod.Q(f + 3, lay.R_y) = ar.gamma * cross;
      for (int i = 0; i < n_gt; ++i) {
        mod.Z(gt_row0 + i, f) = spec.loadings(i, 0);
        mod.Z(gt_row0 + i, f + 1) = spec.loadings(i, 0);
      }
    } else if (spec.factor_lags > 0) {
      // States (f_t, f_{t-1}, ..., f_{t-q}); the slope picks up the lagged
      // factor innovations through kappa.
      const int q = spec.factor_lags;
      if (hp.kappa.size() != q)
        throw ConfigError("hyperparams: kappa must have q entries");
      mod.T(f, f) = 1.0;
      for (int j = 1; j <= q; ++j) mod.T(f + j, f + j - 1) = 1.0;
      mod.T(lay.R_y, f) = hp.kappa(0);
      for (int j = 2; j <= q; ++j) mod.T(lay.R_y, f + j - 1) = hp.kappa(j - 1) - hp.kappa(j - 2);
      mod.T(lay.R_y, f + q) = -hp.kappa(q - 1);
      mod.Q(f, f) = 1.0;
      mod.Q(lay.R_y, f) = mod.Q(f, lay.R_y) = hp.rho_gt(0) * hp.sigma_R_y;
      for (int i = 0; i < n_gt; ++i) mod.Z(gt_row0 + i, f) = spec.loadings(i, 0);
    } else {
      for (int k = 0; k < spec.r; ++k) {
        mod.T(f + k, f + k) = 1.0;
        mod.Q(f + k, f + k) = 1.0;
        mod.Q(lay.R_y, f + k) = mod.Q(f + k, lay.R_y) = hp.rho_gt(k) * hp.sigma_R_y;
        if (hp.rho_cc_gt.size() > 0)
          mod.Q(lay.R_cc(), f + k) = mod.Q(f + k, lay.R_cc()) =
              hp.rho_cc_gt(k) * hp.sigma_R_cc;
        for (int i = 0; i < n_gt; ++i) mod.Z(gt_row0 + i, f + k) = spec.loadings(i, k);
      }
    }

    // Idiosyncratic components: I(0) stays in the measurement noise, I(1)
    // becomes a random-walk state with a unit loading.
    int pos = lay.idio;
    for (int i = 0; i < n_gt; ++i) {
      const bool i1 = !spec.i1_idio_mask.empty() && spec.i1_idio_mask[i];
      if (i1) {
        mod.T(pos, pos) = 1.0;
        mod.Q(pos, pos) = spec.idio_var(i);
        mod.Z(gt_row0 + i, pos) = 1.0;
        mod.h(gt_row0 + i) = 0.0;
        ++pos;
      } else {
        mod.h(gt_row0 + i) = spec.idio_var(i);
      }
    }
  }

  // --- Initialization: survey-error states exact at their stationary
  // variances, everything else diffuse. ---
  mod.init.assign(m, ssm::StateInit::diffuse(opts.diffuse_scale));
  if (spec.factor_arima) {
    // States that are identically zero under the given coefficients.
    if (spec.factor_arima->phi2 == 0.0)
      mod.init[lay.factor + 2] = ssm::StateInit::exact(0.0);
    if (spec.factor_arima->phi3 == 0.0 && spec.factor_arima->gamma == 0.0)
      mod.init[lay.factor + 3] = ssm::StateInit::exact(0.0);
  }
  const double denom = 1.0 - hp.delta * hp.delta;
  auto nu_var = [&](int wave) {
    const double s2 = hp.sigma_nu[wave] * hp.sigma_nu[wave];
    return wave == 0 ? s2 : s2 / denom;
  };
  for (int j = 0; j < 5; ++j) mod.init[sv + j] = ssm::StateInit::exact(nu_var(j));
  for (int j = 0; j < 4; ++j) {
    mod.init[sv + 5 + j] = ssm::StateInit::exact(nu_var(j));
    mod.init[sv + 9 + j] = ssm::StateInit::exact(nu_var(j));
  }

  // Time-varying survey-error columns.
  auto cs = std::make_shared<Eigen::MatrixXd>(c);
  const int sv_col = sv;
  mod.z_patch = [cs, sv_col](int t, Eigen::MatrixXd& Z) {
    const int row = std::min<int>(t, cs->rows() - 1);
    for (int w = 0; w < 5; ++w) {
      const double v = (*cs)(row, w);
      Z(w, sv_col + w) = std::isnan(v) ? 1.0 : v;
    }
  };
  return mod;
}

inline ssm::StateSpaceModel build_baseline(const HyperParams& hp, const Eigen::MatrixXd& c,
                                           const BuildOptions& opts = {}) {
  return build(ModelSpec{}, hp, c, opts);
}

inline ssm::StateSpaceModel build_with_cc(const HyperParams& hp, const Eigen::MatrixXd& c,
                                          const BuildOptions& opts = {}) {
  ModelSpec spec;
  spec.include_cc = true;
  return build(spec, hp, c, opts);
}

inline ssm::StateSpaceModel build_with_gt(const ModelSpec& base, const HyperParams& hp,
                                          const Eigen::MatrixXd& c, const BuildOptions& opts = {}) {
  ModelSpec spec = base;
  spec.include_cc = false;
  spec.include_gt = true;
  return build(spec, hp, c, opts);
}

inline ssm::StateSpaceModel build_full(const ModelSpec& base, const HyperParams& hp,
                                       const Eigen::MatrixXd& c, const BuildOptions& opts = {}) {
  ModelSpec spec = base;
  spec.include_cc = true;
  spec.include_gt = true;
  return build(spec, hp, c, opts);
}

}  // namespace stsnow::lf
