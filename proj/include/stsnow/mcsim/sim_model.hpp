#pragma once

// State space models and ML fitting for the Monte Carlo study. The auxiliary
// model carries the n-dimensional panel through its GLS projection onto the
// loading direction: with Lambda and Psi fixed, the scalar
//   x~_t = (Lambda' Psi^-1 x_t) / (Lambda' Psi^-1 Lambda)
// is sufficient for the states, the discarded component contributes a
// hyperparameter-free constant, and filtering results are identical to the
// full 1+n row model (tested in test_mcsim.cpp).

#include <Eigen/Dense>
#include <cmath>
#include <optional>

#include "stsnow/common/errors.hpp"
#include "stsnow/mle/optimizer.hpp"
#include "stsnow/ssm/filter.hpp"
#include "stsnow/ssm/model.hpp"

namespace stsnow::mcsim {

struct SimHyper {
  double sigma_R = 1.0;
  double sigma_eps_y = 0.5;
  double rho = 0.0;  // slope/factor innovation correlation (auxiliary model)
};

// y = L + eps, smooth trend: states (L, R).
inline ssm::StateSpaceModel build_sim_baseline(const SimHyper& hp, double diffuse_scale) {
  ssm::StateSpaceModel m;
  m.m = 2;
  m.p = 1;
  m.q = 1;
  m.Z.setZero(1, 2);
  m.Z(0, 0) = 1.0;
  m.T.resize(2, 2);
  m.T << 1, 1, 0, 1;
  m.R.setZero(2, 1);
  m.R(1, 0) = 1.0;
  m.Q = Eigen::MatrixXd::Constant(1, 1, hp.sigma_R * hp.sigma_R);
  m.h = Eigen::VectorXd::Constant(1, hp.sigma_eps_y * hp.sigma_eps_y);
  m.a1 = Eigen::VectorXd::Zero(2);
  m.init = {ssm::StateInit::diffuse(diffuse_scale), ssm::StateInit::diffuse(diffuse_scale)};
  return m;
}

// (y, x~) with states (L, R, f); x~ is the collapsed panel row.
inline ssm::StateSpaceModel build_sim_aux(const SimHyper& hp, double collapsed_noise_var,
                                          double diffuse_scale) {
  if (!(std::abs(hp.rho) < 1.0)) throw ParameterError("sim aux model: |rho| must be < 1");
  ssm::StateSpaceModel m;
  m.m = 3;
  m.p = 2;
  m.q = 2;
  m.Z.setZero(2, 3);
  m.Z(0, 0) = 1.0;
  m.Z(1, 2) = 1.0;
  m.T.setZero(3, 3);
  m.T << 1, 1, 0, 0, 1, 0, 0, 0, 1;
  m.R.setZero(3, 2);
  m.R(1, 0) = 1.0;
  m.R(2, 1) = 1.0;
  m.Q.resize(2, 2);
  m.Q << hp.sigma_R * hp.sigma_R, hp.rho * hp.sigma_R, hp.rho * hp.sigma_R, 1.0;
  m.h.resize(2);
  m.h << hp.sigma_eps_y * hp.sigma_eps_y, collapsed_noise_var;
  m.a1 = Eigen::VectorXd::Zero(3);
  m.init = {ssm::StateInit::diffuse(diffuse_scale), ssm::StateInit::diffuse(diffuse_scale),
            ssm::StateInit::diffuse(diffuse_scale)};
  return m;
}

// Uncollapsed variant: observation vector (y, x_1..x_n).
inline ssm::StateSpaceModel build_sim_aux_full(const SimHyper& hp,
                                               const Eigen::VectorXd& loadings,
                                               const Eigen::VectorXd& idio_var,
                                               double diffuse_scale) {
  const int n = static_cast<int>(loadings.size());
  ssm::StateSpaceModel m;
  m.m = 3;
  m.p = 1 + n;
  m.q = 2;
  m.Z.setZero(1 + n, 3);
  m.Z(0, 0) = 1.0;
  m.Z.col(2).tail(n) = loadings;
  m.T.resize(3, 3);
  m.T << 1, 1, 0, 0, 1, 0, 0, 0, 1;
  m.R.setZero(3, 2);
  m.R(1, 0) = 1.0;
  m.R(2, 1) = 1.0;
  m.Q.resize(2, 2);
  m.Q << hp.sigma_R * hp.sigma_R, hp.rho * hp.sigma_R, hp.rho * hp.sigma_R, 1.0;
  m.h.resize(1 + n);
  m.h(0) = hp.sigma_eps_y * hp.sigma_eps_y;
  m.h.tail(n) = idio_var;
  m.a1 = Eigen::VectorXd::Zero(3);
  m.init = {ssm::StateInit::diffuse(diffuse_scale), ssm::StateInit::diffuse(diffuse_scale),
            ssm::StateInit::diffuse(diffuse_scale)};
  return m;
}

// Collapse of the panel onto the loading direction, given first-step
// (Lambda, Psi). Returns the collapsed series, its measurement noise variance
// and the per-period log-density constant of the discarded component.
struct CollapsedPanel {
  Eigen::VectorXd series;     // T
  double noise_var = 0.0;     // (Lambda' Psi^-1 Lambda)^-1
  Eigen::VectorXd constants;  // T, hyperparameter-free loglik terms
};

inline CollapsedPanel collapse_panel(const Eigen::MatrixXd& x, const Eigen::VectorXd& loadings,
                                     const Eigen::VectorXd& idio_var) {
  const int T = static_cast<int>(x.rows());
  const int n = static_cast<int>(x.cols());
  Eigen::VectorXd w = loadings.cwiseQuotient(idio_var);  // Psi^-1 Lambda
  const double denom = w.dot(loadings);                  // Lambda' Psi^-1 Lambda
  if (!(denom > 0.0)) throw NumericalError("collapse: loadings orthogonal to the panel");
  CollapsedPanel c;
  c.noise_var = 1.0 / denom;
  c.series = (x * w) / denom;
  double logdet_psi = 0.0;
  for (int i = 0; i < n; ++i) logdet_psi += std::log(idio_var(i));
  const double base = (n - 1) * std::log(2.0 * M_PI) + logdet_psi + std::log(denom);
  c.constants.resize(T);
  for (int t = 0; t < T; ++t) {
    const double xwx = x.row(t).cwiseAbs2().dot(idio_var.cwiseInverse());
    const double proj = x.row(t).dot(w);
    c.constants(t) = -0.5 * (base + xwx - proj * proj / denom);
  }
  return c;
}

struct SimFit {
  SimHyper hp;
  double loglik = 0.0;
  bool converged = false;
  int iterations = 0;
};

inline double data_scale(const Eigen::MatrixXd& y) {
  double s = 1.0;
  for (int t = 0; t < y.rows(); ++t)
    for (int j = 0; j < y.cols(); ++j)
      if (!ssm::is_missing(y(t, j))) s = std::max(s, std::abs(y(t, j)));
  return s * s;
}

inline SimHyper moment_start(const Eigen::VectorXd& y) {
  // Var(dd y) = sigma_R^2 + 6 sigma_eps^2 under the smooth-trend model.
  std::vector<double> dd;
  for (int t = 2; t < y.size(); ++t)
    if (!ssm::is_missing(y(t)) && !ssm::is_missing(y(t - 1)) && !ssm::is_missing(y(t - 2)))
      dd.push_back(y(t) - 2.0 * y(t - 1) + y(t - 2));
  double v = 1.0;
  if (dd.size() > 2) {
    double m = 0.0;
    for (double d : dd) m += d;
    m /= dd.size();
    v = 0.0;
    for (double d : dd) v += (d - m) * (d - m);
    v /= dd.size() - 1;
  }
  SimHyper hp;
  hp.sigma_R = std::sqrt(std::max(v / 2.0, 1e-4));
  hp.sigma_eps_y = std::sqrt(std::max(v / 12.0, 1e-4));
  hp.rho = 0.0;
  return hp;
}

// Whether the fitted models carry a free measurement-error variance on y.
// The labour-force models place no white-noise term on the signal equation,
// and the study reproduces published accuracy tables only under that
// convention, so it is the default; `estimate_meas_var` fits the variance
// freely (the correctly specified model for this design).
inline SimFit fit_sim_baseline(const Eigen::VectorXd& y, const SimHyper& start,
                               bool estimate_meas_var = false,
                               const mle::OptimOptions& opts = {}) {
  const double scale = data_scale(y);
  auto objective = [&](const Eigen::VectorXd& th) {
    SimHyper hp;
    hp.sigma_R = std::exp(th(0));
    hp.sigma_eps_y = estimate_meas_var ? std::exp(th(1)) : 0.0;
    return ssm::loglik_at(build_sim_baseline(hp, scale), y);
  };
  Eigen::VectorXd x0(estimate_meas_var ? 2 : 1);
  x0(0) = std::log(std::max(start.sigma_R, 1e-6));
  if (estimate_meas_var) x0(1) = std::log(std::max(start.sigma_eps_y, 1e-6));
  auto r = mle::maximize(objective, x0, opts);
  SimFit fit;
  fit.hp.sigma_R = std::exp(r.x(0));
  fit.hp.sigma_eps_y = estimate_meas_var ? std::exp(r.x(1)) : 0.0;
  fit.loglik = r.f;
  fit.converged = r.converged;
  fit.iterations = r.iterations;
  return fit;
}

// Fit of the collapsed auxiliary model; `estimate_rho` off gives the
// restricted (rho = 0) fit used by the likelihood-ratio experiments. The
// reported loglik includes the collapse constants past the burn-in so it
// matches the full-panel model.
inline SimFit fit_sim_aux(const Eigen::VectorXd& y, const CollapsedPanel& panel,
                          const SimHyper& start, bool estimate_rho,
                          bool estimate_meas_var = false,
                          const mle::OptimOptions& opts = {}) {
  const int T = static_cast<int>(y.size());
  Eigen::MatrixXd obs(T, 2);
  obs.col(0) = y;
  obs.col(1) = panel.series;
  const double scale = data_scale(obs);
  double const_sum = 0.0;
  const int d_diffuse = 3;
  for (int t = d_diffuse; t < T; ++t) const_sum += panel.constants(t);

  auto objective = [&](const Eigen::VectorXd& th) {
    SimHyper hp;
    int k = 0;
    hp.sigma_R = std::exp(th(k++));
    hp.sigma_eps_y = estimate_meas_var ? std::exp(th(k++)) : 0.0;
    hp.rho = estimate_rho ? std::tanh(th(k)) : 0.0;
    return ssm::loglik_at(build_sim_aux(hp, panel.noise_var, scale), obs);
  };
  Eigen::VectorXd x0(1 + (estimate_meas_var ? 1 : 0) + (estimate_rho ? 1 : 0));
  int k = 0;
  x0(k++) = std::log(std::max(start.sigma_R, 1e-6));
  if (estimate_meas_var) x0(k++) = std::log(std::max(start.sigma_eps_y, 1e-6));
  if (estimate_rho) x0(k) = std::atanh(std::clamp(start.rho, -0.999, 0.999));
  auto r = mle::maximize(objective, x0, opts);
  SimFit fit;
  k = 0;
  fit.hp.sigma_R = std::exp(r.x(k++));
  fit.hp.sigma_eps_y = estimate_meas_var ? std::exp(r.x(k++)) : 0.0;
  fit.hp.rho = estimate_rho ? std::tanh(r.x(k)) : 0.0;
  fit.loglik = r.f + const_sum;
  fit.converged = r.converged;
  fit.iterations = r.iterations;
  return fit;
}

}  // namespace stsnow::mcsim
