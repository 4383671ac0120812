#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "stsnow/common/errors.hpp"
#include "stsnow/ssm/model.hpp"

namespace stsnow::ssm {

inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

inline bool is_missing(double v) { return std::isnan(v); }

struct FilterOptions {
  // Diffuse states start with prior variance kappa * init.scale unless
  // exact_diffuse is set, in which case the exact diffuse recursion is used.
  double kappa = 1e7;
  bool exact_diffuse = false;

  enum class StoreCov { None, Last, All };
  StoreCov store_cov = StoreCov::All;
  bool store_series = true;  // states, innovations, innovation covariances
};

struct FilterOutput {
  Eigen::MatrixXd filtered_state;   // T x m, a_{t|t}
  Eigen::MatrixXd predicted_state;  // T x m, a_{t|t-1}
  std::vector<Eigen::MatrixXd> filtered_cov;   // P_{t|t}
  std::vector<Eigen::MatrixXd> predicted_cov;  // P_{t|t-1}
  Eigen::MatrixXd innovations;                 // T x p, NaN where y missing
  std::vector<Eigen::MatrixXd> innovation_cov; // F_t, p x p (all rows)
  Eigen::VectorXd loglik_terms;                // per-period contributions, all t
  double loglik = 0.0;
  int d_diffuse = 0;     // burn-in periods excluded from loglik
  int diffuse_end = 0;   // exact mode: first t with no remaining diffuse direction
};

namespace detail {

// Scalar measurement update shared by both initialization modes. Returns the
// loglik contribution, or 0 for a degenerate row (F ~ 0, v ~ 0).
inline double scalar_update(const Eigen::RowVectorXd& z, double yv, double hii,
                            Eigen::VectorXd& a, Eigen::MatrixXd& P,
                            Eigen::VectorXd& pz, int t) {
  pz.noalias() = P * z.transpose();
  const double f = z.dot(pz) + hii;
  const double v = yv - z.dot(a);
  const double f_floor = 1e-12 * (P.trace() / P.rows() + hii + 1.0);
  if (f <= f_floor) {
    if (std::abs(v) <= 1e-6 * (1.0 + std::abs(yv)))
      return 0.0;  // exactly determined row, consistent observation
    throw NumericalError("filter degeneracy: singular innovation variance at t=" +
                         std::to_string(t));
  }
  const double inv_f = 1.0 / f;
  a.noalias() += pz * (v * inv_f);
  P.noalias() -= pz * (pz.transpose() * inv_f);
  P = 0.5 * (P + P.transpose());
  return -0.5 * (std::log(2.0 * M_PI) + std::log(f) + v * v * inv_f);
}

// Exact-diffuse scalar update (univariate treatment of the initial steps).
inline double scalar_update_diffuse(const Eigen::RowVectorXd& z, double yv, double hii,
                                    Eigen::VectorXd& a, Eigen::MatrixXd& Pstar,
                                    Eigen::MatrixXd& Pinf, Eigen::VectorXd& mstar,
                                    Eigen::VectorXd& minf, int t) {
  minf.noalias() = Pinf * z.transpose();
  const double f_inf = z.dot(minf);
  if (f_inf <= 1e-10 * (Pinf.trace() / Pinf.rows() + 1.0)) {
    return scalar_update(z, yv, hii, a, Pstar, mstar, t);
  }
  mstar.noalias() = Pstar * z.transpose();
  const double f_star = z.dot(mstar) + hii;
  const double v = yv - z.dot(a);
  const double inv_finf = 1.0 / f_inf;
  Eigen::VectorXd k0 = minf * inv_finf;
  a.noalias() += k0 * v;
  Pstar.noalias() += k0 * (k0.transpose() * f_star);
  Pstar.noalias() -= k0 * mstar.transpose();
  Pstar.noalias() -= mstar * k0.transpose();
  Pstar = 0.5 * (Pstar + Pstar.transpose());
  Pinf.noalias() -= minf * (minf.transpose() * inv_finf);
  Pinf = 0.5 * (Pinf + Pinf.transpose());
  return -0.5 * (std::log(2.0 * M_PI) + std::log(f_inf));
}

}  // namespace detail

// Kalman filter with row-wise (sequential) processing of each observation
// vector; valid because the measurement covariance is diagonal. Missing cells
// are skipped. The log-likelihood excludes the first d_diffuse periods.
inline FilterOutput filter(const StateSpaceModel& model, const Eigen::MatrixXd& y,
                           const FilterOptions& opts = {}) {
  model.validate();
  const int T = static_cast<int>(y.rows());
  const int m = model.m;
  const int p = model.p;
  if (y.cols() != p)
    throw ConfigError("filter: y has " + std::to_string(y.cols()) +
                      " columns, model expects " + std::to_string(p));

  FilterOutput out;
  out.d_diffuse = model.num_diffuse();
  out.diffuse_end = 0;

  Eigen::VectorXd a = model.a1;
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(m, m);
  Eigen::MatrixXd Pinf;
  bool diffuse_phase = false;
  for (int i = 0; i < m; ++i) {
    const auto& s = model.init[i];
    if (s.kind == StateInit::Kind::Exact) {
      P(i, i) = s.variance;
    } else if (opts.exact_diffuse) {
      if (Pinf.size() == 0) Pinf = Eigen::MatrixXd::Zero(m, m);
      Pinf(i, i) = 1.0;
      diffuse_phase = true;
    } else {
      P(i, i) = opts.kappa * s.scale;
    }
  }

  const Eigen::MatrixXd RQR = model.state_innovation_cov();
  Eigen::MatrixXd Zt = model.Z;

  const bool store = opts.store_series;
  if (store) {
    out.filtered_state.resize(T, m);
    out.predicted_state.resize(T, m);
    out.innovations.setConstant(T, p, kMissing);
    out.innovation_cov.resize(T);
    out.loglik_terms.setZero(T);
  }
  if (opts.store_cov == FilterOptions::StoreCov::All) {
    out.filtered_cov.resize(T);
    out.predicted_cov.resize(T);
  }

  Eigen::VectorXd pz(m), minf(m), a_pred(m);
  Eigen::RowVectorXd zrow(m);
  double loglik = 0.0;

  for (int t = 0; t < T; ++t) {
    if (model.z_patch) model.z_patch(t, Zt);

    if (store) {
      a_pred = a;
      out.predicted_state.row(t) = a.transpose();
      Eigen::MatrixXd Ffull = Zt * P * Zt.transpose();
      if (diffuse_phase) Ffull.noalias() += opts.kappa * Zt * Pinf * Zt.transpose();
      Ffull.diagonal() += model.h;
      out.innovation_cov[t] = Ffull;
    }
    if (opts.store_cov == FilterOptions::StoreCov::All) out.predicted_cov[t] = P;

    double ll_t = 0.0;
    for (int i = 0; i < p; ++i) {
      const double yv = y(t, i);
      if (is_missing(yv)) continue;
      zrow = Zt.row(i);
      if (store) out.innovations(t, i) = yv - zrow.dot(a_pred);
      if (diffuse_phase) {
        ll_t += detail::scalar_update_diffuse(zrow, yv, model.h(i), a, P, Pinf, pz, minf, t);
        if (Pinf.trace() < 1e-9) {
          diffuse_phase = false;
          out.diffuse_end = t + 1;
        }
      } else {
        ll_t += detail::scalar_update(zrow, yv, model.h(i), a, P, pz, t);
      }
    }
    if (store) out.loglik_terms(t) = ll_t;
    if (t >= out.d_diffuse) loglik += ll_t;

    if (store) out.filtered_state.row(t) = a.transpose();
    if (opts.store_cov == FilterOptions::StoreCov::All) out.filtered_cov[t] = P;
    if (opts.store_cov == FilterOptions::StoreCov::Last && t == T - 1) {
      out.filtered_cov.assign(1, P);
      if (!store) {
        out.filtered_state.resize(1, m);
        out.filtered_state.row(0) = a.transpose();
      }
    }

    if (t + 1 < T) {
      a = model.T * a;
      P = model.T * P * model.T.transpose() + RQR;
      P = 0.5 * (P + P.transpose());
      if (diffuse_phase) {
        Pinf = model.T * Pinf * model.T.transpose();
        Pinf = 0.5 * (Pinf + Pinf.transpose());
      }
    }
  }
  if (diffuse_phase) out.diffuse_end = T;
  out.loglik = loglik;
  return out;
}

inline double loglik_at(const StateSpaceModel& model, const Eigen::MatrixXd& y,
                        const FilterOptions& base = {}) {
  FilterOptions opts = base;
  opts.store_series = false;
  opts.store_cov = FilterOptions::StoreCov::None;
  return filter(model, y, opts).loglik;
}

// Standardized one-step-ahead innovations: v~_t = B_t v_t with F_t^{-1} =
// B_t' B_t, B_t from the Cholesky factor of F_t restricted to observed rows.
// Rows before the burn-in and missing cells stay NaN.
inline Eigen::MatrixXd standardized_innovations(const FilterOutput& out) {
  const int T = static_cast<int>(out.innovations.rows());
  const int p = static_cast<int>(out.innovations.cols());
  Eigen::MatrixXd res = Eigen::MatrixXd::Constant(T, p, kMissing);
  std::vector<int> idx;
  for (int t = out.d_diffuse; t < T; ++t) {
    idx.clear();
    for (int i = 0; i < p; ++i)
      if (!is_missing(out.innovations(t, i))) idx.push_back(i);
    if (idx.empty()) continue;
    const int k = static_cast<int>(idx.size());
    Eigen::MatrixXd F(k, k);
    Eigen::VectorXd v(k);
    for (int r = 0; r < k; ++r) {
      v(r) = out.innovations(t, idx[r]);
      for (int c = 0; c < k; ++c) F(r, c) = out.innovation_cov[t](idx[r], idx[c]);
    }
    F.diagonal().array() += 1e-12 * F.trace() / k;
    Eigen::LLT<Eigen::MatrixXd> llt(F);
    if (llt.info() != Eigen::Success)
      throw NumericalError("standardized innovations: F_t singular at t=" + std::to_string(t));
    Eigen::VectorXd s = llt.matrixL().solve(v);
    for (int r = 0; r < k; ++r) res(t, idx[r]) = s(r);
  }
  return res;
}

}  // namespace stsnow::ssm
