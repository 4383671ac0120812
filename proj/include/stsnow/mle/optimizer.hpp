#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "stsnow/common/parallel.hpp"

namespace stsnow::mle {

using ObjectiveFn = std::function<double(const Eigen::VectorXd&)>;

struct OptimOptions {
  int max_iterations = 500;
  double grad_tol = 1e-5;
  double rel_f_tol = 1e-9;
  double fd_step = 1e-5;    // relative central-difference step
  unsigned n_threads = 1;   // objective evaluations inside one gradient
  bool keep_trace = false;
};

struct OptimResult {
  Eigen::VectorXd x;
  double f = -std::numeric_limits<double>::infinity();
  bool converged = false;
  int iterations = 0;
  double grad_norm = std::numeric_limits<double>::infinity();
  std::vector<double> trace;
};

namespace detail {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// f wrapped so that exceptions and non-finite values count as infeasible.
inline double safe_eval(const ObjectiveFn& f, const Eigen::VectorXd& x) {
  try {
    const double v = f(x);
    return std::isfinite(v) ? v : kNegInf;
  } catch (...) {
    return kNegInf;
  }
}

// Central finite differences, falling back to one-sided at infeasible probes.
inline Eigen::VectorXd fd_gradient(const ObjectiveFn& f, const Eigen::VectorXd& x,
                                   double f0, double rel_step, unsigned n_threads) {
  const int n = static_cast<int>(x.size());
  Eigen::VectorXd g(n);
  std::vector<double> plus(n), minus(n), steps(n);
  parallel_for(
      static_cast<std::size_t>(2 * n),
      [&](std::size_t k) {
        const int i = static_cast<int>(k / 2);
        const double h = rel_step * (1.0 + std::abs(x(i)));
        steps[i] = h;
        Eigen::VectorXd xp = x;
        if (k % 2 == 0) {
          xp(i) += h;
          plus[i] = safe_eval(f, xp);
        } else {
          xp(i) -= h;
          minus[i] = safe_eval(f, xp);
        }
      },
      n_threads);
  for (int i = 0; i < n; ++i) {
    const double h = steps[i];
    if (std::isfinite(plus[i]) && std::isfinite(minus[i]))
      g(i) = (plus[i] - minus[i]) / (2.0 * h);
    else if (std::isfinite(plus[i]))
      g(i) = (plus[i] - f0) / h;
    else if (std::isfinite(minus[i]))
      g(i) = (f0 - minus[i]) / h;
    else
      g(i) = 0.0;
  }
  return g;
}

}  // namespace detail

// BFGS maximization with finite-difference gradients and a backtracking line
// search. Infeasible points (exceptions, non-finite objective) behave as
// -infinity, so feasibility constraints act as a barrier.
inline OptimResult maximize(const ObjectiveFn& f, const Eigen::VectorXd& x0,
                            const OptimOptions& opts = {}) {
  const int n = static_cast<int>(x0.size());
  OptimResult res;
  res.x = x0;
  res.f = detail::safe_eval(f, x0);
  if (!std::isfinite(res.f)) return res;  // infeasible start
  if (opts.keep_trace) res.trace.push_back(res.f);
  if (n == 0) {
    res.converged = true;
    res.grad_norm = 0.0;
    return res;
  }

  Eigen::MatrixXd Hinv = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd g = detail::fd_gradient(f, res.x, res.f, opts.fd_step, opts.n_threads);

  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    res.iterations = iter + 1;
    res.grad_norm = g.norm();
    if (res.grad_norm < opts.grad_tol) {
      res.converged = true;
      return res;
    }

    Eigen::VectorXd dir = Hinv * g;
    if (dir.dot(g) <= 0.0) {  // not an ascent direction; reset
      Hinv.setIdentity();
      dir = g;
    }

    double step = 1.0;
    double f_new = detail::kNegInf;
    Eigen::VectorXd x_new;
    const double slope = dir.dot(g);
    for (int ls = 0; ls < 60; ++ls) {
      x_new = res.x + step * dir;
      f_new = detail::safe_eval(f, x_new);
      if (std::isfinite(f_new) && f_new >= res.f + 1e-4 * step * slope) break;
      step *= 0.5;
      f_new = detail::kNegInf;
    }
    if (!std::isfinite(f_new)) {
      // No improving step along the BFGS direction; try steepest ascent once.
      if (!Hinv.isIdentity(1e-14)) {
        Hinv.setIdentity();
        continue;
      }
      res.converged = res.grad_norm < 10.0 * opts.grad_tol;
      return res;
    }

    Eigen::VectorXd g_new = detail::fd_gradient(f, x_new, f_new, opts.fd_step, opts.n_threads);
    Eigen::VectorXd s = x_new - res.x;
    Eigen::VectorXd yv = g_new - g;  // gradient change (note: maximizing)

    const double rel_change = std::abs(f_new - res.f) / (1.0 + std::abs(f_new));
    res.x = x_new;
    res.f = f_new;
    g = g_new;
    if (opts.keep_trace) res.trace.push_back(res.f);
    if (rel_change < opts.rel_f_tol) {
      res.grad_norm = g.norm();
      res.converged = true;
      return res;
    }

    const double sy = -s.dot(yv);  // positive for a concave objective
    if (sy > 1e-12 * s.norm() * yv.norm()) {
      // Inverse-Hessian update for maximization: use y~ = -yv so the usual
      // minimization form applies.
      Eigen::VectorXd yt = -yv;
      const double rho = 1.0 / sy;
      Eigen::MatrixXd V = Eigen::MatrixXd::Identity(n, n) - rho * s * yt.transpose();
      Hinv = V * Hinv * V.transpose() + rho * s * s.transpose();
    }
  }
  res.grad_norm = g.norm();
  return res;  // converged stays false
}

}  // namespace stsnow::mle
