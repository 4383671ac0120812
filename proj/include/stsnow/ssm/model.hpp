#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "stsnow/common/errors.hpp"

namespace stsnow::ssm {

// Initialization of one state element. Diffuse states get a prior variance of
// kappa * scale (kappa is a filter option); exact states get the given finite
// variance.
struct StateInit {
  enum class Kind { Diffuse, Exact };
  Kind kind = Kind::Diffuse;
  double variance = 0.0;  // exact prior variance (Exact only)
  double scale = 1.0;     // multiplier on kappa (Diffuse only)

  static StateInit diffuse(double scale = 1.0) { return {Kind::Diffuse, 0.0, scale}; }
  static StateInit exact(double variance) { return {Kind::Exact, variance, 1.0}; }
};

// Linear-Gaussian state space model
//
//   y_t     = Z_t alpha_t + eps_t,   eps_t ~ N(0, diag(h))
//   alpha_t = T alpha_{t-1} + R eta_t,   eta_t ~ N(0, Q)
//
// Z may vary over time through `z_patch`, which rewrites the time-varying
// cells of a caller-owned copy of Z. The model is immutable once built and
// safe to share across threads (z_patch must be pure).
struct StateSpaceModel {
  int m = 0;  // state dimension
  int p = 0;  // observation dimension
  int q = 0;  // innovation dimension

  Eigen::MatrixXd Z;       // p x m
  Eigen::MatrixXd T;       // m x m
  Eigen::MatrixXd R;       // m x q
  Eigen::MatrixXd Q;       // q x q, symmetric PSD
  Eigen::VectorXd h;       // p, diagonal of the measurement covariance
  Eigen::VectorXd a1;      // m, initial state mean
  std::vector<StateInit> init;

  // Optional: rewrite the time-varying entries of Z (0-based time index).
  std::function<void(int, Eigen::MatrixXd&)> z_patch;

  bool time_varying() const { return static_cast<bool>(z_patch); }

  int num_diffuse() const {
    int d = 0;
    for (const auto& s : init)
      if (s.kind == StateInit::Kind::Diffuse) ++d;
    return d;
  }

  // RQR' (state innovation covariance in state coordinates).
  Eigen::MatrixXd state_innovation_cov() const { return R * Q * R.transpose(); }

  void validate() const {
    auto fail = [](const std::string& msg) { throw ConfigError("state space model: " + msg); };
    if (m <= 0 || p <= 0 || q < 0) fail("nonpositive dimension");
    if (Z.rows() != p || Z.cols() != m) fail("Z must be p x m");
    if (T.rows() != m || T.cols() != m) fail("T must be m x m");
    if (R.rows() != m || R.cols() != q) fail("R must be m x q");
    if (Q.rows() != q || Q.cols() != q) fail("Q must be q x q");
    if (h.size() != p) fail("h must have length p");
    if (a1.size() != m) fail("a1 must have length m");
    if (static_cast<int>(init.size()) != m) fail("init must have length m");
    if (q > 0 && !Q.isApprox(Q.transpose(), 1e-12)) fail("Q must be symmetric");
    for (int i = 0; i < p; ++i)
      if (h(i) < -1e-10) fail("negative measurement variance at row " + std::to_string(i));
    if (q > 0) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Q, Eigen::EigenvaluesOnly);
      double scale = std::max(1.0, Q.diagonal().cwiseAbs().maxCoeff());
      if (es.eigenvalues().minCoeff() < -1e-10 * scale)
        fail("Q is not positive semidefinite");
    }
    for (const auto& s : init) {
      if (s.kind == StateInit::Kind::Exact && !(s.variance >= 0.0 && std::isfinite(s.variance)))
        fail("exact initialization requires a finite nonnegative variance");
      if (s.kind == StateInit::Kind::Diffuse && !(s.scale > 0.0 && std::isfinite(s.scale)))
        fail("diffuse initialization requires a positive finite scale");
    }
  }
};

}  // namespace stsnow::ssm
