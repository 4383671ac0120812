#pragma once

// Draws observation panels from a StateSpaceModel (test support).

#include <Eigen/Dense>
#include <random>

#include "stsnow/common/rng.hpp"
#include "stsnow/ssm/model.hpp"

namespace stsnow::testing {

inline Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& A) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  Eigen::VectorXd d = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * d.asDiagonal();
}

struct SimulatedPath {
  Eigen::MatrixXd y;       // T x p
  Eigen::MatrixXd states;  // T x m
};

// Diffuse states start at a1 + N(0, diffuse_sd^2); exact states at their
// stated variances.
inline SimulatedPath simulate_model(const ssm::StateSpaceModel& model, int T, Rng& rng,
                                    double diffuse_sd = 1.0) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int m = model.m, p = model.p, q = model.q;
  Eigen::MatrixXd qchol = psd_sqrt(model.Q);
  Eigen::VectorXd alpha(m);
  for (int i = 0; i < m; ++i) {
    const auto& s = model.init[i];
    const double sd =
        s.kind == ssm::StateInit::Kind::Exact ? std::sqrt(s.variance) : diffuse_sd;
    alpha(i) = model.a1(i) + sd * gauss(rng);
  }
  SimulatedPath path;
  path.y.resize(T, p);
  path.states.resize(T, m);
  Eigen::MatrixXd Z = model.Z;
  Eigen::VectorXd eta(q);
  for (int t = 0; t < T; ++t) {
    if (t > 0) {
      for (int i = 0; i < q; ++i) eta(i) = gauss(rng);
      alpha = model.T * alpha + model.R * (qchol * eta);
    }
    path.states.row(t) = alpha.transpose();
    if (model.z_patch) model.z_patch(t, Z);
    for (int i = 0; i < p; ++i)
      path.y(t, i) = Z.row(i).dot(alpha) + std::sqrt(model.h(i)) * gauss(rng);
  }
  return path;
}

}  // namespace stsnow::testing
