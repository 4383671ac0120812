#include <catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cmath>

#include "stsnow/common/rng.hpp"
#include "stsnow/ssm/filter.hpp"
#include "stsnow/ssm/model.hpp"
#include "support/dense_gaussian.hpp"
#include "support/random_models.hpp"

using namespace stsnow;
using Catch::Approx;

namespace {

ssm::StateSpaceModel local_level(double q, double h, ssm::StateInit init) {
  ssm::StateSpaceModel m;
  m.m = m.p = m.q = 1;
  m.Z = Eigen::MatrixXd::Ones(1, 1);
  m.T = Eigen::MatrixXd::Ones(1, 1);
  m.R = Eigen::MatrixXd::Ones(1, 1);
  m.Q = Eigen::MatrixXd::Constant(1, 1, q);
  m.h = Eigen::VectorXd::Constant(1, h);
  m.a1 = Eigen::VectorXd::Zero(1);
  m.init = {init};
  return m;
}

}  // namespace

TEST_CASE("noiseless local level is exactly determined") {
  auto model = local_level(0.0, 0.0, ssm::StateInit::exact(0.0));
  model.a1(0) = 5.0;
  Eigen::MatrixXd y = Eigen::MatrixXd::Constant(8, 1, 5.0);
  auto out = ssm::filter(model, y);
  for (int t = 0; t < 8; ++t) CHECK(out.filtered_state(t, 0) == Approx(5.0));
  CHECK(out.loglik == Approx(0.0));
}

TEST_CASE("random walk plus noise matches the dense Gaussian oracle") {
  auto model = local_level(1.0, 1.0, ssm::StateInit::diffuse());
  auto rng = make_rng(42);
  Eigen::MatrixXd y(10, 1);
  double level = 3.0;
  for (int t = 0; t < 10; ++t) {
    level += draw_normal(rng);
    y(t, 0) = level + draw_normal(rng);
  }
  ssm::FilterOptions opts;
  auto out = ssm::filter(model, y, opts);
  long double oracle = testing::dense_gaussian_loglik(model, y, opts.kappa, out.d_diffuse);
  CHECK(std::abs(out.loglik - static_cast<double>(oracle)) < 1e-8);
}

TEST_CASE("missing observation reduces the update to a prediction") {
  auto model = local_level(1.0, 1.0, ssm::StateInit::diffuse());
  auto rng = make_rng(7);
  Eigen::MatrixXd y(10, 1);
  for (int t = 0; t < 10; ++t) y(t, 0) = draw_normal(rng, 0.0, 2.0);
  y(4, 0) = ssm::kMissing;
  auto out = ssm::filter(model, y);
  CHECK(out.filtered_state(4, 0) == out.predicted_state(4, 0));
  CHECK(out.filtered_cov[4] == out.predicted_cov[4]);
}

TEST_CASE("all-missing sample is pure prediction") {
  auto rng = make_rng(11);
  auto inst = testing::random_small_instance(rng, 3, 2, 6, 0.0);
  inst.y.setConstant(ssm::kMissing);
  auto out = ssm::filter(inst.model, inst.y);
  CHECK(out.filtered_state == out.predicted_state);
  CHECK(out.loglik == 0.0);
}

TEST_CASE("oracle agreement over random small instances") {
  auto rng = make_rng(123);
  for (int rep = 0; rep < 12; ++rep) {
    int m = 1 + static_cast<int>(rng() % 4);
    int p = 1 + static_cast<int>(rng() % 3);
    int T = 4 + static_cast<int>(rng() % 9);
    auto inst = testing::random_small_instance(rng, m, p, T, 0.25);
    double ll = ssm::loglik_at(inst.model, inst.y);
    long double oracle = testing::dense_gaussian_loglik(inst.model, inst.y, 1e7, 0);
    INFO("rep=" << rep << " m=" << m << " p=" << p << " T=" << T);
    CHECK(std::abs(ll - static_cast<double>(oracle)) < 1e-8);
  }
}

TEST_CASE("oracle agreement with diffuse states and burn-in") {
  auto rng = make_rng(321);
  for (int rep = 0; rep < 8; ++rep) {
    int m = 2 + static_cast<int>(rng() % 3);
    int p = 1 + static_cast<int>(rng() % 2);
    int T = 6 + static_cast<int>(rng() % 7);
    auto inst = testing::random_small_instance(rng, m, p, T, 0.15, 1 + static_cast<int>(rng() % 2));
    ssm::FilterOptions opts;
    auto out = ssm::filter(inst.model, inst.y, opts);
    long double oracle =
        testing::dense_gaussian_loglik(inst.model, inst.y, opts.kappa, out.d_diffuse);
    INFO("rep=" << rep << " m=" << m << " p=" << p << " T=" << T << " d=" << out.d_diffuse);
    CHECK(std::abs(out.loglik - static_cast<double>(oracle)) < 1e-8);
  }
}

TEST_CASE("exact diffuse recursion agrees with the large-kappa filter") {
  auto rng = make_rng(99);
  auto inst = testing::random_small_instance(rng, 3, 2, 40, 0.1, 2);
  ssm::FilterOptions exact;
  exact.exact_diffuse = true;
  ssm::FilterOptions approx;
  approx.kappa = 1e9;
  auto out_e = ssm::filter(inst.model, inst.y, exact);
  auto out_k = ssm::filter(inst.model, inst.y, approx);
  REQUIRE(out_e.d_diffuse == out_k.d_diffuse);
  for (int t = out_e.d_diffuse; t < 40; ++t) {
    for (int i = 0; i < 3; ++i) {
      CHECK(out_e.filtered_state(t, i) ==
            Approx(out_k.filtered_state(t, i)).margin(1e-8).epsilon(1e-8));
    }
  }
  CHECK(std::abs(out_e.loglik - out_k.loglik) < 1e-7);
}

TEST_CASE("update never increases state covariance") {
  auto rng = make_rng(55);
  auto inst = testing::random_small_instance(rng, 4, 3, 20, 0.2);
  auto out = ssm::filter(inst.model, inst.y);
  for (int t = 0; t < 20; ++t) {
    Eigen::MatrixXd diff = out.predicted_cov[t] - out.filtered_cov[t];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(diff, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() > -1e-8 * (1.0 + out.predicted_cov[t].trace()));
  }
}

TEST_CASE("loglik invariant to consistent permutation of observation columns") {
  auto rng = make_rng(77);
  auto inst = testing::random_small_instance(rng, 3, 3, 12, 0.15);
  double ll = ssm::loglik_at(inst.model, inst.y);

  std::vector<int> perm = {2, 0, 1};
  ssm::StateSpaceModel permuted = inst.model;
  Eigen::MatrixXd yp(inst.y.rows(), 3);
  for (int i = 0; i < 3; ++i) {
    permuted.Z.row(i) = inst.model.Z.row(perm[i]);
    permuted.h(i) = inst.model.h(perm[i]);
    yp.col(i) = inst.y.col(perm[i]);
  }
  CHECK(ssm::loglik_at(permuted, yp) == Approx(ll).margin(1e-9));
}

TEST_CASE("loglik drops when measurement noise is grossly inflated") {
  auto model = local_level(1.0, 0.1, ssm::StateInit::diffuse());
  auto rng = make_rng(31);
  Eigen::MatrixXd y(60, 1);
  double level = 0.0;
  for (int t = 0; t < 60; ++t) {
    level += draw_normal(rng);
    y(t, 0) = level + draw_normal(rng, 0.0, std::sqrt(0.1));
  }
  double ll_true = ssm::loglik_at(model, y);
  auto inflated = local_level(1.0, 10.0, ssm::StateInit::diffuse());
  CHECK(ssm::loglik_at(inflated, y) < ll_true);
}

TEST_CASE("standardized innovations: closed-form cases") {
  SECTION("scalar") {
    ssm::FilterOutput out;
    out.d_diffuse = 0;
    out.innovations = Eigen::MatrixXd::Constant(1, 1, 2.0);
    out.innovation_cov = {Eigen::MatrixXd::Constant(1, 1, 4.0)};
    CHECK(ssm::standardized_innovations(out)(0, 0) == Approx(1.0));
  }
  SECTION("diagonal bivariate") {
    ssm::FilterOutput out;
    out.d_diffuse = 0;
    out.innovations.resize(1, 2);
    out.innovations << 1.0, 3.0;
    Eigen::MatrixXd F(2, 2);
    F << 1.0, 0.0, 0.0, 9.0;
    out.innovation_cov = {F};
    auto s = ssm::standardized_innovations(out);
    CHECK(s(0, 0) == Approx(1.0));
    CHECK(s(0, 1) == Approx(1.0));
  }
}

TEST_CASE("standardized innovations have near-identity covariance") {
  auto rng = make_rng(2024);
  auto inst = testing::random_small_instance(rng, 3, 2, 500, 0.0);
  auto out = ssm::filter(inst.model, inst.y);
  auto s = ssm::standardized_innovations(out);
  Eigen::MatrixXd rows(500 - out.d_diffuse, 2);
  int k = 0;
  for (int t = out.d_diffuse; t < 500; ++t) rows.row(k++) = s.row(t);
  Eigen::MatrixXd centered = rows.rowwise() - rows.colwise().mean();
  Eigen::MatrixXd cov = centered.transpose() * centered / k;
  CHECK((cov - Eigen::MatrixXd::Identity(2, 2)).norm() < 0.15);
}
