#include <catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "stsnow/common/rng.hpp"
#include "stsnow/factors/pca.hpp"

using namespace stsnow;
using Catch::Approx;

namespace {

// Panel with I(1) factors, X = F Lambda' + noise. With idio_walk the noise is
// a random walk per series, so the differenced panel has iid idiosyncratics.
Eigen::MatrixXd factor_panel(Rng& rng, int T, int n, int r, double loading_scale,
                             double idio_sd, Eigen::MatrixXd* factors_out = nullptr,
                             bool idio_walk = false) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::MatrixXd F(T, r);
  for (int m = 0; m < r; ++m) {
    double f = 0.0;
    for (int t = 0; t < T; ++t) {
      f += gauss(rng);
      F(t, m) = f;
    }
  }
  Eigen::MatrixXd L(n, r);
  for (int i = 0; i < n; ++i)
    for (int m = 0; m < r; ++m) L(i, m) = loading_scale * unif(rng);
  Eigen::MatrixXd X = F * L.transpose();
  for (int i = 0; i < n; ++i) {
    double w = 0.0;
    for (int t = 0; t < T; ++t) {
      const double e = idio_sd * gauss(rng);
      w = idio_walk ? w + e : e;
      X(t, i) += w;
    }
  }
  if (factors_out) *factors_out = F;
  return X;
}

double abs_corr(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  Eigen::VectorXd ac = a.array() - a.mean();
  Eigen::VectorXd bc = b.array() - b.mean();
  return std::abs(ac.dot(bc)) / std::sqrt(ac.squaredNorm() * bc.squaredNorm());
}

}  // namespace

TEST_CASE("single-factor panel is recovered accurately") {
  auto rng = make_rng(571);
  Eigen::MatrixXd F;
  Eigen::MatrixXd X = factor_panel(rng, 150, 100, 1, 1.0, std::sqrt(0.5), &F);
  auto dec = factors::pca_nonstationary(X, 1);
  CHECK(abs_corr(dec.factors.col(0), F.col(0)) > 0.95);
}

TEST_CASE("degenerate one-series panel") {
  auto rng = make_rng(88);
  Eigen::MatrixXd X(60, 1);
  double f = 0.0;
  for (int t = 0; t < 60; ++t) {
    f += draw_normal(rng, 0.0, 2.5);
    X(t, 0) = f;
  }
  auto dec = factors::pca_nonstationary(X, 1);
  Eigen::VectorXd d = X.col(0).tail(59) - X.col(0).head(59);
  double sd = std::sqrt((d.array() - d.mean()).square().sum() / 58);
  CHECK(std::abs(dec.loadings(0, 0)) == Approx(sd).epsilon(1e-10));
  CHECK(dec.idio_var(0) < 1e-10);
  // factors = standardized cumulated differences
  CHECK(dec.factors(1, 0) - dec.factors(0, 0) ==
        Approx((d(0) - d.mean()) / sd).epsilon(1e-10));
}

TEST_CASE("scale equivariance under standardization") {
  auto rng = make_rng(909);
  Eigen::MatrixXd X = factor_panel(rng, 80, 20, 1, 1.0, 0.7);
  auto dec1 = factors::pca_nonstationary(X, 1);
  auto dec2 = factors::pca_nonstationary(2.0 * X, 1);
  CHECK((dec1.factors - dec2.factors).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((2.0 * dec1.loadings - dec2.loadings).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("standardized loadings are PCA-normalized") {
  auto rng = make_rng(4242);
  Eigen::MatrixXd X = factor_panel(rng, 120, 30, 2, 1.0, 0.8);
  auto dec = factors::pca_nonstationary(X, 2);
  Eigen::MatrixXd G = dec.loadings_std.transpose() * dec.loadings_std;
  CHECK(std::abs(G(0, 1)) < 1e-8 * G(0, 0));
  CHECK(G(0, 0) >= G(1, 1));
  // first non-negligible loading of each factor is nonnegative
  for (int m = 0; m < 2; ++m) {
    for (int i = 0; i < 30; ++i) {
      if (std::abs(dec.loadings_std(i, m)) > 1e-12) {
        CHECK(dec.loadings_std(i, m) > 0.0);
        break;
      }
    }
  }
}

TEST_CASE("cumulated factor differences reproduce the scores") {
  auto rng = make_rng(31415);
  Eigen::MatrixXd X = factor_panel(rng, 90, 25, 1, 1.0, 0.6);
  auto dec = factors::pca_nonstationary(X, 1);
  // delta f has unit sample variance by the identification convention
  Eigen::VectorXd df = dec.factors.col(0).tail(89) - dec.factors.col(0).head(89);
  double var = (df.array() - df.mean()).square().sum() / 88;
  CHECK(var == Approx(1.0).epsilon(1e-8));
}

TEST_CASE("determinism") {
  auto rng = make_rng(5);
  Eigen::MatrixXd X = factor_panel(rng, 70, 15, 1, 1.0, 0.5);
  auto a = factors::pca_nonstationary(X, 1);
  auto b = factors::pca_nonstationary(X, 1);
  CHECK(a.loadings == b.loadings);
  CHECK(a.factors == b.factors);
}

TEST_CASE("pca input validation") {
  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(50, 4);
  CHECK_THROWS_AS(factors::pca_nonstationary(X, 1), ConfigError);  // constant series
  auto rng = make_rng(6);
  Eigen::MatrixXd Y = factor_panel(rng, 40, 4, 1, 1.0, 0.5);
  CHECK_THROWS_AS(factors::pca_nonstationary(Y, 5), ConfigError);  // r > n
  Y(3, 2) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(factors::pca_nonstationary(Y, 1), ConfigError);  // missing cell
}

TEST_CASE("information criteria select the true factor count") {
  // Strong loadings: every series loads on exactly one factor with magnitude
  // bounded away from zero, random-walk idiosyncratics.
  auto rng = make_rng(777);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> strength(1.0, 2.0);
  int hits = 0;
  for (int rep = 0; rep < 10; ++rep) {
    const int T = 150, n = 100;
    Eigen::MatrixXd X(T, n);
    Eigen::VectorXd f1(T), f2(T);
    double a = 0.0, b = 0.0;
    for (int t = 0; t < T; ++t) {
      a += gauss(rng);
      b += gauss(rng);
      f1(t) = a;
      f2(t) = b;
    }
    for (int i = 0; i < n; ++i) {
      const double lam = strength(rng);
      double w = 0.0;
      for (int t = 0; t < T; ++t) {
        w += 0.5 * gauss(rng);
        X(t, i) = lam * (i < n / 2 ? f1(t) : f2(t)) + w;
      }
    }
    auto ic = factors::ic_bai_ng(X, 8);
    if (ic.r1 == 2 && ic.r2 == 2 && ic.r3 == 2) ++hits;
  }
  CHECK(hits >= 9);
}

TEST_CASE("information criteria stay small on pure noise") {
  auto rng = make_rng(778);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd X(150, 60);
  for (int i = 0; i < 60; ++i) {
    double w = 0.0;
    for (int t = 0; t < 150; ++t) {
      w += gauss(rng);
      X(t, i) = w;  // independent random walks: no common factor
    }
  }
  auto ic = factors::ic_bai_ng(X, 8);
  CHECK(ic.r2 <= 2);
}
