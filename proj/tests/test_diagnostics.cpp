#include <catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <random>

#include "stsnow/common/rng.hpp"
#include "stsnow/diagnostics/normality.hpp"
#include "support/random_models.hpp"

using namespace stsnow;
using namespace stsnow::diagnostics;
using Catch::Approx;

TEST_CASE("shapiro-wilk size at the paper's sample length") {
  int rejections = 0;
  const int reps = 1000;
  for (int r = 0; r < reps; ++r) {
    auto rng = make_rng(31, r);
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::VectorXd x(167);
    for (int i = 0; i < 167; ++i) x(i) = g(rng);
    if (shapiro_wilk(x).p_value <= 0.05) ++rejections;
  }
  CHECK(rejections / 1000.0 == Approx(0.05).margin(0.02));
}

TEST_CASE("shapiro-wilk power against exponential samples") {
  int rejections = 0;
  const int reps = 200;
  for (int r = 0; r < reps; ++r) {
    auto rng = make_rng(32, r);
    std::exponential_distribution<double> e(1.0);
    Eigen::VectorXd x(167);
    for (int i = 0; i < 167; ++i) x(i) = e(rng);
    if (shapiro_wilk(x).p_value <= 0.05) ++rejections;
  }
  CHECK(rejections >= 190);
}

TEST_CASE("symmetric three-point sample is not rejected") {
  Eigen::VectorXd x(3);
  x << -1.0, 0.0, 1.0;
  auto r = shapiro_wilk(x);
  CHECK(r.statistic > 0.95);
  CHECK(r.p_value > 0.5);
}

TEST_CASE("bowman-shenton closed forms") {
  SECTION("zero skew and kurtosis three gives statistic zero") {
    // symmetric ten-point sample (+-1 four times, +-b once) with b solving
    // m4 = 3 m2^2, i.e. b^4 - 12 b^2 - 14 = 0
    const double b = std::sqrt(6.0 + std::sqrt(50.0));
    Eigen::VectorXd x(10);
    x << -b, -1, -1, -1, -1, 1, 1, 1, 1, b;
    auto r = bowman_shenton(x);
    CHECK(r.statistic == Approx(0.0).margin(1e-9));
    CHECK(r.p_value == Approx(1.0).margin(1e-9));
  }
  SECTION("affine invariance") {
    auto rng = make_rng(33);
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::VectorXd x(80);
    for (int i = 0; i < 80; ++i) x(i) = g(rng);
    auto r1 = bowman_shenton(x);
    auto r2 = bowman_shenton((x.array() * 7.5 + 3.0).matrix());
    CHECK(r1.statistic == Approx(r2.statistic).epsilon(1e-10));
  }
}

TEST_CASE("bowman-shenton detects heavy tails") {
  int rejections = 0;
  const int reps = 200;
  for (int r = 0; r < reps; ++r) {
    auto rng = make_rng(34, r);
    std::student_t_distribution<double> t4(4.0);
    Eigen::VectorXd x(500);
    for (int i = 0; i < 500; ++i) x(i) = t4(rng);
    if (bowman_shenton(x).p_value <= 0.05) ++rejections;
  }
  CHECK(rejections >= 180);
}

TEST_CASE("both tests are location-scale invariant in p") {
  auto rng = make_rng(35);
  std::exponential_distribution<double> e(1.0);
  Eigen::VectorXd x(60);
  for (int i = 0; i < 60; ++i) x(i) = e(rng);
  Eigen::VectorXd y = (x.array() * 11.0 - 4.0).matrix();
  CHECK(shapiro_wilk(x).p_value == Approx(shapiro_wilk(y).p_value).epsilon(1e-9));
  CHECK(bowman_shenton(x).p_value == Approx(bowman_shenton(y).p_value).epsilon(1e-9));
}

TEST_CASE("p-values are near-uniform under the null") {
  const int reps = 1000;
  std::vector<double> ps;
  for (int r = 0; r < reps; ++r) {
    auto rng = make_rng(36, r);
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::VectorXd x(120);
    for (int i = 0; i < 120; ++i) x(i) = g(rng);
    ps.push_back(shapiro_wilk(x).p_value);
  }
  CHECK(ks_distance(ps, [](double u) { return std::clamp(u, 0.0, 1.0); }) < 0.05);
}

TEST_CASE("residual normality report on a correctly specified model") {
  auto rng = make_rng(37);
  auto inst = testing::random_small_instance(rng, 3, 3, 400, 0.05);
  auto out = ssm::filter(inst.model, inst.y);
  auto rows = residual_normality_report(out);
  REQUIRE(rows.size() == 3);
  int rejections = 0;
  for (const auto& row : rows) {
    CHECK(row.n > 300);
    if (row.sw_p <= 0.05) ++rejections;
    if (row.bs_p <= 0.05) ++rejections;
  }
  CHECK(rejections <= 2);
}

TEST_CASE("empty input gives an empty report") {
  ssm::FilterOutput out;
  CHECK(residual_normality_report(out).empty());
}

TEST_CASE("input validation") {
  Eigen::VectorXd tiny(2);
  tiny << 0.0, 1.0;
  CHECK_THROWS_AS(shapiro_wilk(tiny), ConfigError);
  Eigen::VectorXd flat = Eigen::VectorXd::Constant(30, 2.0);
  CHECK_THROWS_AS(shapiro_wilk(flat), DataError);
  CHECK_THROWS_AS(bowman_shenton(flat), DataError);
}
