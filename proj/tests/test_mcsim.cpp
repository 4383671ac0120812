#include <catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cmath>

#include "stsnow/mcsim/dgp.hpp"
#include "stsnow/mcsim/sim_model.hpp"
#include "stsnow/mcsim/study.hpp"

using namespace stsnow;
using namespace stsnow::mcsim;
using Catch::Approx;

TEST_CASE("dgp rejects correlation outside the open interval") {
  DgpSpec spec;
  spec.rho = 1.0;
  CHECK_THROWS_AS(simulate_dgp(spec), ParameterError);
  spec.rho = -1.0;
  CHECK_THROWS_AS(simulate_dgp(spec), ParameterError);
}

TEST_CASE("dgp innovation correlation matches rho") {
  const double rho = 0.6;
  double corr_sum = 0.0;
  const int reps = 500;
  for (int j = 0; j < reps; ++j) {
    DgpSpec spec;
    spec.rho = rho;
    spec.seed = split_seed(11, j);
    SimData d = simulate_dgp(spec);
    Eigen::VectorXd eta(d.slope.size()), u(d.factor.size());
    eta(0) = d.slope(0);
    u(0) = d.factor(0);
    for (int t = 1; t < d.slope.size(); ++t) {
      eta(t) = d.slope(t) - d.slope(t - 1);
      u(t) = d.factor(t) - d.factor(t - 1);
    }
    Eigen::VectorXd ec = eta.array() - eta.mean();
    Eigen::VectorXd uc = u.array() - u.mean();
    corr_sum += ec.dot(uc) / std::sqrt(ec.squaredNorm() * uc.squaredNorm());
  }
  CHECK(corr_sum / reps == Approx(rho).margin(0.05));
}

TEST_CASE("sparse regime zeroes the first half of the loadings") {
  DgpSpec spec;
  spec.regime = Regime::HomoskedasticSparse;
  spec.seed = 3;
  SimData d = simulate_dgp(spec);
  CHECK(d.loadings.head(50).cwiseAbs().maxCoeff() == 0.0);
  CHECK(d.loadings.tail(50).minCoeff() >= 0.0);
  // first 50 columns carry no factor signal
  Eigen::VectorXd f = d.factor;
  for (int i : {0, 10, 49}) {
    Eigen::VectorXd xc = d.x.col(i).array() - d.x.col(i).mean();
    Eigen::VectorXd fc = f.array() - f.mean();
    double corr = xc.dot(fc) / std::sqrt(xc.squaredNorm() * fc.squaredNorm());
    CHECK(std::abs(corr) < 0.35);
  }
}

TEST_CASE("non-Gaussian idiosyncratics are standardized to variance 0.5") {
  for (Regime reg : {Regime::Exponential, Regime::StudentT4}) {
    double total = 0.0;
    int count = 0;
    for (int j = 0; j < 30; ++j) {
      DgpSpec spec;
      spec.regime = reg;
      spec.seed = split_seed(17, j);
      SimData d = simulate_dgp(spec);
      Eigen::MatrixXd idio = d.x - d.factor * d.loadings.transpose();
      total += idio.array().square().sum();
      count += static_cast<int>(idio.size());
    }
    CHECK(total / count == Approx(0.5).margin(0.05));
  }
}

TEST_CASE("collapsed panel filtering is exact") {
  DgpSpec spec;
  spec.rho = 0.9;
  spec.seed = 7;
  SimData sim = simulate_dgp(spec);
  auto dec = factors::pca_nonstationary(sim.x, 1);
  auto panel = collapse_panel(sim.x, dec.loadings, dec.idio_var);

  SimHyper hp{1.1, 0.8, 0.85};
  Eigen::MatrixXd obs2(spec.T, 2), obs_full(spec.T, 1 + spec.n);
  obs2.col(0) = sim.y;
  obs2.col(1) = panel.series;
  obs_full.col(0) = sim.y;
  obs_full.rightCols(spec.n) = sim.x;
  const double scale = data_scale(obs2);
  auto out_c = ssm::filter(build_sim_aux(hp, panel.noise_var, scale), obs2);
  auto out_f = ssm::filter(build_sim_aux_full(hp, dec.loadings, dec.idio_var, scale), obs_full);

  CHECK((out_c.filtered_state - out_f.filtered_state).cwiseAbs().maxCoeff() < 1e-6);
  double const_sum = 0.0;
  for (int t = 3; t < spec.T; ++t) const_sum += panel.constants(t);
  CHECK(out_c.loglik + const_sum == Approx(out_f.loglik).margin(1e-5));
}

TEST_CASE("decomposition identity holds exactly") {
  auto rng = make_rng(2);
  Eigen::MatrixXd errors(40, 13);
  for (int j = 0; j < 40; ++j)
    for (int t = 0; t < 13; ++t) errors(j, t) = draw_normal(rng, 0.3, 2.0);
  auto d = decompose_errors(errors);
  CHECK(std::abs(d.msfe - d.var - d.bias2) < 1e-10);
  CHECK(d.msfe > 0.0);
  CHECK(d.bias2 > 0.0);
}

TEST_CASE("auxiliary panel pays off at high correlation") {
  McOptions opts;
  opts.n_sim = 24;
  opts.seed = 99;
  opts.schedule = Schedule::LastOnly;
  auto cell = run_table2_cell(Regime::HomoskedasticDense, 0.9, opts);
  CHECK(cell.n_used == 24);
  CHECK(cell.rel_msfe_R < 0.75);
  CHECK(cell.rel_msfe_R > 0.15);
  CHECK(std::abs(cell.aux_R.msfe - cell.aux_R.var - cell.aux_R.bias2) < 1e-10);
  CHECK(std::abs(cell.base_R.msfe - cell.base_R.var - cell.base_R.bias2) < 1e-10);
}

TEST_CASE("irrelevant auxiliary data does no harm") {
  McOptions opts;
  opts.n_sim = 24;
  opts.seed = 123;
  opts.schedule = Schedule::LastOnly;
  auto cell = run_table2_cell(Regime::HomoskedasticDense, 0.0, opts);
  CHECK(cell.rel_msfe_R == Approx(1.0).margin(0.15));
}

TEST_CASE("LR null statistics look chi-squared") {
  McOptions opts;
  opts.n_sim = 60;
  opts.seed = 17;
  auto res = run_lr_null_cell(Regime::Gaussian, opts);
  CHECK(res.n_failed <= 2);
  CHECK(res.mean_lr > 0.4);
  CHECK(res.mean_lr < 2.0);
  CHECK(res.clip_frequency < 0.05);
  CHECK(res.ks_chi2_1 < 0.2);
}

TEST_CASE("report is deterministic given the seed") {
  McOptions opts;
  opts.n_sim = 8;
  opts.seed = 5;
  opts.schedule = Schedule::LastOnly;
  auto a = run_table2_cell(Regime::HomoskedasticDense, 0.6, opts);
  auto b = run_table2_cell(Regime::HomoskedasticDense, 0.6, opts);
  CHECK(a.rel_msfe_R == b.rel_msfe_R);
  CHECK(a.rel_msfe_L == b.rel_msfe_L);
}
