#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "stsnow/common/errors.hpp"
#include "stsnow/common/rng.hpp"

namespace stsnow::mcsim {

// Idiosyncratic-component regimes. Gaussian coincides with HomoskedasticDense;
// it is kept as a separate label because the robustness experiments report the
// two studies side by side.
enum class Regime {
  HomoskedasticDense,
  HomoskedasticSparse,
  HeteroskedasticDense,
  Gaussian,
  Exponential,
  StudentT4,
};

inline std::string regime_name(Regime r) {
  switch (r) {
    case Regime::HomoskedasticDense: return "homoskedastic-dense";
    case Regime::HomoskedasticSparse: return "homoskedastic-sparse";
    case Regime::HeteroskedasticDense: return "heteroskedastic-dense";
    case Regime::Gaussian: return "gaussian";
    case Regime::Exponential: return "exponential";
    case Regime::StudentT4: return "t4";
  }
  return "?";
}

inline Regime regime_from_name(const std::string& s) {
  for (Regime r : {Regime::HomoskedasticDense, Regime::HomoskedasticSparse,
                   Regime::HeteroskedasticDense, Regime::Gaussian, Regime::Exponential,
                   Regime::StudentT4})
    if (regime_name(r) == s) return r;
  throw ConfigError("unknown regime: " + s);
}

struct DgpSpec {
  int T = 150;
  int n = 100;
  int r = 1;
  double rho = 0.0;
  Regime regime = Regime::HomoskedasticDense;
  std::uint64_t seed = 0;
};

// One draw from the smooth-trend + single-factor design:
//   y_t = L_t + eps_y,  x_t = Lambda f_t + eps_x,
//   L_t = L_{t-1} + R_{t-1},  (R_t, f_t) random walks with unit-variance
//   innovations of correlation rho.
struct SimData {
  Eigen::VectorXd y;        // T
  Eigen::MatrixXd x;        // T x n
  Eigen::VectorXd level;    // true L_t
  Eigen::VectorXd slope;    // true R_t
  Eigen::VectorXd factor;   // true f_t
  Eigen::VectorXd loadings; // true Lambda
};

inline SimData simulate_dgp(const DgpSpec& spec) {
  if (!(std::abs(spec.rho) < 1.0))
    throw ParameterError("simulate_dgp: rho must lie in (-1, 1)");
  if (spec.r != 1) throw ConfigError("simulate_dgp: the study design has r = 1");
  auto rng = make_rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  const int T = spec.T, n = spec.n;
  SimData d;
  d.loadings.resize(n);
  const int n_zero = (spec.regime == Regime::HomoskedasticSparse) ? n / 2 : 0;
  for (int i = 0; i < n; ++i) d.loadings(i) = (i < n_zero) ? 0.0 : unif(rng);

  Eigen::VectorXd idio_sd(n);
  if (spec.regime == Regime::HeteroskedasticDense) {
    std::uniform_real_distribution<double> hvar(0.5, 10.0);
    for (int i = 0; i < n; ++i) idio_sd(i) = std::sqrt(hvar(rng));
  } else {
    idio_sd.setConstant(std::sqrt(0.5));
  }

  std::exponential_distribution<double> expo(1.0);
  std::student_t_distribution<double> t4(4.0);
  auto draw_idio = [&](int i) {
    switch (spec.regime) {
      case Regime::Exponential:
        return (expo(rng) - 1.0) * std::sqrt(0.5);  // centered, variance 0.5
      case Regime::StudentT4:
        return t4(rng) * 0.5;  // Var(t4)=2, scaled to variance 0.5
      default:
        return idio_sd(i) * gauss(rng);
    }
  };

  d.y.resize(T);
  d.x.resize(T, n);
  d.level.resize(T);
  d.slope.resize(T);
  d.factor.resize(T);
  double L = 0.0, R = 0.0, f = 0.0;
  const double c = std::sqrt(1.0 - spec.rho * spec.rho);
  for (int t = 0; t < T; ++t) {
    const double z1 = gauss(rng), z2 = gauss(rng);
    L += R;
    R += z1;
    f += spec.rho * z1 + c * z2;
    d.level(t) = L;
    d.slope(t) = R;
    d.factor(t) = f;
    d.y(t) = L + std::sqrt(0.5) * gauss(rng);
    for (int i = 0; i < n; ++i) d.x(t, i) = d.loadings(i) * f + draw_idio(i);
  }
  return d;
}

}  // namespace stsnow::mcsim
