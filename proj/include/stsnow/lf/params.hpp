#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "stsnow/common/errors.hpp"

namespace stsnow::lf {

// Free parameters of the labour-force model family. Standard deviations are
// nonnegative; delta and the correlation parameters lie in (-1, 1). The
// claimant-counts block applies only when the model includes it, the rho_gt
// vector only when factors are included.
struct HyperParams {
  double sigma_R_y = 1.0;      // trend-slope innovation s.d. of the LFS block
  double sigma_omega_y = 0.1;  // seasonal s.d.
  double sigma_lambda = 1.0;   // RGB random-walk s.d.
  std::array<double, 5> sigma_nu = {1.0, 1.0, 1.0, 1.0, 1.0};  // scaled survey errors
  double delta = 0.0;          // survey-error AR coefficient

  double sigma_R_cc = 1.0;
  double sigma_omega_cc = 0.1;
  double sigma_eps_cc = 1.0;
  double rho_cc = 0.0;

  Eigen::VectorXd rho_gt;     // r entries
  Eigen::VectorXd rho_cc_gt;  // r entries; empty unless the all-corr. variant

  // Smooth-trend restriction: level innovations are fixed at zero and only
  // exposed for completeness.
  double sigma_L_y = 0.0;
  double sigma_L_cc = 0.0;

  // Factor-lag extension: eta_R regressed on q lagged factor innovations.
  // sigma_R_y then plays the role of the residual s.d. and rho_gt(0) the
  // (w, u) correlation.
  Eigen::VectorXd kappa;
};

struct ArimaFactor {
  double phi1 = 0.0, phi2 = 0.0, phi3 = 0.0, gamma = 0.0;
};

// Structural configuration fixed before maximum likelihood: which auxiliary
// blocks enter, the first-step estimates, and the idiosyncratic integration
// classification.
struct ModelSpec {
  bool include_cc = false;
  bool include_gt = false;
  int r = 0;
  int factor_lags = 0;                    // q >= 1 adds lagged-factor states
  std::optional<ArimaFactor> factor_arima;
  std::vector<bool> i1_idio_mask;         // per GT series
  Eigen::MatrixXd loadings;               // n x r
  Eigen::VectorXd idio_var;               // n

  int n() const { return static_cast<int>(loadings.rows()); }

  void validate() const {
    if (include_gt) {
      if (r < 1) throw ConfigError("model spec: include_gt requires r >= 1");
      if (loadings.cols() != r) throw ConfigError("model spec: loadings must be n x r");
      if (idio_var.size() != loadings.rows())
        throw ConfigError("model spec: idio_var length must match loadings rows");
      for (int i = 0; i < idio_var.size(); ++i)
        if (!(idio_var(i) > 0.0))
          throw ConfigError("model spec: idiosyncratic variances must be positive");
      if (!i1_idio_mask.empty() && static_cast<int>(i1_idio_mask.size()) != n())
        throw ConfigError("model spec: i1_idio_mask length must be n");
      if (factor_lags > 0 && factor_arima)
        throw ConfigError("model spec: factor lags and ARIMA factor are exclusive");
      if ((factor_lags > 0 || factor_arima) && r != 1)
        throw ConfigError("model spec: factor extensions are defined for r = 1");
      if (factor_arima && factor_arima->phi2 == 0.0 && factor_arima->phi3 != 0.0)
        throw ParameterError("ARIMA factor: phi2 = 0 with phi3 != 0 is not representable");
    } else {
      if (factor_lags > 0 || factor_arima)
        throw ConfigError("model spec: factor extensions require include_gt");
    }
  }
};

// State offsets of the assembled model. The LFS block layout is fixed:
// (L, R, 11 seasonal states, 4 RGB states, 13 survey-error states).
struct StateLayout {
  int m = 0;
  int L_y = 0;
  int R_y = 1;
  int seasonal_y = 2;   // S1 S1* S2 S2* S3 S3* S4 S4* S5 S5* S6
  int rgb = 13;         // lambda_2..lambda_5
  int survey = 17;      // e~_{1,t}..e~_{5,t}, e~_{1,t-2}..e~_{4,t-2}, e~_{1,t-1}..e~_{4,t-1}
  int cc = -1;          // L_cc (then R_cc, 11 seasonal)
  int factor = -1;      // factor block start
  int n_factor_states = 0;
  int idio = -1;        // promoted I(1) idiosyncratic states
  int n_idio_states = 0;

  int R_cc() const { return cc + 1; }
  // Column indices of the seasonal cosine states S_l entering theta.
  std::array<int, 6> seasonal_cosine() const {
    return {seasonal_y, seasonal_y + 2, seasonal_y + 4,
            seasonal_y + 6, seasonal_y + 8, seasonal_y + 10};
  }
};

inline StateLayout layout_of(const ModelSpec& spec) {
  StateLayout lay;
  int m = 30;
  if (spec.include_cc) {
    lay.cc = m;
    m += 13;
  }
  if (spec.include_gt) {
    lay.factor = m;
    if (spec.factor_arima)
      lay.n_factor_states = 4;
    else if (spec.factor_lags > 0)
      lay.n_factor_states = spec.factor_lags + 1;
    else
      lay.n_factor_states = spec.r;
    m += lay.n_factor_states;
    int n_i1 = 0;
    for (bool b : spec.i1_idio_mask) n_i1 += b ? 1 : 0;
    if (n_i1 > 0) {
      lay.idio = m;
      lay.n_idio_states = n_i1;
      m += n_i1;
    }
  }
  lay.m = m;
  return lay;
}

}  // namespace stsnow::lf
