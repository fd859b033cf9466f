#pragma once

#include <optional>
#include <string>

#include "orgsig/graph.hpp"
#include "orgsig/matrix.hpp"

namespace orgsig {

/// Gaussian prior over local states: mean mu on every node, common variance
/// sigma2 > 0, common pairwise correlation rho in (-1, 1). For n >= 2 the
/// covariance sigma2 * ((1-rho) I + rho 11') is positive definite iff
/// rho > -1/(n-1); the model constructor enforces that.
struct Prior {
  double mu = 0.0;
  double sigma2 = 1.0;
  double rho = 0.0;
};

/// Organization with quadratic adaptation and coordination payoffs.
/// `incentive` weights the coordination terms agents best-respond to,
/// `synergy` weights the terms the designer values; beta and beta_tilde
/// scale them. beta_tilde defaults to beta (symmetric mode, where the
/// designer's and the agents' coordination motives coincide).
class OrgModel {
 public:
  OrgModel(Graph incentive, Graph synergy, double beta,
           std::optional<double> beta_tilde = std::nullopt, Prior prior = Prior{});

  int size() const { return incentive_.size(); }
  const Graph& incentive() const { return incentive_; }
  const Graph& synergy() const { return synergy_; }
  double beta() const { return beta_; }
  double beta_tilde() const { return beta_tilde_; }
  const Prior& prior() const { return prior_; }

  bool symmetric_mode() const { return beta_tilde_ == beta_; }

  /// True when the synergy graph is complete with unit weights, the case
  /// with closed-form disclosure thresholds.
  bool uniform_synergy() const;

  /// sigma2 * ((1-rho) I + rho 11').
  Matrix prior_covariance() const;

 private:
  Graph incentive_;
  Graph synergy_;
  double beta_;
  double beta_tilde_;
  Prior prior_;
};

/// Equilibrium response and payoff weights for a model. `b` maps posterior
/// means to equilibrium actions, a = B E[x|signal]; `v` weights the
/// designer's objective, E[payoff] depending on information only through
/// tr(V var(E[x|signal])). V is symmetric with row sums 1.
struct PayoffMatrix {
  Matrix v;
  Matrix b;
  bool symmetric_mode = true;
};

/// B = (I + beta L)^{-1}, L the incentive Laplacian. Doubly stochastic with
/// positive entries on connected graphs; rows sum to 1 always.
Matrix equilibrium_matrix(const OrgModel& model);

/// (I + 2 beta_tilde L_tilde)^{-1}, the action profile a planner maximizing
/// the synergy objective would choose as a map on posterior means.
Matrix efficient_matrix(const OrgModel& model);

/// V = B (I - 2(beta_tilde L_tilde - beta L)) B, symmetrized.
PayoffMatrix payoff_matrix(const OrgModel& model);

/// Expected designer payoff under equilibrium play when the public signal
/// induces the given posterior-mean covariance:
///   -tr(prior_cov) - n mu^2 + tr(V posterior_cov) + mu^2 1'V1.
/// posterior_cov must be PSD and dominated by the prior covariance
/// (tolerance 1e-8 on eigenvalues); throws NumericalError otherwise.
double expected_payoff(const OrgModel& model, const Matrix& posterior_cov);

/// Parses {"incentive": <graph>, "synergy": <graph>|"complete",
///         "beta": f, "beta_tilde": f?, "mu": f?, "sigma2": f?, "rho": f?}
/// where <graph> is the graph JSON object.
OrgModel model_from_json(const std::string& text);

}  // namespace orgsig
