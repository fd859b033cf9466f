#include "orgsig/org_model.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"
#include "orgsig/spectral.hpp"

namespace orgsig {

OrgModel::OrgModel(Graph incentive, Graph synergy, double beta, std::optional<double> beta_tilde,
                   Prior prior)
    : incentive_(std::move(incentive)),
      synergy_(std::move(synergy)),
      beta_(beta),
      beta_tilde_(beta_tilde.value_or(beta)),
      prior_(prior) {
  if (incentive_.size() != synergy_.size()) {
    throw std::invalid_argument("OrgModel: incentive and synergy graphs differ in node count");
  }
  if (!(beta_ >= 0.0)) throw std::invalid_argument("OrgModel: beta must be nonnegative");
  if (!(beta_tilde_ >= 0.0)) throw std::invalid_argument("OrgModel: beta_tilde must be nonnegative");
  if (!(prior_.sigma2 > 0.0)) throw std::invalid_argument("OrgModel: sigma2 must be positive");
  if (!(prior_.rho > -1.0 && prior_.rho < 1.0)) {
    throw std::invalid_argument("OrgModel: rho must lie in (-1, 1)");
  }
  const int n = incentive_.size();
  if (n >= 2 && !(prior_.rho > -1.0 / (n - 1))) {
    throw std::invalid_argument(
        "OrgModel: rho must exceed -1/(n-1) for a positive definite prior covariance");
  }
}

bool OrgModel::uniform_synergy() const {
  const int n = synergy_.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (synergy_.weight(i, j) != 1.0) return false;
  return true;
}

Matrix OrgModel::prior_covariance() const {
  const int n = size();
  Matrix s(n, n, prior_.sigma2 * prior_.rho);
  for (int i = 0; i < n; ++i) s(i, i) = prior_.sigma2;
  return s;
}

Matrix equilibrium_matrix(const OrgModel& model) {
  const int n = model.size();
  const Matrix l = laplacian(model.incentive());
  Matrix system = Matrix::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) system(i, j) += model.beta() * l(i, j);
  return spd_inverse(system);
}

Matrix efficient_matrix(const OrgModel& model) {
  const int n = model.size();
  const Matrix l = laplacian(model.synergy());
  Matrix system = Matrix::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) system(i, j) += 2.0 * model.beta_tilde() * l(i, j);
  return spd_inverse(system);
}

PayoffMatrix payoff_matrix(const OrgModel& model) {
  const int n = model.size();
  const Matrix b = equilibrium_matrix(model);
  const Matrix l = laplacian(model.incentive());
  const Matrix l_tilde = laplacian(model.synergy());
  Matrix middle = Matrix::identity(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      middle(i, j) -= 2.0 * (model.beta_tilde() * l_tilde(i, j) - model.beta() * l(i, j));
    }
  }
  PayoffMatrix out;
  out.v = symmetrize(b * middle * b);
  out.b = b;
  out.symmetric_mode = model.symmetric_mode();
  return out;
}

double expected_payoff(const OrgModel& model, const Matrix& posterior_cov) {
  const int n = model.size();
  if (posterior_cov.rows() != n || posterior_cov.cols() != n) {
    throw std::invalid_argument("expected_payoff: posterior covariance has wrong shape");
  }
  const Matrix prior_cov = model.prior_covariance();
  const double scale = std::max(1.0, max_abs(prior_cov));
  const Spectrum post_spec = sym_eig(symmetrize(posterior_cov));
  if (post_spec.eigenvalues.front() < -1e-8 * scale) {
    throw NumericalError("expected_payoff: posterior covariance is not positive semidefinite");
  }
  const Spectrum slack_spec = sym_eig(symmetrize(prior_cov - posterior_cov));
  if (slack_spec.eigenvalues.front() < -1e-8 * scale) {
    throw NumericalError("expected_payoff: posterior covariance exceeds the prior covariance");
  }
  const PayoffMatrix pm = payoff_matrix(model);
  const std::vector<double> ones(n, 1.0);
  const double v_quad_ones = dot(ones, matvec(pm.v, ones));
  const double mu = model.prior().mu;
  return -trace(prior_cov) - n * mu * mu + trace(pm.v * posterior_cov) + mu * mu * v_quad_ones;
}

namespace {

Graph graph_from_model_field(const nlohmann::json& field, const char* name) {
  if (field.is_object()) return graph_from_json(field.dump());
  throw std::invalid_argument(std::string("model json: \"") + name +
                              "\" must be a graph object" +
                              (std::string(name) == "synergy" ? " or the string \"complete\"" : ""));
}

double number_field(const nlohmann::json& doc, const char* name, double fallback, bool required) {
  if (!doc.contains(name)) {
    if (required) {
      throw std::invalid_argument(std::string("model json: missing field \"") + name + "\"");
    }
    return fallback;
  }
  if (!doc[name].is_number()) {
    throw std::invalid_argument(std::string("model json: \"") + name + "\" must be a number");
  }
  return doc[name].get<double>();
}

}  // namespace

OrgModel model_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("model json: malformed input: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("model json: top level must be an object");
  if (!doc.contains("incentive")) {
    throw std::invalid_argument("model json: missing field \"incentive\"");
  }
  Graph incentive = graph_from_model_field(doc["incentive"], "incentive");
  Graph synergy(incentive.size());
  if (!doc.contains("synergy")) {
    throw std::invalid_argument("model json: missing field \"synergy\"");
  }
  if (doc["synergy"].is_string()) {
    if (doc["synergy"].get<std::string>() != "complete") {
      throw std::invalid_argument("model json: the only named synergy is \"complete\"");
    }
    synergy = make_complete(incentive.size());
  } else {
    synergy = graph_from_model_field(doc["synergy"], "synergy");
  }
  const double beta = number_field(doc, "beta", 0.0, true);
  std::optional<double> beta_tilde;
  if (doc.contains("beta_tilde")) {
    beta_tilde = number_field(doc, "beta_tilde", 0.0, true);
  }
  Prior prior;
  prior.mu = number_field(doc, "mu", 0.0, false);
  prior.sigma2 = number_field(doc, "sigma2", 1.0, false);
  prior.rho = number_field(doc, "rho", 0.0, false);
  return OrgModel(std::move(incentive), std::move(synergy), beta, beta_tilde, prior);
}

}  // namespace orgsig
