#include <cmath>
#include <optional>

#include "doctest.h"
#include "orgsig/graph.hpp"
#include "orgsig/matrix.hpp"
#include "orgsig/org_model.hpp"
#include "orgsig/rng.hpp"
#include "orgsig/signal_design.hpp"
#include "orgsig/spectral.hpp"

using orgsig::Graph;
using orgsig::Matrix;
using orgsig::OrgModel;
using orgsig::PayoffMatrix;
using orgsig::Prior;

namespace {

OrgModel two_agent_model(double g12, double g12_tilde, double beta,
                         std::optional<double> beta_tilde = std::nullopt) {
  Graph g(2);
  if (g12 > 0.0) g.set_edge(0, 1, g12);
  Graph gt(2);
  if (g12_tilde > 0.0) gt.set_edge(0, 1, g12_tilde);
  return OrgModel(g, gt, beta, beta_tilde);
}

/// Designer payoff of one realized state under equilibrium play:
/// adaptation loss plus the synergy-weighted coordination loss.
double realized_payoff(const OrgModel& model, const std::vector<double>& action,
                       const std::vector<double>& state) {
  const int n = model.size();
  double value = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = action[i] - state[i];
    value -= d * d;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double d = action[i] - action[j];
      value -= model.beta_tilde() * model.synergy().weight(i, j) * d * d;
    }
  }
  return value;
}

}  // namespace

TEST_CASE("model constructor validates parameters") {
  const Graph g2(2);
  CHECK_THROWS_AS(OrgModel(g2, Graph(3), 0.1), std::invalid_argument);
  CHECK_THROWS_AS(OrgModel(g2, g2, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(OrgModel(g2, g2, 0.1, -0.5), std::invalid_argument);
  CHECK_THROWS_AS(OrgModel(g2, g2, 0.1, std::nullopt, Prior{0.0, 0.0, 0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(OrgModel(g2, g2, 0.1, std::nullopt, Prior{0.0, 1.0, 1.0}),
                  std::invalid_argument);
  // rho must keep the prior covariance positive definite: rho > -1/(n-1)
  const Graph g4(4);
  CHECK_THROWS_AS(OrgModel(g4, g4, 0.1, std::nullopt, Prior{0.0, 1.0, -0.5}),
                  std::invalid_argument);
  const OrgModel ok(g4, g4, 0.1, std::nullopt, Prior{0.0, 1.0, -0.2});
  CHECK(ok.beta_tilde() == 0.1);
  CHECK(ok.symmetric_mode());
  const OrgModel asym(g4, g4, 0.1, 0.3);
  CHECK_FALSE(asym.symmetric_mode());
}

TEST_CASE("prior covariance has the equicorrelation structure") {
  const Graph g3(3);
  const OrgModel model(g3, g3, 0.0, std::nullopt, Prior{0.0, 2.0, 0.25});
  const Matrix s = model.prior_covariance();
  CHECK(s(0, 0) == 2.0);
  CHECK(s(0, 1) == 0.5);
  CHECK(s(1, 2) == 0.5);
}

TEST_CASE("two-agent equilibrium matches the closed form") {
  for (double beta : {0.1, 0.5, 2.0}) {
    const OrgModel model = two_agent_model(1.0, 1.0, beta);
    const Matrix b = orgsig::equilibrium_matrix(model);
    const double diag = (1.0 + beta) / (1.0 + 2.0 * beta);
    const double off = beta / (1.0 + 2.0 * beta);
    CHECK(std::fabs(b(0, 0) - diag) <= 1e-12);
    CHECK(std::fabs(b(1, 1) - diag) <= 1e-12);
    CHECK(std::fabs(b(0, 1) - off) <= 1e-12);
    CHECK(std::fabs(b(1, 0) - off) <= 1e-12);
  }
}

TEST_CASE("equilibrium at beta zero is the identity") {
  const OrgModel model(orgsig::make_ring(5), orgsig::make_complete(5), 0.0);
  CHECK(orgsig::max_abs_diff(orgsig::equilibrium_matrix(model), Matrix::identity(5)) <= 1e-12);
}

TEST_CASE("equilibrium rows sum to one and satisfy the best-response condition") {
  orgsig::Xoshiro256pp rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(7));
    const Graph g = orgsig::erdos_renyi(n, 0.3 + 0.6 * rng.next_double(), rng.next());
    const double beta = 2.0 * rng.next_double();
    const OrgModel model(g, orgsig::make_complete(n), beta);
    const Matrix b = orgsig::equilibrium_matrix(model);

    CHECK(orgsig::max_abs_diff(b, orgsig::transpose(b)) <= 1e-10);
    const auto row_sums = orgsig::matvec(b, std::vector<double>(n, 1.0));
    for (double v : row_sums) CHECK(std::fabs(v - 1.0) <= 1e-10);

    std::vector<double> posterior(n);
    for (double& v : posterior) v = rng.next_normal();
    const auto action = orgsig::matvec(b, posterior);
    for (int i = 0; i < n; ++i) {
      double coord = 0.0;
      double degree = 0.0;
      for (int j = 0; j < n; ++j) {
        coord += g.weight(i, j) * action[j];
        degree += g.weight(i, j);
      }
      CHECK(std::fabs((1.0 + beta * degree) * action[i] - beta * coord - posterior[i]) <= 1e-8);
    }
  }
}

TEST_CASE("efficient matrix examples") {
  const OrgModel detached = two_agent_model(1.0, 0.0, 0.7);
  CHECK(orgsig::max_abs_diff(orgsig::efficient_matrix(detached), Matrix::identity(2)) <= 1e-12);

  const OrgModel coupled = two_agent_model(0.0, 1.0, 0.25);
  const Matrix eff = orgsig::efficient_matrix(coupled);
  CHECK(eff(0, 0) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(eff(0, 1) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("payoff matrix fixtures") {
  // no incentive ties, full synergy, at the two-agent disclosure boundary
  const OrgModel boundary = two_agent_model(0.0, 1.0, 0.25);
  const PayoffMatrix pm = orgsig::payoff_matrix(boundary);
  const auto spec = orgsig::sym_eig(pm.v);
  CHECK(std::fabs(spec.eigenvalues[0] - 0.0) <= 1e-12);
  CHECK(std::fabs(spec.eigenvalues[1] - 1.0) <= 1e-12);

  // beta = beta_tilde = 0 gives the identity
  const OrgModel flat(Graph(3), Graph(3), 0.0);
  CHECK(orgsig::max_abs_diff(orgsig::payoff_matrix(flat).v, Matrix::identity(3)) <= 1e-12);

  // G = G_tilde: V reduces to B^2, positive definite at every beta
  for (double beta : {0.05, 0.25, 1.0, 4.0, 25.0}) {
    const OrgModel same = two_agent_model(1.0, 1.0, beta);
    const PayoffMatrix self = orgsig::payoff_matrix(same);
    const Matrix b = orgsig::equilibrium_matrix(same);
    CHECK(orgsig::max_abs_diff(self.v, b * b) <= 1e-12);
    CHECK(orgsig::sym_eig(self.v).eigenvalues.front() > 0.0);
  }
}

TEST_CASE("payoff matrix is symmetric with unit row sums") {
  orgsig::Xoshiro256pp rng(57);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(9));
    const Graph g = orgsig::erdos_renyi(n, rng.next_double(), rng.next());
    const Graph gt = orgsig::erdos_renyi(n, rng.next_double(), rng.next());
    const OrgModel model(g, gt, 2.0 * rng.next_double(), 2.0 * rng.next_double());
    const PayoffMatrix pm = orgsig::payoff_matrix(model);
    CHECK(orgsig::max_abs_diff(pm.v, orgsig::transpose(pm.v)) <= 1e-10);
    const auto v_ones = orgsig::matvec(pm.v, std::vector<double>(n, 1.0));
    for (double v : v_ones) CHECK(std::fabs(v - 1.0) <= 1e-8);
  }
}

TEST_CASE("payoff matrix is PSD under supergraph incentives or low beta_tilde") {
  orgsig::Xoshiro256pp rng(91);
  int supergraph_cases = 0;
  int low_beta_cases = 0;
  while (supergraph_cases < 50 || low_beta_cases < 50) {
    const int n = 2 + static_cast<int>(rng.next_below(9));
    const Graph gt = orgsig::erdos_renyi(n, rng.next_double(), rng.next());
    if (supergraph_cases < 50) {
      // grow a random supergraph of the synergy graph
      Graph g = gt;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (rng.next_double() < 0.3) g.set_edge(i, j, 1.0);
      REQUIRE(orgsig::is_spanning_supergraph(g, gt));
      const double beta = 2.0 * rng.next_double();
      const OrgModel model(g, gt, beta, beta * rng.next_double());
      CHECK(orgsig::sym_eig(orgsig::payoff_matrix(model).v).eigenvalues.front() >= -1e-8);
      ++supergraph_cases;
    }
    if (low_beta_cases < 50) {
      const Graph g = orgsig::erdos_renyi(n, rng.next_double(), rng.next());
      const double beta_tilde = 1.0 / (2.0 * n) * rng.next_double();
      const OrgModel model(g, gt, 2.0 * rng.next_double(), beta_tilde);
      CHECK(orgsig::sym_eig(orgsig::payoff_matrix(model).v).eigenvalues.front() >= -1e-8);
      ++low_beta_cases;
    }
  }
}

TEST_CASE("expected payoff closed-form cases") {
  const int n = 5;
  const Graph star = orgsig::make_star(n);
  const OrgModel model(star, orgsig::make_complete(n), 0.2);

  const double no_info = orgsig::expected_payoff(model, Matrix(n, n));
  CHECK(no_info == doctest::Approx(-5.0));

  // minimum transparency: reveal only the average
  Matrix avg_cov(n, n, 1.0 / n);
  const double min_transparency = orgsig::expected_payoff(model, avg_cov);
  CHECK(min_transparency - no_info == doctest::Approx(1.0).epsilon(1e-10));

  // full revelation with no coordination motive recovers the first best
  const OrgModel flat(Graph(2), Graph(2), 0.0);
  CHECK(orgsig::expected_payoff(flat, Matrix::identity(2)) == doctest::Approx(0.0));
}

TEST_CASE("expected payoff validates its posterior argument") {
  const Graph g(3);
  const OrgModel model(g, g, 0.1);
  CHECK_THROWS_AS(orgsig::expected_payoff(model, Matrix(2, 2)), std::invalid_argument);
  Matrix negative(3, 3);
  negative(0, 0) = -0.5;
  CHECK_THROWS_AS(orgsig::expected_payoff(model, negative), orgsig::NumericalError);
  Matrix inflated = 2.0 * Matrix::identity(3);
  CHECK_THROWS_AS(orgsig::expected_payoff(model, inflated), orgsig::NumericalError);
}

TEST_CASE("monte carlo oracle confirms the expected payoff formula") {
  orgsig::Xoshiro256pp rng(713);
  for (int instance = 0; instance < 5; ++instance) {
    const int n = 2 + static_cast<int>(rng.next_below(5));
    const Graph g = orgsig::erdos_renyi(n, 0.4 + 0.5 * rng.next_double(), rng.next());
    const Graph gt = orgsig::erdos_renyi(n, 0.4 + 0.5 * rng.next_double(), rng.next());
    Prior prior;
    prior.mu = 2.0 * rng.next_double() - 1.0;
    prior.sigma2 = 0.5 + 1.5 * rng.next_double();
    prior.rho = n >= 2 ? -0.8 / (n - 1) + rng.next_double() * (0.8 + 0.8 / (n - 1)) : 0.0;
    const OrgModel model(g, gt, 1.5 * rng.next_double(), 1.5 * rng.next_double(), prior);

    // fixed full-rank disclosure matrix with r <= n statistics
    const int r = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
    Matrix z(n, r);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < r; ++k) z(i, k) = rng.next_normal();

    const Matrix s = model.prior_covariance();
    const Matrix sz = s * z;
    const Matrix gram = orgsig::transpose(z) * sz;
    // posterior mean map: x_hat = mu 1 + S Z (Z'SZ)^{-1} Z' (x - mu 1)
    const Matrix mean_map = sz * orgsig::spd_solve(gram, orgsig::transpose(z));
    const Matrix posterior_cov = orgsig::symmetrize(mean_map * s);
    const double analytic = orgsig::expected_payoff(model, posterior_cov);

    const Matrix b = orgsig::equilibrium_matrix(model);
    const Matrix chol = orgsig::cholesky(s);
    const int draws = 200000;
    double sum = 0.0;
    double sum_sq = 0.0;
    std::vector<double> noise(n);
    std::vector<double> state(n);
    std::vector<double> centered(n);
    for (int d = 0; d < draws; ++d) {
      for (double& v : noise) v = rng.next_normal();
      for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j <= i; ++j) acc += chol(i, j) * noise[j];
        state[i] = prior.mu + acc;
        centered[i] = acc;
      }
      const auto shift = orgsig::matvec(mean_map, centered);
      std::vector<double> posterior_mean(n);
      for (int i = 0; i < n; ++i) posterior_mean[i] = prior.mu + shift[i];
      const auto action = orgsig::matvec(b, posterior_mean);
      const double v = realized_payoff(model, action, state);
      sum += v;
      sum_sq += v * v;
    }
    const double mean = sum / draws;
    const double variance = std::max(0.0, sum_sq / draws - mean * mean);
    const double se = std::sqrt(variance / draws);
    CHECK(std::fabs(mean - analytic) <= 3.0 * se + 1e-12);
  }
}

TEST_CASE("model json parsing") {
  const std::string text = R"({
    "incentive": {"n": 3, "edges": [[0,1],[1,2]]},
    "synergy": "complete",
    "beta": 0.4,
    "mu": 0.5,
    "sigma2": 2.0,
    "rho": 0.1
  })";
  const OrgModel model = orgsig::model_from_json(text);
  CHECK(model.size() == 3);
  CHECK(model.beta() == 0.4);
  CHECK(model.beta_tilde() == 0.4);
  CHECK(model.uniform_synergy());
  CHECK(model.prior().mu == 0.5);
  CHECK(model.prior().sigma2 == 2.0);
  CHECK(model.prior().rho == 0.1);

  const OrgModel asym = orgsig::model_from_json(
      R"({"incentive":{"n":2,"edges":[[0,1]]},"synergy":{"n":2,"edges":[]},"beta":0.2,"beta_tilde":0.6})");
  CHECK_FALSE(asym.symmetric_mode());
  CHECK_FALSE(asym.uniform_synergy());

  CHECK_THROWS_AS(orgsig::model_from_json("{}"), std::invalid_argument);
  CHECK_THROWS_AS(orgsig::model_from_json(R"({"incentive":{"n":2,"edges":[]},"synergy":"ring","beta":0.1})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(orgsig::model_from_json(R"({"incentive":{"n":2,"edges":[]},"synergy":"complete"})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      orgsig::model_from_json(R"({"incentive":{"n":2,"edges":[]},"synergy":{"n":3,"edges":[]},"beta":0.1})"),
      std::invalid_argument);
}
