#pragma once

#include <string>
#include <vector>

#include "orgsig/graph.hpp"
#include "orgsig/matrix.hpp"
#include "orgsig/org_model.hpp"
#include "orgsig/spectral.hpp"

namespace orgsig {

/// An omega at least -OMEGA_TOL counts as disclosed. Soaks up rounding at
/// exact disclosure boundaries (e.g. beta = 1/(2n) computed in binary).
inline constexpr double kOmegaTol = 1e-9;

/// Optimal public disclosure policy. The designer reveals the statistics
/// weights' x: column k of `weights` is the k-th disclosed direction in
/// state space. `omegas[j]` is the payoff eigenvalue of source direction j
/// (ascending eigen-order of the underlying decomposition);
/// `disclosed_indices` are the j with omegas[j] >= -kOmegaTol, ascending.
/// dimension == disclosed_indices.size() == weights.cols(). The average
/// direction 1/sqrt(n) always lies in the disclosed span (omega = 1);
/// `includes_average` records that check (projection residual <= 1e-8).
struct SignalDesign {
  Matrix weights;
  std::vector<double> omegas;
  std::vector<int> disclosed_indices;
  int dimension = 0;
  bool includes_average = false;
};

/// One interval of a symmetric-mode disclosure phase diagram: for beta in
/// [beta_lo, beta_hi) the optimal policy has the given dimension;
/// `disclosed_eigenvalue_classes` lists the distinct Laplacian eigenvalues
/// whose statistics are still disclosed (descending threshold order).
struct DisclosurePhase {
  double beta_lo = 0.0;
  double beta_hi = 0.0;  ///< +inf in the last phase
  int dimension = 0;
  std::vector<double> disclosed_eigenvalue_classes;
};

/// Optimal policy for an arbitrary model: eigendecomposition of V (for
/// rho = 0) keeps the directions with nonnegative payoff eigenvalue. For
/// rho != 0 the decomposition runs on S^{1/2} V S^{1/2} (S the prior
/// covariance) and columns are S^{-1/2} z normalized; the span is what
/// matters downstream, and for the symmetric priors here it coincides with
/// the rho = 0 span.
SignalDesign optimal_signal(const OrgModel& model);

/// Closed-form policy for complete unit synergy: Laplacian eigenvector
/// statistics q_j' x with omega_j = (1 + beta lambda_j)^{-2}
/// (1 - 2 beta_tilde n + 2 beta lambda_j). The zero eigenspace is rotated
/// so its first basis vector is exactly 1/sqrt(n) (the average, omega = 1).
SignalDesign uniform_synergy_signal(const Graph& g, double beta, double beta_tilde);
SignalDesign uniform_synergy_signal(int n, const Spectrum& laplacian_spectrum, double beta,
                                    double beta_tilde);

/// Symmetric-mode disclosure cutoff for a Laplacian eigenvalue: statistics
/// of eigenvalue lambda are disclosed iff beta <= 1/(2(n - lambda)), so the
/// threshold is that value, +inf when lambda == n (within 1e-8). Requires
/// lambda in [0, n] up to 1e-8.
double disclosure_threshold(double lambda, int n);

/// Partition of the beta axis into constant-dimension phases for complete
/// unit synergy and beta_tilde = beta. Eigenvalues within 1e-9 merge into
/// one class. The flag exists to make the symmetric-mode assumption
/// explicit at call sites; false is rejected (no single-axis phase
/// structure exists when beta_tilde varies independently).
std::vector<DisclosurePhase> phase_diagram(const Graph& g, bool beta_tilde_equals_beta = true);

/// Covariance of posterior means E[x|signal] under the design:
/// sigma2 * W (W'W)^{-1} W' for rho = 0, and S Z (Z'SZ)^{-1} Z'S with
/// Z = weights for correlated priors. Throws NumericalError on
/// rank-deficient weights. Zero-dimension designs yield the zero matrix.
Matrix posterior_covariance(const SignalDesign& design, const Prior& prior);

/// var(E[x_i|signal]) / var(x_i) per node for orthonormal-column designs
/// under rho = 0: row sums of squares of `weights`. Values in [1/n, 1]
/// when the average is included. Throws std::invalid_argument if columns
/// are not orthonormal (max |W'W - I| > 1e-8).
std::vector<double> informativeness(const SignalDesign& design);

/// Expected payoff gain of the design over no disclosure, rho = 0:
/// sigma2 * sum of omegas over disclosed_indices. Also equals
/// tr(V posterior_covariance) (cross-checked in tests to 1e-7).
double design_gain(const OrgModel& model, const SignalDesign& design);

/// Gain from revealing x_target exactly plus the average of the others,
/// relative to revealing the average alone, for complete unit synergy,
/// beta_tilde = beta, rho = 0, sigma2 = 1:
///   n/(n-1) * sum_{j>=2} omega_j q_j(target)^2.
double plus_one_gain(const Graph& g, double beta, int target);

/// argmax_target plus_one_gain, ties to the lowest index (tolerance
/// 1e-9 * max(1, |best|)).
int plus_one_best_target(const Graph& g, double beta);

/// Verifies that the optimal disclosed span is the same for every rho in
/// the list (complete unit synergy, beta_tilde = beta): max pairwise
/// projection-matrix distance <= 1e-6. Each rho must satisfy the prior
/// validity constraints.
bool rho_invariance_check(const Graph& g, double beta, const std::vector<double>& rhos);

/// The model-aware overload adds the gain and per-node informativeness;
/// either is null when the prior or the design rules it out (correlated
/// prior, non-orthonormal columns).
std::string signal_design_to_json(const SignalDesign& design);
std::string signal_design_to_json(const SignalDesign& design, const OrgModel& model);

}  // namespace orgsig
