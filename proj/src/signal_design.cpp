#include "orgsig/signal_design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "json.hpp"

namespace orgsig {

namespace {

constexpr double kZeroEigenFactor = 1e-8;

/// Rotates the Laplacian zero eigenspace so its first basis vector is
/// exactly 1/sqrt(n). The all-ones direction always lies in that eigenspace;
/// on disconnected graphs the solver returns an arbitrary basis for it, and
/// downstream formulas need the average singled out because its payoff
/// weight (always 1) differs from the rest of the eigenspace.
void align_average_direction(Spectrum& s) {
  const int n = s.eigenvectors.rows();
  const double scale = std::max(1.0, std::fabs(s.eigenvalues.back()));
  int k = 0;
  while (k < n && s.eigenvalues[k] <= kZeroEigenFactor * scale) ++k;
  if (k == 0) {
    throw NumericalError("align_average_direction: no zero eigenvalue in Laplacian spectrum");
  }
  std::vector<std::vector<double>> candidates;
  candidates.emplace_back(n, 1.0 / std::sqrt(static_cast<double>(n)));
  for (int j = 0; j < k; ++j) candidates.push_back(s.eigenvectors.column(j));
  std::vector<std::vector<double>> basis;
  for (auto& cand : candidates) {
    if (static_cast<int>(basis.size()) == k) break;
    for (const auto& b : basis) {
      const double proj = dot(b, cand);
      for (int i = 0; i < n; ++i) cand[i] -= proj * b[i];
    }
    const double len = norm2(cand);
    if (len > 1e-6) {
      for (double& v : cand) v /= len;
      basis.push_back(std::move(cand));
    }
  }
  if (static_cast<int>(basis.size()) != k) {
    throw NumericalError("align_average_direction: zero eigenspace basis lost rank");
  }
  for (int j = 1; j < k; ++j) {
    int lead = 0;
    for (int i = 1; i < n; ++i) {
      if (std::fabs(basis[j][i]) > std::fabs(basis[j][lead])) lead = i;
    }
    if (basis[j][lead] < 0.0) {
      for (double& v : basis[j]) v = -v;
    }
  }
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < n; ++i) s.eigenvectors(i, j) = basis[j][i];
}

Spectrum aligned_laplacian_spectrum(const Graph& g) {
  Spectrum s = sym_eig(laplacian(g));
  align_average_direction(s);
  return s;
}

/// Projection residual of the average direction onto the design span.
bool span_includes_average(const Matrix& w) {
  const int n = w.rows();
  const int r = w.cols();
  if (r == 0) return false;
  std::vector<double> u(n, 1.0 / std::sqrt(static_cast<double>(n)));
  const Matrix wt = transpose(w);
  Matrix u_col(n, 1);
  for (int i = 0; i < n; ++i) u_col(i, 0) = u[i];
  const Matrix coeffs = spd_solve(wt * w, wt * u_col);
  const Matrix back = w * coeffs;
  double residual_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = u[i] - back(i, 0);
    residual_sq += d * d;
  }
  return std::sqrt(residual_sq) <= 1e-8;
}

SignalDesign design_from_decomposition(const Spectrum& spec, const Matrix* back_transform) {
  const int n = spec.eigenvectors.rows();
  SignalDesign design;
  design.omegas = spec.eigenvalues;
  for (int j = 0; j < n; ++j) {
    if (spec.eigenvalues[j] >= -kOmegaTol) design.disclosed_indices.push_back(j);
  }
  design.dimension = static_cast<int>(design.disclosed_indices.size());
  design.weights = Matrix(n, design.dimension);
  for (int k = 0; k < design.dimension; ++k) {
    std::vector<double> col = spec.eigenvectors.column(design.disclosed_indices[k]);
    if (back_transform != nullptr) {
      col = matvec(*back_transform, col);
      const double len = norm2(col);
      if (len <= 0.0) throw NumericalError("optimal_signal: degenerate disclosure direction");
      for (double& v : col) v /= len;
    }
    for (int i = 0; i < n; ++i) design.weights(i, k) = col[i];
  }
  design.includes_average = span_includes_average(design.weights);
  return design;
}

Matrix scaled_eigen_power(const Spectrum& s, double exponent, double floor) {
  const int n = s.eigenvectors.rows();
  Matrix out(n, n);
  for (int j = 0; j < n; ++j) {
    if (s.eigenvalues[j] < floor) {
      throw NumericalError("optimal_signal: prior covariance is numerically singular");
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) {
        acc += std::pow(s.eigenvalues[j], exponent) * s.eigenvectors(a, j) * s.eigenvectors(b, j);
      }
      out(a, b) = acc;
    }
  }
  return out;
}

}  // namespace

SignalDesign optimal_signal(const OrgModel& model) {
  const PayoffMatrix pm = payoff_matrix(model);
  if (model.prior().rho == 0.0) {
    return design_from_decomposition(sym_eig(pm.v), nullptr);
  }
  const Spectrum prior_spec = sym_eig(model.prior_covariance());
  const Matrix root = scaled_eigen_power(prior_spec, 0.5, 1e-10);
  const Matrix inv_root = scaled_eigen_power(prior_spec, -0.5, 1e-10);
  const Spectrum scaled = sym_eig(symmetrize(root * pm.v * root));
  return design_from_decomposition(scaled, &inv_root);
}

SignalDesign uniform_synergy_signal(const Graph& g, double beta, double beta_tilde) {
  return uniform_synergy_signal(g.size(), aligned_laplacian_spectrum(g), beta, beta_tilde);
}

SignalDesign uniform_synergy_signal(int n, const Spectrum& laplacian_spectrum, double beta,
                                    double beta_tilde) {
  if (!(beta >= 0.0) || !(beta_tilde >= 0.0)) {
    throw std::invalid_argument("uniform_synergy_signal: beta and beta_tilde must be nonnegative");
  }
  if (laplacian_spectrum.eigenvectors.rows() != n ||
      static_cast<int>(laplacian_spectrum.eigenvalues.size()) != n) {
    throw std::invalid_argument("uniform_synergy_signal: spectrum size does not match n");
  }
  Spectrum spec = laplacian_spectrum;
  align_average_direction(spec);
  SignalDesign design;
  design.omegas.assign(n, 0.0);
  design.omegas[0] = 1.0;
  design.disclosed_indices.push_back(0);
  for (int j = 1; j < n; ++j) {
    const double lambda = spec.eigenvalues[j];
    const double shrink = 1.0 + beta * lambda;
    design.omegas[j] = (1.0 - 2.0 * beta_tilde * n + 2.0 * beta * lambda) / (shrink * shrink);
    if (design.omegas[j] >= -kOmegaTol) design.disclosed_indices.push_back(j);
  }
  std::sort(design.disclosed_indices.begin(), design.disclosed_indices.end());
  design.dimension = static_cast<int>(design.disclosed_indices.size());
  design.weights = Matrix(n, design.dimension);
  for (int k = 0; k < design.dimension; ++k) {
    for (int i = 0; i < n; ++i) {
      design.weights(i, k) = spec.eigenvectors(i, design.disclosed_indices[k]);
    }
  }
  design.includes_average = span_includes_average(design.weights);
  return design;
}

double disclosure_threshold(double lambda, int n) {
  if (n < 1) throw std::invalid_argument("disclosure_threshold: n must be at least 1");
  if (lambda < -1e-8 || lambda > n + 1e-8) {
    throw std::invalid_argument("disclosure_threshold: lambda outside [0, n]");
  }
  if (std::fabs(lambda - n) <= 1e-8) return std::numeric_limits<double>::infinity();
  return 1.0 / (2.0 * (n - lambda));
}

std::vector<DisclosurePhase> phase_diagram(const Graph& g, bool beta_tilde_equals_beta) {
  if (!beta_tilde_equals_beta) {
    throw std::invalid_argument(
        "phase_diagram: only the beta_tilde = beta case has a single-axis phase structure");
  }
  const int n = g.size();
  const Spectrum spec = aligned_laplacian_spectrum(g);

  struct EigenClass {
    double lambda = 0.0;
    int multiplicity = 0;
    double threshold = 0.0;
  };
  std::vector<EigenClass> classes;
  for (int j = 0; j < n; ++j) {
    const double lambda = spec.eigenvalues[j];
    if (!classes.empty() && lambda - classes.back().lambda <= 1e-9) {
      ++classes.back().multiplicity;
    } else {
      classes.push_back({lambda, 1, 0.0});
    }
  }
  for (auto& c : classes) {
    c.lambda = std::clamp(c.lambda, 0.0, static_cast<double>(n));
    c.threshold = disclosure_threshold(c.lambda, n);
  }

  // Drop events in ascending threshold order. The zero class sheds all its
  // statistics except the average, which is disclosed at every beta.
  struct DropEvent {
    double threshold = 0.0;
    int count = 0;
    std::size_t class_index = 0;
  };
  std::vector<DropEvent> events;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const bool zero_class = classes[c].lambda <= kZeroEigenFactor * std::max(1.0, spec.eigenvalues.back());
    const int drop = classes[c].multiplicity - (zero_class ? 1 : 0);
    if (drop > 0 && std::isfinite(classes[c].threshold)) {
      events.push_back({classes[c].threshold, drop, c});
    }
  }
  std::sort(events.begin(), events.end(),
            [](const DropEvent& a, const DropEvent& b) { return a.threshold < b.threshold; });

  std::vector<char> class_active(classes.size(), 1);
  auto surviving_classes = [&]() {
    std::vector<double> lambdas;
    for (std::size_t c = classes.size(); c-- > 0;) {
      if (class_active[c] || c == 0) lambdas.push_back(classes[c].lambda);
    }
    return lambdas;  // descending threshold order; the zero class never leaves
  };

  std::vector<DisclosurePhase> phases;
  double lo = 0.0;
  int dimension = n;
  for (const auto& event : events) {
    phases.push_back({lo, event.threshold, dimension, surviving_classes()});
    class_active[event.class_index] = 0;
    dimension -= event.count;
    lo = event.threshold;
  }
  phases.push_back({lo, std::numeric_limits<double>::infinity(), dimension, surviving_classes()});
  return phases;
}

Matrix posterior_covariance(const SignalDesign& design, const Prior& prior) {
  const int n = design.weights.rows();
  const int r = design.weights.cols();
  if (r == 0) return Matrix(n, n);
  try {
    if (prior.rho == 0.0) {
      const Matrix wt = transpose(design.weights);
      const Matrix proj = design.weights * spd_solve(wt * design.weights, wt);
      return symmetrize(prior.sigma2 * proj);
    }
    Matrix s(n, n, prior.sigma2 * prior.rho);
    for (int i = 0; i < n; ++i) s(i, i) = prior.sigma2;
    const Matrix t = s * design.weights;
    const Matrix gram = transpose(design.weights) * t;
    return symmetrize(t * spd_solve(gram, transpose(t)));
  } catch (const NumericalError&) {
    throw NumericalError("posterior_covariance: design weights are rank deficient");
  }
}

std::vector<double> informativeness(const SignalDesign& design) {
  const int n = design.weights.rows();
  const int r = design.weights.cols();
  const Matrix gram = transpose(design.weights) * design.weights;
  if (max_abs_diff(gram, Matrix::identity(r)) > 1e-8) {
    throw std::invalid_argument("informativeness: design columns are not orthonormal");
  }
  std::vector<double> share(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < r; ++k) share[i] += design.weights(i, k) * design.weights(i, k);
  return share;
}

double design_gain(const OrgModel& model, const SignalDesign& design) {
  if (model.prior().rho != 0.0) {
    throw std::invalid_argument("design_gain: closed form requires an uncorrelated prior");
  }
  double total = 0.0;
  for (int j : design.disclosed_indices) total += design.omegas[j];
  return model.prior().sigma2 * total;
}

double plus_one_gain(const Graph& g, double beta, int target) {
  const int n = g.size();
  if (n < 2) throw std::invalid_argument("plus_one_gain: need at least 2 nodes");
  if (target < 0 || target >= n) throw std::invalid_argument("plus_one_gain: target out of range");
  if (!(beta >= 0.0)) throw std::invalid_argument("plus_one_gain: beta must be nonnegative");
  const Spectrum spec = aligned_laplacian_spectrum(g);
  double sum = 0.0;
  for (int j = 1; j < n; ++j) {
    const double lambda = spec.eigenvalues[j];
    const double shrink = 1.0 + beta * lambda;
    const double omega = (1.0 - 2.0 * beta * (n - lambda)) / (shrink * shrink);
    const double entry = spec.eigenvectors(target, j);
    sum += omega * entry * entry;
  }
  return sum * n / (n - 1.0);
}

int plus_one_best_target(const Graph& g, double beta) {
  const int n = g.size();
  std::vector<double> gains(n);
  for (int i = 0; i < n; ++i) gains[i] = plus_one_gain(g, beta, i);
  const double best = *std::max_element(gains.begin(), gains.end());
  const double tol = 1e-9 * std::max(1.0, std::fabs(best));
  for (int i = 0; i < n; ++i) {
    if (gains[i] >= best - tol) return i;
  }
  return 0;
}

bool rho_invariance_check(const Graph& g, double beta, const std::vector<double>& rhos) {
  if (rhos.empty()) throw std::invalid_argument("rho_invariance_check: empty rho list");
  const Graph synergy = make_complete(g.size());
  std::vector<Matrix> projections;
  for (double rho : rhos) {
    Prior prior;
    prior.rho = rho;
    const OrgModel model(g, synergy, beta, std::nullopt, prior);
    const SignalDesign design = optimal_signal(model);
    const Matrix wt = transpose(design.weights);
    projections.push_back(design.weights * spd_solve(wt * design.weights, wt));
  }
  for (std::size_t a = 0; a + 1 < projections.size(); ++a) {
    for (std::size_t b = a + 1; b < projections.size(); ++b) {
      if (max_abs_diff(projections[a], projections[b]) > 1e-6) return false;
    }
  }
  return true;
}

namespace {

nlohmann::json signal_design_doc(const SignalDesign& design) {
  nlohmann::json doc;
  doc["dimension"] = design.dimension;
  doc["disclosed_indices"] = design.disclosed_indices;
  doc["omegas"] = design.omegas;
  doc["includes_average"] = design.includes_average;
  auto stats = nlohmann::json::array();
  for (int k = 0; k < design.weights.cols(); ++k) stats.push_back(design.weights.column(k));
  doc["weights"] = stats;
  return doc;
}

}  // namespace

std::string signal_design_to_json(const SignalDesign& design) {
  return signal_design_doc(design).dump(2);
}

std::string signal_design_to_json(const SignalDesign& design, const OrgModel& model) {
  nlohmann::json doc = signal_design_doc(design);
  doc["gain"] = nullptr;
  doc["informativeness"] = nullptr;
  if (model.prior().rho == 0.0) {
    doc["gain"] = design_gain(model, design);
    try {
      doc["informativeness"] = informativeness(design);
    } catch (const std::invalid_argument&) {
    }
  }
  return doc.dump(2);
}

}  // namespace orgsig
