#include "orgsig/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace orgsig {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kConvergenceFactor = 1e-12;

struct Rotation {
  int p = 0;
  int q = 0;
  double c = 1.0;
  double s = 0.0;
};

/// Givens angle zeroing a(p, q); identity rotation when a(p, q) == 0.
Rotation make_rotation(const Matrix& a, int p, int q) {
  Rotation rot;
  rot.p = p;
  rot.q = q;
  const double apq = a(p, q);
  if (apq == 0.0) return rot;
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  double t;
  if (std::fabs(theta) > 1e150) {
    t = 1.0 / (2.0 * theta);
  } else {
    t = 1.0 / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0.0) t = -t;
  }
  rot.c = 1.0 / std::sqrt(t * t + 1.0);
  rot.s = t * rot.c;
  return rot;
}

void rotate_columns(Matrix& m, const Rotation& r) {
  for (int row = 0; row < m.rows(); ++row) {
    const double mp = m(row, r.p);
    const double mq = m(row, r.q);
    m(row, r.p) = r.c * mp - r.s * mq;
    m(row, r.q) = r.s * mp + r.c * mq;
  }
}

void rotate_rows(Matrix& m, const Rotation& r) {
  for (int col = 0; col < m.cols(); ++col) {
    const double pc = m(r.p, col);
    const double qc = m(r.q, col);
    m(r.p, col) = r.c * pc - r.s * qc;
    m(r.q, col) = r.s * pc + r.c * qc;
  }
}

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = i + 1; j < a.cols(); ++j) s += a(i, j) * a(i, j);
  return std::sqrt(2.0 * s);
}

void check_symmetric_input(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("sym_eig: matrix not square");
  if (a.rows() == 0) throw std::invalid_argument("sym_eig: empty matrix");
  const double tol = 1e-12 * std::max(1.0, max_abs(a));
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = i + 1; j < a.cols(); ++j) {
      if (std::fabs(a(i, j) - a(j, i)) > tol) {
        throw std::invalid_argument("sym_eig: matrix not symmetric");
      }
    }
  }
}

/// Sorts eigenpairs ascending (stable in the original column order) and
/// flips signs so each column's largest-magnitude entry is positive,
/// ties to the lowest index.
Spectrum finalize_spectrum(const Matrix& diag_mat, const Matrix& vectors) {
  const int n = diag_mat.rows();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return diag_mat(i, i) < diag_mat(j, j);
  });
  Spectrum out;
  out.eigenvalues.resize(n);
  out.eigenvectors = Matrix(n, n);
  for (int j = 0; j < n; ++j) {
    const int src = order[j];
    out.eigenvalues[j] = diag_mat(src, src);
    int lead = 0;
    double lead_abs = std::fabs(vectors(0, src));
    for (int i = 1; i < n; ++i) {
      const double v = std::fabs(vectors(i, src));
      if (v > lead_abs) {
        lead_abs = v;
        lead = i;
      }
    }
    const double sign = vectors(lead, src) < 0.0 ? -1.0 : 1.0;
    for (int i = 0; i < n; ++i) out.eigenvectors(i, j) = sign * vectors(i, src);
  }
  return out;
}

[[noreturn]] void fail_convergence(double off, double tol) {
  throw NumericalError("sym_eig: Jacobi failed to converge in " + std::to_string(kMaxSweeps) +
                       " sweeps (off-diagonal norm " + std::to_string(off) + ", tolerance " +
                       std::to_string(tol) + ")");
}

/// Tournament schedule: pairs of one round touch disjoint index sets, every
/// unordered pair appears exactly once across the n (or n+1) - 1 rounds.
std::vector<std::vector<std::pair<int, int>>> round_robin_rounds(int n) {
  const int m = (n % 2 == 0) ? n : n + 1;
  std::vector<int> players(m);
  std::iota(players.begin(), players.end(), 0);
  std::vector<std::vector<std::pair<int, int>>> rounds(m - 1);
  for (int r = 0; r < m - 1; ++r) {
    for (int k = 0; k < m / 2; ++k) {
      int i = players[k];
      int j = players[m - 1 - k];
      if (i >= n || j >= n) continue;  // dummy slot for odd n
      rounds[r].emplace_back(std::min(i, j), std::max(i, j));
    }
    std::rotate(players.begin() + 1, players.end() - 1, players.end());
  }
  return rounds;
}

}  // namespace

Matrix laplacian(const Graph& g) {
  const int n = g.size();
  Matrix l(n, n);
  for (int i = 0; i < n; ++i) {
    double degree = 0.0;
    for (int j = 0; j < n; ++j) {
      const double w = g.weight(i, j);
      degree += w;
      l(i, j) = -w;
    }
    l(i, i) = degree;
  }
  return l;
}

Spectrum sym_eig_serial(const Matrix& input) {
  check_symmetric_input(input);
  const int n = input.rows();
  Matrix a = input;
  Matrix q = Matrix::identity(n);
  const double tol = kConvergenceFactor * frobenius_norm(input);
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= tol) return finalize_spectrum(a, q);
    for (int p = 0; p < n - 1; ++p) {
      for (int col = p + 1; col < n; ++col) {
        if (a(p, col) == 0.0) continue;
        const Rotation rot = make_rotation(a, p, col);
        rotate_columns(a, rot);
        rotate_rows(a, rot);
        rotate_columns(q, rot);
      }
    }
  }
  if (off_diagonal_norm(a) <= tol) return finalize_spectrum(a, q);
  fail_convergence(off_diagonal_norm(a), tol);
}

Spectrum sym_eig(const Matrix& input) {
  check_symmetric_input(input);
  const int n = input.rows();
  Matrix a = input;
  Matrix q = Matrix::identity(n);
  const double tol = kConvergenceFactor * frobenius_norm(input);
  const auto rounds = round_robin_rounds(n);
  std::vector<Rotation> rots;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= tol) return finalize_spectrum(a, q);
    for (const auto& round : rounds) {
      // Angles come from the pre-round matrix: the pairs are disjoint, so
      // the entries a rotation reads are untouched by the round's others
      // and every matrix entry below has exactly one writer per phase.
      // Results are therefore identical for any thread count.
      rots.assign(round.size(), Rotation{});
      const int k_end = static_cast<int>(round.size());
#pragma omp parallel for schedule(static)
      for (int k = 0; k < k_end; ++k) {
        rots[k] = make_rotation(a, round[k].first, round[k].second);
      }
#pragma omp parallel for schedule(static)
      for (int k = 0; k < k_end; ++k) {
        if (rots[k].s == 0.0) continue;
        rotate_columns(a, rots[k]);
        rotate_columns(q, rots[k]);
      }
#pragma omp parallel for schedule(static)
      for (int k = 0; k < k_end; ++k) {
        if (rots[k].s == 0.0) continue;
        rotate_rows(a, rots[k]);
      }
    }
  }
  if (off_diagonal_norm(a) <= tol) return finalize_spectrum(a, q);
  fail_convergence(off_diagonal_norm(a), tol);
}

LaplacianReport laplacian_report(const Graph& g) {
  LaplacianReport report;
  report.spectrum = sym_eig(laplacian(g));
  const int n = g.size();
  report.spectral_radius = report.spectrum.eigenvalues[n - 1];
  report.algebraic_connectivity = n >= 2 ? report.spectrum.eigenvalues[1] : 0.0;
  report.fiedler = report.spectrum.eigenvectors.column(n >= 2 ? 1 : 0);
  const DegreeSummary deg = degree_summary(g);
  if (deg.edge_count > 0) {
    report.grone_bound = deg.d_max + 1.0;
    double worst = 0.0;
    for (const auto& e : g.edges()) {
      worst = std::max(worst, deg.degrees[e.i] + deg.degrees[e.j]);
    }
    report.anderson_bound = worst;
  }
  return report;
}

std::vector<double> ring_spectrum_closed_form(int n) {
  if (n < 3) throw std::invalid_argument("ring_spectrum_closed_form: need n >= 3");
  std::vector<double> vals;
  vals.reserve(n);
  vals.push_back(0.0);
  for (int k = 1; k <= (n - 1) / 2; ++k) {
    const double v = 2.0 - 2.0 * std::cos(2.0 * M_PI * k / n);
    vals.push_back(v);
    vals.push_back(v);
  }
  if (n % 2 == 0) vals.push_back(4.0);
  return vals;
}

std::vector<double> path_spectrum_closed_form(int n) {
  if (n < 1) throw std::invalid_argument("path_spectrum_closed_form: need n >= 1");
  std::vector<double> vals(n);
  for (int j = 0; j < n; ++j) vals[j] = 2.0 - 2.0 * std::cos(j * M_PI / n);
  return vals;
}

std::vector<std::pair<int, int>> eigenvalue_groups(const std::vector<double>& eigenvalues) {
  std::vector<std::pair<int, int>> groups;
  if (eigenvalues.empty()) return groups;
  const double scale = std::max(1.0, std::fabs(eigenvalues.back()));
  const double tol = 1e-7 * scale;
  int first = 0;
  for (std::size_t i = 1; i < eigenvalues.size(); ++i) {
    if (eigenvalues[i] - eigenvalues[i - 1] > tol) {
      groups.emplace_back(first, static_cast<int>(i) - 1);
      first = static_cast<int>(i);
    }
  }
  groups.emplace_back(first, static_cast<int>(eigenvalues.size()) - 1);
  return groups;
}

std::string laplacian_report_to_json(const LaplacianReport& report) {
  nlohmann::json doc;
  doc["eigenvalues"] = report.spectrum.eigenvalues;
  doc["eigenvectors"] = report.spectrum.eigenvectors.data();  // row-major, column j <-> eigenvalue j
  doc["algebraic_connectivity"] = report.algebraic_connectivity;
  doc["spectral_radius"] = report.spectral_radius;
  doc["fiedler"] = report.fiedler;
  doc["anderson_bound"] = report.anderson_bound;
  doc["grone_bound"] = report.grone_bound;
  return doc.dump(2);
}

}  // namespace orgsig
