#pragma once

#include <string>
#include <utility>
#include <vector>

#include "orgsig/graph.hpp"
#include "orgsig/matrix.hpp"

namespace orgsig {

/// Full symmetric eigendecomposition. eigenvalues are ascending; column j of
/// eigenvectors pairs with eigenvalues[j]. Columns are orthonormal
/// (max |Q'Q - I| <= 1e-9) and satisfy the residual bound
/// max |A Q - Q diag| <= 1e-8 * max(1, max |A|).
struct Spectrum {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;
};

/// Combinatorial Laplacian L = D - W of the weighted graph.
Matrix laplacian(const Graph& g);

/// Parallel Jacobi eigensolver (round-robin orderings, two-phase updates).
/// Deterministic: results are bit-identical for any thread count. Requires
/// max |A - A'| <= 1e-12 * max(1, max |A|); throws NumericalError if the
/// off-diagonal norm has not fallen below 1e-12 * ||A||_F after 100 sweeps.
/// Sign convention: in each column the entry of largest magnitude is
/// positive, ties broken by lowest index.
Spectrum sym_eig(const Matrix& a);

/// Serial cyclic-by-rows Jacobi, same contract as sym_eig. Kept as the
/// reference implementation for testing the parallel kernel.
Spectrum sym_eig_serial(const Matrix& a);

struct LaplacianReport {
  Spectrum spectrum;
  double algebraic_connectivity = 0.0;  ///< lambda_2
  double spectral_radius = 0.0;         ///< lambda_n
  std::vector<double> fiedler;          ///< eigenvector of lambda_2
  double anderson_bound = 0.0;  ///< max_{ij in E} d(i)+d(j), upper bound on lambda_n
  double grone_bound = 0.0;     ///< d_max + 1, lower bound on lambda_n (>=1 edge)
};

/// Eigendecomposition of L plus the summary quantities above. For n = 1 the
/// spectrum is {0} with eigenvector {1} and the bounds are 0.
LaplacianReport laplacian_report(const Graph& g);

/// Ring Laplacian eigenvalues 2 - 2cos(2*pi*k/n), ascending, n >= 3:
/// k = 0 once, k = 1..ceil(n/2)-1 twice each, and for even n the simple
/// eigenvalue 4 at k = n/2.
std::vector<double> ring_spectrum_closed_form(int n);

/// Path Laplacian eigenvalues 2 - 2cos(j*pi/n), j = 0..n-1, ascending.
std::vector<double> path_spectrum_closed_form(int n);

/// Groups indices of near-equal eigenvalues: [first, last] index pairs with
/// |lambda_i - lambda_j| <= 1e-7 * max(1, lambda_max) chaining within a
/// group. Test helper for comparing eigenspaces rather than eigenvectors.
std::vector<std::pair<int, int>> eigenvalue_groups(const std::vector<double>& eigenvalues);

std::string laplacian_report_to_json(const LaplacianReport& report);

}  // namespace orgsig
