// Compares the serial cyclic Jacobi reference against the parallel
// round-robin kernel on random-graph Laplacians, and the experiment harness
// at 1 vs all workers. Prints wall times, speedups and the max eigenvalue
// disagreement between the two kernels.

#include <omp.h>

#include <cmath>
#include <cstdio>
#include <vector>

#include "orgsig/experiments.hpp"
#include "orgsig/graph.hpp"
#include "orgsig/spectral.hpp"

namespace {

double time_once(const orgsig::Matrix& m, bool parallel, std::vector<double>& eigenvalues) {
  const double start = omp_get_wtime();
  const orgsig::Spectrum s = parallel ? orgsig::sym_eig(m) : orgsig::sym_eig_serial(m);
  const double elapsed = omp_get_wtime() - start;
  eigenvalues = s.eigenvalues;
  return elapsed;
}

}  // namespace

int main() {
  const int threads = omp_get_max_threads();
  std::printf("eigensolver kernels, %d threads available\n\n", threads);
  std::printf("%6s %12s %12s %9s %14s\n", "n", "serial (s)", "parallel (s)", "speedup",
              "max |dlambda|");
  for (int n : {50, 100, 200, 400}) {
    const orgsig::Graph g = orgsig::erdos_renyi(n, 0.1, 42);
    const orgsig::Matrix l = orgsig::laplacian(g);
    std::vector<double> serial_vals;
    std::vector<double> parallel_vals;
    time_once(l, false, serial_vals);  // warm up
    const double t_serial = time_once(l, false, serial_vals);
    time_once(l, true, parallel_vals);
    const double t_parallel = time_once(l, true, parallel_vals);
    double max_diff = 0.0;
    for (int i = 0; i < n; ++i) {
      max_diff = std::max(max_diff, std::fabs(serial_vals[i] - parallel_vals[i]));
    }
    std::printf("%6d %12.4f %12.4f %9.2f %14.3e\n", n, t_serial, t_parallel,
                t_serial / t_parallel, max_diff);
  }

  std::printf("\nexperiment harness (dimension sweep, n=100, 60 samples)\n");
  orgsig::SweepConfig config;
  config.family = orgsig::RandomFamily::erdos_renyi;
  config.n = 100;
  config.p = 0.1;
  config.samples = 60;
  config.master_seed = 7;
  for (double b = 10.0; b <= 250.0; b += 10.0) config.beta_inv_grid.push_back(b);

  omp_set_num_threads(1);
  double start = omp_get_wtime();
  orgsig::dimension_sweep(config);
  const double t1 = omp_get_wtime() - start;
  omp_set_num_threads(threads);
  start = omp_get_wtime();
  orgsig::dimension_sweep(config);
  const double tn = omp_get_wtime() - start;
  std::printf("%d worker: %.3f s, %d workers: %.3f s, speedup %.2f\n", 1, t1, threads, tn,
              t1 / tn);
  return 0;
}
