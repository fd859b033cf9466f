#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orgsig/graph.hpp"

namespace orgsig {

enum class RandomFamily { erdos_renyi, barabasi_albert };

/// Monte Carlo sweep configuration. Each sample s draws one graph with seed
/// mix_seed(master_seed, s), so results do not depend on worker count or
/// sample scheduling.
struct SweepConfig {
  RandomFamily family = RandomFamily::erdos_renyi;
  int n = 0;
  double p = 0.0;      ///< erdos_renyi only
  int m_attach = 0;    ///< barabasi_albert only
  int samples = 0;
  std::vector<double> beta_inv_grid;  ///< ascending, positive
  std::uint64_t master_seed = 0;
};

struct SweepRow {
  double beta_inv = 0.0;
  double mean_dim = 0.0;
  double std_dim = 0.0;  ///< population standard deviation
  int min_dim = 0;
  int max_dim = 0;
  int n_samples = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;  ///< one per grid point, grid order
  /// per_sample_dims[s][k] = dimension of sample s at grid point k;
  /// kept only when requested (raw output).
  std::vector<std::vector<int>> per_sample_dims;
  int n = 0;
  double full_revelation_cutoff = 0.0;  ///< beta_inv = 2n
};

/// Optimal-dimension distribution across random graphs for complete unit
/// synergy, beta_tilde = beta, at each beta_inv grid point. Dimensions per
/// sample are nondecreasing along the (ascending) beta_inv grid; violations
/// throw NumericalError. OpenMP-parallel over samples; aggregation runs in
/// sample order, so output bytes are independent of LP_THREADS.
SweepResult dimension_sweep(const SweepConfig& config, bool keep_per_sample = false);

struct BoundsRecord {
  int sample = 0;
  double d_max = 0.0;
  double lambda_n = 0.0;
  double d_min = 0.0;
  double lambda_2 = 0.0;
  bool connected = false;
};

struct BoundsResult {
  std::string model_tag;  ///< e.g. "er(p=0.1)" or "ba(m=5)"
  int n = 0;
  std::vector<BoundsRecord> records;  ///< sample order
};

/// Extremal Laplacian eigenvalues vs degree extremes across random graphs
/// (the empirical-band experiment). Same determinism contract as
/// dimension_sweep.
BoundsResult spectral_bounds_experiment(const SweepConfig& config);

/// CSV with header beta_inv,mean_dim,std_dim,min_dim,max_dim,n_samples.
/// Identical input produces byte-identical files.
void emit_csv(const SweepResult& result, const std::string& path);

/// CSV with header model,sample,d_max,lambda_n,d_min,lambda_2.
void emit_csv(const BoundsResult& result, const std::string& path);

/// Line chart of mean dimension vs beta_inv with +-1 std error bars and a
/// dashed vertical rule at the full-revelation cutoff 2n. Self-contained
/// SVG. Throws std::invalid_argument on empty results.
void emit_svg_chart(const SweepResult& result, const std::string& path);

/// Scatter of (d_max, lambda_n) with identity and identity+5 guide lines.
void emit_svg_chart(const BoundsResult& result, const std::string& path);

/// Worker count for parallel experiment loops: the LP_THREADS environment
/// variable when set (clamped to [1, hardware]), OpenMP default otherwise.
int worker_count();

}  // namespace orgsig
