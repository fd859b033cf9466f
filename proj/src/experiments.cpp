#include "orgsig/experiments.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <stdexcept>

#include "orgsig/matrix.hpp"
#include "orgsig/rng.hpp"
#include "orgsig/signal_design.hpp"
#include "orgsig/spectral.hpp"

namespace orgsig {

namespace {

void check_config(const SweepConfig& config, bool needs_grid) {
  if (config.n < 1) throw std::invalid_argument("sweep: n must be at least 1");
  if (config.samples < 1) throw std::invalid_argument("sweep: samples must be at least 1");
  if (config.family == RandomFamily::erdos_renyi) {
    if (!(config.p >= 0.0 && config.p <= 1.0)) {
      throw std::invalid_argument("sweep: p must be in [0, 1]");
    }
  } else {
    if (config.m_attach < 1 || config.m_attach > config.n - 2) {
      throw std::invalid_argument("sweep: m_attach must be in [1, n-2]");
    }
  }
  if (!needs_grid) return;
  if (config.beta_inv_grid.empty()) throw std::invalid_argument("sweep: empty beta_inv grid");
  double prev = 0.0;
  for (double v : config.beta_inv_grid) {
    if (!(v > prev)) {
      throw std::invalid_argument("sweep: beta_inv grid must be positive and strictly ascending");
    }
    prev = v;
  }
}

Graph sample_graph(const SweepConfig& config, int sample) {
  const std::uint64_t seed = mix_seed(config.master_seed, static_cast<std::uint64_t>(sample));
  if (config.family == RandomFamily::erdos_renyi) {
    return erdos_renyi(config.n, config.p, seed);
  }
  return barabasi_albert(config.n, config.m_attach, seed);
}

std::string family_tag(const SweepConfig& config) {
  char buf[64];
  if (config.family == RandomFamily::erdos_renyi) {
    std::snprintf(buf, sizeof(buf), "er(p=%g)", config.p);
  } else {
    std::snprintf(buf, sizeof(buf), "ba(m=%d)", config.m_attach);
  }
  return buf;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  return out;
}

/// Captures the first exception thrown inside an OpenMP loop body so it can
/// be rethrown after the parallel region.
class ErrorCollector {
 public:
  template <typename Fn>
  void run(Fn&& fn) noexcept {
    try {
      fn();
    } catch (...) {
#pragma omp critical(orgsig_error_collector)
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow_if_any() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::exception_ptr error_;
};

}  // namespace

int worker_count() {
  const int hardware = omp_get_max_threads();
  const char* env = std::getenv("LP_THREADS");
  if (env == nullptr || *env == '\0') return hardware;
  char* end = nullptr;
  const long requested = std::strtol(env, &end, 10);
  if (end == nullptr || *end != '\0' || requested < 1) {
    throw std::invalid_argument("LP_THREADS must be a positive integer");
  }
  return static_cast<int>(std::min<long>(requested, hardware));
}

SweepResult dimension_sweep(const SweepConfig& config, bool keep_per_sample) {
  check_config(config, true);
  const int samples = config.samples;
  const int points = static_cast<int>(config.beta_inv_grid.size());
  std::vector<std::vector<int>> dims(samples);
  ErrorCollector errors;
  const int workers = worker_count();
#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (int s = 0; s < samples; ++s) {
    errors.run([&, s] {
      const Graph g = sample_graph(config, s);
      const Spectrum spec = sym_eig(laplacian(g));
      auto& row = dims[s];
      row.resize(points);
      for (int k = 0; k < points; ++k) {
        const double beta = 1.0 / config.beta_inv_grid[k];
        row[k] = uniform_synergy_signal(config.n, spec, beta, beta).dimension;
        if (k > 0 && row[k] < row[k - 1]) {
          throw NumericalError("dimension_sweep: dimension decreased along ascending beta_inv");
        }
      }
    });
  }
  errors.rethrow_if_any();

  SweepResult result;
  result.n = config.n;
  result.full_revelation_cutoff = 2.0 * config.n;
  result.rows.resize(points);
  for (int k = 0; k < points; ++k) {
    long long sum = 0;
    long long sum_sq = 0;
    int lo = dims[0][k];
    int hi = dims[0][k];
    for (int s = 0; s < samples; ++s) {
      const int d = dims[s][k];
      sum += d;
      sum_sq += static_cast<long long>(d) * d;
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    SweepRow& row = result.rows[k];
    row.beta_inv = config.beta_inv_grid[k];
    row.n_samples = samples;
    row.mean_dim = static_cast<double>(sum) / samples;
    const double variance =
        std::max(0.0, static_cast<double>(sum_sq) / samples - row.mean_dim * row.mean_dim);
    row.std_dim = std::sqrt(variance);
    row.min_dim = lo;
    row.max_dim = hi;
  }
  if (keep_per_sample) result.per_sample_dims = std::move(dims);
  return result;
}

BoundsResult spectral_bounds_experiment(const SweepConfig& config) {
  check_config(config, false);
  BoundsResult result;
  result.model_tag = family_tag(config);
  result.n = config.n;
  result.records.resize(config.samples);
  ErrorCollector errors;
  const int workers = worker_count();
#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (int s = 0; s < config.samples; ++s) {
    errors.run([&, s] {
      const Graph g = sample_graph(config, s);
      const DegreeSummary deg = degree_summary(g);
      const Spectrum spec = sym_eig(laplacian(g));
      BoundsRecord& rec = result.records[s];
      rec.sample = s;
      rec.d_max = deg.d_max;
      rec.d_min = deg.d_min;
      rec.lambda_n = spec.eigenvalues[config.n - 1];
      rec.lambda_2 = config.n >= 2 ? spec.eigenvalues[1] : 0.0;
      rec.connected = is_connected(g);
    });
  }
  errors.rethrow_if_any();
  return result;
}

void emit_csv(const SweepResult& result, const std::string& path) {
  std::ofstream out = open_output(path);
  out << "beta_inv,mean_dim,std_dim,min_dim,max_dim,n_samples\n";
  for (const SweepRow& row : result.rows) {
    out << format_double(row.beta_inv) << ',' << format_double(row.mean_dim) << ','
        << format_double(row.std_dim) << ',' << row.min_dim << ',' << row.max_dim << ','
        << row.n_samples << '\n';
  }
  if (!out.good()) throw std::runtime_error("failed writing " + path);
}

void emit_csv(const BoundsResult& result, const std::string& path) {
  std::ofstream out = open_output(path);
  out << "model,sample,d_max,lambda_n,d_min,lambda_2\n";
  for (const BoundsRecord& rec : result.records) {
    out << result.model_tag << ',' << rec.sample << ',' << format_double(rec.d_max) << ','
        << format_double(rec.lambda_n) << ',' << format_double(rec.d_min) << ','
        << format_double(rec.lambda_2) << '\n';
  }
  if (!out.good()) throw std::runtime_error("failed writing " + path);
}

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 440.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 30.0;
constexpr double kMarginTop = 30.0;
constexpr double kMarginBottom = 55.0;

struct LinearScale {
  double lo = 0.0;
  double hi = 1.0;
  double px_lo = 0.0;
  double px_hi = 1.0;
  double operator()(double v) const {
    if (hi == lo) return 0.5 * (px_lo + px_hi);
    return px_lo + (v - lo) / (hi - lo) * (px_hi - px_lo);
  }
};

void svg_header(std::ofstream& out) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
      << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
}

void svg_axes(std::ofstream& out, const LinearScale& x, const LinearScale& y,
              const std::string& x_label, const std::string& y_label) {
  out << "<line x1=\"" << x.px_lo << "\" y1=\"" << y.px_lo << "\" x2=\"" << x.px_hi << "\" y2=\""
      << y.px_lo << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << x.px_lo << "\" y1=\"" << y.px_lo << "\" x2=\"" << x.px_lo << "\" y2=\""
      << y.px_hi << "\" stroke=\"black\"/>\n";
  const int ticks = 5;
  for (int t = 0; t <= ticks; ++t) {
    const double fx = x.lo + (x.hi - x.lo) * t / ticks;
    const double px = x(fx);
    out << "<line x1=\"" << px << "\" y1=\"" << y.px_lo << "\" x2=\"" << px << "\" y2=\""
        << y.px_lo + 5 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << px << "\" y=\"" << y.px_lo + 20
        << "\" font-size=\"11\" text-anchor=\"middle\">" << format_double(fx) << "</text>\n";
    const double fy = y.lo + (y.hi - y.lo) * t / ticks;
    const double py = y(fy);
    out << "<line x1=\"" << x.px_lo - 5 << "\" y1=\"" << py << "\" x2=\"" << x.px_lo << "\" y2=\""
        << py << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << x.px_lo - 8 << "\" y=\"" << py + 4
        << "\" font-size=\"11\" text-anchor=\"end\">" << format_double(fy) << "</text>\n";
  }
  out << "<text x=\"" << 0.5 * (x.px_lo + x.px_hi) << "\" y=\"" << kHeight - 12
      << "\" font-size=\"13\" text-anchor=\"middle\">" << x_label << "</text>\n";
  out << "<text x=\"18\" y=\"" << 0.5 * (y.px_lo + y.px_hi)
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << 0.5 * (y.px_lo + y.px_hi) << ")\">" << y_label << "</text>\n";
}

}  // namespace

void emit_svg_chart(const SweepResult& result, const std::string& path) {
  if (result.rows.empty()) throw std::invalid_argument("emit_svg_chart: empty sweep result");
  std::ofstream out = open_output(path);
  LinearScale x{result.rows.front().beta_inv,
                std::max(result.rows.back().beta_inv, result.full_revelation_cutoff), kMarginLeft,
                kWidth - kMarginRight};
  LinearScale y{0.0, static_cast<double>(result.n), kHeight - kMarginBottom, kMarginTop};
  svg_header(out);
  svg_axes(out, x, y, "beta_inv", "mean dimension");
  const double cutoff_px = x(result.full_revelation_cutoff);
  out << "<line x1=\"" << cutoff_px << "\" y1=\"" << y.px_lo << "\" x2=\"" << cutoff_px
      << "\" y2=\"" << y.px_hi << "\" stroke=\"gray\" stroke-dasharray=\"5,4\"/>\n";
  out << "<text x=\"" << cutoff_px + 4 << "\" y=\"" << y.px_hi + 12
      << "\" font-size=\"11\" fill=\"gray\">full revelation (2n)</text>\n";
  for (const SweepRow& row : result.rows) {
    const double px = x(row.beta_inv);
    const double y_lo = y(std::max(0.0, row.mean_dim - row.std_dim));
    const double y_hi = y(std::min(static_cast<double>(result.n), row.mean_dim + row.std_dim));
    out << "<line x1=\"" << px << "\" y1=\"" << y_lo << "\" x2=\"" << px << "\" y2=\"" << y_hi
        << "\" stroke=\"#888888\"/>\n";
  }
  out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
  for (const SweepRow& row : result.rows) {
    out << format_double(x(row.beta_inv)) << ',' << format_double(y(row.mean_dim)) << ' ';
  }
  out << "\"/>\n";
  for (const SweepRow& row : result.rows) {
    out << "<circle cx=\"" << format_double(x(row.beta_inv)) << "\" cy=\""
        << format_double(y(row.mean_dim)) << "\" r=\"2.5\" fill=\"steelblue\"/>\n";
  }
  out << "</svg>\n";
  if (!out.good()) throw std::runtime_error("failed writing " + path);
}

void emit_svg_chart(const BoundsResult& result, const std::string& path) {
  if (result.records.empty()) throw std::invalid_argument("emit_svg_chart: empty bounds result");
  std::ofstream out = open_output(path);
  double lo = result.records.front().d_max;
  double hi = lo;
  for (const BoundsRecord& rec : result.records) {
    lo = std::min({lo, rec.d_max, rec.lambda_n});
    hi = std::max({hi, rec.d_max, rec.lambda_n});
  }
  lo = std::floor(lo) - 1.0;
  hi = std::ceil(hi) + 6.0;
  LinearScale x{lo, hi, kMarginLeft, kWidth - kMarginRight};
  LinearScale y{lo, hi, kHeight - kMarginBottom, kMarginTop};
  svg_header(out);
  svg_axes(out, x, y, "d_max", "lambda_n");
  out << "<line x1=\"" << x(lo) << "\" y1=\"" << y(lo) << "\" x2=\"" << x(hi) << "\" y2=\""
      << y(hi) << "\" stroke=\"gray\"/>\n";
  out << "<line x1=\"" << x(lo) << "\" y1=\"" << y(lo + 5.0) << "\" x2=\"" << x(hi - 5.0)
      << "\" y2=\"" << y(hi) << "\" stroke=\"gray\" stroke-dasharray=\"5,4\"/>\n";
  out << "<text x=\"" << x(hi) - 80 << "\" y=\"" << y(hi) + 30
      << "\" font-size=\"11\" fill=\"gray\">y = x and y = x + 5</text>\n";
  for (const BoundsRecord& rec : result.records) {
    out << "<circle cx=\"" << format_double(x(rec.d_max)) << "\" cy=\""
        << format_double(y(rec.lambda_n)) << "\" r=\"3\" fill=\"steelblue\" fill-opacity=\"0.55\"/>\n";
  }
  out << "</svg>\n";
  if (!out.good()) throw std::runtime_error("failed writing " + path);
}

}  // namespace orgsig
