#include "orgsig/cli.hpp"

#include <omp.h>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "orgsig/experiments.hpp"
#include "orgsig/graph.hpp"
#include "orgsig/matrix.hpp"
#include "orgsig/org_model.hpp"
#include "orgsig/signal_design.hpp"
#include "orgsig/spectral.hpp"

namespace orgsig {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool looks_like_json(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{';
  }
  return false;
}

/// JSON input is self-describing; plain edge lists need --n.
Graph load_graph(const std::string& path, int n_flag) {
  const std::string text = slurp(path);
  if (looks_like_json(text)) {
    Graph g = graph_from_json(text);
    if (n_flag > 0 && n_flag != g.size()) {
      throw std::invalid_argument("--n disagrees with the node count in " + path);
    }
    return g;
  }
  if (n_flag <= 0) {
    throw std::invalid_argument("edge-list input requires --n (node count): " + path);
  }
  return graph_from_edge_list(text, n_flag);
}

std::vector<double> parse_grid(const std::string& text) {
  double a = 0.0;
  double b = 0.0;
  double step = 0.0;
  char extra = '\0';
  const int got = std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &a, &b, &step, &extra);
  if (got != 3) throw std::invalid_argument("--grid expects a:b:step, got \"" + text + "\"");
  if (!(a > 0.0) || !(step > 0.0) || !(b >= a)) {
    throw std::invalid_argument("--grid requires 0 < a <= b and step > 0");
  }
  std::vector<double> grid;
  const double limit = b + 1e-9 * step;
  for (double v = a; v <= limit; v += step) {
    grid.push_back(v);
    if (grid.size() > 100000) throw std::invalid_argument("--grid produces too many points");
  }
  return grid;
}

struct CommonArgs {
  std::string graph_path;
  std::string model_path;
  std::string synergy = "complete";
  double beta = 0.0;
  double beta_tilde = 0.0;
  int n = 0;
  bool beta_set = false;
  bool beta_tilde_set = false;
};

OrgModel build_model(const CommonArgs& args) {
  if (!args.model_path.empty()) return model_from_json(slurp(args.model_path));
  if (args.graph_path.empty()) {
    throw std::invalid_argument("provide --model FILE or --graph FILE with --beta");
  }
  if (!args.beta_set) throw std::invalid_argument("--beta is required with --graph");
  Graph incentive = load_graph(args.graph_path, args.n);
  Graph synergy = args.synergy == "complete"
                      ? make_complete(incentive.size())
                      : load_graph(args.synergy, incentive.size());
  std::optional<double> beta_tilde;
  if (args.beta_tilde_set) beta_tilde = args.beta_tilde;
  return OrgModel(std::move(incentive), std::move(synergy), args.beta, beta_tilde);
}

nlohmann::json phase_to_json(const DisclosurePhase& phase) {
  nlohmann::json p;
  p["beta_lo"] = phase.beta_lo;
  if (std::isinf(phase.beta_hi)) {
    p["beta_hi"] = nullptr;
  } else {
    p["beta_hi"] = phase.beta_hi;
  }
  p["dimension"] = phase.dimension;
  p["disclosed_eigenvalue_classes"] = phase.disclosed_eigenvalue_classes;
  return p;
}

int cmd_spectrum(const CommonArgs& args) {
  const Graph g = load_graph(args.graph_path, args.n);
  std::cout << laplacian_report_to_json(laplacian_report(g)) << "\n";
  return 0;
}

int cmd_analyze(const CommonArgs& args) {
  const OrgModel model = build_model(args);
  const SignalDesign design = optimal_signal(model);
  nlohmann::json doc;
  doc["n"] = model.size();
  doc["beta"] = model.beta();
  doc["beta_tilde"] = model.beta_tilde();
  doc["rho"] = model.prior().rho;
  doc["uniform_synergy"] = model.uniform_synergy();
  doc["design"] = nlohmann::json::parse(signal_design_to_json(design));
  if (model.prior().rho == 0.0) {
    doc["gain"] = design_gain(model, design);
    doc["informativeness"] = informativeness(design);
  }
  if (model.uniform_synergy() && model.symmetric_mode()) {
    auto phases = nlohmann::json::array();
    for (const DisclosurePhase& phase : phase_diagram(model.incentive())) {
      phases.push_back(phase_to_json(phase));
    }
    doc["phases"] = phases;
  }
  std::cout << doc.dump(2) << "\n";
  return 0;
}

int cmd_plus_one(const CommonArgs& args) {
  const OrgModel model = build_model(args);
  if (!model.uniform_synergy() || !model.symmetric_mode()) {
    throw std::invalid_argument(
        "plus-one: closed form requires complete unit synergy and beta_tilde = beta");
  }
  nlohmann::json doc;
  std::vector<double> gains(model.size());
  for (int i = 0; i < model.size(); ++i) {
    gains[i] = plus_one_gain(model.incentive(), model.beta(), i);
  }
  doc["gains"] = gains;
  doc["best_target"] = plus_one_best_target(model.incentive(), model.beta());
  std::cout << doc.dump(2) << "\n";
  return 0;
}

struct ExperimentArgs {
  int n = 0;
  double p = -1.0;
  int m_attach = 0;
  int samples = 100;
  std::uint64_t seed = 1;
  std::string grid;
  std::string out;
  std::string svg;
  std::string raw;
  bool p_set = false;
  bool m_set = false;
};

SweepConfig build_config(const ExperimentArgs& args) {
  if (args.p_set == args.m_set) {
    throw std::invalid_argument("choose a random family: exactly one of --p or --m-attach");
  }
  SweepConfig config;
  config.family = args.p_set ? RandomFamily::erdos_renyi : RandomFamily::barabasi_albert;
  config.n = args.n;
  config.p = args.p;
  config.m_attach = args.m_attach;
  config.samples = args.samples;
  config.master_seed = args.seed;
  return config;
}

int cmd_sweep(const ExperimentArgs& args) {
  SweepConfig config = build_config(args);
  config.beta_inv_grid = parse_grid(args.grid);
  const bool keep_raw = !args.raw.empty();
  const SweepResult result = dimension_sweep(config, keep_raw);
  emit_csv(result, args.out);
  if (!args.svg.empty()) emit_svg_chart(result, args.svg);
  if (keep_raw) {
    std::ofstream raw_out(args.raw, std::ios::binary);
    if (!raw_out) throw std::invalid_argument("cannot open output file: " + args.raw);
    raw_out << "sample,beta_inv,dim\n";
    for (std::size_t s = 0; s < result.per_sample_dims.size(); ++s) {
      for (std::size_t k = 0; k < result.per_sample_dims[s].size(); ++k) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.12g", config.beta_inv_grid[k]);
        raw_out << s << ',' << buf << ',' << result.per_sample_dims[s][k] << '\n';
      }
    }
    if (!raw_out.good()) throw std::runtime_error("failed writing " + args.raw);
  }
  std::cerr << "sweep: " << config.samples << " samples, " << config.beta_inv_grid.size()
            << " grid points -> " << args.out << "\n";
  return 0;
}

int cmd_bounds(const ExperimentArgs& args) {
  const SweepConfig config = build_config(args);
  const BoundsResult result = spectral_bounds_experiment(config);
  emit_csv(result, args.out);
  if (!args.svg.empty()) emit_svg_chart(result, args.svg);
  std::cerr << "bounds: " << config.samples << " samples -> " << args.out << "\n";
  return 0;
}

int cmd_validate(const std::string& model_path) {
  const OrgModel model = model_from_json(slurp(model_path));
  const int n = model.size();
  bool all_ok = true;
  auto check = [&](const std::string& name, bool ok, double detail = 0.0,
                   bool has_detail = false) {
    if (ok) {
      std::cout << "ok: " << name << "\n";
    } else {
      all_ok = false;
      std::cout << "FAIL: " << name;
      if (has_detail) std::cout << " (" << detail << ")";
      std::cout << "\n";
    }
  };

  const Matrix b = equilibrium_matrix(model);
  Matrix system = Matrix::identity(n) + model.beta() * laplacian(model.incentive());
  check("equilibrium residual (I+bL)B = I",
        max_abs_diff(system * b, Matrix::identity(n)) <= 1e-9);
  std::vector<double> row_sums = matvec(b, std::vector<double>(n, 1.0));
  double row_err = 0.0;
  for (double v : row_sums) row_err = std::max(row_err, std::fabs(v - 1.0));
  check("equilibrium rows sum to 1", row_err <= 1e-10, row_err, true);
  check("equilibrium matrix symmetric", max_abs_diff(b, transpose(b)) <= 1e-9);

  const PayoffMatrix pm = payoff_matrix(model);
  check("payoff matrix symmetric", max_abs_diff(pm.v, transpose(pm.v)) <= 1e-10);
  std::vector<double> v_rows = matvec(pm.v, std::vector<double>(n, 1.0));
  double v_err = 0.0;
  for (double v : v_rows) v_err = std::max(v_err, std::fabs(v - 1.0));
  check("payoff matrix rows sum to 1", v_err <= 1e-8, v_err, true);

  const SignalDesign design = optimal_signal(model);
  check("design includes the average statistic", design.includes_average);
  check("design dimension in [1, n]", design.dimension >= 1 && design.dimension <= n);

  const Matrix post = posterior_covariance(design, model.prior());
  const Spectrum post_spec = sym_eig(post);
  check("posterior covariance PSD",
        post_spec.eigenvalues.front() >= -1e-8 * std::max(1.0, model.prior().sigma2));
  const Spectrum slack = sym_eig(symmetrize(model.prior_covariance() - post));
  check("posterior covariance dominated by prior",
        slack.eigenvalues.front() >= -1e-8 * std::max(1.0, model.prior().sigma2));

  if (model.prior().rho == 0.0) {
    const double gain = design_gain(model, design);
    const double traced = trace(pm.v * post);
    check("gain matches tr(V posterior)", std::fabs(gain - traced) <= 1e-7,
          std::fabs(gain - traced), true);
    const double base = expected_payoff(model, Matrix(n, n));
    const double informed = expected_payoff(model, post);
    check("disclosure does not hurt", informed >= base - 1e-8, informed - base, true);
  }

  if (model.uniform_synergy() && model.prior().rho == 0.0) {
    const SignalDesign closed_form =
        uniform_synergy_signal(model.incentive(), model.beta(), model.beta_tilde());
    check("closed form agrees with eigensolver path",
          closed_form.dimension == design.dimension);
    if (closed_form.dimension == design.dimension) {
      const Matrix wt_a = transpose(design.weights);
      const Matrix proj_a = design.weights * spd_solve(wt_a * design.weights, wt_a);
      const Matrix wt_b = transpose(closed_form.weights);
      const Matrix proj_b = closed_form.weights * spd_solve(wt_b * closed_form.weights, wt_b);
      check("closed form spans the same statistics",
            max_abs_diff(proj_a, proj_b) <= 1e-7, max_abs_diff(proj_a, proj_b), true);
    }
  }
  return all_ok ? 0 : 2;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Optimal public-information policies for networked organizations"};
  app.require_subcommand(1);

  CommonArgs spectrum_args;
  CLI::App* spectrum = app.add_subcommand("spectrum", "Laplacian spectrum and bounds of a graph");
  spectrum->add_option("--graph", spectrum_args.graph_path, "graph file (JSON or edge list)")
      ->required();
  spectrum->add_option("--n", spectrum_args.n, "node count for edge-list input");

  CommonArgs analyze_args;
  CLI::App* analyze = app.add_subcommand("analyze", "Optimal disclosure policy for a model");
  auto* analyze_model = analyze->add_option("--model", analyze_args.model_path, "model JSON file");
  auto* analyze_graph =
      analyze->add_option("--graph", analyze_args.graph_path, "incentive graph file");
  analyze_model->excludes(analyze_graph);
  auto* analyze_beta = analyze->add_option("--beta", analyze_args.beta, "coordination weight");
  auto* analyze_bt =
      analyze->add_option("--beta-tilde", analyze_args.beta_tilde, "designer coordination weight");
  analyze->add_option("--synergy", analyze_args.synergy, "\"complete\" or a graph file");
  analyze->add_option("--n", analyze_args.n, "node count for edge-list input");

  CommonArgs plus_args;
  CLI::App* plus = app.add_subcommand("plus-one", "Per-node gains of one extra disclosed state");
  auto* plus_model = plus->add_option("--model", plus_args.model_path, "model JSON file");
  auto* plus_graph = plus->add_option("--graph", plus_args.graph_path, "incentive graph file");
  plus_model->excludes(plus_graph);
  auto* plus_beta = plus->add_option("--beta", plus_args.beta, "coordination weight");
  plus->add_option("--n", plus_args.n, "node count for edge-list input");

  ExperimentArgs sweep_args;
  CLI::App* sweep = app.add_subcommand("sweep", "Optimal dimension across random graphs");
  sweep->add_option("--n", sweep_args.n, "node count")->required();
  auto* sweep_p = sweep->add_option("--p", sweep_args.p, "edge probability (G(n,p) family)");
  auto* sweep_m =
      sweep->add_option("--m-attach", sweep_args.m_attach, "attachment count (scale-free family)");
  sweep->add_option("--samples", sweep_args.samples, "number of sampled graphs");
  sweep->add_option("--seed", sweep_args.seed, "master seed");
  sweep->add_option("--grid", sweep_args.grid, "beta_inv grid a:b:step")->required();
  sweep->add_option("--out", sweep_args.out, "output CSV path")->required();
  sweep->add_option("--svg", sweep_args.svg, "optional SVG chart path");
  sweep->add_option("--raw", sweep_args.raw, "optional per-sample CSV path");

  ExperimentArgs bounds_args;
  CLI::App* bounds = app.add_subcommand("bounds", "Degree extremes vs extremal eigenvalues");
  bounds->add_option("--n", bounds_args.n, "node count")->required();
  auto* bounds_p = bounds->add_option("--p", bounds_args.p, "edge probability (G(n,p) family)");
  auto* bounds_m =
      bounds->add_option("--m-attach", bounds_args.m_attach, "attachment count (scale-free family)");
  bounds->add_option("--samples", bounds_args.samples, "number of sampled graphs");
  bounds->add_option("--seed", bounds_args.seed, "master seed");
  bounds->add_option("--out", bounds_args.out, "output CSV path")->required();
  bounds->add_option("--svg", bounds_args.svg, "optional SVG chart path");

  std::string validate_model;
  CLI::App* validate = app.add_subcommand("validate", "Model self-checks");
  validate->add_option("--model", validate_model, "model JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    omp_set_num_threads(worker_count());
    analyze_args.beta_set = analyze_beta->count() > 0;
    analyze_args.beta_tilde_set = analyze_bt->count() > 0;
    plus_args.beta_set = plus_beta->count() > 0;
    sweep_args.p_set = sweep_p->count() > 0;
    sweep_args.m_set = sweep_m->count() > 0;
    bounds_args.p_set = bounds_p->count() > 0;
    bounds_args.m_set = bounds_m->count() > 0;

    if (app.got_subcommand(spectrum)) return cmd_spectrum(spectrum_args);
    if (app.got_subcommand(analyze)) return cmd_analyze(analyze_args);
    if (app.got_subcommand(plus)) return cmd_plus_one(plus_args);
    if (app.got_subcommand(sweep)) return cmd_sweep(sweep_args);
    if (app.got_subcommand(bounds)) return cmd_bounds(bounds_args);
    if (app.got_subcommand(validate)) return cmd_validate(validate_model);
    std::cerr << "error: no subcommand selected\n";
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace orgsig
