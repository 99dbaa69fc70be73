#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ergmbayes/calibrate.hpp"
#include "ergmbayes/exact.hpp"
#include "ergmbayes/exchange.hpp"
#include "ergmbayes/formula.hpp"
#include "ergmbayes/gof.hpp"
#include "ergmbayes/graph_io.hpp"
#include "ergmbayes/summary.hpp"
#include "ergmbayes/svg.hpp"
#include "ergmbayes/table_io.hpp"
#include "ergmbayes/version.hpp"

namespace ergmbayes {
namespace cli_detail {

namespace fs = std::filesystem;
using nlohmann::json;

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(text);
  while (std::getline(in, field, ',')) out.push_back(trim(field));
  return out;
}

inline std::vector<double> parse_numbers(const std::string& text, const char* what) {
  std::vector<double> out;
  for (const std::string& token : split_list(text)) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(token, &pos);
      if (pos != token.size()) throw std::invalid_argument(token);
      out.push_back(v);
    } catch (...) {
      throw std::runtime_error(std::string(what) + ": cannot parse number '" + token + "'");
    }
  }
  if (out.empty()) throw std::runtime_error(std::string(what) + ": empty list");
  return out;
}

/// A single value broadcasts to all coordinates; otherwise one per coordinate.
inline Eigen::VectorXd broadcast(const std::vector<double>& values, int dim, const char* what) {
  Eigen::VectorXd out(dim);
  if (values.size() == 1) {
    out.setConstant(values[0]);
  } else if (static_cast<int>(values.size()) == dim) {
    for (int i = 0; i < dim; ++i) out[i] = values[i];
  } else {
    throw std::runtime_error(std::string(what) + ": expected 1 or " + std::to_string(dim) +
                             " comma-separated values, got " + std::to_string(values.size()));
  }
  return out;
}

inline GaussianPrior make_prior(const std::string& mean_text, const std::string& sd_text,
                                int dim) {
  const Eigen::VectorXd mean = broadcast(parse_numbers(mean_text, "--prior-mean"), dim,
                                         "--prior-mean");
  const Eigen::VectorXd sd = broadcast(parse_numbers(sd_text, "--prior-sd"), dim, "--prior-sd");
  if ((sd.array() <= 0.0).any()) throw std::runtime_error("--prior-sd: entries must be positive");
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(dim, dim);
  cov.diagonal() = sd.array().square();
  return GaussianPrior(mean, cov);
}

inline fs::path resolve_out_dir(const std::string& flag_value) {
  std::string dir = flag_value;
  if (dir.empty()) {
    const char* env = std::getenv("ERGMBAYES_OUT_DIR");
    dir = (env != nullptr && *env != '\0') ? env : ".";
  }
  fs::create_directories(dir);
  return fs::path(dir);
}

inline Graph load_graph(const std::string& network_path, const std::string& attrs_path) {
  Graph g = read_edge_list_file(network_path);
  if (!attrs_path.empty()) read_attributes_file(attrs_path, g);
  return g;
}

inline std::vector<std::string> term_names(const ModelSpec& spec) {
  std::vector<std::string> names;
  for (const ModelTerm& term : spec.terms) names.push_back(term.name());
  return names;
}

inline void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << content;
}

/// Reproducibility record: full configuration, seed, and library version.
/// Deliberately free of timestamps so identical runs write identical bytes.
inline void write_meta(const fs::path& out_dir, const std::string& command, json config) {
  json meta;
  meta["command"] = command;
  meta["version"] = ERGMBAYES_VERSION;
  meta["config"] = std::move(config);
  write_text_file(out_dir / "run_meta.json", meta.dump(2) + "\n");
}

inline void write_quantile_table(const fs::path& path, const std::vector<std::string>& labels,
                                 const Eigen::RowVectorXd& observed, const Eigen::MatrixXd& q) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << "bin\tobserved\tq05\tq50\tq95\n";
  for (Eigen::Index b = 0; b < observed.size(); ++b)
    out << labels[b] << '\t' << format_double(observed[b]) << '\t' << format_double(q(0, b))
        << '\t' << format_double(q(1, b)) << '\t' << format_double(q(2, b)) << '\n';
}

// ---------------------------------------------------------------------------
// fit

struct FitOptions {
  std::string network, attrs, model;
  std::string prior_mean = "0", prior_sd = "10";
  long burn_in = 300, main_iters = 2000, aux_iters = 20000;
  int nchains = 6;
  double gamma = 0.6, sigma_epsilon = 0.0125;
  std::string proposal = "uniform";
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out;
};

inline int run_fit(const FitOptions& o) {
  const Graph y = load_graph(o.network, o.attrs);
  const ModelSpec spec = parse_formula(o.model);
  const GaussianPrior prior = make_prior(o.prior_mean, o.prior_sd, spec.dim());

  ExchangeControl control;
  control.burn_in = o.burn_in;
  control.main_iters = o.main_iters;
  control.aux_iters = o.aux_iters;
  control.nchains = o.nchains;
  control.gamma = o.gamma;
  control.sigma_epsilon = o.sigma_epsilon;
  control.seed = o.seed;
  control.proposal = proposal_from_string(o.proposal);
  control.threads = o.threads;

  const PosteriorSample post = run_exchange(y, spec, prior, control);

  const fs::path out_dir = resolve_out_dir(o.out);
  write_draws_file((out_dir / "draws.tsv").string(), post);
  const std::string text = format_summary(summarize(post, term_names(spec)));
  std::cout << text;
  write_text_file(out_dir / "summary.txt", text);
  plot_posterior(post, term_names(spec)).write_file((out_dir / "posterior.svg").string());
  write_meta(out_dir, "fit",
             {{"network", o.network},
              {"attrs", o.attrs},
              {"model", o.model},
              {"prior_mean", o.prior_mean},
              {"prior_sd", o.prior_sd},
              {"burn_in", o.burn_in},
              {"main_iters", o.main_iters},
              {"aux_iters", o.aux_iters},
              {"nchains", o.nchains},
              {"gamma", o.gamma},
              {"sigma_epsilon", o.sigma_epsilon},
              {"proposal", o.proposal},
              {"seed", o.seed},
              {"threads", o.threads}});
  return 0;
}

// ---------------------------------------------------------------------------
// calibrate

struct CalibrateOptions {
  std::string network, attrs, model;
  std::string prior_mean = "0", prior_sd = "10";
  long iters = 1000, aux_iters = 20000, noisy_nsim = 100, noisy_thin = 1000, mcmc = 10000;
  double step_a0 = 0.1, step_t0 = 10.0;
  std::string proposal = "uniform";
  std::uint64_t seed = 1;
  int threads = 1;  // accepted for interface uniformity; calibration is sequential
  std::string out;
};

inline int run_calibrate(const CalibrateOptions& o) {
  const Graph y = load_graph(o.network, o.attrs);
  const ModelSpec spec = parse_formula(o.model);
  const GaussianPrior prior = make_prior(o.prior_mean, o.prior_sd, spec.dim());

  CalibrateControl control;
  control.iters = o.iters;
  control.aux_iters = o.aux_iters;
  control.noisy_nsim = o.noisy_nsim;
  control.noisy_thin = o.noisy_thin;
  control.mcmc = o.mcmc;
  control.seed = o.seed;
  control.step_a0 = o.step_a0;
  control.step_t0 = o.step_t0;
  control.proposal = proposal_from_string(o.proposal);

  const CalibrationMap map = estimate_map_and_hessians(y, spec, prior, control);
  if (!map.converged)
    std::cerr << "warning: MAP search may not have converged (final gradient norm "
              << map.grad_norm_ma << ", Monte Carlo noise floor " << map.noise_floor
              << "); consider increasing --iters\n";

  double accept = 0.0;
  const Eigen::MatrixXd pseudo = sample_pseudo_posterior(y, spec, prior, o.mcmc, o.seed, &accept);
  const Eigen::MatrixXd calibrated = calibrate_sample(pseudo, map);

  PosteriorSample post;
  post.nchains = 1;
  post.iters = calibrated.rows();
  post.dim = spec.dim();
  post.draws = calibrated;
  post.proposal_count = calibrated.rows();
  post.accept_count = std::lround(accept * static_cast<double>(calibrated.rows()));

  const fs::path out_dir = resolve_out_dir(o.out);
  write_draws_file((out_dir / "draws.tsv").string(), post);
  const std::string text = format_summary(summarize(post, term_names(spec)));
  std::cout << text;
  write_text_file(out_dir / "summary.txt", text);
  plot_posterior(post, term_names(spec)).write_file((out_dir / "posterior.svg").string());
  write_meta(out_dir, "calibrate",
             {{"network", o.network},
              {"attrs", o.attrs},
              {"model", o.model},
              {"prior_mean", o.prior_mean},
              {"prior_sd", o.prior_sd},
              {"iters", o.iters},
              {"aux_iters", o.aux_iters},
              {"noisy_nsim", o.noisy_nsim},
              {"noisy_thin", o.noisy_thin},
              {"mcmc", o.mcmc},
              {"step_a0", o.step_a0},
              {"step_t0", o.step_t0},
              {"proposal", o.proposal},
              {"seed", o.seed},
              {"threads", o.threads}});
  return 0;
}

// ---------------------------------------------------------------------------
// gof

struct GofOptions {
  std::string draws, network, attrs, model;
  long nsim = 100, aux_iters = 20000;
  int n_deg = 14, n_dist = 15, n_esp = 10;
  std::string proposal = "uniform";
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out;
};

inline int run_gof_command(const GofOptions& o) {
  const PosteriorSample posterior = read_draws_file(o.draws);
  const Graph y = load_graph(o.network, o.attrs);
  const ModelSpec spec = parse_formula(o.model);
  if (posterior.dim != spec.dim())
    throw std::runtime_error("draws table has " + std::to_string(posterior.dim) +
                             " parameters but the model has " + std::to_string(spec.dim()));

  const GofBins bins{o.n_deg, o.n_dist, o.n_esp};
  const GofResult gof = run_gof(y, spec, posterior, o.nsim, o.aux_iters, bins, o.seed,
                                proposal_from_string(o.proposal), o.threads);

  const fs::path out_dir = resolve_out_dir(o.out);
  write_quantile_table(out_dir / "gof_degree.tsv", degree_bin_labels(bins), gof.observed_degree,
                       gof.q_degree);
  write_quantile_table(out_dir / "gof_distance.tsv", distance_bin_labels(bins),
                       gof.observed_distance, gof.q_distance);
  write_quantile_table(out_dir / "gof_esp.tsv", esp_bin_labels(bins), gof.observed_esp,
                       gof.q_esp);
  plot_gof(gof).write_file((out_dir / "gof.svg").string());
  write_meta(out_dir, "gof",
             {{"draws", o.draws},
              {"network", o.network},
              {"attrs", o.attrs},
              {"model", o.model},
              {"nsim", o.nsim},
              {"aux_iters", o.aux_iters},
              {"n_deg", o.n_deg},
              {"n_dist", o.n_dist},
              {"n_esp", o.n_esp},
              {"proposal", o.proposal},
              {"seed", o.seed},
              {"threads", o.threads}});
  return 0;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateOptions {
  std::string network, attrs, model, theta;
  int n_nodes = 0;
  long nsim = 1, aux_iters = 20000, thin = 1000;
  std::string proposal = "uniform";
  std::uint64_t seed = 1;
  int threads = 1;  // accepted for interface uniformity; one chain is sequential
  std::string out;
};

inline int run_simulate(const SimulateOptions& o) {
  Graph g0 = [&] {
    if (!o.network.empty()) return read_edge_list_file(o.network);
    if (o.n_nodes < 1) throw std::runtime_error("provide --network or --n");
    return Graph(o.n_nodes, false);
  }();
  if (!o.attrs.empty()) read_attributes_file(o.attrs, g0);

  const ModelSpec spec = parse_formula(o.model);
  const Eigen::VectorXd theta =
      broadcast(parse_numbers(o.theta, "--theta"), spec.dim(), "--theta");
  if (o.nsim < 1) throw std::runtime_error("--nsim must be positive");

  NetworkSampler sampler(g0, spec, theta, proposal_from_string(o.proposal), Rng(o.seed));
  sampler.step(o.aux_iters);

  const fs::path out_dir = resolve_out_dir(o.out);
  Eigen::MatrixXd stats(o.nsim, spec.dim());
  for (long k = 0; k < o.nsim; ++k) {
    if (k > 0) sampler.step(o.thin);
    write_edge_list_file((out_dir / ("sim_" + std::to_string(k + 1) + ".edges")).string(),
                         sampler.graph());
    stats.row(k) = sampler.stats();
  }
  write_table_file((out_dir / "sim_stats.tsv").string(), term_names(spec), stats);
  write_meta(out_dir, "simulate",
             {{"network", o.network},
              {"attrs", o.attrs},
              {"n", o.n_nodes},
              {"model", o.model},
              {"theta", o.theta},
              {"nsim", o.nsim},
              {"aux_iters", o.aux_iters},
              {"thin", o.thin},
              {"proposal", o.proposal},
              {"seed", o.seed},
              {"threads", o.threads}});
  return 0;
}

// ---------------------------------------------------------------------------
// summary

struct SummaryOptions {
  std::string draws, names, out;
};

inline int run_summary(const SummaryOptions& o) {
  const PosteriorSample sample = read_draws_file(o.draws);
  std::vector<std::string> names;
  if (!o.names.empty()) names = split_list(o.names);
  const std::string text = format_summary(summarize(sample, names));
  std::cout << text;
  if (!o.out.empty()) {
    const fs::path out_dir = resolve_out_dir(o.out);
    write_text_file(out_dir / "summary.txt", text);
    plot_posterior(sample, names).write_file((out_dir / "posterior.svg").string());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// import: convert external CSV exports to the native formats

inline bool is_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

inline std::string strip_quotes(const std::string& s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
  return s;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  for (const std::string& field : split_list(line)) out.push_back(strip_quotes(field));
  return out;
}

struct ImportOptions {
  std::string edges_csv, attrs_csv;
  int n_nodes = 0;
  bool directed = false;
  std::string out;
};

inline int run_import(const ImportOptions& o) {
  std::ifstream in(o.edges_csv);
  if (!in) throw std::runtime_error("cannot open '" + o.edges_csv + "'");

  std::vector<std::pair<int, int>> pairs;
  int max_index = 0;
  std::string line;
  long lineno = 0;
  bool saw_data = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() < 2)
      throw std::runtime_error(o.edges_csv + ":" + std::to_string(lineno) +
                               ": expected two columns");
    if (!is_integer_token(fields[0]) || !is_integer_token(fields[1])) {
      if (!saw_data) continue;  // header row
      throw std::runtime_error(o.edges_csv + ":" + std::to_string(lineno) +
                               ": non-numeric vertex id");
    }
    saw_data = true;
    const int a = std::stoi(fields[0]), b = std::stoi(fields[1]);
    if (a < 1 || b < 1)
      throw std::runtime_error(o.edges_csv + ":" + std::to_string(lineno) +
                               ": vertex ids must be 1-based positive integers");
    max_index = std::max({max_index, a, b});
    pairs.emplace_back(a - 1, b - 1);
  }
  const int n = std::max(o.n_nodes, max_index);
  if (n < 1) throw std::runtime_error("no vertices found; give --n for an empty network");

  Graph g = Graph::from_edge_list(n, pairs, o.directed);

  if (!o.attrs_csv.empty()) {
    std::ifstream attrs_in(o.attrs_csv);
    if (!attrs_in) throw std::runtime_error("cannot open '" + o.attrs_csv + "'");
    if (!std::getline(attrs_in, line))
      throw std::runtime_error(o.attrs_csv + ": empty attribute file");
    const auto names = split_csv_line(line);
    std::vector<std::vector<std::string>> columns(names.size());
    long rows = 0;
    while (std::getline(attrs_in, line)) {
      if (trim(line).empty()) continue;
      const auto fields = split_csv_line(line);
      if (fields.size() != names.size())
        throw std::runtime_error(o.attrs_csv + ": row with " + std::to_string(fields.size()) +
                                 " fields, expected " + std::to_string(names.size()));
      for (std::size_t c = 0; c < fields.size(); ++c) columns[c].push_back(fields[c]);
      ++rows;
    }
    if (rows != n)
      throw std::runtime_error(o.attrs_csv + ": " + std::to_string(rows) +
                               " attribute rows for " + std::to_string(n) + " vertices");
    for (std::size_t c = 0; c < names.size(); ++c) g.set_attribute(names[c], columns[c]);
  }

  const fs::path out_dir = resolve_out_dir(o.out);
  const fs::path edges_path = out_dir / "network.edges";
  write_edge_list_file(edges_path.string(), g);
  std::cout << "wrote " << edges_path.string() << " (" << n << " nodes, " << g.edge_count()
            << " edges)\n";
  if (!g.attributes().empty()) {
    const fs::path attrs_path = out_dir / "network.attrs";
    write_attributes_file(attrs_path.string(), g);
    std::cout << "wrote " << attrs_path.string() << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// dev: exact enumeration oracle for small graphs

struct DevOptions {
  std::string network, attrs, model, theta = "0";
  int n_nodes = 0;
  std::string prior_mean = "0", prior_sd = "10";
  std::string lo = "-5", hi = "5", steps = "201";
};

inline Graph dev_graph(const DevOptions& o) {
  if (!o.network.empty()) return load_graph(o.network, o.attrs);
  if (o.n_nodes < 1) throw std::runtime_error("provide --network or --n");
  return Graph(o.n_nodes, false);
}

inline int run_dev_stats(const DevOptions& o) {
  const Graph y = load_graph(o.network, o.attrs);
  const ModelSpec spec = parse_formula(o.model);
  const Eigen::VectorXd s = compute_stats(y, spec);
  const auto names = term_names(spec);
  for (int t = 0; t < spec.dim(); ++t)
    std::cout << names[t] << "\t" << format_double(s[t]) << "\n";
  return 0;
}

inline int run_dev_logz(const DevOptions& o) {
  const Graph base = dev_graph(o);
  const ModelSpec spec = parse_formula(o.model);
  const Eigen::VectorXd theta =
      broadcast(parse_numbers(o.theta, "--theta"), spec.dim(), "--theta");
  std::cout << format_double(exact_log_z(base, spec, theta)) << "\n";
  return 0;
}

inline int run_dev_grid(const DevOptions& o) {
  const Graph y = load_graph(o.network, o.attrs);
  const ModelSpec spec = parse_formula(o.model);
  const int d = spec.dim();
  const GaussianPrior prior = make_prior(o.prior_mean, o.prior_sd, d);
  const Eigen::VectorXd lo = broadcast(parse_numbers(o.lo, "--lo"), d, "--lo");
  const Eigen::VectorXd hi = broadcast(parse_numbers(o.hi, "--hi"), d, "--hi");
  const Eigen::VectorXd steps = broadcast(parse_numbers(o.steps, "--steps"), d, "--steps");
  std::vector<GridAxis> axes;
  for (int i = 0; i < d; ++i)
    axes.push_back(GridAxis{lo[i], hi[i], static_cast<int>(steps[i])});
  const ExactPosteriorGrid grid = exact_posterior_grid(y, spec, prior, axes);
  const Eigen::VectorXd mean = grid.mean(), sd = grid.sd();
  const auto names = term_names(spec);
  std::cout << "term\tmean\tsd\n";
  for (int t = 0; t < d; ++t)
    std::cout << names[t] << "\t" << format_double(mean[t]) << "\t" << format_double(sd[t])
              << "\n";
  return 0;
}

}  // namespace cli_detail

/// Parses and executes one command line (without the program name).
/// Returns the process exit status.
inline int run_command(std::vector<std::string> args) {
  CLI::App app{
      "Bayesian inference for exponential random graph models: "
      "exchange-algorithm posterior sampling, pseudo-posterior calibration, "
      "network simulation, and posterior-predictive goodness of fit"};
  app.name("ergmbayes");
  app.set_version_flag("--version", ERGMBAYES_VERSION);
  app.require_subcommand(1);

  using namespace cli_detail;

  FitOptions fit;
  auto* fit_cmd =
      app.add_subcommand("fit", "Sample the posterior with the approximate exchange algorithm");
  fit_cmd->add_option("--network", fit.network, "edge-list file of the observed network")
      ->required();
  fit_cmd->add_option("--attrs", fit.attrs, "node attribute table");
  fit_cmd->add_option("--model", fit.model, "model formula, e.g. 'edges + gwesp(0.2)'")
      ->required();
  fit_cmd->add_option("--prior-mean", fit.prior_mean, "prior mean (scalar or comma list)");
  fit_cmd->add_option("--prior-sd", fit.prior_sd, "prior standard deviations");
  fit_cmd->add_option("--burn-in", fit.burn_in, "discarded sweeps per chain");
  fit_cmd->add_option("--main-iters", fit.main_iters, "retained sweeps per chain");
  fit_cmd->add_option("--aux-iters", fit.aux_iters, "auxiliary network-chain length");
  fit_cmd->add_option("--nchains", fit.nchains, "parallel ADS chains (>= 3)");
  fit_cmd->add_option("--gamma", fit.gamma, "ADS move scale");
  fit_cmd->add_option("--sigma-epsilon", fit.sigma_epsilon, "ADS jitter scale");
  fit_cmd->add_option("--proposal", fit.proposal, "network proposal: uniform or tnt");
  fit_cmd->add_option("--seed", fit.seed, "RNG seed");
  fit_cmd->add_option("--threads", fit.threads, "worker threads (1 = reference mode)");
  fit_cmd->add_option("--out", fit.out, "output directory (default $ERGMBAYES_OUT_DIR or .)");

  CalibrateOptions cal;
  auto* cal_cmd = app.add_subcommand(
      "calibrate", "Affinely calibrated pseudo-posterior sample (fast approximation)");
  cal_cmd->add_option("--network", cal.network, "edge-list file of the observed network")
      ->required();
  cal_cmd->add_option("--attrs", cal.attrs, "node attribute table");
  cal_cmd->add_option("--model", cal.model, "model formula")->required();
  cal_cmd->add_option("--prior-mean", cal.prior_mean, "prior mean (scalar or comma list)");
  cal_cmd->add_option("--prior-sd", cal.prior_sd, "prior standard deviations");
  cal_cmd->add_option("--iters", cal.iters, "stochastic-approximation iterations");
  cal_cmd->add_option("--aux-iters", cal.aux_iters, "auxiliary network-chain burn-in");
  cal_cmd->add_option("--noisy-nsim", cal.noisy_nsim, "simulated networks per gradient step");
  cal_cmd->add_option("--noisy-thin", cal.noisy_thin, "toggles between simulated networks");
  cal_cmd->add_option("--mcmc", cal.mcmc, "pseudo-posterior MCMC draws");
  cal_cmd->add_option("--step-a0", cal.step_a0, "step schedule a0 in a0/(t0+t)");
  cal_cmd->add_option("--step-t0", cal.step_t0, "step schedule t0");
  cal_cmd->add_option("--proposal", cal.proposal, "network proposal: uniform or tnt");
  cal_cmd->add_option("--seed", cal.seed, "RNG seed");
  cal_cmd->add_option("--threads", cal.threads, "accepted for uniformity; run is sequential");
  cal_cmd->add_option("--out", cal.out, "output directory");

  GofOptions gof;
  auto* gof_cmd =
      app.add_subcommand("gof", "Posterior-predictive goodness of fit from a draws table");
  gof_cmd->add_option("--draws", gof.draws, "draws table from fit or calibrate")->required();
  gof_cmd->add_option("--network", gof.network, "observed network")->required();
  gof_cmd->add_option("--attrs", gof.attrs, "node attribute table");
  gof_cmd->add_option("--model", gof.model, "model formula")->required();
  gof_cmd->add_option("--nsim", gof.nsim, "posterior-predictive replicates");
  gof_cmd->add_option("--aux-iters", gof.aux_iters, "toggles per replicate simulation");
  gof_cmd->add_option("--n-deg", gof.n_deg, "degree bins");
  gof_cmd->add_option("--n-dist", gof.n_dist, "geodesic-distance bins");
  gof_cmd->add_option("--n-esp", gof.n_esp, "edgewise-shared-partner bins");
  gof_cmd->add_option("--proposal", gof.proposal, "network proposal: uniform or tnt");
  gof_cmd->add_option("--seed", gof.seed, "RNG seed");
  gof_cmd->add_option("--threads", gof.threads, "worker threads (1 = reference mode)");
  gof_cmd->add_option("--out", gof.out, "output directory");

  SimulateOptions sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Draw networks from an ERGM");
  sim_cmd->add_option("--network", sim.network, "starting network (default: empty graph)");
  sim_cmd->add_option("--n", sim.n_nodes, "nodes for an empty starting graph");
  sim_cmd->add_option("--attrs", sim.attrs, "node attribute table");
  sim_cmd->add_option("--model", sim.model, "model formula")->required();
  sim_cmd->add_option("--theta", sim.theta, "parameter vector (comma list)")->required();
  sim_cmd->add_option("--nsim", sim.nsim, "networks to draw");
  sim_cmd->add_option("--aux-iters", sim.aux_iters, "burn-in toggles before the first draw");
  sim_cmd->add_option("--thin", sim.thin, "toggles between consecutive draws");
  sim_cmd->add_option("--proposal", sim.proposal, "network proposal: uniform or tnt");
  sim_cmd->add_option("--seed", sim.seed, "RNG seed");
  sim_cmd->add_option("--threads", sim.threads, "accepted for uniformity; one chain");
  sim_cmd->add_option("--out", sim.out, "output directory");

  SummaryOptions smry;
  auto* smry_cmd = app.add_subcommand("summary", "Summarise an existing draws table");
  smry_cmd->add_option("--draws", smry.draws, "draws table")->required();
  smry_cmd->add_option("--names", smry.names, "parameter names (comma list)");
  smry_cmd->add_option("--out", smry.out, "also write summary.txt to this directory");

  ImportOptions imp;
  auto* imp_cmd = app.add_subcommand(
      "import", "Convert a CSV edge list (1-based ids) and attribute CSV to native formats");
  imp_cmd->add_option("--edges-csv", imp.edges_csv, "CSV with two columns of 1-based vertex ids")
      ->required();
  imp_cmd->add_option("--attrs-csv", imp.attrs_csv, "CSV with a header row and one row per node");
  imp_cmd->add_option("--n", imp.n_nodes, "vertex count (default: largest id seen)");
  imp_cmd->add_flag("--directed", imp.directed, "treat edges as directed");
  imp_cmd->add_option("--out", imp.out, "output directory");

  DevOptions dev;
  auto* dev_cmd = app.add_subcommand("dev", "Exact-enumeration oracle utilities (n <= 6)");
  dev_cmd->require_subcommand(1);
  auto* dev_stats_cmd = dev_cmd->add_subcommand("stats", "Print sufficient statistics");
  auto* dev_logz_cmd = dev_cmd->add_subcommand("logz", "Exact log normalising constant");
  auto* dev_grid_cmd = dev_cmd->add_subcommand("grid", "Exact grid-posterior mean and sd");
  for (auto* sub : {dev_stats_cmd, dev_logz_cmd, dev_grid_cmd}) {
    sub->add_option("--network", dev.network, "network file");
    sub->add_option("--attrs", dev.attrs, "node attribute table");
    sub->add_option("--model", dev.model, "model formula")->required();
  }
  dev_logz_cmd->add_option("--n", dev.n_nodes, "nodes for an empty base graph");
  dev_logz_cmd->add_option("--theta", dev.theta, "parameter vector");
  dev_grid_cmd->add_option("--prior-mean", dev.prior_mean, "prior mean");
  dev_grid_cmd->add_option("--prior-sd", dev.prior_sd, "prior standard deviations");
  dev_grid_cmd->add_option("--lo", dev.lo, "grid lower bounds");
  dev_grid_cmd->add_option("--hi", dev.hi, "grid upper bounds");
  dev_grid_cmd->add_option("--steps", dev.steps, "grid points per axis");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (app.got_subcommand(fit_cmd)) return run_fit(fit);
    if (app.got_subcommand(cal_cmd)) return run_calibrate(cal);
    if (app.got_subcommand(gof_cmd)) return run_gof_command(gof);
    if (app.got_subcommand(sim_cmd)) return run_simulate(sim);
    if (app.got_subcommand(smry_cmd)) return run_summary(smry);
    if (app.got_subcommand(imp_cmd)) return run_import(imp);
    if (app.got_subcommand(dev_cmd)) {
      if (dev_cmd->got_subcommand(dev_stats_cmd)) return run_dev_stats(dev);
      if (dev_cmd->got_subcommand(dev_logz_cmd)) return run_dev_logz(dev);
      if (dev_cmd->got_subcommand(dev_grid_cmd)) return run_dev_grid(dev);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace ergmbayes
