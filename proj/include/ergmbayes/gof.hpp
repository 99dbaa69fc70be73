#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ergmbayes/exchange.hpp"
#include "ergmbayes/graph.hpp"
#include "ergmbayes/model.hpp"
#include "ergmbayes/net_sampler.hpp"
#include "ergmbayes/rng.hpp"
#include "ergmbayes/summary.hpp"

namespace ergmbayes {

/// Truncation limits for the three GOF axes; defaults mirror the reference
/// diagnostics call (n.deg = 14, n.dist = 15, n.esp = 10).
struct GofBins {
  int n_deg = 14;
  int n_dist = 15;
  int n_esp = 10;

  void validate() const {
    if (n_deg < 1 || n_dist < 2 || n_esp < 1)
      throw std::invalid_argument("GOF bin limits too small");
  }
};

namespace detail {

/// Truncate a histogram to nbins columns; counts at or beyond the last column
/// are lumped into it so the total is preserved. Zero-pads short input.
inline Eigen::RowVectorXd bin_histogram(const std::vector<long>& hist, int nbins) {
  Eigen::RowVectorXd out = Eigen::RowVectorXd::Zero(nbins);
  for (std::size_t idx = 0; idx < hist.size(); ++idx) {
    const int col = std::min<int>(static_cast<int>(idx), nbins - 1);
    out[col] += static_cast<double>(hist[idx]);
  }
  return out;
}

/// Geodesic layout: columns 0..nbins-2 are distances 1..nbins-1 (tail lumped
/// into the last distance column), column nbins-1 is the unreachable bucket.
inline Eigen::RowVectorXd bin_geodesic(const std::vector<long>& hist, int nbins) {
  Eigen::RowVectorXd out = Eigen::RowVectorXd::Zero(nbins);
  const std::size_t unreachable = hist.size() - 1;
  for (std::size_t idx = 0; idx < unreachable; ++idx) {
    const int col = std::min<int>(static_cast<int>(idx), nbins - 2);
    out[col] += static_cast<double>(hist[idx]);
  }
  out[nbins - 1] = static_cast<double>(hist[unreachable]);
  return out;
}

}  // namespace detail

/// Observed and replicated degree / geodesic / edgewise-shared-partner
/// distributions with per-bin 5/50/95 percent bands.
struct GofResult {
  GofBins bins;
  Eigen::RowVectorXd observed_degree, observed_distance, observed_esp;
  Eigen::MatrixXd rep_degree, rep_distance, rep_esp;  // nsim x bins
  Eigen::MatrixXd q_degree, q_distance, q_esp;        // rows: 5, 50, 95 percent
};

inline std::vector<std::string> degree_bin_labels(const GofBins& bins) {
  std::vector<std::string> out;
  for (int b = 0; b < bins.n_deg; ++b)
    out.push_back(std::to_string(b) + (b == bins.n_deg - 1 ? "+" : ""));
  return out;
}

inline std::vector<std::string> distance_bin_labels(const GofBins& bins) {
  std::vector<std::string> out;
  for (int b = 0; b + 1 < bins.n_dist; ++b)
    out.push_back(std::to_string(b + 1) + (b == bins.n_dist - 2 ? "+" : ""));
  out.push_back("Inf");
  return out;
}

inline std::vector<std::string> esp_bin_labels(const GofBins& bins) {
  std::vector<std::string> out;
  for (int b = 0; b < bins.n_esp; ++b)
    out.push_back(std::to_string(b) + (b == bins.n_esp - 1 ? "+" : ""));
  return out;
}

namespace detail {

inline Eigen::MatrixXd column_quantiles(const Eigen::MatrixXd& rep) {
  Eigen::MatrixXd q(3, rep.cols());
  static constexpr double levels[3] = {0.05, 0.50, 0.95};
  std::vector<double> col(rep.rows());
  for (Eigen::Index c = 0; c < rep.cols(); ++c) {
    for (Eigen::Index r = 0; r < rep.rows(); ++r) col[r] = rep(r, c);
    std::sort(col.begin(), col.end());
    for (int l = 0; l < 3; ++l) q(l, c) = empirical_quantile(col, levels[l]);
  }
  return q;
}

}  // namespace detail

/// Posterior-predictive goodness of fit: draw nsim parameter vectors
/// uniformly with replacement from the pooled posterior draws, simulate one
/// network per vector (aux_iters toggles warm-started at y), and histogram
/// the replicated degree / geodesic / ESP distributions against the observed
/// ones.
inline GofResult run_gof(const Graph& y, const ModelSpec& spec, const PosteriorSample& posterior,
                         long nsim, long aux_iters, const GofBins& bins, std::uint64_t seed,
                         ProposalKind proposal = ProposalKind::uniform_dyad, int threads = 1) {
  bins.validate();
  if (posterior.draws.rows() == 0) throw std::invalid_argument("run_gof: empty posterior");
  if (nsim < 1) throw std::invalid_argument("run_gof: nsim must be positive");
  if (aux_iters < 1) throw std::invalid_argument("run_gof: aux_iters must be positive");
  BoundModel model(y, spec);
  if (posterior.draws.cols() != model.dim())
    throw std::invalid_argument("posterior dimension does not match model");

  GofResult result;
  result.bins = bins;
  result.observed_degree = detail::bin_histogram(y.degree_histogram(), bins.n_deg);
  result.observed_distance = detail::bin_geodesic(y.geodesic_histogram(), bins.n_dist);
  result.observed_esp = detail::bin_histogram(y.esp_histogram(), bins.n_esp);
  result.rep_degree.resize(nsim, bins.n_deg);
  result.rep_distance.resize(nsim, bins.n_dist);
  result.rep_esp.resize(nsim, bins.n_esp);

  const long pool = posterior.draws.rows();
  detail::parallel_chains(static_cast<int>(nsim), threads, [&](int rep) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(rep));
    const Eigen::VectorXd theta = posterior.draws.row(rng.below(pool));
    NetworkSampler sampler(y, spec, theta, proposal, rng);
    sampler.step(aux_iters);
    const Graph& sim = sampler.graph();
    result.rep_degree.row(rep) = detail::bin_histogram(sim.degree_histogram(), bins.n_deg);
    result.rep_distance.row(rep) = detail::bin_geodesic(sim.geodesic_histogram(), bins.n_dist);
    result.rep_esp.row(rep) = detail::bin_histogram(sim.esp_histogram(), bins.n_esp);
  });

  result.q_degree = detail::column_quantiles(result.rep_degree);
  result.q_distance = detail::column_quantiles(result.rep_distance);
  result.q_esp = detail::column_quantiles(result.rep_esp);
  return result;
}

}  // namespace ergmbayes
