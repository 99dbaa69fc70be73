#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ergmbayes/graph.hpp"
#include "ergmbayes/model.hpp"
#include "ergmbayes/rng.hpp"

namespace ergmbayes {

enum class ProposalKind { uniform_dyad, tie_no_tie };

inline ProposalKind proposal_from_string(const std::string& s) {
  if (s == "uniform") return ProposalKind::uniform_dyad;
  if (s == "tnt") return ProposalKind::tie_no_tie;
  throw std::invalid_argument("unknown proposal '" + s + "' (expected 'uniform' or 'tnt')");
}

/// Controls for drawing networks from p(. | theta) by Metropolis dyad toggles.
struct SimControl {
  long aux_iters = 20000;  // toggle proposals before the first retained draw
  long thin = 1000;        // toggles between retained draws in multi-draw mode
  std::uint64_t seed = 1;
  ProposalKind proposal = ProposalKind::uniform_dyad;
};

/// Metropolis sampler over graphs targeting the ERGM p(y | theta).
///
/// Each step picks a dyad (uniformly, or via the tie/no-tie mixture), computes
/// the change statistics delta for turning the dyad on, and accepts the toggle
/// with probability min(1, exp(sign * theta . delta) * hastings) where the
/// sign is + when adding and - when deleting. With the uniform-dyad proposal
/// the Hastings factor is 1; tie/no-tie proposals carry the usual correction
/// for the edge/non-edge selection probabilities.
class NetworkSampler {
 public:
  NetworkSampler(Graph g, const ModelSpec& spec, Eigen::VectorXd theta,
                 ProposalKind proposal, Rng rng)
      : graph_(std::move(g)),
        model_(graph_, spec),
        theta_(std::move(theta)),
        proposal_(proposal),
        rng_(rng),
        delta_(model_.dim()) {
    if (theta_.size() != model_.dim())
      throw std::invalid_argument("theta dimension " + std::to_string(theta_.size()) +
                                  " does not match model dimension " +
                                  std::to_string(model_.dim()));
    if (graph_.node_count() < 2)
      throw std::invalid_argument("network simulation needs at least 2 nodes");
  }

  void step(long steps) {
    for (long s = 0; s < steps; ++s) one_step();
  }

  const Graph& graph() const { return graph_; }
  Eigen::VectorXd stats() const { return model_.compute(graph_); }
  Rng& rng() { return rng_; }

 private:
  void one_step() {
    const long M = graph_.dyad_count();
    const long m = static_cast<long>(graph_.edge_count());
    int i, j;
    double log_hastings = 0.0;

    if (proposal_ == ProposalKind::uniform_dyad) {
      pick_uniform_dyad(i, j);
    } else {
      // Tie/no-tie: with probability 1/2 toggle a uniform existing edge,
      // otherwise a uniform non-edge; degenerate states put all mass on the
      // nonempty class. log_select_prob is the log probability of proposing
      // one specific dyad from a state with m edges.
      bool pick_edge;
      if (m == 0)
        pick_edge = false;
      else if (m == M)
        pick_edge = true;
      else
        pick_edge = rng_.uniform() < 0.5;
      if (pick_edge) {
        const auto [a, b] = Graph::unpack(graph_.edge_keys()[rng_.below(m)]);
        i = a;
        j = b;
      } else {
        do {
          pick_uniform_dyad(i, j);
        } while (graph_.has_edge(i, j));
      }
      const bool present = pick_edge;
      log_hastings = log_select_prob(M, m + (present ? -1 : 1), !present) -
                     log_select_prob(M, m, present);
    }

    const bool present = graph_.has_edge(i, j);
    model_.change(graph_, i, j, delta_.data());
    double dot = 0.0;
    for (int t = 0; t < model_.dim(); ++t) dot += theta_[t] * delta_[t];
    const double log_ratio = (present ? -dot : dot) + log_hastings;
    if (log_ratio >= 0.0 || std::log(rng_.uniform_pos()) < log_ratio)
      graph_.toggle_edge(i, j);
  }

  void pick_uniform_dyad(int& i, int& j) {
    const int n = graph_.node_count();
    i = static_cast<int>(rng_.below(n));
    j = static_cast<int>(rng_.below(n - 1));
    if (j >= i) ++j;
  }

  static double log_select_prob(long M, long m, bool edge) {
    if (m == 0 || m == M) return -std::log(static_cast<double>(M));
    const long cls = edge ? m : M - m;
    return std::log(0.5) - std::log(static_cast<double>(cls));
  }

  Graph graph_;
  BoundModel model_;
  Eigen::VectorXd theta_;
  ProposalKind proposal_;
  Rng rng_;
  std::vector<double> delta_;
};

/// Graph state after control.aux_iters Metropolis steps started from g0.
/// Deterministic given control.seed.
inline Graph simulate_network(const Graph& g0, const ModelSpec& spec,
                              const Eigen::VectorXd& theta, const SimControl& control) {
  if (control.aux_iters < 1) throw std::invalid_argument("aux_iters must be >= 1");
  NetworkSampler sampler(g0, spec, theta, control.proposal, Rng(control.seed));
  sampler.step(control.aux_iters);
  return sampler.graph();
}

/// nsim retained statistic vectors: the first after an aux_iters burn-in from
/// g0, subsequent draws separated by control.thin toggles.
inline Eigen::MatrixXd simulate_stats(const Graph& g0, const ModelSpec& spec,
                                      const Eigen::VectorXd& theta, long nsim,
                                      const SimControl& control) {
  if (nsim < 1) throw std::invalid_argument("nsim must be >= 1");
  if (control.aux_iters < 1 || control.thin < 1)
    throw std::invalid_argument("aux_iters and thin must be >= 1");
  NetworkSampler sampler(g0, spec, theta, control.proposal, Rng(control.seed));
  Eigen::MatrixXd rows(nsim, theta.size());
  sampler.step(control.aux_iters);
  rows.row(0) = sampler.stats();
  for (long r = 1; r < nsim; ++r) {
    sampler.step(control.thin);
    rows.row(r) = sampler.stats();
  }
  return rows;
}

}  // namespace ergmbayes
