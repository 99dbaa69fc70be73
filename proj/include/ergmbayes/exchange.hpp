#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

#include "ergmbayes/graph.hpp"
#include "ergmbayes/model.hpp"
#include "ergmbayes/net_sampler.hpp"
#include "ergmbayes/prior.hpp"
#include "ergmbayes/pseudolik.hpp"
#include "ergmbayes/rng.hpp"

namespace ergmbayes {

/// Controls for the approximate exchange run. Defaults match the reference
/// call: burn.in 300, main.iters 2000, aux.iters 20000, 6 chains, gamma 0.6.
struct ExchangeControl {
  long burn_in = 300;
  long main_iters = 2000;
  long aux_iters = 20000;
  int nchains = 6;
  double gamma = 0.6;
  double sigma_epsilon = 0.0125;  // proposal jitter scale per coordinate
  std::uint64_t seed = 1;
  ProposalKind proposal = ProposalKind::uniform_dyad;
  int threads = 1;

  void validate() const {
    if (burn_in < 0) throw std::invalid_argument("burn_in must be nonnegative");
    if (main_iters < 1) throw std::invalid_argument("main_iters must be positive");
    if (aux_iters < 1) throw std::invalid_argument("aux_iters must be positive");
    if (nchains < 3) throw std::invalid_argument("adaptive direction sampling needs >= 3 chains");
    if (gamma <= 0.0) throw std::invalid_argument("gamma must be positive");
    if (sigma_epsilon <= 0.0) throw std::invalid_argument("sigma_epsilon must be positive");
    if (threads < 1) throw std::invalid_argument("threads must be >= 1");
  }
};

/// Retained posterior draws, one block of main_iters rows per chain
/// (row = chain * iters + iter), plus proposal/acceptance counts over the
/// post-burn-in phase.
struct PosteriorSample {
  int nchains = 0;
  long iters = 0;
  int dim = 0;
  Eigen::MatrixXd draws;
  long accept_count = 0;
  long proposal_count = 0;

  double acceptance_rate() const {
    return proposal_count > 0 ? static_cast<double>(accept_count) / proposal_count : 0.0;
  }

  /// All draws pooled across chains (the draws matrix itself).
  const Eigen::MatrixXd& pooled() const { return draws; }
};

/// Adaptive-direction proposal for chain h: pick helper chains h1 != h2 (both
/// != h) uniformly without replacement and return
///   theta_h + gamma * (theta_h1 - theta_h2) + jitter.
/// The jitter keeps the move irreducible; callers draw it as
/// N(0, sigma_epsilon^2 I). Symmetric in (h1, h2), so no proposal-density
/// term enters the acceptance ratio.
inline Eigen::VectorXd ads_propose(const std::vector<Eigen::VectorXd>& states, int h,
                                   double gamma, const Eigen::VectorXd& jitter, Rng& rng) {
  const int nchains = static_cast<int>(states.size());
  if (nchains < 3) throw std::invalid_argument("ads_propose needs at least 3 chains");
  if (h < 0 || h >= nchains) throw std::out_of_range("ads_propose: bad chain index");
  int h1 = static_cast<int>(rng.below(nchains - 1));
  if (h1 >= h) ++h1;
  int h2 = static_cast<int>(rng.below(nchains - 2));
  for (int skip : {std::min(h, h1), std::max(h, h1)})
    if (h2 >= skip) ++h2;
  return states[h] + gamma * (states[h1] - states[h2]) + jitter;
}

/// Log acceptance probability of the exchange swap:
///   min(0, [theta - theta']^t [s(y') - s(y)] + log p(theta') - log p(theta)).
/// All intractable normalising constants cancel, which is the point of the
/// augmented-variable construction.
inline double exchange_log_alpha(const Eigen::VectorXd& theta, const Eigen::VectorXd& theta_p,
                                 const Eigen::VectorXd& s_obs, const Eigen::VectorXd& s_sim,
                                 const GaussianPrior& prior) {
  if (theta.size() != theta_p.size() || s_obs.size() != s_sim.size() ||
      theta.size() != s_obs.size())
    throw std::invalid_argument("exchange_log_alpha: dimension mismatch");
  const double swap = (theta - theta_p).dot(s_sim - s_obs);
  const double log_prior_ratio = prior.log_density(theta_p) - prior.log_density(theta);
  const double value = swap + log_prior_ratio;
  if (!std::isfinite(value)) return -std::numeric_limits<double>::infinity();
  return std::min(0.0, value);
}

namespace detail {

/// Starting point for the chains: the maximum pseudolikelihood estimate when
/// it exists, otherwise the prior mean.
inline Eigen::VectorXd exchange_start_point(const Graph& y, const ModelSpec& spec,
                                            const GaussianPrior& prior) {
  try {
    return fit_mple(y, spec);
  } catch (const std::runtime_error&) {
    return prior.mean();
  }
}

template <typename Fn>
void parallel_chains(int nchains, int threads, Fn&& body) {
  if (threads <= 1) {
    for (int h = 0; h < nchains; ++h) body(h);
    return;
  }
  const int workers = std::min(threads, nchains);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (int h = w; h < nchains; h += workers) body(h);
    });
  for (auto& t : pool) t.join();
}

}  // namespace detail

/// Approximate exchange algorithm over a population of interacting chains.
///
/// Each sweep updates the chains one at a time, in chain order: propose
/// theta' by ads_propose against the current population, draw an auxiliary
/// network y' from p(. | theta') by aux_iters Metropolis toggles warm-started
/// at the observed network, and accept with probability
/// exp(exchange_log_alpha). Updating chains sequentially keeps every move a
/// correct Metropolis step for that chain with the helper states held fixed;
/// updating all chains at once against a shared snapshot would contract the
/// population and bias the posterior. Because the chains interact through the
/// proposal, the sweep itself cannot be split across threads; the threads
/// field is accepted for interface uniformity and never changes results.
inline PosteriorSample run_exchange(const Graph& y, const ModelSpec& spec,
                                    const GaussianPrior& prior, const ExchangeControl& control) {
  control.validate();
  BoundModel model(y, spec);
  const int d = model.dim();
  if (prior.dim() != d) throw std::invalid_argument("prior dimension does not match model");

  const Eigen::VectorXd s_obs = model.compute(y);
  const Eigen::VectorXd center = detail::exchange_start_point(y, spec, prior);

  const int nchains = control.nchains;
  std::vector<Rng> chain_rng;
  chain_rng.reserve(nchains);
  std::vector<Eigen::VectorXd> states(nchains);
  for (int h = 0; h < nchains; ++h) {
    chain_rng.push_back(Rng::stream(control.seed, static_cast<std::uint64_t>(h)));
    Eigen::VectorXd start = center;
    for (int t = 0; t < d; ++t) start[t] += 0.1 * chain_rng[h].normal();
    states[h] = std::move(start);
  }

  PosteriorSample sample;
  sample.nchains = nchains;
  sample.iters = control.main_iters;
  sample.dim = d;
  sample.draws.resize(static_cast<Eigen::Index>(nchains) * control.main_iters, d);

  const long total_sweeps = control.burn_in + control.main_iters;
  for (long sweep = 0; sweep < total_sweeps; ++sweep) {
    const bool retained = sweep >= control.burn_in;
    for (int h = 0; h < nchains; ++h) {
      Rng& rng = chain_rng[h];
      Eigen::VectorXd jitter(d);
      for (int t = 0; t < d; ++t) jitter[t] = control.sigma_epsilon * rng.normal();
      Eigen::VectorXd theta_p = ads_propose(states, h, control.gamma, jitter, rng);
      bool accept = false;
      if (theta_p.allFinite()) {
        NetworkSampler aux(y, spec, theta_p, control.proposal, rng);
        aux.step(control.aux_iters);
        const Eigen::VectorXd s_sim = aux.stats();
        rng = aux.rng();  // keep the chain's stream position
        const double log_alpha = exchange_log_alpha(states[h], theta_p, s_obs, s_sim, prior);
        accept = log_alpha >= 0.0 || std::log(rng.uniform_pos()) < log_alpha;
      }
      if (accept) states[h] = std::move(theta_p);
      if (retained) {
        sample.draws.row(static_cast<Eigen::Index>(h) * control.main_iters +
                         (sweep - control.burn_in)) = states[h];
        ++sample.proposal_count;
        if (accept) ++sample.accept_count;
      }
    }
  }
  return sample;
}

}  // namespace ergmbayes
