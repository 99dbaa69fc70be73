#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <stdexcept>

#include "ergmbayes/graph.hpp"
#include "ergmbayes/model.hpp"
#include "ergmbayes/net_sampler.hpp"
#include "ergmbayes/prior.hpp"
#include "ergmbayes/pseudolik.hpp"
#include "ergmbayes/rng.hpp"

namespace ergmbayes {

/// Controls for the calibration pipeline; defaults mirror the reference call
/// (iters 1000, aux.iters 20000, noisy.nsim 100, noisy.thin 1000, mcmc 10000).
struct CalibrateControl {
  long iters = 1000;        // Robbins-Monro iterations for the MAP search
  long aux_iters = 20000;   // burn-in of each auxiliary network chain
  long noisy_nsim = 100;    // simulated networks per gradient estimate
  long noisy_thin = 1000;   // toggles between retained simulated networks
  long mcmc = 10000;        // pseudo-posterior MCMC length
  std::uint64_t seed = 1;
  double step_a0 = 0.1;     // step size a_t = a0 / (t0 + t)
  double step_t0 = 10.0;
  ProposalKind proposal = ProposalKind::uniform_dyad;

  void validate() const {
    if (iters < 1 || aux_iters < 1 || noisy_nsim < 1 || noisy_thin < 1 || mcmc < 1)
      throw std::invalid_argument("calibration controls must all be positive");
    if (step_a0 <= 0.0 || step_t0 <= 0.0)
      throw std::invalid_argument("step schedule constants must be positive");
  }
};

/// MAP point and curvature estimates of the true posterior together with the
/// pseudo-posterior fit they are matched against.
struct CalibrationMap {
  Eigen::VectorXd theta_map;
  Eigen::MatrixXd hessian_map;  // estimated Hessian of the log posterior at the MAP
  Eigen::MatrixXd V;            // affine matrix with V N_pl^{-1} V^t = N_map^{-1}
  PseudoFit pseudo;

  // stochastic-approximation diagnostics
  double grad_norm_ma = 0.0;    // moving average of noisy gradient norms at the end
  double noise_floor = 0.0;     // Monte Carlo scale of a single gradient estimate
  bool converged = true;
};

/// Random-walk Metropolis on the pseudo-posterior (pseudolikelihood + prior).
/// Proposal covariance is the optimal-scaling heuristic (2.38^2 / d) times the
/// inverse negative Hessian at the pseudo-posterior mode. Returns mcmc rows
/// retained after an internal burn-in of mcmc / 10.
inline Eigen::MatrixXd sample_pseudo_posterior(const Graph& y, const ModelSpec& spec,
                                               const GaussianPrior& prior, long mcmc,
                                               std::uint64_t seed,
                                               double* acceptance_rate = nullptr) {
  if (mcmc < 1) throw std::invalid_argument("mcmc length must be positive");
  const PseudoDesign design = PseudoDesign::build(y, spec);
  const PseudoFit fit = fit_pseudo_posterior_mode(y, spec, prior);
  const int d = static_cast<int>(fit.theta_pl.size());

  Eigen::LLT<Eigen::MatrixXd> neg_hess(-fit.hessian_pl);
  if (neg_hess.info() != Eigen::Success)
    throw std::runtime_error("pseudo-posterior Hessian is not negative definite at the mode");
  const Eigen::MatrixXd cov_prop =
      neg_hess.solve(Eigen::MatrixXd::Identity(d, d)) * (2.38 * 2.38 / d);
  const Eigen::MatrixXd chol = Eigen::LLT<Eigen::MatrixXd>(cov_prop).matrixL();

  auto log_target = [&](const Eigen::VectorXd& t) {
    return design.loglik(t) + prior.log_density(t);
  };

  Rng rng(seed);
  Eigen::VectorXd theta = fit.theta_pl;
  double lp = log_target(theta);
  Eigen::MatrixXd draws(mcmc, d);
  Eigen::VectorXd z(d);
  const long burn = mcmc / 10;
  long accepted = 0;
  for (long it = 0; it < burn + mcmc; ++it) {
    for (int t = 0; t < d; ++t) z[t] = rng.normal();
    const Eigen::VectorXd cand = theta + chol * z;
    const double lp_cand = log_target(cand);
    if (lp_cand - lp >= 0.0 || std::log(rng.uniform_pos()) < lp_cand - lp) {
      theta = cand;
      lp = lp_cand;
      if (it >= burn) ++accepted;
    }
    if (it >= burn) draws.row(it - burn) = theta;
  }
  if (acceptance_rate) *acceptance_rate = static_cast<double>(accepted) / mcmc;
  return draws;
}

/// MAP and Hessian estimation for the true posterior.
///
/// The MAP search is stochastic approximation on the posterior score:
///   theta <- theta + a_t * [ s(y) - mean_k s(y'_k) + grad log p(theta) ]
/// with y'_k simulated networks at the current theta (noisy_nsim draws,
/// noisy_thin toggles apart, after an aux_iters burn-in warm-started at y).
/// The Hessian at the MAP is -Cov[s(y')] plus the prior curvature, using a
/// final batch of draws at theta_map; the final batch also calibrates the
/// Monte Carlo noise floor used by the convergence diagnostic.
inline CalibrationMap estimate_map_and_hessians(const Graph& y, const ModelSpec& spec,
                                                const GaussianPrior& prior,
                                                const CalibrateControl& control) {
  control.validate();
  BoundModel model(y, spec);
  const int d = model.dim();
  if (prior.dim() != d) throw std::invalid_argument("prior dimension does not match model");
  const Eigen::VectorXd s_obs = model.compute(y);

  CalibrationMap result;
  result.pseudo = fit_pseudo_posterior_mode(y, spec, prior);

  Eigen::VectorXd theta = result.pseudo.theta_pl;
  std::deque<double> recent_norms;
  const std::size_t window = 50;
  SimControl sim;
  sim.aux_iters = control.aux_iters;
  sim.thin = control.noisy_thin;
  sim.proposal = control.proposal;

  for (long t = 0; t < control.iters; ++t) {
    sim.seed = Rng::stream(control.seed, static_cast<std::uint64_t>(t)).next();
    const Eigen::MatrixXd sims = simulate_stats(y, spec, theta, control.noisy_nsim, sim);
    const Eigen::VectorXd mean_sim = sims.colwise().mean().transpose();
    const Eigen::VectorXd grad = s_obs - mean_sim + prior.grad_log_density(theta);
    const double a_t = control.step_a0 / (control.step_t0 + static_cast<double>(t) + 1.0);
    theta += a_t * grad;
    if (!theta.allFinite())
      throw std::runtime_error("MAP stochastic approximation diverged to non-finite values");
    recent_norms.push_back(grad.norm());
    if (recent_norms.size() > window) recent_norms.pop_front();
  }
  result.theta_map = theta;

  // final batch at theta_map: curvature estimate and noise floor
  sim.seed = Rng::stream(control.seed, static_cast<std::uint64_t>(control.iters)).next();
  const Eigen::MatrixXd sims = simulate_stats(y, spec, theta, control.noisy_nsim, sim);
  const Eigen::MatrixXd centered = sims.rowwise() - sims.colwise().mean();
  const Eigen::MatrixXd cov =
      centered.transpose() * centered /
      std::max<double>(1.0, static_cast<double>(control.noisy_nsim - 1));
  result.hessian_map = -cov + prior.hessian_log_density();

  double ma = 0.0;
  for (double v : recent_norms) ma += v;
  ma /= static_cast<double>(recent_norms.size());
  result.grad_norm_ma = ma;
  result.noise_floor =
      std::sqrt(cov.trace() / static_cast<double>(control.noisy_nsim)) +
      std::sqrt(cov.trace()) * 0.05;
  result.converged = ma <= 5.0 * result.noise_floor + 1e-8;

  // V maps pseudo-posterior curvature onto posterior curvature:
  // with N = -Hessian and N^{-1} = L L^t, V = L_map L_pl^{-1}.
  Eigen::LLT<Eigen::MatrixXd> n_map(-result.hessian_map);
  Eigen::LLT<Eigen::MatrixXd> n_pl(-result.pseudo.hessian_pl);
  if (n_map.info() != Eigen::Success || n_pl.info() != Eigen::Success)
    throw std::runtime_error("negative Hessians are not positive definite; cannot calibrate");
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
  const Eigen::MatrixXd l_map = Eigen::LLT<Eigen::MatrixXd>(n_map.solve(id)).matrixL();
  const Eigen::MatrixXd l_pl = Eigen::LLT<Eigen::MatrixXd>(n_pl.solve(id)).matrixL();
  result.V = l_map * l_pl.triangularView<Eigen::Lower>().solve(id);
  return result;
}

/// Affine calibration: each pseudo-posterior draw theta maps to
/// theta_map + V (theta - theta_pl).
inline Eigen::MatrixXd calibrate_sample(const Eigen::MatrixXd& draws, const CalibrationMap& map) {
  if (draws.cols() != map.V.cols())
    throw std::invalid_argument("calibrate_sample: draw dimension mismatch");
  Eigen::MatrixXd out = (draws.rowwise() - map.pseudo.theta_pl.transpose()) * map.V.transpose();
  out.rowwise() += map.theta_map.transpose();
  return out;
}

}  // namespace ergmbayes
