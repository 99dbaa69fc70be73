#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ergmbayes/graph.hpp"
#include "ergmbayes/model.hpp"
#include "ergmbayes/prior.hpp"

namespace ergmbayes {

/// Pseudolikelihood design: one row of change statistics per dyad of the
/// observed network (dyad evaluated with its own state forced off), plus the
/// observed dyad indicators. The pseudolikelihood is the product of Bernoulli
/// full conditionals p(y_ij | rest) = logistic(theta . delta_ij)^y_ij ...,
/// i.e. exactly a logistic regression of y_ij on delta_ij.
struct PseudoDesign {
  Eigen::MatrixXd X;   // dyads x dim change statistics
  Eigen::VectorXd y;   // dyad indicators in {0, 1}

  static PseudoDesign build(const Graph& g, const ModelSpec& spec) {
    BoundModel model(g, spec);
    const int n = g.node_count();
    const long dyads = g.dyad_count();
    PseudoDesign design;
    design.X.resize(dyads, model.dim());
    design.y.resize(dyads);
    std::vector<double> delta(model.dim());
    long row = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j, ++row) {
        model.change(g, i, j, delta.data());
        for (int t = 0; t < model.dim(); ++t) design.X(row, t) = delta[t];
        design.y[row] = g.has_edge(i, j) ? 1.0 : 0.0;
      }
    }
    return design;
  }

  double loglik(const Eigen::VectorXd& theta) const {
    const Eigen::VectorXd eta = X * theta;
    double total = 0.0;
    for (Eigen::Index r = 0; r < eta.size(); ++r)
      total += y[r] * eta[r] - softplus(eta[r]);
    return total;
  }

  Eigen::VectorXd grad(const Eigen::VectorXd& theta) const {
    const Eigen::VectorXd eta = X * theta;
    Eigen::VectorXd resid(eta.size());
    for (Eigen::Index r = 0; r < eta.size(); ++r) resid[r] = y[r] - logistic(eta[r]);
    return X.transpose() * resid;
  }

  Eigen::MatrixXd hessian(const Eigen::VectorXd& theta) const {
    const Eigen::VectorXd eta = X * theta;
    Eigen::VectorXd w(eta.size());
    for (Eigen::Index r = 0; r < eta.size(); ++r) {
      const double p = logistic(eta[r]);
      w[r] = p * (1.0 - p);
    }
    return -(X.transpose() * w.asDiagonal() * X);
  }

  static double logistic(double x) {
    return x >= 0.0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
  }
  static double softplus(double x) {
    return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
  }
};

/// log pseudolikelihood of theta given the observed network: sum over dyads of
/// log Bernoulli(y_ij | logistic(theta . delta_ij)).
inline double pseudo_loglik(const Graph& g, const ModelSpec& spec, const Eigen::VectorXd& theta) {
  const PseudoDesign design = PseudoDesign::build(g, spec);
  if (theta.size() != design.X.cols())
    throw std::invalid_argument("pseudo_loglik: theta dimension mismatch");
  return design.loglik(theta);
}

inline Eigen::VectorXd pseudo_loglik_grad(const Graph& g, const ModelSpec& spec,
                                          const Eigen::VectorXd& theta) {
  const PseudoDesign design = PseudoDesign::build(g, spec);
  if (theta.size() != design.X.cols())
    throw std::invalid_argument("pseudo_loglik_grad: theta dimension mismatch");
  return design.grad(theta);
}

inline Eigen::MatrixXd pseudo_loglik_hessian(const Graph& g, const ModelSpec& spec,
                                             const Eigen::VectorXd& theta) {
  const PseudoDesign design = PseudoDesign::build(g, spec);
  if (theta.size() != design.X.cols())
    throw std::invalid_argument("pseudo_loglik_hessian: theta dimension mismatch");
  return design.hessian(theta);
}

namespace detail {

/// Newton ascent of a concave objective with step halving. Returns true when
/// the gradient norm drops below tol before maxit iterations.
template <typename Value, typename Grad, typename Hess>
bool newton_maximize(Eigen::VectorXd& theta, Value&& value, Grad&& grad, Hess&& hess,
                     double tol, int maxit, double divergence_bound) {
  // The bound is checked before the gradient test: on separated data the
  // iterates run away while the gradient vanishes, so a small gradient at a
  // runaway point must not count as convergence.
  double f = value(theta);
  for (int it = 0; it < maxit; ++it) {
    if (theta.cwiseAbs().maxCoeff() > divergence_bound) return false;
    const Eigen::VectorXd g = grad(theta);
    if (g.norm() < tol) return true;
    const Eigen::MatrixXd H = hess(theta);
    Eigen::LDLT<Eigen::MatrixXd> ldlt(-H);
    if (ldlt.info() != Eigen::Success) return false;
    Eigen::VectorXd step = ldlt.solve(g);
    if (!step.allFinite()) return false;
    double scale = 1.0;
    for (int half = 0; half < 40; ++half) {
      const Eigen::VectorXd cand = theta + scale * step;
      const double fc = value(cand);
      if (std::isfinite(fc) && fc >= f) {
        theta = cand;
        f = fc;
        break;
      }
      scale *= 0.5;
    }
  }
  return theta.cwiseAbs().maxCoeff() <= divergence_bound && grad(theta).norm() < tol;
}

}  // namespace detail

/// Maximum pseudolikelihood estimate. Throws when the logistic fit separates
/// (empty or complete dyad strata), in which case no finite maximizer exists.
inline Eigen::VectorXd fit_mple(const Graph& g, const ModelSpec& spec) {
  const PseudoDesign design = PseudoDesign::build(g, spec);
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(design.X.cols());
  // |theta| beyond 20 means some dyad odds below ~2e-9: outside anything a
  // finite network can support, so treat it as separation.
  const bool ok = detail::newton_maximize(
      theta, [&](const Eigen::VectorXd& t) { return design.loglik(t); },
      [&](const Eigen::VectorXd& t) { return design.grad(t); },
      [&](const Eigen::VectorXd& t) { return design.hessian(t); }, 1e-9, 200, 20.0);
  if (!ok)
    throw std::runtime_error(
        "maximum pseudolikelihood is not estimable (perfect separation in the dyad design)");
  return theta;
}

/// Mode and Hessian of the log pseudo-posterior (pseudolikelihood + prior).
struct PseudoFit {
  Eigen::VectorXd theta_pl;
  Eigen::MatrixXd hessian_pl;
};

inline PseudoFit fit_pseudo_posterior_mode(const Graph& g, const ModelSpec& spec,
                                           const GaussianPrior& prior) {
  const PseudoDesign design = PseudoDesign::build(g, spec);
  if (prior.dim() != design.X.cols())
    throw std::invalid_argument("prior dimension does not match model");
  Eigen::VectorXd theta;
  try {
    theta = fit_mple(g, spec);
  } catch (const std::runtime_error&) {
    theta = prior.mean();  // prior keeps the pseudo-posterior mode finite
  }
  const bool ok = detail::newton_maximize(
      theta,
      [&](const Eigen::VectorXd& t) { return design.loglik(t) + prior.log_density(t); },
      [&](const Eigen::VectorXd& t) {
        return (design.grad(t) + prior.grad_log_density(t)).eval();
      },
      [&](const Eigen::VectorXd& t) {
        return (design.hessian(t) + prior.hessian_log_density()).eval();
      },
      1e-9, 200, 1e3);
  if (!ok) throw std::runtime_error("pseudo-posterior mode search failed to converge");
  PseudoFit fit;
  fit.theta_pl = theta;
  fit.hessian_pl = design.hessian(theta) + prior.hessian_log_density();
  return fit;
}

}  // namespace ergmbayes
