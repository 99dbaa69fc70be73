#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ergmbayes/graph.hpp"
#include "ergmbayes/model.hpp"
#include "ergmbayes/prior.hpp"

namespace ergmbayes {

namespace detail {

inline void require_enumerable(int n) {
  if (n < 2 || n > 6)
    throw std::invalid_argument(
        "exhaustive enumeration supports 2 <= n <= 6 (2^C(n,2) graphs)");
}

inline double log_sum_exp(const Eigen::VectorXd& v) {
  const double m = v.maxCoeff();
  return m + std::log((v.array() - m).exp().sum());
}

}  // namespace detail

/// Sufficient statistics of every graph on the node set of `base`:
/// a 2^C(n,2) x dim matrix, row g = s(graph with edge bitmask g). Dyads are
/// numbered (0,1), (0,2), ..., (n-2,n-1) in i-major order. Edges of `base`
/// are ignored; its node count and attributes define the enumeration space.
inline Eigen::MatrixXd enumerate_all_stats(const Graph& base, const ModelSpec& spec) {
  const int n = base.node_count();
  detail::require_enumerable(n);
  if (base.directed())
    throw std::invalid_argument("enumeration covers undirected graphs only");

  std::vector<std::pair<int, int>> dyads;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) dyads.emplace_back(i, j);

  Graph g(n, false);
  for (const auto& [name, attr] : base.attributes()) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (int node = 0; node < n; ++node) labels.push_back(attr.label(node));
    g.set_attribute(name, labels);
  }
  BoundModel model(g, spec);

  const std::size_t count = std::size_t{1} << dyads.size();
  Eigen::MatrixXd stats(count, model.dim());
  for (std::size_t mask = 0; mask < count; ++mask) {
    if (mask > 0) {
      // gray-code order: one toggle per step
      const std::size_t gray = mask ^ (mask >> 1);
      const std::size_t prev = (mask - 1) ^ ((mask - 1) >> 1);
      const int bit = __builtin_ctzll(gray ^ prev);
      g.toggle_edge(dyads[bit].first, dyads[bit].second);
      const std::size_t row = gray;
      stats.row(row) = model.compute(g);
    } else {
      stats.row(0) = model.compute(g);
    }
  }
  return stats;
}

/// Exact log normalising constant log z(theta) = log sum over all graphs of
/// exp(theta . s(g)), by exhaustive enumeration with log-sum-exp.
inline double exact_log_z(const Graph& base, const ModelSpec& spec,
                          const Eigen::VectorXd& theta) {
  const Eigen::MatrixXd stats = enumerate_all_stats(base, spec);
  if (theta.size() != stats.cols()) throw std::invalid_argument("exact_log_z: theta dimension");
  return detail::log_sum_exp(stats * theta);
}

/// Attribute-free convenience overload.
inline double exact_log_z(int n, const ModelSpec& spec, const Eigen::VectorXd& theta) {
  return exact_log_z(Graph(n, false), spec, theta);
}

/// Exact gradient of the log likelihood: s(y) - E_theta[s(y')].
inline Eigen::VectorXd exact_loglik_grad(const Graph& y, const ModelSpec& spec,
                                         const Eigen::VectorXd& theta) {
  const Eigen::MatrixXd stats = enumerate_all_stats(y, spec);
  const Eigen::VectorXd logits = stats * theta;
  const double logz = detail::log_sum_exp(logits);
  const Eigen::VectorXd weights = (logits.array() - logz).exp();
  const Eigen::VectorXd expected = stats.transpose() * weights;
  return compute_stats(y, spec) - expected;
}

struct GridAxis {
  double lo = -5.0;
  double hi = 5.0;
  int steps = 201;
};

/// Unnormalized log posterior evaluated on a product grid, with normalized
/// weights over the grid; the verification backbone for the samplers.
struct ExactPosteriorGrid {
  Eigen::MatrixXd points;    // gridpoints x dim
  Eigen::VectorXd log_post;  // theta . s(y) - log z(theta) + log p(theta)
  Eigen::VectorXd weights;   // softmax of log_post; sums to 1

  Eigen::VectorXd mean() const { return points.transpose() * weights; }

  Eigen::MatrixXd cov() const {
    const Eigen::VectorXd mu = mean();
    const Eigen::MatrixXd centered = points.rowwise() - mu.transpose();
    return centered.transpose() * weights.asDiagonal() * centered;
  }

  Eigen::VectorXd sd() const { return cov().diagonal().cwiseSqrt(); }
};

inline ExactPosteriorGrid exact_posterior_grid(const Graph& y, const ModelSpec& spec,
                                               const GaussianPrior& prior,
                                               const std::vector<GridAxis>& axes) {
  const Eigen::MatrixXd stats = enumerate_all_stats(y, spec);
  const int d = static_cast<int>(stats.cols());
  if (static_cast<int>(axes.size()) != d)
    throw std::invalid_argument("grid needs one axis per model dimension");
  for (const auto& axis : axes)
    if (axis.steps < 2 || !(axis.hi > axis.lo))
      throw std::invalid_argument("grid axis needs hi > lo and at least 2 steps");

  long total = 1;
  for (const auto& axis : axes) total *= axis.steps;

  const Eigen::VectorXd s_obs = compute_stats(y, spec);

  ExactPosteriorGrid grid;
  grid.points.resize(total, d);
  grid.log_post.resize(total);
  std::vector<int> index(d, 0);
  Eigen::VectorXd theta(d);
  for (long gp = 0; gp < total; ++gp) {
    for (int t = 0; t < d; ++t) {
      const auto& axis = axes[t];
      theta[t] = axis.lo + (axis.hi - axis.lo) * index[t] / (axis.steps - 1);
    }
    grid.points.row(gp) = theta;
    const double logz = detail::log_sum_exp(stats * theta);
    grid.log_post[gp] = theta.dot(s_obs) - logz + prior.log_density(theta);
    for (int t = d - 1; t >= 0; --t) {
      if (++index[t] < axes[t].steps) break;
      index[t] = 0;
    }
  }
  const double norm = detail::log_sum_exp(grid.log_post);
  grid.weights = (grid.log_post.array() - norm).exp();
  return grid;
}

}  // namespace ergmbayes
