#pragma once

// Independent reference implementations used to cross-check the library.
// Everything here is deliberately naive: full rescans, cubic loops, textbook
// formulas straight from the definitions. No code is shared with the
// implementations under test beyond the Graph container itself.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ergmbayes/graph.hpp"
#include "ergmbayes/model.hpp"
#include "ergmbayes/rng.hpp"

namespace oracles {

using ergmbayes::Graph;
using ergmbayes::Rng;

inline double binom_table(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  std::vector<std::vector<double>> c(n + 1, std::vector<double>(n + 1, 0.0));
  for (int i = 0; i <= n; ++i) {
    c[i][0] = 1.0;
    for (int j = 1; j <= i; ++j) c[i][j] = (j == i) ? 1.0 : c[i - 1][j - 1] + c[i - 1][j];
  }
  return c[n][k];
}

inline int naive_degree(const Graph& g, int i) {
  int d = 0;
  for (int v = 0; v < g.node_count(); ++v)
    if (v != i && g.has_edge(i, v)) ++d;
  return d;
}

inline double naive_edges(const Graph& g) {
  double m = 0.0;
  for (int i = 0; i < g.node_count(); ++i)
    for (int j = i + 1; j < g.node_count(); ++j)
      if (g.has_edge(i, j)) m += 1.0;
  return m;
}

inline double naive_triangles(const Graph& g) {
  double t = 0.0;
  for (int i = 0; i < g.node_count(); ++i)
    for (int j = i + 1; j < g.node_count(); ++j)
      for (int k = j + 1; k < g.node_count(); ++k)
        if (g.has_edge(i, j) && g.has_edge(j, k) && g.has_edge(i, k)) t += 1.0;
  return t;
}

inline double naive_kstar(const Graph& g, int k) {
  double s = 0.0;
  for (int i = 0; i < g.node_count(); ++i) s += binom_table(naive_degree(g, i), k);
  return s;
}

inline double naive_nodematch(const Graph& g, const std::string& attr) {
  const auto& a = g.attribute(attr);
  double m = 0.0;
  for (int i = 0; i < g.node_count(); ++i)
    for (int j = i + 1; j < g.node_count(); ++j)
      if (g.has_edge(i, j) && a.codes[i] == a.codes[j]) m += 1.0;
  return m;
}

inline int naive_shared_partners(const Graph& g, int i, int j) {
  int c = 0;
  for (int v = 0; v < g.node_count(); ++v)
    if (v != i && v != j && g.has_edge(i, v) && g.has_edge(j, v)) ++c;
  return c;
}

inline std::vector<long> naive_degree_hist(const Graph& g) {
  std::vector<long> hist(g.node_count(), 0);
  for (int i = 0; i < g.node_count(); ++i) ++hist[naive_degree(g, i)];
  return hist;
}

inline std::vector<long> naive_esp_hist(const Graph& g) {
  std::vector<long> hist(std::max(1, g.node_count() - 1), 0);
  for (int i = 0; i < g.node_count(); ++i)
    for (int j = i + 1; j < g.node_count(); ++j)
      if (g.has_edge(i, j)) ++hist[naive_shared_partners(g, i, j)];
  return hist;
}

// gwdegree(y; tau) = e^tau * sum_d [1 - (1 - e^-tau)^d] D_d, straight from
// the definition via the degree histogram.
inline double naive_gwdegree(const Graph& g, double tau) {
  const auto hist = naive_degree_hist(g);
  double s = 0.0;
  for (std::size_t d = 1; d < hist.size(); ++d)
    s += (1.0 - std::pow(1.0 - std::exp(-tau), static_cast<double>(d))) *
         static_cast<double>(hist[d]);
  return std::exp(tau) * s;
}

inline double naive_gwesp(const Graph& g, double tau) {
  const auto hist = naive_esp_hist(g);
  double s = 0.0;
  for (std::size_t k = 1; k < hist.size(); ++k)
    s += (1.0 - std::pow(1.0 - std::exp(-tau), static_cast<double>(k))) *
         static_cast<double>(hist[k]);
  return std::exp(tau) * s;
}

inline double naive_term(const Graph& g, const ergmbayes::ModelTerm& term) {
  using ergmbayes::TermKind;
  switch (term.kind) {
    case TermKind::edges: return naive_edges(g);
    case TermKind::nodematch: return naive_nodematch(g, term.attr);
    case TermKind::gwdegree: return naive_gwdegree(g, term.decay);
    case TermKind::gwesp: return naive_gwesp(g, term.decay);
    case TermKind::triangle: return naive_triangles(g);
    case TermKind::kstar: return naive_kstar(g, term.k);
  }
  throw std::logic_error("unknown term");
}

inline Eigen::VectorXd naive_stats(const Graph& g, const ergmbayes::ModelSpec& spec) {
  Eigen::VectorXd s(spec.dim());
  for (int t = 0; t < spec.dim(); ++t) s[t] = naive_term(g, spec.terms[t]);
  return s;
}

/// All-pairs shortest paths by Floyd-Warshall; -1 means unreachable.
inline std::vector<std::vector<int>> floyd_warshall(const Graph& g) {
  const int n = g.node_count();
  const int inf = 1 << 28;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (int i = 0; i < n; ++i) d[i][i] = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && g.has_edge(i, j)) d[i][j] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (d[i][j] >= inf) d[i][j] = -1;
  return d;
}

inline Graph erdos_renyi(int n, double p, Rng& rng, bool directed = false) {
  Graph g(n, directed);
  for (int i = 0; i < n; ++i)
    for (int j = directed ? 0 : i + 1; j < n; ++j)
      if (i != j && rng.uniform() < p) g.toggle_edge(i, j);
  return g;
}

inline std::vector<std::string> random_labels(int n, int nlevels, Rng& rng) {
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i)
    labels[i] = std::string(1, static_cast<char>('a' + rng.below(nlevels)));
  return labels;
}

/// Central finite-difference gradient of a scalar function.
template <typename F>
Eigen::VectorXd fd_gradient(F&& f, const Eigen::VectorXd& x, double h = 1e-5) {
  Eigen::VectorXd grad(x.size());
  for (int i = 0; i < x.size(); ++i) {
    Eigen::VectorXd hi = x, lo = x;
    hi[i] += h;
    lo[i] -= h;
    grad[i] = (f(hi) - f(lo)) / (2.0 * h);
  }
  return grad;
}

/// Central finite-difference Jacobian of a vector function (rows follow f).
template <typename F>
Eigen::MatrixXd fd_jacobian(F&& f, const Eigen::VectorXd& x, double h = 1e-5) {
  const Eigen::VectorXd f0 = f(x);
  Eigen::MatrixXd jac(f0.size(), x.size());
  for (int i = 0; i < x.size(); ++i) {
    Eigen::VectorXd hi = x, lo = x;
    hi[i] += h;
    lo[i] -= h;
    jac.col(i) = (f(hi) - f(lo)) / (2.0 * h);
  }
  return jac;
}

}  // namespace oracles
