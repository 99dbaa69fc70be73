#pragma once

#include <Eigen/Dense>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "ergmbayes/graph.hpp"

namespace ergmbayes {

enum class TermKind { edges, nodematch, gwdegree, gwesp, triangle, kstar };

/// One sufficient-statistic term. Geometrically weighted terms carry a fixed
/// decay constant; kstar carries the star order k >= 2; nodematch names a
/// categorical node attribute.
struct ModelTerm {
  TermKind kind = TermKind::edges;
  std::string attr;
  double decay = 0.0;
  int k = 0;

  static ModelTerm edges() { return {TermKind::edges, "", 0.0, 0}; }
  static ModelTerm nodematch(std::string attribute) {
    return {TermKind::nodematch, std::move(attribute), 0.0, 0};
  }
  static ModelTerm gwdegree(double decay) { return {TermKind::gwdegree, "", decay, 0}; }
  static ModelTerm gwesp(double decay) { return {TermKind::gwesp, "", decay, 0}; }
  static ModelTerm triangle() { return {TermKind::triangle, "", 0.0, 0}; }
  static ModelTerm kstar(int k) { return {TermKind::kstar, "", 0.0, k}; }

  bool operator==(const ModelTerm&) const = default;

  /// Canonical text form, e.g. "gwesp(0.2)" or "nodematch(Grade)".
  std::string name() const;

  void validate() const {
    switch (kind) {
      case TermKind::gwdegree:
      case TermKind::gwesp:
        if (decay < 0.0 || !std::isfinite(decay))
          throw std::invalid_argument(name() + ": decay must be a nonnegative real");
        break;
      case TermKind::kstar:
        if (k < 2) throw std::invalid_argument("kstar: k must be at least 2");
        break;
      case TermKind::nodematch:
        if (attr.empty()) throw std::invalid_argument("nodematch: attribute name required");
        break;
      default:
        break;
    }
  }
};

/// Ordered term list; the order fixes the coordinate order of s(y) and theta
/// throughout the system.
struct ModelSpec {
  std::vector<ModelTerm> terms;

  int dim() const { return static_cast<int>(terms.size()); }

  void validate() const {
    if (terms.empty()) throw std::invalid_argument("model must contain at least one term");
    for (const auto& t : terms) t.validate();
    for (std::size_t a = 0; a < terms.size(); ++a)
      for (std::size_t b = a + 1; b < terms.size(); ++b)
        if (terms[a] == terms[b])
          throw std::invalid_argument("duplicate term '" + terms[a].name() + "' in model");
  }

  bool operator==(const ModelSpec&) const = default;
};

using StatVector = Eigen::VectorXd;

namespace detail {

/// C(n, k) as a double, 0 when n < k.
inline double binom(int n, int k) {
  if (k < 0 || n < k) return 0.0;
  double result = 1.0;
  for (int i = 1; i <= k; ++i) result *= static_cast<double>(n - k + i) / i;
  return result;
}

inline std::string format_decay(double decay);

}  // namespace detail

/// Model bound to a graph's shape: attribute codes are resolved and the
/// geometric weight tables are precomputed, so the per-toggle change
/// statistics in the sampler inner loop avoid lookups and pow() calls.
///
/// The geometrically weighted statistics use the standard forms
///   gwdegree(y; tau) = e^tau * sum_d [1 - (1 - e^-tau)^d] * D_d(y)
///   gwesp(y; tau)    = e^tau * sum_c [1 - (1 - e^-tau)^c] * EP_c(y)
/// with D_d the number of degree-d nodes and EP_c the number of edges whose
/// endpoints share exactly c neighbors. Writing w(d) for the per-unit weight
/// (w(0) = 0), gwdegree is sum_v w(deg v) and gwesp is sum_edges w(sp(e)),
/// which is the form the change statistics below exploit.
class BoundModel {
 public:
  BoundModel(const Graph& g, const ModelSpec& spec) : spec_(spec) {
    spec.validate();
    if (g.directed())
      throw std::invalid_argument("all model terms are undirected; got a directed graph");
    const int n = g.node_count();
    for (const auto& term : spec.terms) {
      Bound b;
      b.kind = term.kind;
      b.k = term.k;
      if (term.kind == TermKind::nodematch) b.codes = g.attribute(term.attr).codes;
      if (term.kind == TermKind::gwdegree || term.kind == TermKind::gwesp) {
        // weight[c] = e^tau * (1 - (1 - e^-tau)^c); weight[0] = 0 for any tau
        const double base = 1.0 - std::exp(-term.decay);
        const double scale = std::exp(term.decay);
        b.weight.resize(n + 1);
        double power = 1.0;
        for (int c = 0; c <= n; ++c) {
          b.weight[c] = scale * (1.0 - power);
          power *= base;
        }
      }
      bound_.push_back(std::move(b));
    }
  }

  int dim() const { return static_cast<int>(bound_.size()); }
  const ModelSpec& spec() const { return spec_; }

  /// Full sufficient-statistics vector s(g).
  StatVector compute(const Graph& g) const {
    StatVector s(dim());
    for (int t = 0; t < dim(); ++t) {
      const Bound& b = bound_[t];
      double value = 0.0;
      switch (b.kind) {
        case TermKind::edges:
          value = static_cast<double>(g.edge_count());
          break;
        case TermKind::nodematch:
          for (std::uint64_t key : g.edge_keys()) {
            const auto [i, j] = Graph::unpack(key);
            if (b.codes[i] == b.codes[j]) value += 1.0;
          }
          break;
        case TermKind::triangle:
          for (std::uint64_t key : g.edge_keys()) {
            const auto [i, j] = Graph::unpack(key);
            value += g.common_neighbors(i, j);
          }
          value /= 3.0;
          break;
        case TermKind::kstar:
          for (int v = 0; v < g.node_count(); ++v)
            value += detail::binom(g.degree(v), b.k);
          break;
        case TermKind::gwdegree:
          for (int v = 0; v < g.node_count(); ++v) value += b.weight[g.degree(v)];
          break;
        case TermKind::gwesp:
          for (std::uint64_t key : g.edge_keys()) {
            const auto [i, j] = Graph::unpack(key);
            value += b.weight[g.common_neighbors(i, j)];
          }
          break;
      }
      s[t] = value;
    }
    return s;
  }

  /// Formation change statistics: out[t] = s(y with dyad on) - s(y with dyad
  /// off), other dyads as in g. The current state of (i, j) in g does not
  /// matter; the dyad is treated as absent via exclusion, so this works both
  /// for adding and (negated) for deleting.
  ///
  /// Local evaluation per term, with degrees d taken with the dyad off and
  /// C = common neighbors of i and j:
  ///   edges     +1
  ///   nodematch +1 if the endpoint labels match
  ///   triangle  |C|
  ///   kstar     C(d_i, k-1) + C(d_j, k-1)
  ///   gwdegree  w(d_i+1) - w(d_i) + w(d_j+1) - w(d_j)
  ///   gwesp     w(|C|) + sum over k in C of the weight increments for edges
  ///             (i,k) and (j,k), whose shared-partner counts rise by one.
  void change(const Graph& g, int i, int j, double* out) const {
    const bool present = g.has_edge(i, j);
    const int di = g.degree(i) - (present ? 1 : 0);
    const int dj = g.degree(j) - (present ? 1 : 0);
    int common = -1;  // computed lazily, shared across terms
    for (int t = 0; t < dim(); ++t) {
      const Bound& b = bound_[t];
      switch (b.kind) {
        case TermKind::edges:
          out[t] = 1.0;
          break;
        case TermKind::nodematch:
          out[t] = (b.codes[i] == b.codes[j]) ? 1.0 : 0.0;
          break;
        case TermKind::triangle:
          if (common < 0) common = g.common_neighbors(i, j);
          out[t] = static_cast<double>(common);
          break;
        case TermKind::kstar:
          out[t] = detail::binom(di, b.k - 1) + detail::binom(dj, b.k - 1);
          break;
        case TermKind::gwdegree:
          out[t] = (b.weight[di + 1] - b.weight[di]) + (b.weight[dj + 1] - b.weight[dj]);
          break;
        case TermKind::gwesp: {
          if (common < 0) common = g.common_neighbors(i, j);
          double delta = b.weight[common];
          g.for_each_common_neighbor(i, j, -1, [&](int v) {
            const int spi = g.common_neighbors(i, v, j);
            const int spj = g.common_neighbors(j, v, i);
            delta += (b.weight[spi + 1] - b.weight[spi]) + (b.weight[spj + 1] - b.weight[spj]);
          });
          out[t] = delta;
          break;
        }
      }
    }
  }

 private:
  struct Bound {
    TermKind kind;
    std::vector<int> codes;      // nodematch
    std::vector<double> weight;  // gwdegree / gwesp
    int k = 0;                   // kstar
  };

  ModelSpec spec_;
  std::vector<Bound> bound_;
};

inline StatVector compute_stats(const Graph& g, const ModelSpec& spec) {
  return BoundModel(g, spec).compute(g);
}

inline StatVector change_stats(const Graph& g, const ModelSpec& spec, int i, int j) {
  if (i == j) throw std::invalid_argument("change_stats: self-loop dyad");
  BoundModel model(g, spec);
  StatVector delta(model.dim());
  model.change(g, i, j, delta.data());
  return delta;
}

inline std::string ModelTerm::name() const {
  switch (kind) {
    case TermKind::edges:
      return "edges";
    case TermKind::nodematch: {
      bool plain = !attr.empty() && (std::isalpha(static_cast<unsigned char>(attr[0])) ||
                                     attr[0] == '_');
      for (char c : attr)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.')) plain = false;
      return plain ? "nodematch(" + attr + ")" : "nodematch('" + attr + "')";
    }
    case TermKind::gwdegree:
      return "gwdegree(" + detail::format_decay(decay) + ")";
    case TermKind::gwesp:
      return "gwesp(" + detail::format_decay(decay) + ")";
    case TermKind::triangle:
      return "triangle";
    case TermKind::kstar:
      return "kstar(" + std::to_string(k) + ")";
  }
  return "?";
}

namespace detail {

inline std::string format_decay(double decay) {
  // shortest decimal that round-trips
  char buf[32];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, decay);
    if (std::strtod(buf, nullptr) == decay) break;
  }
  return buf;
}

}  // namespace detail

}  // namespace ergmbayes
