#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ergmbayes {

/// Categorical node attribute stored as integer codes into a level table.
/// Levels are kept in order of first appearance in the label vector.
struct Attribute {
  std::vector<int> codes;
  std::vector<std::string> levels;

  static Attribute from_labels(const std::vector<std::string>& labels) {
    Attribute a;
    a.codes.reserve(labels.size());
    std::unordered_map<std::string, int> index;
    for (const auto& label : labels) {
      auto [it, inserted] = index.emplace(label, static_cast<int>(a.levels.size()));
      if (inserted) a.levels.push_back(label);
      a.codes.push_back(it->second);
    }
    return a;
  }

  const std::string& label(int node) const { return levels[codes[node]]; }
};

/// Labeled simple graph with O(1) edge toggles.
///
/// Undirected dyads are stored canonically as (i, j) with i < j. Adjacency
/// lives in packed bit rows (one row of ceil(n/64) words per node), so edge
/// tests are a single bit probe and common-neighbor counts reduce to
/// AND + popcount -- the two operations Metropolis toggling hammers. The edge
/// set is additionally kept in a swap-pop vector indexed by a hash map, so
/// samplers can pick a uniform existing edge in constant time.
class Graph {
 public:
  explicit Graph(int n, bool directed = false)
      : n_(n), directed_(directed), words_(static_cast<std::size_t>((n + 63) / 64)) {
    if (n < 1) throw std::invalid_argument("Graph: node count must be positive");
    adj_.assign(words_ * n_, 0);
    deg_.assign(n_, 0);
    if (directed_) {
      in_adj_.assign(words_ * n_, 0);
      in_deg_.assign(n_, 0);
    }
  }

  static Graph from_edge_list(int n, const std::vector<std::pair<int, int>>& pairs,
                              bool directed = false) {
    Graph g(n, directed);
    for (const auto& [i, j] : pairs)
      if (!g.has_edge(i, j)) g.toggle_edge(i, j);
    return g;
  }

  int node_count() const { return n_; }
  bool directed() const { return directed_; }
  std::size_t edge_count() const { return edge_list_.size(); }

  /// Total number of dyads: C(n,2) undirected, n(n-1) directed.
  long dyad_count() const {
    const long n = n_;
    return directed_ ? n * (n - 1) : n * (n - 1) / 2;
  }

  bool has_edge(int i, int j) const {
    check_dyad(i, j);
    return test_bit(adj_, i, j);
  }

  /// Flip the state of dyad (i, j). Involution: toggling twice restores the graph.
  void toggle_edge(int i, int j) {
    check_dyad(i, j);
    const std::uint64_t key = pack(i, j);
    auto pos = edge_pos_.find(key);
    if (pos == edge_pos_.end()) {
      edge_pos_.emplace(key, static_cast<std::uint32_t>(edge_list_.size()));
      edge_list_.push_back(key);
      flip_bit(adj_, i, j);
      ++deg_[i];
      if (directed_) {
        flip_bit(in_adj_, j, i);
        ++in_deg_[j];
      } else {
        flip_bit(adj_, j, i);
        ++deg_[j];
      }
    } else {
      const std::uint32_t idx = pos->second;
      const std::uint64_t last = edge_list_.back();
      edge_list_[idx] = last;
      edge_pos_[last] = idx;
      edge_list_.pop_back();
      edge_pos_.erase(pos);
      flip_bit(adj_, i, j);
      --deg_[i];
      if (directed_) {
        flip_bit(in_adj_, j, i);
        --in_deg_[j];
      } else {
        flip_bit(adj_, j, i);
        --deg_[j];
      }
    }
  }

  /// Visit the neighbors of i (out-neighbors for directed graphs) in
  /// ascending node order.
  template <typename Fn>
  void for_each_neighbor(int i, Fn&& fn) const {
    const std::uint64_t* r = row(adj_, i);
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t bits = r[w];
      while (bits != 0) {
        fn(static_cast<int>(w * 64) + std::countr_zero(bits));
        bits &= bits - 1;
      }
    }
  }

  int degree(int i) const {
    check_node(i);
    return directed_ ? deg_[i] + in_deg_[i] : deg_[i];
  }

  /// Edge keys in internal (swap-pop) order; use edge_pairs() for canonical order.
  const std::vector<std::uint64_t>& edge_keys() const { return edge_list_; }

  /// Edges sorted canonically, for file export and display.
  std::vector<std::pair<int, int>> edge_pairs() const {
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(edge_list_.size());
    for (std::uint64_t key : edge_list_) pairs.push_back(unpack(key));
    std::sort(pairs.begin(), pairs.end());
    return pairs;
  }

  /// Number of common neighbors of i and j, ignoring `exclude` if given
  /// (used to evaluate a dyad as if it were absent).
  int common_neighbors(int i, int j, int exclude = -1) const {
    const std::uint64_t* a = row(adj_, i);
    const std::uint64_t* b = row(adj_, j);
    int count = 0;
    for (std::size_t w = 0; w < words_; ++w) count += std::popcount(a[w] & b[w]);
    if (exclude >= 0 && test_bit(adj_, i, exclude) && test_bit(adj_, j, exclude)) --count;
    return count;
  }

  /// Visit the common neighbors of i and j in ascending node order,
  /// skipping `exclude` if given.
  template <typename Fn>
  void for_each_common_neighbor(int i, int j, int exclude, Fn&& fn) const {
    const std::uint64_t* a = row(adj_, i);
    const std::uint64_t* b = row(adj_, j);
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t bits = a[w] & b[w];
      if (exclude >= 0 && static_cast<std::size_t>(exclude / 64) == w)
        bits &= ~(std::uint64_t{1} << (exclude % 64));
      while (bits != 0) {
        fn(static_cast<int>(w * 64) + std::countr_zero(bits));
        bits &= bits - 1;
      }
    }
  }

  // -- attributes ------------------------------------------------------------

  void set_attribute(const std::string& name, const std::vector<std::string>& labels) {
    if (static_cast<int>(labels.size()) != n_)
      throw std::invalid_argument("attribute '" + name + "' has length " +
                                  std::to_string(labels.size()) + ", expected " +
                                  std::to_string(n_));
    attrs_[name] = Attribute::from_labels(labels);
  }

  bool has_attribute(const std::string& name) const { return attrs_.count(name) != 0; }

  const Attribute& attribute(const std::string& name) const {
    auto it = attrs_.find(name);
    if (it == attrs_.end())
      throw std::invalid_argument("graph has no attribute named '" + name + "'");
    return it->second;
  }

  const std::map<std::string, Attribute>& attributes() const { return attrs_; }

  // -- structural summaries ----------------------------------------------------

  /// Entry d = number of nodes with degree d, for d in 0..n-1. Sums to n.
  /// Directed graphs use total degree, so the vector extends to 2(n-1).
  std::vector<long> degree_histogram() const {
    std::vector<long> hist(directed_ ? 2 * n_ - 1 : n_, 0);
    for (int i = 0; i < n_; ++i) ++hist[degree(i)];
    return hist;
  }

  /// Entry k = number of edges whose endpoints share exactly k neighbors,
  /// for k in 0..n-2. Sums to the edge count. Undirected only.
  std::vector<long> esp_histogram() const {
    require_undirected("esp_histogram");
    std::vector<long> hist(n_ > 1 ? n_ - 1 : 1, 0);
    for (std::uint64_t key : edge_list_) {
      const auto [i, j] = unpack(key);
      ++hist[common_neighbors(i, j)];
    }
    return hist;
  }

  /// Entry t-1 = number of unordered dyads at geodesic distance t (t = 1..n-1);
  /// the last entry counts unreachable dyads. Sums to n(n-1)/2. Undirected only.
  std::vector<long> geodesic_histogram() const {
    require_undirected("geodesic_histogram");
    std::vector<long> hist(n_, 0);
    std::vector<int> dist(n_);
    std::vector<int> frontier;
    for (int src = 0; src < n_; ++src) {
      std::fill(dist.begin(), dist.end(), -1);
      dist[src] = 0;
      frontier.assign(1, src);
      while (!frontier.empty()) {
        std::vector<int> next;
        for (int u : frontier) {
          for_each_neighbor(u, [&](int v) {
            if (dist[v] < 0) {
              dist[v] = dist[u] + 1;
              next.push_back(v);
            }
          });
        }
        frontier = std::move(next);
      }
      for (int other = src + 1; other < n_; ++other) {
        if (dist[other] > 0)
          ++hist[dist[other] - 1];
        else if (dist[other] < 0)
          ++hist[n_ - 1];
      }
    }
    return hist;
  }

  static std::uint64_t pack(int i, int j) {
    return (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint32_t>(j);
  }
  static std::pair<int, int> unpack(std::uint64_t key) {
    return {static_cast<int>(key >> 32), static_cast<int>(key & 0xffffffffULL)};
  }

 private:
  void check_node(int i) const {
    if (i < 0 || i >= n_)
      throw std::out_of_range("node index " + std::to_string(i) + " out of range [0, " +
                              std::to_string(n_) + ")");
  }

  void check_dyad(int& i, int& j) const {
    check_node(i);
    check_node(j);
    if (i == j)
      throw std::invalid_argument("self-loop on node " + std::to_string(i) +
                                  " is not allowed");
    if (!directed_ && i > j) std::swap(i, j);
  }

  void require_undirected(const char* what) const {
    if (directed_)
      throw std::invalid_argument(std::string(what) + " is defined for undirected graphs only");
  }

  const std::uint64_t* row(const std::vector<std::uint64_t>& bits, int i) const {
    return bits.data() + static_cast<std::size_t>(i) * words_;
  }
  bool test_bit(const std::vector<std::uint64_t>& bits, int i, int j) const {
    return (row(bits, i)[static_cast<std::size_t>(j) / 64] >> (j % 64)) & 1;
  }
  void flip_bit(std::vector<std::uint64_t>& bits, int i, int j) {
    bits[static_cast<std::size_t>(i) * words_ + static_cast<std::size_t>(j) / 64] ^=
        std::uint64_t{1} << (j % 64);
  }

  int n_;
  bool directed_;
  std::size_t words_;                  // 64-bit words per adjacency row
  std::vector<std::uint64_t> adj_;     // n rows; out-adjacency for directed graphs
  std::vector<std::uint64_t> in_adj_;  // directed graphs only
  std::vector<int> deg_;               // out-degree for directed graphs
  std::vector<int> in_deg_;            // directed graphs only
  std::vector<std::uint64_t> edge_list_;
  std::unordered_map<std::uint64_t, std::uint32_t> edge_pos_;
  std::map<std::string, Attribute> attrs_;
};

}  // namespace ergmbayes
