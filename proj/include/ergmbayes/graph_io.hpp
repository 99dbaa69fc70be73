#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ergmbayes/graph.hpp"

namespace ergmbayes {

namespace detail {

/// Split a line on whitespace and commas. Empty tokens are dropped.
inline std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : line) {
    if (c == ' ' || c == '\t' || c == '\r' || c == ',') {
      if (!current.empty()) tokens.push_back(std::move(current)), current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

inline bool is_comment_or_blank(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (c != ' ' && c != '\t' && c != '\r') return false;
  }
  return true;
}

}  // namespace detail

/// Edge-list format: `#` comment lines, then a header `n <count>
/// <undirected|directed>`, then one 0-indexed dyad `i j` per line.
inline Graph read_edge_list(std::istream& in, const std::string& origin = "<stream>") {
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) -> std::runtime_error {
    return std::runtime_error(origin + ":" + std::to_string(lineno) + ": " + msg);
  };

  int n = -1;
  bool directed = false;
  std::vector<std::pair<int, int>> pairs;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::is_comment_or_blank(line)) continue;
    auto tokens = detail::tokenize(line);
    if (n < 0) {
      if (tokens.size() != 3 || tokens[0] != "n")
        throw fail("expected header 'n <count> <undirected|directed>'");
      try {
        n = std::stoi(tokens[1]);
      } catch (const std::exception&) {
        throw fail("invalid node count '" + tokens[1] + "'");
      }
      if (tokens[2] == "directed")
        directed = true;
      else if (tokens[2] != "undirected")
        throw fail("expected 'undirected' or 'directed', got '" + tokens[2] + "'");
      continue;
    }
    if (tokens.size() != 2) throw fail("expected a dyad 'i j'");
    int i, j;
    try {
      i = std::stoi(tokens[0]);
      j = std::stoi(tokens[1]);
    } catch (const std::exception&) {
      throw fail("invalid dyad '" + line + "'");
    }
    if (i < 0 || i >= n || j < 0 || j >= n) throw fail("endpoint out of range in '" + line + "'");
    if (i == j) throw fail("self-loop on node " + std::to_string(i));
    pairs.emplace_back(i, j);
  }
  if (n < 0) throw std::runtime_error(origin + ": missing 'n <count> <mode>' header");
  return Graph::from_edge_list(n, pairs, directed);
}

inline Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge-list file '" + path + "'");
  return read_edge_list(in, path);
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << "n " << g.node_count() << (g.directed() ? " directed" : " undirected") << "\n";
  for (const auto& [i, j] : g.edge_pairs()) out << i << " " << j << "\n";
}

inline void write_edge_list_file(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write edge-list file '" + path + "'");
  write_edge_list(out, g);
}

/// Attribute table: header row of attribute names, then one row of labels per
/// node in node order. Whitespace or comma delimited.
inline void read_attributes(std::istream& in, Graph& g, const std::string& origin = "<stream>") {
  std::string line;
  int lineno = 0;
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> columns;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::is_comment_or_blank(line)) continue;
    auto tokens = detail::tokenize(line);
    if (names.empty()) {
      names = tokens;
      columns.resize(names.size());
      continue;
    }
    if (tokens.size() != names.size())
      throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": expected " +
                               std::to_string(names.size()) + " fields, got " +
                               std::to_string(tokens.size()));
    for (std::size_t c = 0; c < tokens.size(); ++c) columns[c].push_back(tokens[c]);
  }
  if (names.empty()) throw std::runtime_error(origin + ": empty attribute table");
  for (std::size_t c = 0; c < names.size(); ++c) g.set_attribute(names[c], columns[c]);
}

inline void read_attributes_file(const std::string& path, Graph& g) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open attribute file '" + path + "'");
  read_attributes(in, g, path);
}

inline void write_attributes(std::ostream& out, const Graph& g) {
  const auto& attrs = g.attributes();
  if (attrs.empty()) return;
  bool first = true;
  for (const auto& [name, attr] : attrs) {
    out << (first ? "" : "\t") << name;
    first = false;
  }
  out << "\n";
  for (int node = 0; node < g.node_count(); ++node) {
    first = true;
    for (const auto& [name, attr] : attrs) {
      out << (first ? "" : "\t") << attr.label(node);
      first = false;
    }
    out << "\n";
  }
}

inline void write_attributes_file(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write attribute file '" + path + "'");
  write_attributes(out, g);
}

}  // namespace ergmbayes
