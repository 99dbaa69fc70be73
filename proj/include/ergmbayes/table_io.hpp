#pragma once

#include <Eigen/Dense>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ergmbayes/exchange.hpp"
#include "ergmbayes/graph_io.hpp"

namespace ergmbayes {

/// Shortest decimal representation that round-trips the double exactly.
inline std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

/// Draws table: tab-separated, header `chain iter theta_1 ... theta_d`,
/// chains and iters numbered from 1.
inline void write_draws(std::ostream& out, const PosteriorSample& sample) {
  out << "chain\titer";
  for (int t = 0; t < sample.dim; ++t) out << "\ttheta_" << (t + 1);
  out << "\n";
  for (int h = 0; h < sample.nchains; ++h) {
    for (long it = 0; it < sample.iters; ++it) {
      out << (h + 1) << "\t" << (it + 1);
      const auto row = sample.draws.row(static_cast<Eigen::Index>(h) * sample.iters + it);
      for (int t = 0; t < sample.dim; ++t) out << "\t" << format_double(row[t]);
      out << "\n";
    }
  }
}

inline void write_draws_file(const std::string& path, const PosteriorSample& sample) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write draws file '" + path + "'");
  write_draws(out, sample);
}

inline PosteriorSample read_draws(std::istream& in, const std::string& origin = "<stream>") {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(origin + ": empty draws table");
  auto header = detail::tokenize(line);
  if (header.size() < 3 || header[0] != "chain" || header[1] != "iter")
    throw std::runtime_error(origin + ": expected header 'chain\titer\ttheta_1...'");
  const int d = static_cast<int>(header.size()) - 2;

  std::map<long, std::vector<Eigen::VectorXd>> chains;
  std::vector<long> chain_order;
  long lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::is_comment_or_blank(line)) continue;
    auto tokens = detail::tokenize(line);
    if (static_cast<int>(tokens.size()) != d + 2)
      throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": expected " +
                               std::to_string(d + 2) + " fields");
    const long chain = std::stol(tokens[0]);
    Eigen::VectorXd theta(d);
    for (int t = 0; t < d; ++t) theta[t] = std::stod(tokens[t + 2]);
    if (!chains.count(chain)) chain_order.push_back(chain);
    chains[chain].push_back(std::move(theta));
  }
  if (chains.empty()) throw std::runtime_error(origin + ": no draws");
  const long iters = static_cast<long>(chains.begin()->second.size());
  for (const auto& [chain, rows] : chains)
    if (static_cast<long>(rows.size()) != iters)
      throw std::runtime_error(origin + ": chains have unequal draw counts");

  PosteriorSample sample;
  sample.nchains = static_cast<int>(chains.size());
  sample.iters = iters;
  sample.dim = d;
  sample.draws.resize(static_cast<Eigen::Index>(sample.nchains) * iters, d);
  Eigen::Index row = 0;
  for (long chain : chain_order)
    for (const auto& theta : chains.at(chain)) sample.draws.row(row++) = theta;
  return sample;
}

inline PosteriorSample read_draws_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open draws file '" + path + "'");
  return read_draws(in, path);
}

/// Generic numeric table with named columns.
inline void write_table(std::ostream& out, const std::vector<std::string>& columns,
                        const Eigen::MatrixXd& rows) {
  if (static_cast<Eigen::Index>(columns.size()) != rows.cols())
    throw std::invalid_argument("write_table: column count mismatch");
  for (std::size_t c = 0; c < columns.size(); ++c)
    out << (c ? "\t" : "") << columns[c];
  out << "\n";
  for (Eigen::Index r = 0; r < rows.rows(); ++r) {
    for (Eigen::Index c = 0; c < rows.cols(); ++c)
      out << (c ? "\t" : "") << format_double(rows(r, c));
    out << "\n";
  }
}

inline void write_table_file(const std::string& path, const std::vector<std::string>& columns,
                             const Eigen::MatrixXd& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write table file '" + path + "'");
  write_table(out, columns, rows);
}

}  // namespace ergmbayes
