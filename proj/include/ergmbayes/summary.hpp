#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "ergmbayes/exchange.hpp"

namespace ergmbayes {

struct ParamSummary {
  std::string name;
  double mean = 0.0;
  double sd = 0.0;
  double naive_se = 0.0;
  double ts_se = 0.0;
  std::array<double, 5> quantiles{};  // 2.5, 25, 50, 75, 97.5 percent
};

struct SummaryTable {
  std::vector<ParamSummary> params;
  long n_draws = 0;
  std::optional<double> acceptance_rate;
};

/// Empirical quantile with linear interpolation between order statistics.
inline double empirical_quantile(std::vector<double> sorted_values, double p) {
  const std::size_t n = sorted_values.size();
  if (n == 0) throw std::invalid_argument("quantile of empty sample");
  if (n == 1) return sorted_values[0];
  const double h = p * static_cast<double>(n - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, n - 1);
  const double frac = h - static_cast<double>(lo);
  return sorted_values[lo] + frac * (sorted_values[hi] - sorted_values[lo]);
}

/// Batch-means estimate of the time-series standard error of the mean, with
/// floor(sqrt(N)) batches over the pooled (chain-major) draw sequence.
inline double batch_means_se(const Eigen::VectorXd& pooled) {
  const long n = pooled.size();
  const long nb = static_cast<long>(std::floor(std::sqrt(static_cast<double>(n))));
  if (nb < 2) return 0.0;
  const long b = n / nb;
  const long used = nb * b;
  std::vector<double> batch_mean(nb, 0.0);
  double overall = 0.0;
  for (long k = 0; k < nb; ++k) {
    double sum = 0.0;
    for (long t = 0; t < b; ++t) sum += pooled[k * b + t];
    batch_mean[k] = sum / static_cast<double>(b);
    overall += sum;
  }
  overall /= static_cast<double>(used);
  double var_bm = 0.0;
  for (long k = 0; k < nb; ++k) {
    const double dev = batch_mean[k] - overall;
    var_bm += dev * dev;
  }
  var_bm /= static_cast<double>(nb - 1);
  const double asym_var = static_cast<double>(b) * var_bm;
  return std::sqrt(asym_var / static_cast<double>(used));
}

/// Pool the chains and summarise each coordinate: mean, SD, naive SE
/// (sd / sqrt(N) with N all retained draws), batch-means time-series SE, and
/// the 2.5/25/50/75/97.5 percent quantiles.
inline SummaryTable summarize(const PosteriorSample& sample,
                              const std::vector<std::string>& names = {}) {
  const long n = sample.draws.rows();
  const int d = static_cast<int>(sample.draws.cols());
  if (n == 0 || d == 0) throw std::invalid_argument("summarize: empty sample");

  SummaryTable table;
  table.n_draws = n;
  if (sample.proposal_count > 0) table.acceptance_rate = sample.acceptance_rate();

  static constexpr std::array<double, 5> levels{0.025, 0.25, 0.50, 0.75, 0.975};
  for (int t = 0; t < d; ++t) {
    ParamSummary ps;
    ps.name = t < static_cast<int>(names.size()) ? names[t]
                                                 : "theta_" + std::to_string(t + 1);
    const Eigen::VectorXd col = sample.draws.col(t);
    ps.mean = col.mean();
    const double ss = (col.array() - ps.mean).square().sum();
    ps.sd = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
    ps.naive_se = ps.sd / std::sqrt(static_cast<double>(n));
    ps.ts_se = batch_means_se(col);
    std::vector<double> sorted(col.data(), col.data() + n);
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t q = 0; q < levels.size(); ++q)
      ps.quantiles[q] = empirical_quantile(sorted, levels[q]);
    table.params.push_back(std::move(ps));
  }
  return table;
}

/// Gaussian kernel density on a regular grid, Silverman bandwidth.
struct DensityCurve {
  std::vector<double> x;
  std::vector<double> density;
};

inline DensityCurve kernel_density(const Eigen::VectorXd& values, int gridpoints = 128) {
  const long n = values.size();
  if (n == 0) throw std::invalid_argument("kernel_density: empty sample");
  std::vector<double> sorted(values.data(), values.data() + n);
  std::sort(sorted.begin(), sorted.end());
  const double mean = values.mean();
  const double sd =
      n > 1 ? std::sqrt((values.array() - mean).square().sum() / static_cast<double>(n - 1))
            : 0.0;
  const double iqr = empirical_quantile(sorted, 0.75) - empirical_quantile(sorted, 0.25);
  double spread = std::min(sd, iqr / 1.34);
  if (spread <= 0.0) spread = std::max(sd, 1e-9);
  const double h = 0.9 * spread * std::pow(static_cast<double>(n), -0.2);

  DensityCurve curve;
  curve.x.resize(gridpoints);
  curve.density.resize(gridpoints);
  const double lo = sorted.front() - 3.0 * h;
  const double hi = sorted.back() + 3.0 * h;
  const double step = gridpoints > 1 ? (hi - lo) / (gridpoints - 1) : 0.0;
  const double norm = 1.0 / (static_cast<double>(n) * h * std::sqrt(2.0 * M_PI));
  for (int gp = 0; gp < gridpoints; ++gp) {
    const double x = lo + gp * step;
    double dens = 0.0;
    for (long r = 0; r < n; ++r) {
      const double z = (x - values[r]) / h;
      dens += std::exp(-0.5 * z * z);
    }
    curve.x[gp] = x;
    curve.density[gp] = dens * norm;
  }
  return curve;
}

/// Fixed-width text rendering of a summary table, in the layout of the
/// reference package output: a moments block, a quantile block, and the
/// overall acceptance rate.
inline std::string format_summary(const SummaryTable& table) {
  std::size_t name_width = 10;
  for (const auto& p : table.params) name_width = std::max(name_width, p.name.size() + 9);
  char buf[160];
  std::string out;
  auto row_name = [&](std::size_t idx, const std::string& name) {
    std::string label = "theta" + std::to_string(idx + 1) + " (" + name + ")";
    label.resize(name_width + 2, ' ');
    return label;
  };

  std::snprintf(buf, sizeof buf, "%*s %12s %12s %12s %14s\n", -(int)(name_width + 2), "",
                "Mean", "SD", "Naive SE", "Time-series SE");
  out += buf;
  for (std::size_t t = 0; t < table.params.size(); ++t) {
    const auto& p = table.params[t];
    std::snprintf(buf, sizeof buf, "%s %12.7f %12.7f %12.9f %14.9f\n",
                  row_name(t, p.name).c_str(), p.mean, p.sd, p.naive_se, p.ts_se);
    out += buf;
  }
  out += "\n";
  std::snprintf(buf, sizeof buf, "%*s %12s %12s %12s %12s %12s\n", -(int)(name_width + 2), "",
                "2.5%", "25%", "50%", "75%", "97.5%");
  out += buf;
  for (std::size_t t = 0; t < table.params.size(); ++t) {
    const auto& p = table.params[t];
    std::snprintf(buf, sizeof buf, "%s %12.7f %12.7f %12.7f %12.7f %12.7f\n",
                  row_name(t, p.name).c_str(), p.quantiles[0], p.quantiles[1], p.quantiles[2],
                  p.quantiles[3], p.quantiles[4]);
    out += buf;
  }
  if (table.acceptance_rate) {
    std::snprintf(buf, sizeof buf, "\nAcceptance rate: %.7f\n", *table.acceptance_rate);
    out += buf;
  }
  return out;
}

}  // namespace ergmbayes
