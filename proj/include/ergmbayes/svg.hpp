#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ergmbayes/gof.hpp"
#include "ergmbayes/summary.hpp"

namespace ergmbayes {

namespace svg_detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline const char* palette(int k) {
  static const char* colors[] = {"#1b9e77", "#d95f02", "#7570b3",
                                 "#e7298a", "#66a61e", "#e6ab02"};
  return colors[k % 6];
}

/// Maps data coordinates into a pixel rectangle (y axis flipped).
struct Frame {
  double px, py, pw, ph;      // pixel rect
  double x0, x1, y0, y1;      // data range
  double x(double v) const { return px + (v - x0) / (x1 - x0) * pw; }
  double y(double v) const { return py + ph - (v - y0) / (y1 - y0) * ph; }
};

inline Frame make_frame(double px, double py, double pw, double ph, double x0, double x1,
                        double y0, double y1) {
  if (x1 <= x0) x1 = x0 + 1.0;
  if (y1 <= y0) {
    y0 -= 0.5;
    y1 = y0 + 1.0;
  }
  return Frame{px, py, pw, ph, x0, x1, y0, y1};
}

}  // namespace svg_detail

/// Accumulates SVG elements; deterministic output for fixed input.
class SvgCanvas {
 public:
  SvgCanvas(int width, int height) : width_(width), height_(height) {
    body_ << "<rect x=\"0\" y=\"0\" width=\"" << width_ << "\" height=\"" << height_
          << "\" fill=\"white\"/>\n";
  }

  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke,
                double stroke_width = 1.0, double opacity = 1.0) {
    if (pts.size() < 2) return;
    body_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\""
          << svg_detail::num(stroke_width) << "\" stroke-opacity=\"" << svg_detail::num(opacity)
          << "\" points=\"";
    append_points(pts);
    body_ << "\"/>\n";
  }

  void polygon(const std::vector<std::pair<double, double>>& pts, const std::string& fill,
               double opacity = 1.0) {
    if (pts.size() < 3) return;
    body_ << "<polygon stroke=\"none\" fill=\"" << fill << "\" fill-opacity=\""
          << svg_detail::num(opacity) << "\" points=\"";
    append_points(pts);
    body_ << "\"/>\n";
  }

  void line(double x1, double y1, double x2, double y2, const std::string& stroke,
            double stroke_width = 1.0) {
    body_ << "<line x1=\"" << svg_detail::num(x1) << "\" y1=\"" << svg_detail::num(y1)
          << "\" x2=\"" << svg_detail::num(x2) << "\" y2=\"" << svg_detail::num(y2)
          << "\" stroke=\"" << stroke << "\" stroke-width=\"" << svg_detail::num(stroke_width)
          << "\"/>\n";
  }

  void text(double x, double y, const std::string& content, int size = 12,
            const std::string& anchor = "start") {
    body_ << "<text x=\"" << svg_detail::num(x) << "\" y=\"" << svg_detail::num(y)
          << "\" font-family=\"sans-serif\" font-size=\"" << size << "\" text-anchor=\"" << anchor
          << "\">" << escape(content) << "</text>\n";
  }

  void frame_box(const svg_detail::Frame& f) {
    body_ << "<rect x=\"" << svg_detail::num(f.px) << "\" y=\"" << svg_detail::num(f.py)
          << "\" width=\"" << svg_detail::num(f.pw) << "\" height=\"" << svg_detail::num(f.ph)
          << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  }

  void write(std::ostream& out) const {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_ << "\" height=\""
        << height_ << "\" viewBox=\"0 0 " << width_ << " " << height_ << "\">\n"
        << body_.str() << "</svg>\n";
  }

  void write_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write SVG file '" + path + "'");
    write(out);
  }

 private:
  static std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
      switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        default: out += c;
      }
    }
    return out;
  }

  void append_points(const std::vector<std::pair<double, double>>& pts) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) body_ << ' ';
      body_ << svg_detail::num(pts[i].first) << ',' << svg_detail::num(pts[i].second);
    }
  }

  int width_, height_;
  std::ostringstream body_;
};

/// One row per parameter: trace (all chains overlaid) on the left,
/// pooled posterior density on the right.
inline SvgCanvas plot_posterior(const PosteriorSample& sample,
                                const std::vector<std::string>& names = {}) {
  const int d = sample.dim;
  const int panel_h = 160, trace_w = 460, dens_w = 300;
  const int margin = 40, gap = 30;
  SvgCanvas canvas(margin + trace_w + gap + dens_w + margin, margin + d * (panel_h + gap));

  for (int t = 0; t < d; ++t) {
    const Eigen::VectorXd column = sample.draws.col(t);
    const double lo = column.minCoeff(), hi = column.maxCoeff();
    const double top = margin + t * (panel_h + gap);
    const std::string label =
        t < static_cast<int>(names.size()) ? names[t] : "theta_" + std::to_string(t + 1);

    auto trace = svg_detail::make_frame(margin, top, trace_w, panel_h, 1.0,
                                        static_cast<double>(sample.iters), lo, hi);
    for (int h = 0; h < sample.nchains; ++h) {
      std::vector<std::pair<double, double>> pts;
      pts.reserve(sample.iters);
      for (long it = 0; it < sample.iters; ++it) {
        const double v = sample.draws(static_cast<Eigen::Index>(h) * sample.iters + it, t);
        pts.emplace_back(trace.x(static_cast<double>(it + 1)), trace.y(v));
      }
      canvas.polyline(pts, svg_detail::palette(h), 0.8, 0.8);
    }
    canvas.frame_box(trace);
    canvas.text(margin, top - 6, label + "  (trace)", 12);

    const DensityCurve dens = kernel_density(column);
    double dmax = 0.0;
    for (double v : dens.density) dmax = std::max(dmax, v);
    auto df = svg_detail::make_frame(margin + trace_w + gap, top, dens_w, panel_h,
                                     dens.x.front(), dens.x.back(), 0.0, dmax * 1.05);
    std::vector<std::pair<double, double>> curve;
    curve.emplace_back(df.x(dens.x.front()), df.y(0.0));
    for (std::size_t i = 0; i < dens.x.size(); ++i)
      curve.emplace_back(df.x(dens.x[i]), df.y(dens.density[i]));
    curve.emplace_back(df.x(dens.x.back()), df.y(0.0));
    canvas.polygon(curve, svg_detail::palette(t), 0.35);
    canvas.polyline(curve, svg_detail::palette(t), 1.2);
    canvas.frame_box(df);
    canvas.text(margin + trace_w + gap, top - 6, label + "  (density)", 12);
  }
  return canvas;
}

namespace svg_detail {

inline void gof_panel(SvgCanvas& canvas, double px, double py, double pw, double ph,
                      const Eigen::RowVectorXd& observed, const Eigen::MatrixXd& quantiles,
                      const std::vector<std::string>& labels, const std::string& title) {
  const int nbins = static_cast<int>(observed.size());
  double ymax = observed.maxCoeff();
  ymax = std::max(ymax, quantiles.row(2).maxCoeff());
  auto f = make_frame(px, py, pw, ph, -0.5, nbins - 0.5, 0.0, ymax * 1.05);

  std::vector<std::pair<double, double>> band;
  for (int b = 0; b < nbins; ++b) band.emplace_back(f.x(b), f.y(quantiles(2, b)));
  for (int b = nbins - 1; b >= 0; --b) band.emplace_back(f.x(b), f.y(quantiles(0, b)));
  canvas.polygon(band, "#9ecae1", 0.6);

  std::vector<std::pair<double, double>> median, obs;
  for (int b = 0; b < nbins; ++b) {
    median.emplace_back(f.x(b), f.y(quantiles(1, b)));
    obs.emplace_back(f.x(b), f.y(observed[b]));
  }
  canvas.polyline(median, "#3182bd", 1.4);
  canvas.polyline(obs, "#000000", 1.8);
  canvas.frame_box(f);
  canvas.text(px, py - 6, title, 12);
  const int step = std::max(1, nbins / 8);
  for (int b = 0; b < nbins; b += step)
    canvas.text(f.x(b), py + ph + 14, labels[b], 10, "middle");
}

}  // namespace svg_detail

/// Three stacked panels: degree, geodesic distance, edgewise shared
/// partners. Blue band = 5%..95% of replicates, blue line = median,
/// black line = observed network.
inline SvgCanvas plot_gof(const GofResult& gof) {
  const int panel_h = 170, panel_w = 640;
  const int margin = 40, gap = 46;
  SvgCanvas canvas(margin + panel_w + margin, margin + 3 * (panel_h + gap));

  svg_detail::gof_panel(canvas, margin, margin, panel_w, panel_h, gof.observed_degree,
                        gof.q_degree, degree_bin_labels(gof.bins), "degree distribution");
  svg_detail::gof_panel(canvas, margin, margin + panel_h + gap, panel_w, panel_h,
                        gof.observed_distance, gof.q_distance, distance_bin_labels(gof.bins),
                        "geodesic distance distribution");
  svg_detail::gof_panel(canvas, margin, margin + 2 * (panel_h + gap), panel_w, panel_h,
                        gof.observed_esp, gof.q_esp, esp_bin_labels(gof.bins),
                        "edgewise shared partner distribution");
  return canvas;
}

}  // namespace ergmbayes
