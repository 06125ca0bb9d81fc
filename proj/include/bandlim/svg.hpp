#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "bandlim/common.hpp"

namespace bandlim {

struct svg_series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct svg_options {
  int width = 720;
  int height = 480;
  bool log_y = false;  // plot log10(y); points with y <= 0 are dropped
  std::string title;
  std::string x_label;
  std::string y_label;
};

namespace detail {

inline std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return std::string(buf);
}

inline std::string tick_label(double v, bool log_y) {
  char buf[40];
  if (log_y)
    std::snprintf(buf, sizeof buf, "1e%.3g", v);
  else
    std::snprintf(buf, sizeof buf, "%.4g", v);
  return std::string(buf);
}

}  // namespace detail

// Static SVG 1.1 line chart. Everything is emitted with fixed formatting, so
// the same data always produces the same bytes.
inline void write_svg_plot(const std::string& path, const std::vector<svg_series>& series,
                           const svg_options& opt = {}) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw config_error("cannot open output file: " + path);

  const double W = opt.width, H = opt.height;
  const double ml = 72, mr = 24, mt = 42, mb = 54;
  const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                           "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  const int ncolors = 8;

  // collect plottable points (finite; positive if log scale)
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  bool any = false;
  for (const auto& s : series) {
    for (size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      double xv = s.x[i], yv = s.y[i];
      if (!std::isfinite(xv) || !std::isfinite(yv)) continue;
      if (opt.log_y) {
        if (!(yv > 0.0)) continue;
        yv = std::log10(yv);
      }
      xmin = std::min(xmin, xv);
      xmax = std::max(xmax, xv);
      ymin = std::min(ymin, yv);
      ymax = std::max(ymax, yv);
      any = true;
    }
  }

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\""
      << opt.height << "\" viewBox=\"0 0 " << opt.width << " " << opt.height << "\">\n";
  out << "<rect width=\"" << opt.width << "\" height=\"" << opt.height
      << "\" fill=\"white\"/>\n";
  if (!opt.title.empty())
    out << "<text x=\"" << detail::px(W / 2) << "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"15\">" << opt.title << "</text>\n";

  if (!any) {
    out << "<text x=\"" << detail::px(W / 2) << "\" y=\"" << detail::px(H / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
           "no plottable data</text>\n</svg>\n";
    return;
  }

  if (xmax <= xmin) {
    xmin -= 1.0;
    xmax += 1.0;
  }
  if (ymax <= ymin) {
    ymin -= 1.0;
    ymax += 1.0;
  }
  double ypad = 0.05 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  auto X = [&](double v) { return ml + (v - xmin) / (xmax - xmin) * (W - ml - mr); };
  auto Y = [&](double v) { return H - mb - (v - ymin) / (ymax - ymin) * (H - mt - mb); };

  // frame and ticks
  out << "<rect x=\"" << detail::px(ml) << "\" y=\"" << detail::px(mt) << "\" width=\""
      << detail::px(W - ml - mr) << "\" height=\"" << detail::px(H - mt - mb)
      << "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    double fx = xmin + (xmax - xmin) * t / 4.0;
    double fy = ymin + (ymax - ymin) * t / 4.0;
    out << "<line x1=\"" << detail::px(X(fx)) << "\" y1=\"" << detail::px(H - mb)
        << "\" x2=\"" << detail::px(X(fx)) << "\" y2=\"" << detail::px(H - mb + 5)
        << "\" stroke=\"#444444\"/>\n";
    out << "<text x=\"" << detail::px(X(fx)) << "\" y=\"" << detail::px(H - mb + 18)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << detail::tick_label(fx, false) << "</text>\n";
    out << "<line x1=\"" << detail::px(ml - 5) << "\" y1=\"" << detail::px(Y(fy))
        << "\" x2=\"" << detail::px(ml) << "\" y2=\"" << detail::px(Y(fy))
        << "\" stroke=\"#444444\"/>\n";
    out << "<text x=\"" << detail::px(ml - 8) << "\" y=\"" << detail::px(Y(fy) + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << detail::tick_label(fy, opt.log_y) << "</text>\n";
  }
  if (!opt.x_label.empty())
    out << "<text x=\"" << detail::px(ml + (W - ml - mr) / 2) << "\" y=\""
        << detail::px(H - 14)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << opt.x_label << "</text>\n";
  if (!opt.y_label.empty())
    out << "<text x=\"16\" y=\"" << detail::px(mt + (H - mt - mb) / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
           "transform=\"rotate(-90 16 " << detail::px(mt + (H - mt - mb) / 2) << ")\">"
        << opt.y_label << "</text>\n";

  // polylines
  for (size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = palette[si % ncolors];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      double xv = s.x[i], yv = s.y[i];
      if (!std::isfinite(xv) || !std::isfinite(yv)) continue;
      if (opt.log_y) {
        if (!(yv > 0.0)) continue;
        yv = std::log10(yv);
      }
      if (!first) out << " ";
      out << detail::px(X(xv)) << "," << detail::px(Y(yv));
      first = false;
    }
    out << "\"/>\n";
  }

  // legend, top-right inside the frame
  double lx = W - mr - 170, ly = mt + 14;
  for (size_t si = 0; si < series.size(); ++si) {
    const char* color = palette[si % ncolors];
    out << "<line x1=\"" << detail::px(lx) << "\" y1=\"" << detail::px(ly - 4) << "\" x2=\""
        << detail::px(lx + 22) << "\" y2=\"" << detail::px(ly - 4) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << detail::px(lx + 28) << "\" y=\"" << detail::px(ly)
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << series[si].label
        << "</text>\n";
    ly += 16;
  }
  out << "</svg>\n";
}

}  // namespace bandlim
