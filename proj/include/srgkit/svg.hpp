#pragma once

// Minimal SVG rendering of regions: raster membership fill plus boundary
// polylines, with optional curve overlays and distance segments.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "srgkit/region.hpp"

namespace srgkit {

struct PlotLayer {
  Region region;
  std::string fill = "#4c78a8";
  std::string stroke = "#1f3b5a";
  double opacity = 0.35;
};

struct PlotOptions {
  int width = 640;
  int height = 640;
  int raster = 160;  // membership cells per axis
  /// View window; computed from the layers when xmin >= xmax.
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  double clip = 20.0;  // auto window never exceeds |re|, |im| <= clip
  std::string title;
};

struct PlotOverlay {
  std::vector<Complex> curve;  // drawn with its mirror image
  std::vector<std::pair<Complex, Complex>> segments;
};

namespace detail {

inline std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

inline std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

}  // namespace detail

inline std::string render_svg(const std::vector<PlotLayer>& layers, const PlotOverlay& overlay = {},
                              PlotOptions o = {}) {
  if (o.width < 16 || o.height < 16 || o.raster < 4) throw InputError("plot: canvas too small");
  if (!(o.xmin < o.xmax && o.ymin < o.ymax)) {
    double x0 = -1.5, x1 = 1.5, y1 = 1.5;
    auto grow = [&](Complex z) {
      if (!is_finite(z)) return;
      x0 = std::min(x0, std::max(z.real(), -o.clip));
      x1 = std::max(x1, std::min(z.real(), o.clip));
      y1 = std::max(y1, std::min(std::abs(z.imag()), o.clip));
    };
    for (const auto& l : layers) {
      for (auto z : l.region.boundary_points()) grow(z);
    }
    for (auto z : overlay.curve) grow(z);
    const double pad = 0.05 * std::max(x1 - x0, 2.0 * y1);
    o.xmin = x0 - pad;
    o.xmax = x1 + pad;
    o.ymin = -y1 - pad;
    o.ymax = y1 + pad;
  }
  const double sx = o.width / (o.xmax - o.xmin);
  const double sy = o.height / (o.ymax - o.ymin);
  auto px = [&](double x) { return (x - o.xmin) * sx; };
  auto py = [&](double y) { return (o.ymax - y) * sy; };
  auto polyline = [&](std::ostringstream& os, const std::vector<Complex>& pts, const std::string& stroke,
                      bool mirror) {
    for (int pass = 0; pass < (mirror ? 2 : 1); ++pass) {
      os << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\" points=\"";
      for (auto z : pts) {
        if (!is_finite(z)) continue;
        const double im = pass == 0 ? z.imag() : -z.imag();
        os << detail::svg_num(px(z.real())) << ',' << detail::svg_num(py(im)) << ' ';
      }
      os << "\"/>\n";
    }
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << o.width << "\" height=\"" << o.height
     << "\" viewBox=\"0 0 " << o.width << ' ' << o.height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // axes
  os << "<g stroke=\"#999\" stroke-width=\"0.75\">";
  if (o.ymin < 0.0 && o.ymax > 0.0) {
    os << "<line x1=\"0\" y1=\"" << detail::svg_num(py(0)) << "\" x2=\"" << o.width << "\" y2=\""
       << detail::svg_num(py(0)) << "\"/>";
  }
  if (o.xmin < 0.0 && o.xmax > 0.0) {
    os << "<line x1=\"" << detail::svg_num(px(0)) << "\" y1=\"0\" x2=\"" << detail::svg_num(px(0)) << "\" y2=\""
       << o.height << "\"/>";
  }
  os << "</g>\n";

  const double cw = (o.xmax - o.xmin) / o.raster;
  const double ch = (o.ymax - o.ymin) / o.raster;
  for (const auto& l : layers) {
    os << "<g fill=\"" << l.fill << "\" fill-opacity=\"" << l.opacity << "\">\n";
    for (int row = 0; row < o.raster; ++row) {
      const double y = o.ymax - (row + 0.5) * ch;
      int start = -1;
      for (int col = 0; col <= o.raster; ++col) {
        const bool in = col < o.raster && l.region.contains({o.xmin + (col + 0.5) * cw, y});
        if (in && start < 0) start = col;
        if (!in && start >= 0) {
          os << "<rect x=\"" << detail::svg_num(start * cw * sx) << "\" y=\"" << detail::svg_num(row * ch * sy)
             << "\" width=\"" << detail::svg_num((col - start) * cw * sx) << "\" height=\""
             << detail::svg_num(ch * sy) << "\"/>\n";
          start = -1;
        }
      }
    }
    os << "</g>\n";
    for (const auto& chain : l.region.boundary()) polyline(os, chain.points, l.stroke, false);
  }
  if (!overlay.curve.empty()) polyline(os, overlay.curve, "#e45756", true);
  for (const auto& [a, b] : overlay.segments) {
    os << "<line stroke=\"#54a24b\" stroke-width=\"2\" x1=\"" << detail::svg_num(px(a.real())) << "\" y1=\""
       << detail::svg_num(py(a.imag())) << "\" x2=\"" << detail::svg_num(px(b.real())) << "\" y2=\""
       << detail::svg_num(py(b.imag())) << "\"/>\n";
  }
  if (!o.title.empty()) {
    os << "<text x=\"8\" y=\"18\" font-family=\"sans-serif\" font-size=\"14\">" << o.title << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

struct XySeries {
  std::string label;
  std::vector<std::pair<double, double>> points;  // non-finite y values break the line
  std::string stroke = "#1f3b5a";
};

/// Line chart with linear axes; y is clipped to [0, ymax] when ymax > 0.
inline std::string render_xy_svg(const std::vector<XySeries>& series, const std::string& xlabel,
                                 const std::string& title, double ymax = 0.0, int width = 640, int height = 400) {
  double x0 = kInf, x1 = -kInf, y1 = 0.0;
  for (const auto& s : series) {
    for (auto [x, y] : s.points) {
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      if (std::isfinite(y)) y1 = std::max(y1, y);
    }
  }
  if (!(x0 < x1)) throw InputError("plot: need at least two distinct x values");
  if (ymax > 0.0) y1 = ymax;
  if (!(y1 > 0.0)) y1 = 1.0;
  const double ml = 56, mr = 16, mt = 28, mb = 40;
  auto px = [&](double x) { return ml + (x - x0) / (x1 - x0) * (width - ml - mr); };
  auto py = [&](double y) { return mt + (1.0 - std::min(y, y1) / y1) * (height - mt - mb); };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<g stroke=\"#999\" stroke-width=\"0.75\"><line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\""
     << width - mr << "\" y2=\"" << height - mb << "\"/><line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
     << "\" y2=\"" << height - mb << "\"/></g>\n";
  os << "<g font-family=\"sans-serif\" font-size=\"11\">";
  for (int i = 0; i <= 4; ++i) {
    const double x = x0 + (x1 - x0) * i / 4.0;
    const double y = y1 * i / 4.0;
    os << "<text x=\"" << detail::svg_num(px(x) - 8) << "\" y=\"" << height - mb + 14 << "\">"
       << detail::tick_label(x) << "</text>";
    os << "<text x=\"4\" y=\"" << detail::svg_num(py(y) + 4) << "\">" << detail::tick_label(y) << "</text>";
  }
  os << "<text x=\"" << width / 2 << "\" y=\"" << height - 8 << "\">" << xlabel << "</text>";
  os << "<text x=\"" << ml << "\" y=\"18\" font-size=\"14\">" << title << "</text>";
  for (std::size_t k = 0; k < series.size(); ++k) {
    os << "<text x=\"" << width - 200 << "\" y=\"" << 40 + 14 * k << "\" fill=\"" << series[k].stroke << "\">"
       << series[k].label << "</text>";
  }
  os << "</g>\n";
  for (const auto& s : series) {
    bool open = false;
    for (auto [x, y] : s.points) {
      if (!std::isfinite(y)) {
        if (open) os << "\"/>\n";
        open = false;
        continue;
      }
      if (!open) os << "<polyline fill=\"none\" stroke=\"" << s.stroke << "\" stroke-width=\"1.5\" points=\"";
      open = true;
      os << detail::svg_num(px(x)) << ',' << detail::svg_num(py(y)) << ' ';
    }
    if (open) os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace srgkit
