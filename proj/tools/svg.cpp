#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "spinchain/errors.hpp"

namespace spinchain::cli {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 25.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 55.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"};

std::string f2(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_text(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::string xml_escape(const std::string& in) {
  std::string out;
  for (const char c : in) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axis {
  double lo;
  double hi;
  std::vector<double> ticks;
};

// Tick spacing from the 1-2-5 ladder, about five divisions per axis.
Axis make_axis(double lo, double hi) {
  if (!(hi > lo)) {
    const double pad = std::max(0.5, std::abs(lo) * 0.1);
    lo -= pad;
    hi += pad;
  }
  const double span = hi - lo;
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (const double mult : {1.0, 2.0, 5.0, 10.0}) {
    if (mag * mult >= raw) {
      step = mag * mult;
      break;
    }
  }
  Axis axis;
  axis.lo = lo;
  axis.hi = hi;
  const double first = std::ceil(lo / step - 1e-9) * step;
  for (double t = first; t <= hi + 1e-9 * step; t += step) {
    axis.ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  }
  return axis;
}

std::string header(const Provenance& prov, const std::string& title) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + f2(kWidth) + " " +
         f2(kHeight) + "\" font-family=\"sans-serif\">\n";
  out += "  <desc>";
  for (const auto& [key, value] : prov.fields) {
    out += xml_escape(key + ": " + value) + "&#10;";
  }
  out += "</desc>\n";
  out += "  <rect width=\"" + f2(kWidth) + "\" height=\"" + f2(kHeight) +
         "\" fill=\"white\"/>\n";
  out += "  <text x=\"" + f2(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" "
         "font-size=\"16\">" + xml_escape(title) + "</text>\n";
  return out;
}

std::string frame_and_axes(const Axis& xa, const Axis& ya, const std::string& x_label,
                           const std::string& y_label) {
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto px = [&](double x) { return kLeft + (x - xa.lo) / (xa.hi - xa.lo) * plot_w; };
  const auto py = [&](double y) { return kTop + plot_h - (y - ya.lo) / (ya.hi - ya.lo) * plot_h; };

  std::string out;
  out += "  <rect x=\"" + f2(kLeft) + "\" y=\"" + f2(kTop) + "\" width=\"" + f2(plot_w) +
         "\" height=\"" + f2(plot_h) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (const double t : xa.ticks) {
    const double x = px(t);
    out += "  <line x1=\"" + f2(x) + "\" y1=\"" + f2(kTop + plot_h) + "\" x2=\"" + f2(x) +
           "\" y2=\"" + f2(kTop + plot_h + 5) + "\" stroke=\"black\"/>\n";
    out += "  <text x=\"" + f2(x) + "\" y=\"" + f2(kTop + plot_h + 18) +
           "\" text-anchor=\"middle\" font-size=\"11\">" + tick_text(t) + "</text>\n";
  }
  for (const double t : ya.ticks) {
    const double y = py(t);
    out += "  <line x1=\"" + f2(kLeft - 5) + "\" y1=\"" + f2(y) + "\" x2=\"" + f2(kLeft) +
           "\" y2=\"" + f2(y) + "\" stroke=\"black\"/>\n";
    out += "  <text x=\"" + f2(kLeft - 8) + "\" y=\"" + f2(y + 4) +
           "\" text-anchor=\"end\" font-size=\"11\">" + tick_text(t) + "</text>\n";
  }
  out += "  <text x=\"" + f2(kLeft + plot_w / 2) + "\" y=\"" + f2(kHeight - 12) +
         "\" text-anchor=\"middle\" font-size=\"13\">" + xml_escape(x_label) + "</text>\n";
  out += "  <text x=\"18\" y=\"" + f2(kTop + plot_h / 2) +
         "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 " +
         f2(kTop + plot_h / 2) + ")\">" + xml_escape(y_label) + "</text>\n";
  return out;
}

std::string diverging_color(double t) {
  // t in [-1, 1]: blue to white to red
  t = std::clamp(t, -1.0, 1.0);
  int r = 255;
  int g = 255;
  int b = 255;
  if (t < 0.0) {
    r = static_cast<int>(std::lround(255 * (1.0 + t)));
    g = static_cast<int>(std::lround(255 * (1.0 + 0.75 * t)));
  } else if (t > 0.0) {
    g = static_cast<int>(std::lround(255 * (1.0 - 0.75 * t)));
    b = static_cast<int>(std::lround(255 * (1.0 - t)));
  }
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
  return buf;
}

}  // namespace

std::string svg_scatter(const Provenance& prov, const std::string& title,
                        const std::string& x_label, const std::string& y_label,
                        const std::vector<Series>& series) {
  double x_lo = 0.0;
  double x_hi = 1.0;
  double y_lo = 0.0;
  double y_hi = 1.0;
  bool any = false;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!any) {
        x_lo = x_hi = s.x[i];
        y_lo = y_hi = s.y[i];
        any = true;
      }
      x_lo = std::min(x_lo, s.x[i]);
      x_hi = std::max(x_hi, s.x[i]);
      y_lo = std::min(y_lo, s.y[i]);
      y_hi = std::max(y_hi, s.y[i]);
    }
  }
  if (!any) throw InvalidSpec("plot has no data points");
  const double x_pad = (x_hi - x_lo) * 0.06 + 1e-12;
  const double y_pad = (y_hi - y_lo) * 0.08 + 1e-12;
  const Axis xa = make_axis(x_lo - x_pad, x_hi + x_pad);
  const Axis ya = make_axis(y_lo - y_pad, y_hi + y_pad);

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto px = [&](double x) { return kLeft + (x - xa.lo) / (xa.hi - xa.lo) * plot_w; };
  const auto py = [&](double y) { return kTop + plot_h - (y - ya.lo) / (ya.hi - ya.lo) * plot_h; };

  std::string out = header(prov, title);
  out += frame_and_axes(xa, ya, x_label, y_label);

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const std::string color = kPalette[k % (sizeof(kPalette) / sizeof(kPalette[0]))];
    if (s.draw_line && s.x.size() > 1) {
      out += "  <polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (i > 0) out += ' ';
        out += f2(px(s.x[i])) + "," + f2(py(s.y[i]));
      }
      out += "\"/>\n";
    }
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      out += "  <circle cx=\"" + f2(px(s.x[i])) + "\" cy=\"" + f2(py(s.y[i])) +
             "\" r=\"3.5\" fill=\"" + color + "\"/>\n";
    }
    if (!s.label.empty()) {
      const double ly = kTop + 16.0 + 16.0 * static_cast<double>(k);
      out += "  <circle cx=\"" + f2(kLeft + plot_w - 120.0) + "\" cy=\"" + f2(ly - 4.0) +
             "\" r=\"3.5\" fill=\"" + color + "\"/>\n";
      out += "  <text x=\"" + f2(kLeft + plot_w - 110.0) + "\" y=\"" + f2(ly) +
             "\" font-size=\"12\">" + xml_escape(s.label) + "</text>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

std::string svg_heatmap(const Provenance& prov, const std::string& title,
                        const std::string& x_label, const std::string& y_label,
                        const std::vector<double>& x_grid, const std::vector<double>& y_grid,
                        const std::vector<double>& values,
                        const std::vector<double>& contour_x,
                        const std::vector<double>& contour_y,
                        const std::string& contour_label) {
  const std::size_t nx = x_grid.size();
  const std::size_t ny = y_grid.size();
  if (nx == 0 || ny == 0 || values.size() != nx * ny) {
    throw InvalidSpec("heat grid shape does not match its value count");
  }

  const Axis xa{x_grid.front(), x_grid.back(), make_axis(x_grid.front(), x_grid.back()).ticks};
  const Axis ya{y_grid.front(), y_grid.back(), make_axis(y_grid.front(), y_grid.back()).ticks};
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto px = [&](double x) {
    return nx == 1 ? kLeft + plot_w / 2 : kLeft + (x - xa.lo) / (xa.hi - xa.lo) * plot_w;
  };
  const auto py = [&](double y) {
    return ny == 1 ? kTop + plot_h / 2 : kTop + plot_h - (y - ya.lo) / (ya.hi - ya.lo) * plot_h;
  };

  double scale = 0.0;
  for (const double v : values) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) scale = 1.0;

  std::string out = header(prov, title);

  // cell boundaries at midpoints between grid nodes
  const auto x_edge = [&](std::size_t i, bool high) {
    if (nx == 1) return high ? kLeft + plot_w : kLeft;
    const double lo = i == 0 ? x_grid[0] : 0.5 * (x_grid[i - 1] + x_grid[i]);
    const double hi = i + 1 == nx ? x_grid[nx - 1] : 0.5 * (x_grid[i] + x_grid[i + 1]);
    return px(high ? hi : lo);
  };
  const auto y_edge = [&](std::size_t j, bool high) {
    if (ny == 1) return high ? kTop : kTop + plot_h;
    const double lo = j == 0 ? y_grid[0] : 0.5 * (y_grid[j - 1] + y_grid[j]);
    const double hi = j + 1 == ny ? y_grid[ny - 1] : 0.5 * (y_grid[j] + y_grid[j + 1]);
    return py(high ? hi : lo);
  };

  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const double v = values[j * nx + i];
      const double x0 = x_edge(i, false);
      const double x1 = x_edge(i, true);
      const double y1 = y_edge(j, false);
      const double y0 = y_edge(j, true);
      out += "  <rect x=\"" + f2(x0) + "\" y=\"" + f2(y0) + "\" width=\"" + f2(x1 - x0) +
             "\" height=\"" + f2(y1 - y0) + "\" fill=\"" + diverging_color(v / scale) +
             "\"/>\n";
    }
  }

  if (contour_x.size() == contour_y.size() && contour_x.size() > 1) {
    out += "  <polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" "
           "stroke-dasharray=\"2,4\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < contour_x.size(); ++i) {
      if (contour_x[i] < xa.lo || contour_x[i] > xa.hi) continue;
      if (!first) out += ' ';
      out += f2(px(contour_x[i])) + "," + f2(py(contour_y[i]));
      first = false;
    }
    out += "\"/>\n";
    if (!contour_label.empty()) {
      out += "  <text x=\"" + f2(kLeft + plot_w - 8.0) + "\" y=\"" + f2(kTop + 16.0) +
             "\" text-anchor=\"end\" font-size=\"12\">" + xml_escape(contour_label) +
             " (dotted)</text>\n";
    }
  }

  out += frame_and_axes(xa, ya, x_label, y_label);
  out += "</svg>\n";
  return out;
}

}  // namespace spinchain::cli
