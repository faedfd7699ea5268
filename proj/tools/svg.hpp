#pragma once

#include <string>
#include <vector>

#include "emit.hpp"

namespace spinchain::cli {

// Self-contained static SVG emitters, no external renderer or font assets.
// All coordinates are written with fixed precision so identical inputs give
// byte-identical files.

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool draw_line = true;
};

std::string svg_scatter(const Provenance& prov, const std::string& title,
                        const std::string& x_label, const std::string& y_label,
                        const std::vector<Series>& series);

// Heat grid over (x_grid, y_grid) with values[y_index * nx + x_index], plus
// one optional dotted contour polyline (in data coordinates). The color map
// diverges around zero: blue negative, white zero, red positive.
std::string svg_heatmap(const Provenance& prov, const std::string& title,
                        const std::string& x_label, const std::string& y_label,
                        const std::vector<double>& x_grid, const std::vector<double>& y_grid,
                        const std::vector<double>& values,
                        const std::vector<double>& contour_x,
                        const std::vector<double>& contour_y,
                        const std::string& contour_label);

}  // namespace spinchain::cli
