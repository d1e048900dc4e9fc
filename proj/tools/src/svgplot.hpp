#pragma once

#include <string>
#include <vector>

namespace qthermo::cli {

struct Series {
    std::string name;
    std::vector<double> xs;
    std::vector<double> ys;
};

/// Self-contained SVG 1.1 line plot.  Axis ranges pad the finite data by
/// 5% on each side (constant series get an absolute pad); non-finite
/// samples break the polyline.  Output is byte-deterministic.
void write_svg_lines(const std::string& path, const std::string& title,
                     const std::string& xlabel, const std::string& ylabel,
                     const std::vector<Series>& series);

/// Heatmap over the rectangular grid xs x ys; values[iy][ix], NaN cells
/// rendered gray.  A min/max colorbar is drawn on the right.
void write_svg_heatmap(const std::string& path, const std::string& title,
                       const std::string& xlabel, const std::string& ylabel,
                       const std::vector<double>& xs, const std::vector<double>& ys,
                       const std::vector<std::vector<double>>& values);

} // namespace qthermo::cli
