#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "holodyn/linalg.hpp"

namespace holodyn::cli {

using nlohmann::json;
using nlohmann::ordered_json;

/// "1.5", "0.3:-0.2" (re:im)
cplx parse_complex(const std::string& s);
/// comma-separated complex values
Point parse_point(const std::string& s);
/// "20x20" or "10x10x4"
std::vector<int> parse_grid(const std::string& s);
/// "1,2,0"
std::vector<int> parse_ints(const std::string& s);

/// %.17g
std::string num(double v);
ordered_json complex_json(cplx z);

/// Writes text to `path`, or to stdout when path is "-". Throws on I/O failure.
void write_text(const std::string& path, const std::string& text);

/// Projection used for SVG scatter plots: "x" and "y" draw the complex plane
/// of that coordinate, "abs" draws (|x|, |y|).
struct Plane {
  std::string name = "x";
  std::pair<double, double> project(const Point& p) const;
};
Plane parse_plane(const std::string& s, std::size_t n_vars);

struct ScatterSeries {
  std::string label;
  std::vector<Point> points;
};

/// Static SVG scatter with one colour per series, square plot over [-r, r]^2
/// (or [0, r]^2 for "abs").
std::string scatter_svg(const std::vector<ScatterSeries>& series, const Plane& plane, double radius,
                        const std::string& title);

}  // namespace holodyn::cli
