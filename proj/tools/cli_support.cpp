#include "cli_support.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "holodyn/errors.hpp"

namespace holodyn::cli {

namespace {

double to_double(const std::string& s) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError("expected a number, got '" + s + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

cplx parse_complex(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) return {to_double(s), 0.0};
  return {to_double(s.substr(0, colon)), to_double(s.substr(colon + 1))};
}

Point parse_point(const std::string& s) {
  Point p;
  for (const auto& part : split(s, ',')) p.push_back(parse_complex(part));
  if (p.empty()) throw ParseError("empty point");
  return p;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  for (const auto& part : split(s, ',')) {
    const double v = to_double(part);
    if (v != std::floor(v)) throw ParseError("expected an integer, got '" + part + "'");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::vector<int> parse_grid(const std::string& s) {
  std::vector<int> out;
  for (const auto& part : split(s, 'x')) {
    const double v = to_double(part);
    if (v < 1 || v != std::floor(v)) throw ParseError("grid counts must be positive integers: '" + s + "'");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ordered_json complex_json(cplx z) { return ordered_json::array({z.real(), z.imag()}); }

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << text;
  if (!out) throw ParseError("write failed for '" + path + "'");
}

std::pair<double, double> Plane::project(const Point& p) const {
  if (name == "abs") return {std::abs(p[0]), p.size() > 1 ? std::abs(p[1]) : 0.0};
  const cplx z = name == "y" ? p[1] : p[0];
  return {z.real(), z.imag()};
}

Plane parse_plane(const std::string& s, std::size_t n_vars) {
  if (s != "x" && s != "y" && s != "abs") throw ParseError("--svg-plane must be x, y or abs");
  if (s != "x" && n_vars < 2) throw ParseError("--svg-plane " + s + " needs two coordinates");
  return Plane{s};
}

std::string scatter_svg(const std::vector<ScatterSeries>& series, const Plane& plane, double radius,
                        const std::string& title) {
  static const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};
  constexpr double size = 640.0, margin = 40.0;
  const bool abs_plane = plane.name == "abs";
  const double lo = abs_plane ? 0.0 : -radius;
  const double span = radius - lo;
  auto sx = [&](double v) { return margin + (v - lo) / span * (size - 2 * margin); };
  auto sy = [&](double v) { return size - margin - (v - lo) / span * (size - 2 * margin); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
     << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << margin << "\" y=\"24\" font-family=\"monospace\" font-size=\"13\">" << title
     << " [plane " << plane.name << "]</text>\n"
     << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << size - 2 * margin
     << "\" height=\"" << size - 2 * margin << "\" fill=\"none\" stroke=\"#999\"/>\n";
  if (!abs_plane) {
    os << "<line x1=\"" << sx(0) << "\" y1=\"" << margin << "\" x2=\"" << sx(0) << "\" y2=\""
       << size - margin << "\" stroke=\"#ddd\"/>\n"
       << "<line x1=\"" << margin << "\" y1=\"" << sy(0) << "\" x2=\"" << size - margin << "\" y2=\""
       << sy(0) << "\" stroke=\"#ddd\"/>\n";
  }
  for (std::size_t k = 0; k < series.size(); ++k) {
    os << "<g fill=\"" << colours[k % 8] << "\" fill-opacity=\"0.6\">\n";
    for (const auto& p : series[k].points) {
      const auto [u, v] = plane.project(p);
      if (!std::isfinite(u) || !std::isfinite(v)) continue;
      char buf[96];
      std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"1.2\"/>\n", sx(u), sy(v));
      os << buf;
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace holodyn::cli
