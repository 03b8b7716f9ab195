#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "components.hpp"
#include "fan.hpp"

namespace torext {

namespace svg_detail {

struct Pt {
  double x, y;
};

inline double to_double(const Rat& q) { return q.convert_to<double>(); }

/// Vertices of a polygon in counterclockwise order.
inline std::vector<Pt> polygon(const std::vector<Vec>& vs) {
  std::vector<Pt> p;
  for (const Vec& v : vs) p.push_back({to_double(v[0]), to_double(v[1])});
  if (p.size() < 3) return p;
  double cx = 0, cy = 0;
  for (const Pt& q : p) cx += q.x, cy += q.y;
  cx /= p.size();
  cy /= p.size();
  std::sort(p.begin(), p.end(), [&](const Pt& a, const Pt& b) {
    return std::atan2(a.y - cy, a.x - cx) < std::atan2(b.y - cy, b.x - cx);
  });
  return p;
}

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace svg_detail

/// Static figure of minus (outline), plus (outline), the components of
/// minus \ plus (shaded), lattice points, and the fan's rays in an inset.
inline std::string plot_svg(const Polyhedron& plus, const Polyhedron& minus, const Fan* fan = nullptr) {
  using namespace svg_detail;
  require(plus.ambient_dim() == 2 && minus.ambient_dim() == 2, "plot: only 2-dimensional inputs");
  ComponentDecomposition d = components(minus, plus);
  Polyhedron shown_minus = d.truncation ? truncate(minus, *d.truncation) : minus;
  Polyhedron shown_plus = d.truncation ? truncate(plus, *d.truncation) : plus;

  double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
  bool first = true;
  for (const Polyhedron* p : {&shown_minus, &shown_plus})
    for (const Vec& v : p->vertices()) {
      double x = to_double(v[0]), y = to_double(v[1]);
      if (first) lo_x = hi_x = x, lo_y = hi_y = y, first = false;
      lo_x = std::min(lo_x, x), hi_x = std::max(hi_x, x);
      lo_y = std::min(lo_y, y), hi_y = std::max(hi_y, y);
    }
  lo_x = std::floor(lo_x) - 1, lo_y = std::floor(lo_y) - 1;
  hi_x = std::ceil(hi_x) + 1, hi_y = std::ceil(hi_y) + 1;
  const double scale = 60;
  double w = (hi_x - lo_x) * scale, h = (hi_y - lo_y) * scale;
  auto X = [&](double x) { return num((x - lo_x) * scale); };
  auto Y = [&](double y) { return num((hi_y - y) * scale); };

  std::ostringstream out;
  double inset = fan ? 160 : 0;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w + inset) << "\" height=\""
      << num(std::max(h, inset)) << "\">\n";
  for (double x = lo_x; x <= hi_x; ++x)
    for (double y = lo_y; y <= hi_y; ++y)
      out << "<circle cx=\"" << X(x) << "\" cy=\"" << Y(y) << "\" r=\"1.5\" fill=\"#bbb\"/>\n";

  static const char* fills[] = {"#e6a23c", "#67c23a", "#409eff", "#f56c6c", "#909399", "#b37feb"};
  auto draw = [&](const std::vector<Vec>& vs, const std::string& style) {
    std::vector<Pt> p = polygon(vs);
    if (p.size() == 1) {
      out << "<circle cx=\"" << X(p[0].x) << "\" cy=\"" << Y(p[0].y) << "\" r=\"3\" " << style << "/>\n";
      return;
    }
    out << "<polygon points=\"";
    for (std::size_t i = 0; i < p.size(); ++i) out << (i ? " " : "") << X(p[i].x) << "," << Y(p[i].y);
    out << "\" " << style << "/>\n";
  };
  for (std::size_t i = 0; i < d.count(); ++i)
    for (std::size_t k : d.components[i].cells)
      if (d.complex.cells[k].dim == 2)
        draw(d.complex.cell_points(k), std::string("fill=\"") + fills[i % 6] + "\" fill-opacity=\"0.6\" stroke=\"none\"");
  draw(shown_minus.vertices(), "fill=\"none\" stroke=\"#c00\" stroke-width=\"2\"");
  draw(shown_plus.vertices(), "fill=\"none\" stroke=\"#00c\" stroke-width=\"2\"");

  if (fan) {
    require(fan->dim() == 2, "plot: only 2-dimensional fans");
    double cx = w + inset / 2, cy = inset / 2;
    for (const Vec& r : fan->rays()) {
      double x = to_double(r[0]), y = to_double(r[1]), len = std::hypot(x, y);
      out << "<line x1=\"" << num(cx) << "\" y1=\"" << num(cy) << "\" x2=\"" << num(cx + 60 * x / len)
          << "\" y2=\"" << num(cy - 60 * y / len) << "\" stroke=\"#333\" stroke-width=\"1.5\"/>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace torext
