#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "polyhedron.hpp"

namespace torext {

/// The hyperplane <m, normal> + offset = 0, normal primitive with positive
/// leading entry.
struct Hyperplane {
  Vec normal;
  Rat offset;

  static Hyperplane from(const Vec& v, const Rat& lambda) {
    Vec p = primitive_signed(v);
    Rat s = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) {
        s = p[i] / v[i];
        break;
      }
    return {p, lambda * s};
  }
  Rat value(const Vec& m) const { return dot(m, normal) + offset; }
  int side(const Vec& m) const {
    Rat v = value(m);
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
  }
  bool operator<(const Hyperplane& o) const {
    return std::tie(normal, offset) < std::tie(o.normal, o.offset);
  }
  bool operator==(const Hyperplane& o) const { return normal == o.normal && offset == o.offset; }
};

/// Distinct hyperplanes supporting the facets and equalities of polyhedra.
inline std::vector<Hyperplane> supporting_hyperplanes(const std::vector<Polyhedron>& ps) {
  std::set<Hyperplane> hs;
  for (const Polyhedron& p : ps) {
    if (p.is_empty()) continue;
    for (const Halfspace& h : p.facets()) hs.insert(Hyperplane::from(h.normal, h.offset));
    for (const Halfspace& h : p.equalities()) hs.insert(Hyperplane::from(h.normal, h.offset));
  }
  return {hs.begin(), hs.end()};
}

struct Cell {
  std::vector<std::size_t> vertices;  // indices into CellComplex::points
  int dim = 0;
  Vec sample;              // vertex barycenter, in the relative interior
  std::vector<int> signs;  // side of each hyperplane at the sample
  bool outside = false;    // relative interior misses the subtracted polyhedron
};

/// Polyhedral complex of a polytope cut by hyperplanes, with all faces.
struct CellComplex {
  std::size_t ambient = 0;
  std::vector<Vec> points;
  std::vector<Hyperplane> hyperplanes;
  std::vector<Cell> cells;                                  // sorted by (dim, vertices)
  std::vector<std::pair<std::size_t, std::size_t>> incidence;  // (face, coface), codimension 1

  std::vector<Vec> cell_points(std::size_t i) const {
    std::vector<Vec> v;
    for (std::size_t k : cells[i].vertices) v.push_back(points[k]);
    return v;
  }
  Polyhedron face(std::size_t i) const { return Polyhedron::hull(ambient, cell_points(i)); }
};

/// Cuts a polytope by every hyperplane and records the full face lattice of
/// the resulting cells. Faces of different chambers are identified by their
/// vertex sets, which is sound because the cells form a polyhedral complex.
inline CellComplex subdivide(const Polyhedron& region, const std::vector<Hyperplane>& hyperplanes) {
  require(region.is_bounded(), "subdivide: bounded region expected");
  CellComplex cx;
  cx.ambient = region.ambient_dim();
  cx.hyperplanes = hyperplanes;
  if (region.is_empty()) return cx;

  std::vector<Polyhedron> chambers{region};
  for (const Hyperplane& h : hyperplanes) {
    std::vector<Polyhedron> next;
    for (const Polyhedron& c : chambers) {
      bool pos = false, neg = false;
      for (const Vec& v : c.vertices()) {
        int s = h.side(v);
        pos |= s > 0;
        neg |= s < 0;
      }
      if (!(pos && neg)) {
        next.push_back(c);
        continue;
      }
      for (int sgn : {1, -1}) {
        std::vector<Halfspace> hs = c.hrep();
        hs.push_back({Rat(sgn) * h.normal, Rat(sgn) * h.offset});
        next.push_back(Polyhedron::from_hrep(cx.ambient, hs));
      }
    }
    chambers = std::move(next);
  }

  std::map<Vec, std::size_t> pool;
  auto pid = [&](const Vec& v) {
    auto it = pool.find(v);
    if (it != pool.end()) return it->second;
    std::size_t id = pool.size();
    pool.emplace(v, id);
    return id;
  };
  std::set<std::vector<std::size_t>> faces;
  std::set<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> links;
  for (const Polyhedron& c : chambers) {
    std::vector<std::size_t> ids;
    for (const Vec& v : c.vertices()) ids.push_back(pid(v));
    std::vector<std::pair<std::vector<std::size_t>, std::size_t>> local;
    for (const auto& f : face_vertex_sets(c)) {
      std::vector<std::size_t> g;
      std::vector<Vec> pts;
      for (std::size_t i : f) {
        g.push_back(ids[i]);
        pts.push_back(c.vertices()[i]);
      }
      std::sort(g.begin(), g.end());
      faces.insert(g);
      local.emplace_back(g, affine_rank(pts));
    }
    for (const auto& [a, da] : local)
      for (const auto& [b, db] : local)
        if (da + 1 == db && std::includes(b.begin(), b.end(), a.begin(), a.end()))
          links.insert({a, b});
  }

  cx.points.resize(pool.size());
  for (const auto& [v, i] : pool) cx.points[i] = v;
  // Renumber points lexicographically so output does not depend on chamber order.
  std::vector<std::size_t> order(cx.points.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cx.points[a] < cx.points[b]; });
  std::vector<std::size_t> rank_of(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank_of[order[i]] = i;
  std::vector<Vec> sorted_pts(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) sorted_pts[i] = cx.points[order[i]];
  cx.points = std::move(sorted_pts);
  auto renum = [&](std::vector<std::size_t> f) {
    for (std::size_t& i : f) i = rank_of[i];
    std::sort(f.begin(), f.end());
    return f;
  };

  std::vector<std::pair<int, std::vector<std::size_t>>> keyed;
  for (const auto& f : faces) {
    std::vector<std::size_t> g = renum(f);
    std::vector<Vec> pts;
    for (std::size_t i : g) pts.push_back(cx.points[i]);
    keyed.emplace_back(static_cast<int>(affine_rank(pts)), g);
  }
  std::sort(keyed.begin(), keyed.end());
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (const auto& [d, g] : keyed) {
    Cell cell;
    cell.vertices = g;
    cell.dim = d;
    Vec s = zeros(cx.ambient);
    for (std::size_t i : g) s = s + cx.points[i];
    cell.sample = Rat(1, static_cast<long>(g.size())) * s;
    for (const Hyperplane& h : hyperplanes) cell.signs.push_back(h.side(cell.sample));
    index[g] = cx.cells.size();
    cx.cells.push_back(std::move(cell));
  }
  for (const auto& [a, b] : links) cx.incidence.emplace_back(index.at(renum(a)), index.at(renum(b)));
  std::sort(cx.incidence.begin(), cx.incidence.end());
  return cx;
}

/// Cells of minus cut by the facet hyperplanes of plus; cells whose relative
/// interior misses plus are flagged outside.
inline CellComplex arrangement_cells(const Polyhedron& minus, const Polyhedron& plus) {
  std::vector<Hyperplane> hs = supporting_hyperplanes({plus});
  CellComplex cx = subdivide(minus, hs);
  for (Cell& c : cx.cells) c.outside = !plus.contains(c.sample);
  return cx;
}

}  // namespace torext
