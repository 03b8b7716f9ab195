#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <vector>

#include "arrangement.hpp"

namespace torext {

struct Component {
  std::vector<std::size_t> cells;  // indices into the cell complex
  Polyhedron closure;              // convex hull of the component's points
};

struct ComponentDecomposition {
  std::vector<Component> components;
  Polyhedron core;  // plus ∩ minus
  CellComplex complex;
  std::optional<Halfspace> truncation;  // set when unbounded inputs were cut
  std::vector<Vec> tail_rays;           // rays of the common tail cone

  std::size_t count() const { return components.size(); }
};

/// p ∩ hint for a half-space that cuts the tail cone to a point.
inline Polyhedron truncate(const Polyhedron& p, const Halfspace& hint) {
  if (p.is_empty() || p.is_bounded()) return p;
  require(p.lineality().empty(), "half-space does not bound");
  for (const Vec& r : p.rays()) require(dot(r, hint.normal) < 0, "half-space does not bound");
  for (const Vec& v : p.vertices())
    require(hint.satisfied_by(v), "truncation half-space cuts off a vertex");
  std::vector<Halfspace> hs = p.hrep();
  hs.push_back(hint);
  return Polyhedron::from_hrep(p.ambient_dim(), hs);
}

/// Default cut for a pair with common tail cone: normal = sum of the dual
/// tail-cone generators, offset one past the largest vertex pairing.
inline Halfspace default_truncation(const Polyhedron& a, const Polyhedron& b) {
  Cone dual_tail = a.tail_cone().dual();
  Vec u = zeros(a.ambient_dim());
  for (const Vec& g : dual_tail.rays()) u = u + g;
  require(!is_zero(u), "half-space does not bound");
  Rat top = 0;
  bool first = true;
  for (const Polyhedron* p : {&a, &b})
    if (!p->is_empty())
      for (const Vec& v : p->vertices()) {
        Rat x = dot(v, u);
        if (first || x > top) top = x;
        first = false;
      }
  return {-u, top + 1};
}

namespace detail {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace detail

/// Connected components of minus \ plus over the face-incidence graph.
///
/// Components are ordered by the lexicographically largest point of their
/// closure, ties broken by the sorted vertex list.
inline ComponentDecomposition components(const Polyhedron& minus, const Polyhedron& plus) {
  require(!minus.is_empty(), "components: minus must be nonempty");
  ComponentDecomposition out;
  out.core = intersect(plus, minus);
  Polyhedron m = minus, p = plus;
  if (!minus.is_bounded() || (!plus.is_empty() && !plus.is_bounded())) {
    if (!plus.is_empty())
      require(minus.tail_cone() == plus.tail_cone(), "components: tail cones differ");
    Halfspace h = default_truncation(minus, plus);
    m = truncate(minus, h);
    p = truncate(plus, h);
    out.truncation = h;
    out.tail_rays = minus.rays();
  }
  out.complex = arrangement_cells(m, p);
  const CellComplex& cx = out.complex;

  detail::UnionFind uf(cx.cells.size());
  for (const auto& [a, b] : cx.incidence)
    if (cx.cells[a].outside && cx.cells[b].outside) uf.unite(a, b);
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < cx.cells.size(); ++i)
    if (cx.cells[i].outside) groups[uf.find(i)].push_back(i);
  for (auto& [root, cells] : groups) {
    std::set<std::size_t> pts;
    for (std::size_t c : cells) pts.insert(cx.cells[c].vertices.begin(), cx.cells[c].vertices.end());
    std::vector<Vec> vs;
    for (std::size_t i : pts) vs.push_back(cx.points[i]);
    out.components.push_back({cells, Polyhedron::hull(cx.ambient, vs)});
  }
  std::sort(out.components.begin(), out.components.end(), [](const Component& a, const Component& b) {
    const auto& va = a.closure.vertices();
    const auto& vb = b.closure.vertices();
    if (va.back() != vb.back()) return va.back() < vb.back();
    return va < vb;
  });
  return out;
}

/// Sum of the volumes of the full-dimensional cells of a component.
inline Rat component_volume(const ComponentDecomposition& d, std::size_t i) {
  Rat v = 0;
  for (std::size_t c : d.components[i].cells)
    if (d.complex.cells[c].dim == static_cast<int>(d.complex.ambient)) v += volume(d.complex.face(c));
  return v;
}

namespace detail {

inline bool supported_by(const Halfspace& h, const Polyhedron& p) {
  for (const Halfspace& g : p.hrep())
    if (g == h) return true;
  return false;
}

inline Polyhedron convex_union(const Polyhedron& a, const Polyhedron& b) {
  std::vector<Vec> pts = a.vertices();
  pts.insert(pts.end(), b.vertices().begin(), b.vertices().end());
  std::vector<Vec> rays = a.rays();
  rays.insert(rays.end(), b.rays().begin(), b.rays().end());
  return Polyhedron::hull(a.ambient_dim(), pts, rays);
}

}  // namespace detail

/// closure ∪ core, verified to be convex.
inline Polyhedron nabla_of(const Polyhedron& closure, const Polyhedron& core) {
  if (core.is_empty()) return closure;
  Polyhedron n = detail::convex_union(closure, core);
  auto fail = [] { throw InvariantError("union not convex"); };
  for (const Halfspace& h : n.hrep())
    if (!detail::supported_by(h, closure) && !detail::supported_by(h, core)) fail();
  if (n.is_bounded() && n.is_full_dim()) {
    Rat lhs = volume(n);
    Rat rhs = volume(closure) + volume(core) - volume(intersect(closure, core));
    if (lhs != rhs) fail();
  }
  return n;
}

/// nabla_i for component i. Volume is checked against the component's own
/// cells, so a non-convex component cannot slip through its hull. Truncated
/// inputs are extended back along the common tail cone.
inline Polyhedron nabla_of(const ComponentDecomposition& d, std::size_t i) {
  const Component& c = d.components[i];
  if (!d.truncation) {
    Polyhedron n = nabla_of(c.closure, d.core);
    if (n.is_full_dim() && n.is_bounded()) {
      Rat core_vol = d.core.is_empty() ? Rat(0) : volume(d.core);
      if (volume(n) != core_vol + component_volume(d, i)) throw InvariantError("union not convex");
    }
    return n;
  }
  const Halfspace& h = *d.truncation;
  std::vector<Vec> pts;
  for (const Vec& v : c.closure.vertices())
    if (!h.tight_at(v)) pts.push_back(v);
  if (!d.core.is_empty())
    for (const Vec& v : d.core.vertices()) pts.push_back(v);
  require(!pts.empty(), "component lies entirely on the truncation boundary");
  return Polyhedron::hull(h.normal.size(), pts, d.tail_rays);
}

}  // namespace torext
