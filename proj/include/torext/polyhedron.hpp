#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "cone.hpp"

namespace torext {

/// The half-space <m, normal> >= -offset.
struct Halfspace {
  Vec normal;
  Rat offset;

  bool satisfied_by(const Vec& m) const { return dot(m, normal) >= -offset; }
  bool tight_at(const Vec& m) const { return dot(m, normal) == -offset; }
  /// <m, normal> + offset; nonnegative exactly on the half-space.
  Rat slack(const Vec& m) const { return dot(m, normal) + offset; }

  bool operator==(const Halfspace& o) const { return normal == o.normal && offset == o.offset; }
  bool operator<(const Halfspace& o) const {
    return std::tie(normal, offset) < std::tie(o.normal, o.offset);
  }
};

/// Rational polyhedron with synchronized H- and V-representations.
///
/// Both sides are canonical, so structural equality is set equality:
/// facets carry primitive integer normals, equalities come from a reduced
/// echelon basis, vertices and rays are sorted lexicographically, and when
/// there is a lineality space the vertices and rays are taken orthogonal to it.
class Polyhedron {
 public:
  Polyhedron() = default;

  static Polyhedron empty(std::size_t n) {
    Polyhedron p;
    p.n_ = n;
    p.empty_ = true;
    return p;
  }

  static Polyhedron point(const Vec& v) { return hull(v.size(), {v}); }

  /// Smallest polyhedron containing the points and closed under the rays.
  static Polyhedron hull(std::size_t n, const std::vector<Vec>& points,
                         const std::vector<Vec>& rays = {}, const Matrix& lineality = {}) {
    if (points.empty()) return empty(n);
    Matrix gens;
    for (const Vec& p : points) {
      Vec g = p;
      g.push_back(1);
      gens.push_back(std::move(g));
    }
    for (const Vec& r : rays) {
      if (is_zero(r)) continue;
      Vec g = r;
      g.push_back(0);
      gens.push_back(std::move(g));
    }
    for (const Vec& l : lineality) {
      Vec g = l;
      g.push_back(0);
      gens.push_back(g);
      gens.push_back(-g);
    }
    ConeGenerators dual = double_description(gens, n + 1);
    Polyhedron p;
    p.n_ = n;
    for (const Vec& d : dual.rays) {
      Vec v(d.begin(), d.end() - 1);
      if (is_zero(v)) continue;  // the homogenizing inequality t >= 0
      p.facets_.push_back(normalized(v, d.back()));
    }
    for (const Vec& d : dual.lineality) {
      Vec v(d.begin(), d.end() - 1);
      ensure(!is_zero(v), "hull: inconsistent equality");
      p.equalities_.push_back(normalized(v, d.back()));
    }
    std::sort(p.facets_.begin(), p.facets_.end());
    p.compute_vrep();
    return p;
  }

  /// Polyhedron cut out by the given half-spaces; redundancy is removed.
  static Polyhedron from_hrep(std::size_t n, const std::vector<Halfspace>& hs) {
    Polyhedron p;
    p.n_ = n;
    for (const Halfspace& h : hs) {
      if (is_zero(h.normal)) {
        if (h.offset < 0) return empty(n);
        continue;
      }
      p.facets_.push_back(h);
    }
    p.compute_vrep();
    if (p.empty_) return empty(n);
    return hull(n, p.vertices_, p.rays_, p.lineality_);
  }

  std::size_t ambient_dim() const { return n_; }
  bool is_empty() const { return empty_; }
  /// Dimension of the affine hull; -1 for the empty polyhedron.
  int dim() const { return empty_ ? -1 : static_cast<int>(n_ - equalities_.size()); }
  bool is_full_dim() const { return !empty_ && equalities_.empty(); }
  bool is_bounded() const { return rays_.empty() && lineality_.empty(); }

  const std::vector<Halfspace>& facets() const { return facets_; }
  const std::vector<Halfspace>& equalities() const { return equalities_; }
  const std::vector<Vec>& vertices() const { return vertices_; }
  const std::vector<Vec>& rays() const { return rays_; }
  const Matrix& lineality() const { return lineality_; }

  /// Facets followed by both orientations of every equality, sorted.
  std::vector<Halfspace> hrep() const {
    if (empty_) return {Halfspace{zeros(n_), Rat(-1)}};
    std::vector<Halfspace> h = facets_;
    for (const Halfspace& e : equalities_) {
      h.push_back(e);
      h.push_back({-e.normal, -e.offset});
    }
    std::sort(h.begin(), h.end());
    return h;
  }

  bool contains(const Vec& m) const {
    if (empty_) return false;
    for (const Halfspace& h : facets_)
      if (!h.satisfied_by(m)) return false;
    for (const Halfspace& e : equalities_)
      if (!e.tight_at(m)) return false;
    return true;
  }

  bool recedes(const Vec& r) const {
    for (const Halfspace& h : facets_)
      if (dot(r, h.normal) < 0) return false;
    for (const Halfspace& e : equalities_)
      if (dot(r, e.normal) != 0) return false;
    return true;
  }

  bool contains(const Polyhedron& q) const {
    if (q.empty_) return true;
    if (empty_) return false;
    for (const Vec& v : q.vertices_)
      if (!contains(v)) return false;
    for (const Vec& r : q.rays_)
      if (!recedes(r)) return false;
    for (const Vec& l : q.lineality_)
      if (!recedes(l) || !recedes(-l)) return false;
    return true;
  }

  Cone tail_cone() const { return Cone::from_generators(n_, rays_, lineality_); }

  /// min over the polyhedron of <m, v>, if bounded below.
  std::optional<Rat> min_pairing(const Vec& v) const {
    ensure(!empty_, "min_pairing on empty polyhedron");
    for (const Vec& r : rays_)
      if (dot(r, v) < 0) return std::nullopt;
    for (const Vec& l : lineality_)
      if (dot(l, v) != 0) return std::nullopt;
    Rat best = dot(vertices_[0], v);
    for (const Vec& p : vertices_) best = std::min(best, dot(p, v));
    return best;
  }

  Polyhedron translate(const Vec& t) const {
    if (empty_) return *this;
    std::vector<Vec> pts;
    for (const Vec& p : vertices_) pts.push_back(p + t);
    return hull(n_, pts, rays_, lineality_);
  }

  Polyhedron negate() const {
    if (empty_) return *this;
    std::vector<Vec> pts, rs;
    for (const Vec& p : vertices_) pts.push_back(-p);
    for (const Vec& r : rays_) rs.push_back(-r);
    return hull(n_, pts, rs, lineality_);
  }

  /// s * P for s >= 0; the tail cone is unchanged.
  Polyhedron scale(const Rat& s) const {
    require(s >= 0, "scale factor must be nonnegative");
    if (empty_) return *this;
    std::vector<Vec> pts;
    for (const Vec& p : vertices_) pts.push_back(s * p);
    return hull(n_, pts, rays_, lineality_);
  }

  bool operator==(const Polyhedron& o) const {
    if (n_ != o.n_ || empty_ != o.empty_) return false;
    if (empty_) return true;
    return vertices_ == o.vertices_ && rays_ == o.rays_ && lineality_ == o.lineality_;
  }
  bool operator!=(const Polyhedron& o) const { return !(*this == o); }

 private:
  static Halfspace normalized(const Vec& v, const Rat& lambda) {
    Vec p = primitive(v);
    Rat s = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) {
        s = p[i] / v[i];
        break;
      }
    return {p, lambda * s};
  }

  void compute_vrep() {
    Matrix rows;
    for (const Halfspace& h : facets_) {
      Vec r = h.normal;
      r.push_back(h.offset);
      rows.push_back(std::move(r));
    }
    for (const Halfspace& e : equalities_) {
      Vec r = e.normal;
      r.push_back(e.offset);
      rows.push_back(r);
      rows.push_back(-r);
    }
    rows.push_back(unit(n_ + 1, n_));
    ConeGenerators g = double_description(rows, n_ + 1);
    vertices_.clear();
    rays_.clear();
    lineality_.clear();
    for (const Vec& r : g.rays) {
      Vec x(r.begin(), r.end() - 1);
      if (r.back() > 0) {
        vertices_.push_back((1 / r.back()) * x);
      } else {
        rays_.push_back(primitive(x));
      }
    }
    for (const Vec& l : g.lineality) lineality_.push_back(primitive(Vec(l.begin(), l.end() - 1)));
    std::sort(vertices_.begin(), vertices_.end());
    std::sort(rays_.begin(), rays_.end());
    empty_ = vertices_.empty();
  }

  std::size_t n_ = 0;
  bool empty_ = false;
  std::vector<Halfspace> facets_;
  std::vector<Halfspace> equalities_;
  std::vector<Vec> vertices_;
  std::vector<Vec> rays_;
  Matrix lineality_;
};

inline Polyhedron hull(std::size_t n, const std::vector<Vec>& points,
                       const std::vector<Vec>& rays = {}) {
  return Polyhedron::hull(n, points, rays);
}

inline Polyhedron minkowski_sum(const Polyhedron& p, const Polyhedron& q) {
  require(p.ambient_dim() == q.ambient_dim(), "minkowski_sum: dimension mismatch");
  if (p.is_empty() || q.is_empty()) return Polyhedron::empty(p.ambient_dim());
  std::vector<Vec> pts;
  for (const Vec& a : p.vertices())
    for (const Vec& b : q.vertices()) pts.push_back(a + b);
  std::vector<Vec> rays = p.rays();
  rays.insert(rays.end(), q.rays().begin(), q.rays().end());
  Matrix lin = p.lineality();
  lin.insert(lin.end(), q.lineality().begin(), q.lineality().end());
  return Polyhedron::hull(p.ambient_dim(), pts, rays, lin);
}

inline Polyhedron minkowski_sum(const Polyhedron& p, const Cone& c) {
  if (p.is_empty()) return p;
  std::vector<Vec> rays = p.rays();
  rays.insert(rays.end(), c.rays().begin(), c.rays().end());
  Matrix lin = p.lineality();
  lin.insert(lin.end(), c.lineality().begin(), c.lineality().end());
  return Polyhedron::hull(p.ambient_dim(), p.vertices(), rays, lin);
}

inline Polyhedron intersect(const Polyhedron& p, const Polyhedron& q) {
  require(p.ambient_dim() == q.ambient_dim(), "intersect: dimension mismatch");
  if (p.is_empty() || q.is_empty()) return Polyhedron::empty(p.ambient_dim());
  std::vector<Halfspace> hs = p.hrep();
  std::vector<Halfspace> hq = q.hrep();
  hs.insert(hs.end(), hq.begin(), hq.end());
  return Polyhedron::from_hrep(p.ambient_dim(), hs);
}

inline const std::vector<Vec>& vertices_of(const Polyhedron& p) { return p.vertices(); }

// ---- faces and volume of polytopes ---------------------------------------

/// Vertex-index sets of all nonempty faces of a polytope (the polytope itself
/// included), obtained by closing the facet vertex sets under intersection.
inline std::vector<std::vector<std::size_t>> face_vertex_sets(const Polyhedron& p) {
  require(p.is_bounded() && !p.is_empty(), "faces: bounded nonempty polytope expected");
  const auto& vs = p.vertices();
  std::set<std::vector<std::size_t>> faces;
  std::vector<std::size_t> all(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i) all[i] = i;
  faces.insert(all);
  std::vector<std::vector<std::size_t>> frontier;
  for (const Halfspace& h : p.facets()) {
    std::vector<std::size_t> t;
    for (std::size_t i = 0; i < vs.size(); ++i)
      if (h.tight_at(vs[i])) t.push_back(i);
    if (!t.empty() && faces.insert(t).second) frontier.push_back(t);
  }
  std::vector<std::vector<std::size_t>> facet_sets = frontier;
  while (!frontier.empty()) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& f : frontier)
      for (const auto& g : facet_sets) {
        std::vector<std::size_t> x;
        std::set_intersection(f.begin(), f.end(), g.begin(), g.end(), std::back_inserter(x));
        if (!x.empty() && faces.insert(x).second) next.push_back(x);
      }
    frontier = std::move(next);
  }
  return {faces.begin(), faces.end()};
}

namespace detail {

inline void pulling_triangulation(const std::vector<Vec>& vs,
                                  const std::vector<std::vector<std::size_t>>& facet_sets,
                                  const std::vector<std::size_t>& face, std::size_t k,
                                  std::vector<std::vector<std::size_t>>& out) {
  if (k == 0) {
    out.push_back({face[0]});
    return;
  }
  std::size_t apex = face[0];
  std::set<std::vector<std::size_t>> subfaces;
  for (const auto& t : facet_sets) {
    std::vector<std::size_t> f;
    std::set_intersection(face.begin(), face.end(), t.begin(), t.end(), std::back_inserter(f));
    if (f.empty() || f.size() == face.size() || f[0] == apex) continue;
    std::vector<Vec> pts;
    for (std::size_t i : f) pts.push_back(vs[i]);
    if (affine_rank(pts) == k - 1) subfaces.insert(f);
  }
  for (const auto& f : subfaces) {
    std::vector<std::vector<std::size_t>> sub;
    pulling_triangulation(vs, facet_sets, f, k - 1, sub);
    for (auto& s : sub) {
      s.insert(s.begin(), apex);
      out.push_back(std::move(s));
    }
  }
}

}  // namespace detail

/// Full-dimensional simplices (as vertex indices) triangulating a polytope.
inline std::vector<std::vector<std::size_t>> triangulate(const Polyhedron& p) {
  require(p.is_bounded() && !p.is_empty(), "triangulate: bounded nonempty polytope expected");
  const auto& vs = p.vertices();
  std::vector<std::vector<std::size_t>> facet_sets;
  for (const Halfspace& h : p.facets()) {
    std::vector<std::size_t> t;
    for (std::size_t i = 0; i < vs.size(); ++i)
      if (h.tight_at(vs[i])) t.push_back(i);
    facet_sets.push_back(std::move(t));
  }
  std::vector<std::size_t> all(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i) all[i] = i;
  std::vector<std::vector<std::size_t>> out;
  detail::pulling_triangulation(vs, facet_sets, all, static_cast<std::size_t>(p.dim()), out);
  return out;
}

/// Euclidean volume in the ambient dimension (zero unless full-dimensional).
inline Rat volume(const Polyhedron& p) {
  if (p.is_empty() || !p.is_full_dim()) return 0;
  require(p.is_bounded(), "volume of an unbounded polyhedron");
  std::size_t n = p.ambient_dim();
  Rat fact = 1;
  for (std::size_t i = 2; i <= n; ++i) fact *= i;
  Rat total = 0;
  for (const auto& s : triangulate(p)) {
    Matrix m;
    for (std::size_t i = 1; i < s.size(); ++i) m.push_back(p.vertices()[s[i]] - p.vertices()[s[0]]);
    Rat d = determinant(m);
    total += (d < 0 ? Rat(-d) : d) / fact;
  }
  return total;
}

}  // namespace torext
