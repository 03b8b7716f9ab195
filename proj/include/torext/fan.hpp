#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <vector>

#include "lattice.hpp"

namespace torext {

using RaySet = std::vector<std::size_t>;

/// Complete or partial fan given by its maximal cones.
///
/// Rays are primitive integer vectors sorted lexicographically; each maximal
/// cone is a sorted set of ray indices. Construction validates that every
/// cone is pointed and full-dimensional, that cones meet in common faces, and
/// that the support is convex.
class Fan {
 public:
  Fan() = default;

  static Fan make(std::vector<Vec> rays, const std::vector<RaySet>& cones,
                  const Lattice& lattice) {
    require(!rays.empty() || !cones.empty(), "fan: no rays");
    std::size_t n = lattice.rank();
    for (Vec& r : rays) {
      require(r.size() == n, "fan: ray has wrong dimension");
      require(!is_zero(r), "fan: zero ray");
      r = primitive(r);
    }
    std::vector<Vec> sorted = rays;
    std::sort(sorted.begin(), sorted.end());
    require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), "fan: repeated ray");
    std::vector<std::size_t> remap(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i)
      remap[i] = std::lower_bound(sorted.begin(), sorted.end(), rays[i]) - sorted.begin();
    std::set<RaySet> cs;
    for (const RaySet& c : cones) {
      RaySet m;
      for (std::size_t i : c) {
        require(i < rays.size(), "fan: cone refers to a missing ray");
        m.push_back(remap[i]);
      }
      std::sort(m.begin(), m.end());
      m.erase(std::unique(m.begin(), m.end()), m.end());
      require(cs.insert(m).second, "fan: repeated cone");
    }
    Fan f;
    f.lattice_ = lattice;
    f.rays_ = std::move(sorted);
    f.max_ = {cs.begin(), cs.end()};
    f.validate();
    return f;
  }

  static Fan make(const std::vector<Vec>& rays, const std::vector<RaySet>& cones) {
    require(!rays.empty(), "fan: no rays");
    return make(rays, cones, Lattice::standard(rays[0].size()));
  }

  std::size_t dim() const { return lattice_.rank(); }
  const Lattice& lattice() const { return lattice_; }
  const std::vector<Vec>& rays() const { return rays_; }
  const std::vector<RaySet>& maximal_cones() const { return max_; }
  const Cone& cone(std::size_t i) const { return cones_[i]; }

  /// Index of a ray vector (any positive multiple), or npos.
  std::size_t ray_index(const Vec& v) const {
    Vec p = primitive(v);
    auto it = std::lower_bound(rays_.begin(), rays_.end(), p);
    if (it == rays_.end() || *it != p) return npos;
    return it - rays_.begin();
  }

  /// Primitive generator of ray i with respect to the fan's lattice.
  Vec ray_generator(std::size_t i) const {
    return lattice_.primitive_multiple(rays_[i]) * rays_[i];
  }

  Cone cone_of(const RaySet& s) const {
    std::vector<Vec> g;
    for (std::size_t i : s) g.push_back(rays_[i]);
    return Cone::from_generators(dim(), g);
  }

  Cone support() const { return Cone::from_generators(dim(), rays_); }

  /// Every cone of the fan (faces of maximal cones, zero cone included) as
  /// sorted ray sets, sorted by size then lexicographically.
  std::vector<RaySet> all_cones() const {
    std::set<RaySet> out;
    out.insert({});
    for (std::size_t k = 0; k < max_.size(); ++k) {
      const RaySet& m = max_[k];
      std::set<RaySet> faces{m};
      std::vector<RaySet> facet_sets;
      for (const Vec& u : cones_[k].facets()) {
        RaySet t;
        for (std::size_t i : m)
          if (dot(rays_[i], u) == 0) t.push_back(i);
        facet_sets.push_back(t);
      }
      std::vector<RaySet> frontier(facet_sets.begin(), facet_sets.end());
      for (const RaySet& f : facet_sets) faces.insert(f);
      while (!frontier.empty()) {
        std::vector<RaySet> next;
        for (const RaySet& a : frontier)
          for (const RaySet& b : facet_sets) {
            RaySet x;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(x));
            if (faces.insert(x).second) next.push_back(x);
          }
        frontier = std::move(next);
      }
      out.insert(faces.begin(), faces.end());
    }
    std::vector<RaySet> v(out.begin(), out.end());
    std::stable_sort(v.begin(), v.end(),
                     [](const RaySet& a, const RaySet& b) { return a.size() < b.size(); });
    return v;
  }

  bool operator==(const Fan& o) const {
    return lattice_ == o.lattice_ && rays_ == o.rays_ && max_ == o.max_;
  }
  bool operator!=(const Fan& o) const { return !(*this == o); }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  void validate() {
    std::size_t n = dim();
    std::vector<bool> used(rays_.size(), false);
    cones_.clear();
    for (const RaySet& m : max_) {
      Cone c = cone_of(m);
      require(c.is_pointed(), "fan: cone is not pointed");
      require(c.is_full_dim(), "fan: maximal cones must be full-dimensional");
      std::vector<Vec> gens;
      for (std::size_t i : m) {
        gens.push_back(rays_[i]);
        used[i] = true;
      }
      std::sort(gens.begin(), gens.end());
      require(c.rays() == gens, "fan: cone generator is not an extreme ray");
      cones_.push_back(std::move(c));
    }
    for (std::size_t i = 0; i < rays_.size(); ++i) require(used[i], "fan: ray lies in no cone");

    for (std::size_t a = 0; a < max_.size(); ++a)
      for (std::size_t b = a + 1; b < max_.size(); ++b) {
        Cone x = cones_[a].intersect(cones_[b]);
        require(is_face(a, x) && is_face(b, x), "fan: cones do not meet in a common face");
      }

    std::map<RaySet, std::pair<std::size_t, Vec>> walls;
    for (std::size_t k = 0; k < max_.size(); ++k)
      for (const Vec& u : cones_[k].facets()) {
        RaySet t;
        for (std::size_t i : max_[k])
          if (dot(rays_[i], u) == 0) t.push_back(i);
        auto& w = walls[t];
        ++w.first;
        w.second = u;
      }
    for (const auto& [t, w] : walls) {
      require(w.first <= 2, "fan: wall shared by more than two cones");
      if (w.first == 2) continue;
      for (const Vec& r : rays_)
        require(dot(r, w.second) >= 0, "fan: support is not convex");
    }
    (void)n;
  }

  bool is_face(std::size_t k, const Cone& x) const {
    const Cone& c = cones_[k];
    std::vector<Vec> tight_facets;
    for (const Vec& u : c.facets()) {
      bool all = true;
      for (const Vec& g : x.generators())
        if (dot(g, u) != 0) {
          all = false;
          break;
        }
      if (all) tight_facets.push_back(u);
    }
    std::vector<Vec> face_rays;
    for (std::size_t i : max_[k]) {
      bool all = true;
      for (const Vec& u : tight_facets)
        if (dot(rays_[i], u) != 0) all = false;
      if (all) face_rays.push_back(rays_[i]);
    }
    return Cone::from_generators(dim(), face_rays) == x;
  }

  Lattice lattice_;
  std::vector<Vec> rays_;
  std::vector<RaySet> max_;
  std::vector<Cone> cones_;
};

/// Inner normal fan: one maximal cone of facet normals per vertex.
inline Fan normal_fan(const Polyhedron& p, const Lattice& N) {
  require(!p.is_empty() && p.is_full_dim(), "not full-dimensional");
  require(p.lineality().empty(), "normal fan needs a polyhedron with vertices");
  std::vector<Vec> rays;
  for (const Halfspace& h : p.facets()) rays.push_back(h.normal);
  std::vector<RaySet> cones;
  for (const Vec& v : p.vertices()) {
    RaySet s;
    for (std::size_t i = 0; i < p.facets().size(); ++i)
      if (p.facets()[i].tight_at(v)) s.push_back(i);
    cones.push_back(s);
  }
  return Fan::make(rays, cones, N);
}

inline Fan normal_fan(const Polyhedron& p) {
  return normal_fan(p, Lattice::standard(p.ambient_dim()));
}

inline bool refines(const Fan& fine, const Fan& coarse) {
  if (fine.dim() != coarse.dim()) return false;
  if (fine.support() != coarse.support()) return false;
  for (std::size_t i = 0; i < fine.maximal_cones().size(); ++i) {
    bool inside = false;
    for (std::size_t j = 0; j < coarse.maximal_cones().size() && !inside; ++j)
      inside = coarse.cone(j).contains(fine.cone(i));
    if (!inside) return false;
  }
  return true;
}

namespace detail {

inline Fan fan_from_cones(const std::vector<Cone>& cones, const Lattice& N) {
  std::set<Vec> rayset;
  for (const Cone& c : cones) rayset.insert(c.rays().begin(), c.rays().end());
  std::vector<Vec> rays(rayset.begin(), rayset.end());
  std::vector<RaySet> idx;
  for (const Cone& c : cones) {
    RaySet s;
    for (const Vec& r : c.rays()) s.push_back(std::lower_bound(rays.begin(), rays.end(), r) - rays.begin());
    idx.push_back(s);
  }
  return Fan::make(rays, idx, N);
}

}  // namespace detail

/// Coarsest common refinement of two fans with the same support.
inline Fan common_refinement(const Fan& a, const Fan& b) {
  require(a.dim() == b.dim() && a.lattice() == b.lattice(), "common_refinement: lattice mismatch");
  require(a.support() == b.support(), "common_refinement: supports differ");
  std::vector<Cone> cells;
  for (std::size_t i = 0; i < a.maximal_cones().size(); ++i)
    for (std::size_t j = 0; j < b.maximal_cones().size(); ++j) {
      Cone x = a.cone(i).intersect(b.cone(j));
      if (x.is_full_dim()) cells.push_back(std::move(x));
    }
  return detail::fan_from_cones(cells, a.lattice());
}

/// Normal cone of p at vertex v: {u : <w - v, u> >= 0 on p}.
inline Cone normal_cone(const Polyhedron& p, const Vec& v) {
  Matrix ineqs;
  for (const Vec& w : p.vertices())
    if (w != v) ineqs.push_back(w - v);
  for (const Vec& r : p.rays()) ineqs.push_back(r);
  return Cone::from_inequalities(p.ambient_dim(), ineqs, p.lineality());
}

/// Refinement of f by the normal cones of p (p may be lower-dimensional).
inline Fan refine_for(const Fan& f, const Polyhedron& p) {
  require(!p.is_empty(), "refine_for: empty polyhedron");
  std::vector<Cone> cells;
  for (const Vec& v : p.vertices()) {
    Cone nv = normal_cone(p, v);
    for (std::size_t i = 0; i < f.maximal_cones().size(); ++i) {
      Cone x = f.cone(i).intersect(nv);
      if (x.is_full_dim()) cells.push_back(std::move(x));
    }
  }
  std::sort(cells.begin(), cells.end(), [](const Cone& x, const Cone& y) { return x.rays() < y.rays(); });
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return detail::fan_from_cones(cells, f.lattice());
}

/// Vertex of p minimizing every ray of maximal cone k, if one exists.
inline std::optional<Vec> minimizing_vertex(const Polyhedron& p, const Fan& f, std::size_t k) {
  for (const Vec& v : p.vertices()) {
    bool ok = true;
    for (std::size_t i : f.maximal_cones()[k]) {
      Vec u = f.rays()[i];
      for (const Vec& w : p.vertices())
        if (dot(w, u) < dot(v, u)) {
          ok = false;
          break;
        }
      if (!ok) break;
    }
    if (ok) return v;
  }
  return std::nullopt;
}

/// Tail cone equals the dual of the support and the normal fan is refined by f.
inline bool is_compatible(const Polyhedron& p, const Fan& f) {
  if (p.is_empty()) return true;
  if (p.ambient_dim() != f.dim()) return false;
  if (p.tail_cone() != f.support().dual()) return false;
  for (std::size_t k = 0; k < f.maximal_cones().size(); ++k)
    if (!minimizing_vertex(p, f, k)) return false;
  return true;
}

}  // namespace torext
