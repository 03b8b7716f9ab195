#pragma once

#include <cstddef>
#include <vector>

#include "double_description.hpp"

namespace torext {

/// Rational polyhedral cone with both descriptions kept canonical.
///
/// Primal side: extreme rays plus a lineality basis. Dual side: facet normals
/// u with <x,u> >= 0 plus a basis of the equalities <x,e> = 0. The full space
/// is the cone with no rays and a full lineality basis.
class Cone {
 public:
  Cone() = default;

  static Cone from_generators(std::size_t n, const std::vector<Vec>& gens,
                              const Matrix& lineality = {}) {
    Matrix ineqs = gens;
    for (const Vec& l : lineality) {
      ineqs.push_back(l);
      ineqs.push_back(-l);
    }
    ConeGenerators d = double_description(ineqs, n);
    return make(n, double_description(concat(d.rays, d.lineality), n), d);
  }

  static Cone from_inequalities(std::size_t n, const Matrix& ineqs, const Matrix& eqs = {}) {
    Matrix rows = ineqs;
    for (const Vec& e : eqs) {
      rows.push_back(e);
      rows.push_back(-e);
    }
    ConeGenerators p = double_description(rows, n);
    return make(n, p, double_description(concat(p.rays, p.lineality), n));
  }

  std::size_t ambient_dim() const { return n_; }
  std::size_t dim() const { return n_ - equalities_.size(); }
  bool is_pointed() const { return lineality_.empty(); }
  bool is_full_dim() const { return equalities_.empty(); }
  bool is_zero() const { return rays_.empty() && lineality_.empty(); }

  const std::vector<Vec>& rays() const { return rays_; }
  const Matrix& lineality() const { return lineality_; }
  const std::vector<Vec>& facets() const { return facets_; }
  const Matrix& equalities() const { return equalities_; }

  /// Rays followed by both signs of every lineality vector.
  std::vector<Vec> generators() const {
    std::vector<Vec> g = rays_;
    for (const Vec& l : lineality_) {
      g.push_back(l);
      g.push_back(-l);
    }
    return g;
  }

  bool contains(const Vec& x) const {
    for (const Vec& f : facets_)
      if (dot(f, x) < 0) return false;
    for (const Vec& e : equalities_)
      if (dot(e, x) != 0) return false;
    return true;
  }

  bool contains(const Cone& other) const {
    for (const Vec& g : other.generators())
      if (!contains(g)) return false;
    return true;
  }

  Cone dual() const {
    Cone d;
    d.n_ = n_;
    d.rays_ = facets_;
    d.lineality_ = equalities_;
    d.facets_ = rays_;
    d.equalities_ = lineality_;
    return d;
  }

  Cone intersect(const Cone& other) const {
    Matrix ineqs = facets_;
    ineqs.insert(ineqs.end(), other.facets_.begin(), other.facets_.end());
    Matrix eqs = equalities_;
    eqs.insert(eqs.end(), other.equalities_.begin(), other.equalities_.end());
    return from_inequalities(n_, ineqs, eqs);
  }

  /// Smallest face containing x, given as the facets tight at x.
  std::vector<std::size_t> tight_facets(const Vec& x) const {
    std::vector<std::size_t> t;
    for (std::size_t i = 0; i < facets_.size(); ++i)
      if (dot(facets_[i], x) == 0) t.push_back(i);
    return t;
  }

  bool operator==(const Cone& o) const {
    return n_ == o.n_ && rays_ == o.rays_ && lineality_ == o.lineality_;
  }
  bool operator!=(const Cone& o) const { return !(*this == o); }

 private:
  static Matrix concat(const std::vector<Vec>& a, const Matrix& b) {
    Matrix r = a;
    for (const Vec& l : b) {
      r.push_back(l);
      r.push_back(-l);
    }
    return r;
  }

  static Cone make(std::size_t n, const ConeGenerators& primal, const ConeGenerators& dual) {
    Cone c;
    c.n_ = n;
    c.rays_ = primal.rays;
    c.lineality_ = primal.lineality;
    c.facets_ = dual.rays;
    c.equalities_ = dual.lineality;
    return c;
  }

  std::size_t n_ = 0;
  std::vector<Vec> rays_;
  Matrix lineality_;
  std::vector<Vec> facets_;
  Matrix equalities_;
};

inline Cone dual_cone(const Cone& c) { return c.dual(); }

}  // namespace torext
