#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "divisor.hpp"

namespace torext {

/// Linear subspace of Q^n stored by its reduced row echelon basis.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(std::size_t n) { return Subspace(n, {}); }
  static Subspace full(std::size_t n) { return span(n, identity(n)); }
  static Subspace span(std::size_t n, const Matrix& vectors) {
    return Subspace(n, rref(vectors, n).rows);
  }

  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return basis_.size(); }
  const Matrix& basis() const { return basis_; }

  bool contains(const Vec& v) const {
    Matrix m = basis_;
    m.push_back(v);
    return rank(m) == basis_.size();
  }
  bool contains(const Subspace& o) const {
    for (const Vec& v : o.basis_)
      if (!contains(v)) return false;
    return true;
  }

  Subspace operator+(const Subspace& o) const {
    Matrix m = basis_;
    m.insert(m.end(), o.basis_.begin(), o.basis_.end());
    return span(n_, m);
  }

  /// Orthogonal complement for the standard bilinear form.
  Subspace perp() const { return span(n_, nullspace(basis_, n_)); }

  Subspace intersect(const Subspace& o) const { return (perp() + o.perp()).perp(); }

  bool operator==(const Subspace& o) const { return n_ == o.n_ && basis_ == o.basis_; }
  bool operator!=(const Subspace& o) const { return !(*this == o); }
  bool operator<(const Subspace& o) const {
    if (dim() != o.dim()) return dim() < o.dim();
    return basis_ < o.basis_;
  }

 private:
  Subspace(std::size_t n, Matrix b) : n_(n), basis_(std::move(b)) {}
  std::size_t n_ = 0;
  Matrix basis_;
};

/// One ray's decreasing filtration: the full space for l < start,
/// levels[l - start] for start <= l < start + levels.size(), zero beyond.
struct RayFiltration {
  long start = 0;
  std::vector<Subspace> levels;

  long end() const { return start + static_cast<long>(levels.size()); }
  bool operator==(const RayFiltration& o) const { return start == o.start && levels == o.levels; }
};

/// Klyachko-type filtration data: an ambient space and one decreasing
/// filtration per fan ray.
class Filtration {
 public:
  Filtration() = default;
  Filtration(std::size_t ambient, std::vector<RayFiltration> rays)
      : n_(ambient), rays_(std::move(rays)) {
    normalize();
  }

  std::size_t ambient_dim() const { return n_; }
  std::size_t ray_count() const { return rays_.size(); }
  const RayFiltration& ray(std::size_t i) const { return rays_[i]; }

  Subspace at(std::size_t i, long l) const {
    const RayFiltration& r = rays_[i];
    if (l < r.start) return Subspace::full(n_);
    if (l >= r.end()) return Subspace::zero(n_);
    return r.levels[l - r.start];
  }

  std::vector<std::size_t> dims(std::size_t i, long from, long to) const {
    std::vector<std::size_t> d;
    for (long l = from; l <= to; ++l) d.push_back(at(i, l).dim());
    return d;
  }

  /// Every subspace strictly between zero and the full space, all rays.
  std::vector<Subspace> proper_subspaces(const std::vector<std::size_t>& which) const {
    std::set<Subspace> s;
    for (std::size_t i : which)
      for (const Subspace& x : rays_[i].levels) s.insert(x);
    return {s.begin(), s.end()};
  }

  bool operator==(const Filtration& o) const { return n_ == o.n_ && rays_ == o.rays_; }
  bool operator!=(const Filtration& o) const { return !(*this == o); }

 private:
  void normalize() {
    for (RayFiltration& r : rays_) {
      for (const Subspace& s : r.levels) require(s.ambient() == n_, "filtration: subspace ambient mismatch");
      for (std::size_t k = 0; k < r.levels.size(); ++k) {
        const Subspace& prev = k == 0 ? Subspace::full(n_) : r.levels[k - 1];
        require(prev.contains(r.levels[k]), "filtration is not decreasing");
      }
      std::size_t lead = 0;
      while (lead < r.levels.size() && r.levels[lead].dim() == n_) ++lead;
      r.levels.erase(r.levels.begin(), r.levels.begin() + lead);
      r.start += static_cast<long>(lead);
      while (!r.levels.empty() && r.levels.back().dim() == 0) r.levels.pop_back();
    }
  }

  std::size_t n_ = 0;
  std::vector<RayFiltration> rays_;
};

/// Rank one: full for l <= lambda_rho, zero above.
inline Filtration line_bundle_filtration(const ToricDivisor& d) {
  std::vector<RayFiltration> rays;
  for (const Rat& c : d.coefficients) {
    require(is_integer(c), "line bundle filtration needs an integral divisor");
    rays.push_back({to_ll(c) + 1, {}});
  }
  return Filtration(1, rays);
}

/// Full for l <= 0, the line through v_rho at l = 1, zero from l = 2.
inline Filtration tangent_filtration(const Fan& f) {
  std::vector<RayFiltration> rays;
  for (const Vec& v : f.rays()) rays.push_back({1, {Subspace::span(f.dim(), {v})}});
  return Filtration(f.dim(), rays);
}

inline Filtration direct_sum(const Filtration& a, const Filtration& b) {
  require(a.ray_count() == b.ray_count(), "direct_sum: ray count mismatch");
  std::size_t n = a.ambient_dim() + b.ambient_dim();
  std::vector<RayFiltration> rays;
  for (std::size_t i = 0; i < a.ray_count(); ++i) {
    long lo = std::min(a.ray(i).start, b.ray(i).start);
    long hi = std::max(a.ray(i).end(), b.ray(i).end());
    RayFiltration r{lo, {}};
    for (long l = lo; l < hi; ++l) {
      Matrix m;
      Subspace sa = a.at(i, l), sb = b.at(i, l);
      for (const Vec& v : sa.basis()) {
        Vec w = v;
        w.resize(n, Rat(0));
        m.push_back(w);
      }
      for (const Vec& v : sb.basis()) {
        Vec w = zeros(a.ambient_dim());
        w.insert(w.end(), v.begin(), v.end());
        m.push_back(w);
      }
      r.levels.push_back(Subspace::span(n, m));
    }
    rays.push_back(std::move(r));
  }
  return Filtration(n, rays);
}

inline long ceil_div(long a, long b) {
  long q = a / b;
  if (a % b != 0 && ((a < 0) == (b < 0))) ++q;
  return q;
}

/// Pullback along a finite cover: F^l_rho = E^{ceil(l / d_rho)}_rho.
inline Filtration stretch(const Filtration& f, const std::vector<long>& d) {
  require(d.size() == f.ray_count(), "stretch: one factor per ray expected");
  std::vector<RayFiltration> rays;
  for (std::size_t i = 0; i < f.ray_count(); ++i) {
    require(d[i] >= 1, "stretch: factors must be positive");
    const RayFiltration& r = f.ray(i);
    long lo = d[i] * (r.start - 1) + 1;
    long hi = d[i] * (r.end() - 1);
    RayFiltration s{lo, {}};
    for (long l = lo; l <= hi; ++l) s.levels.push_back(f.at(i, ceil_div(l, d[i])));
    rays.push_back(std::move(s));
  }
  return Filtration(f.ambient_dim(), rays);
}

/// Inverse of stretch: H^l_rho = F^{d_rho l}_rho, after checking that F is
/// constant on each block of levels d(k-1)+1 .. dk.
inline Filtration squish(const Filtration& f, const std::vector<long>& d) {
  require(d.size() == f.ray_count(), "squish: one factor per ray expected");
  std::vector<RayFiltration> rays;
  for (std::size_t i = 0; i < f.ray_count(); ++i) {
    require(d[i] >= 1, "squish: factors must be positive");
    const RayFiltration& r = f.ray(i);
    long klo = ceil_div(r.start, d[i]) - 1;
    long khi = ceil_div(r.end(), d[i]) + 1;
    for (long k = klo; k <= khi; ++k)
      for (long j = 1; j < d[i]; ++j)
        if (f.at(i, d[i] * k - j) != f.at(i, d[i] * k))
          throw ValidationError("not a d-stretching: ray " + std::to_string(i + 1) + " level " +
                                std::to_string(d[i] * k - j));
    RayFiltration s{klo, {}};
    for (long k = klo; k <= khi; ++k) s.levels.push_back(f.at(i, d[i] * k));
    rays.push_back(std::move(s));
  }
  return Filtration(f.ambient_dim(), rays);
}

/// The quotient (C^q ⊕ C^{n+1}) / {(phi k, -iota k)}: summands are q copies
/// of the plus line followed by the n+1 nabla lines.
struct PushoutSpace {
  std::size_t q = 0, n = 0;
  Echelon kernel;                    // RREF of the relations
  std::vector<std::size_t> free_cols;  // quotient basis: images of these coordinates

  PushoutSpace(const Matrix& phi, const Matrix& iota) {
    q = phi.size();
    n = iota.empty() ? 0 : iota[0].size();
    require(iota.size() == n + 1, "pushout: kernel basis must be (n+1) x n");
    for (const Vec& r : phi) require(r.size() == n, "pushout: phi must be q x n");
    std::size_t total = q + n + 1;
    Matrix rel;
    for (std::size_t k = 0; k < n; ++k) {
      Vec v(total);
      for (std::size_t i = 0; i < q; ++i) v[i] = phi[i][k];
      for (std::size_t i = 0; i <= n; ++i) v[q + i] = -iota[i][k];
      rel.push_back(std::move(v));
    }
    kernel = rref(rel, total);
    require(kernel.rows.size() == n, "pushout: relations are dependent");
    std::vector<bool> piv(total, false);
    for (std::size_t p : kernel.pivots) piv[p] = true;
    for (std::size_t c = 0; c < total; ++c)
      if (!piv[c]) free_cols.push_back(c);
  }

  std::size_t total() const { return q + n + 1; }
  std::size_t dim() const { return free_cols.size(); }

  /// Quotient coordinates of a vector of the direct sum.
  Vec reduce(Vec v) const {
    for (std::size_t i = 0; i < kernel.rows.size(); ++i) {
      Rat c = v[kernel.pivots[i]];
      if (c != 0) v = v - c * kernel.rows[i];
    }
    Vec out;
    for (std::size_t c : free_cols) out.push_back(v[c]);
    return out;
  }

  Subspace image(const std::vector<std::size_t>& coords) const {
    Matrix m;
    for (std::size_t c : coords) m.push_back(reduce(unit(total(), c)));
    return Subspace::span(dim(), m);
  }
  Subspace image_of_plus() const {
    Matrix m;
    for (std::size_t i = 0; i < q; ++i) m.push_back(reduce(unit(total(), i)));
    return Subspace::span(dim(), m);
  }
  Subspace image_of_nabla(std::size_t i) const { return image({q + i}); }
};

/// Kernel embedding C^n -> C^{n+1} with columns e_i - e_0.
inline Matrix kernel_embedding(std::size_t n) {
  Matrix iota(n + 1, zeros(n));
  for (std::size_t k = 0; k < n; ++k) {
    iota[0][k] = -1;
    iota[k + 1][k] = 1;
  }
  return iota;
}

/// Filtration of the pushout of O(core)^n -> ⊕ O(nabla_i) along
/// phi : O(core)^n -> O(plus)^q. Level l is the image of the direct-sum
/// filtration; dimensions are checked against the two outer terms.
inline Filtration pushout_filtration(const Filtration& core, const Filtration& plus,
                                     const std::vector<Filtration>& nablas, const Matrix& iota,
                                     const Matrix& phi) {
  PushoutSpace space(phi, iota);
  require(nablas.size() == space.n + 1, "pushout: need n+1 nabla filtrations");
  require(core.ambient_dim() == 1 && plus.ambient_dim() == 1, "pushout: core and plus must have rank one");
  for (const Filtration& f : nablas) require(f.ambient_dim() == 1, "pushout: nablas must have rank one");
  std::size_t rays_n = plus.ray_count();
  std::vector<RayFiltration> rays;
  for (std::size_t r = 0; r < rays_n; ++r) {
    long lo = std::min(core.ray(r).start, plus.ray(r).start);
    long hi = std::max(core.ray(r).end(), plus.ray(r).end());
    for (const Filtration& f : nablas) {
      lo = std::min(lo, f.ray(r).start);
      hi = std::max(hi, f.ray(r).end());
    }
    RayFiltration out{lo, {}};
    for (long l = lo; l <= hi; ++l) {
      std::vector<std::size_t> coords;
      long plus_dim = static_cast<long>(plus.at(r, l).dim());
      if (plus_dim)
        for (std::size_t i = 0; i < space.q; ++i) coords.push_back(i);
      long minus_dim = -static_cast<long>(space.n) * static_cast<long>(core.at(r, l).dim());
      for (std::size_t i = 0; i <= space.n; ++i)
        if (nablas[i].at(r, l).dim()) {
          coords.push_back(space.q + i);
          ++minus_dim;
        }
      Subspace s = space.image(coords);
      if (minus_dim < 0 || minus_dim > 1 ||
          static_cast<long>(s.dim()) != static_cast<long>(space.q) * plus_dim + minus_dim)
        throw ValidationError("pushout: dimension additivity fails at ray " + std::to_string(r + 1) +
                              " level " + std::to_string(l));
      out.levels.push_back(std::move(s));
    }
    rays.push_back(std::move(out));
  }
  return Filtration(space.dim(), rays);
}

inline Filtration pushout_filtration(const Filtration& core, const Filtration& plus,
                                     const std::vector<Filtration>& nablas, const Matrix& iota) {
  std::size_t n = iota.empty() ? 0 : iota[0].size();
  return pushout_filtration(core, plus, nablas, iota, identity(n));
}

struct SplitResult {
  bool split = false;
  // Members X of the intersection closure with dim X > dim X_<, where X_<
  // is the sum of the members strictly inside X.
  std::vector<Subspace> blocks;
};

/// A family of subspaces admits a common adapted basis iff
/// sum over the intersection closure T of (dim X - dim X_<) = dim E.
inline SplitResult split_test(std::size_t n, const std::vector<Subspace>& family) {
  std::set<Subspace> t(family.begin(), family.end());
  t.insert(Subspace::full(n));
  std::vector<Subspace> frontier(t.begin(), t.end());
  while (!frontier.empty()) {
    std::vector<Subspace> next;
    std::vector<Subspace> all(t.begin(), t.end());
    for (const Subspace& a : frontier)
      for (const Subspace& b : all) {
        Subspace x = a.intersect(b);
        if (t.insert(x).second) next.push_back(x);
      }
    frontier = std::move(next);
  }
  std::vector<Subspace> members(t.begin(), t.end());
  SplitResult res;
  std::size_t total = 0;
  for (const Subspace& x : members) {
    Subspace below = Subspace::zero(n);
    for (const Subspace& y : members)
      if (y.dim() < x.dim() && x.contains(y)) below = below + y;
    std::size_t gap = x.dim() - below.dim();
    if (gap > 0) res.blocks.push_back(x);
    total += gap;
  }
  res.split = total == n;
  return res;
}

/// Splits as a sum of line bundles: all subspaces of all rays are coordinate
/// subspaces for one basis.
inline bool is_split(const Filtration& f) {
  std::vector<std::size_t> all(f.ray_count());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return split_test(f.ambient_dim(), f.proper_subspaces(all)).split;
}

/// Compatibility on every maximal cone: the cone's subspaces split, and each
/// block has a character u in M with <u, v_rho> equal to its jump level.
inline bool check_compatibility(const Filtration& f, const Fan& fan) {
  require(f.ray_count() == fan.rays().size(), "compatibility: ray count mismatch");
  Lattice M = fan.lattice().dual();
  for (const RaySet& cone : fan.maximal_cones()) {
    SplitResult s = split_test(f.ambient_dim(), f.proper_subspaces(cone));
    if (!s.split) return false;
    for (const Subspace& x : s.blocks) {
      Matrix a;
      Vec b;
      for (std::size_t i : cone) {
        long level = f.ray(i).start - 1;
        for (long l = f.ray(i).start; l < f.ray(i).end(); ++l)
          if (f.at(i, l).contains(x)) level = l;
        a.push_back(fan.ray_generator(i));
        b.emplace_back(level);
      }
      auto u = solve(a, b, fan.dim());
      if (!u || !M.contains(*u)) return false;
    }
  }
  return true;
}

}  // namespace torext
