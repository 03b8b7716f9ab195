#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "polyhedron.hpp"

namespace torext {

namespace detail {

/// Row-style Hermite normal form of an integer matrix whose rows span a
/// full-rank lattice: upper triangular, positive pivots, entries above each
/// pivot reduced into [0, pivot).
inline std::vector<std::vector<BigInt>> hermite(std::vector<std::vector<BigInt>> a, std::size_t n) {
  std::size_t r = 0;
  for (std::size_t j = 0; j < n && r < a.size(); ++j) {
    for (;;) {
      std::size_t best = a.size();
      for (std::size_t i = r; i < a.size(); ++i)
        if (a[i][j] != 0 && (best == a.size() || abs(a[i][j]) < abs(a[best][j]))) best = i;
      if (best == a.size()) break;
      std::swap(a[r], a[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < a.size(); ++i) {
        if (a[i][j] == 0) continue;
        BigInt q = a[i][j] / a[r][j];
        for (std::size_t k = j; k < n; ++k) a[i][k] -= q * a[r][k];
        if (a[i][j] != 0) done = false;
      }
      if (done) break;
    }
    if (r == a.size() || a[r][j] == 0) continue;
    if (a[r][j] < 0)
      for (std::size_t k = j; k < n; ++k) a[r][k] = -a[r][k];
    for (std::size_t i = 0; i < r; ++i) {
      BigInt q = a[i][j] / a[r][j];
      if (a[i][j] - q * a[r][j] < 0) q -= 1;
      if (q != 0)
        for (std::size_t k = j; k < n; ++k) a[i][k] -= q * a[r][k];
    }
    ++r;
  }
  a.resize(r);
  return a;
}

}  // namespace detail

/// Full-rank lattice in Q^r, stored by a canonical (Hermite) basis.
class Lattice {
 public:
  Lattice() = default;

  static Lattice standard(std::size_t r) { return from_generators(r, identity(r)); }

  /// Lattice generated by the given vectors; they must span Q^r.
  static Lattice from_generators(std::size_t r, const std::vector<Vec>& gens) {
    require(r > 0, "lattice rank must be positive");
    BigInt l = 1;
    for (const Vec& g : gens) {
      require(g.size() == r, "lattice generator has wrong length");
      for (const Rat& x : g) l = lcm(l, den(x));
    }
    std::vector<std::vector<BigInt>> ints;
    for (const Vec& g : gens) {
      std::vector<BigInt> row(r);
      for (std::size_t i = 0; i < r; ++i) row[i] = num(g[i] * Rat(l));
      ints.push_back(std::move(row));
    }
    auto h = detail::hermite(std::move(ints), r);
    require(h.size() == r, "lattice generators do not span the ambient space");
    Lattice L;
    L.r_ = r;
    for (const auto& row : h) {
      Vec v(r);
      for (std::size_t i = 0; i < r; ++i) v[i] = Rat(row[i], l);
      L.basis_.push_back(std::move(v));
    }
    auto inv = inverse(L.basis_);
    ensure(inv.has_value(), "lattice basis not invertible");
    L.inv_ = *inv;
    return L;
  }

  std::size_t rank() const { return r_; }
  /// Basis vectors (rows).
  const Matrix& basis() const { return basis_; }

  /// Coordinates c with sum c_i b_i = v.
  Vec coordinates(const Vec& v) const {
    Vec c = zeros(r_);
    for (std::size_t j = 0; j < r_; ++j)
      for (std::size_t i = 0; i < r_; ++i) c[j] += v[i] * inv_[i][j];
    return c;
  }

  Vec from_coordinates(const Vec& c) const {
    Vec v = zeros(r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < r_; ++j) v[j] += c[i] * basis_[i][j];
    return v;
  }

  bool contains(const Vec& v) const { return is_integral(coordinates(v)); }

  bool contains(const Lattice& sub) const {
    for (const Vec& b : sub.basis_)
      if (!contains(b)) return false;
    return true;
  }

  /// Covolume: |det| of the basis.
  Rat covolume() const {
    Rat d = determinant(basis_);
    return d < 0 ? Rat(-d) : d;
  }

  /// Dual lattice {u : <u, v> in Z for all v in this lattice}.
  Lattice dual() const {
    std::vector<Vec> gens(r_, zeros(r_));
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < r_; ++j) gens[j][i] = inv_[i][j];
    return from_generators(r_, gens);
  }

  bool is_standard() const { return basis_ == identity(r_); }

  /// Smallest positive t with t * v in the lattice (v nonzero rational).
  Rat primitive_multiple(const Vec& v) const {
    Vec p = primitive(v);
    Rat scale = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) {
        scale = p[i] / v[i];
        break;
      }
    Vec c = coordinates(p);
    BigInt l = 1;
    BigInt g = 0;
    for (const Rat& x : c) l = lcm(l, den(x));
    for (const Rat& x : c) g = gcd(g, num(x * Rat(l)));
    return scale * Rat(l) / Rat(g);
  }

  bool operator==(const Lattice& o) const { return r_ == o.r_ && basis_ == o.basis_; }
  bool operator!=(const Lattice& o) const { return !(*this == o); }

 private:
  std::size_t r_ = 0;
  Matrix basis_;
  Matrix inv_;
};

/// Smallest lattice containing L and the extra points.
inline Lattice lattice_join(const Lattice& L, const std::vector<Vec>& extra) {
  std::vector<Vec> gens = L.basis();
  gens.insert(gens.end(), extra.begin(), extra.end());
  Lattice J = Lattice::from_generators(L.rank(), gens);
  ensure(J.contains(L), "lattice join lost generators");
  return J;
}

/// Order of the class of v in ambient / sub.
inline BigInt order_in_quotient(const Vec& v, const Lattice& sub, const Lattice& ambient) {
  require(ambient.contains(sub), "order_in_quotient: sub is not contained in ambient");
  require(ambient.contains(v), "order_in_quotient: vector not in ambient lattice");
  BigInt l = 1;
  for (const Rat& x : sub.coordinates(v)) l = lcm(l, den(x));
  return l;
}

/// Index [ambient : sub].
inline BigInt lattice_index(const Lattice& sub, const Lattice& ambient) {
  require(ambient.contains(sub), "lattice_index: sub is not contained in ambient");
  Rat q = sub.covolume() / ambient.covolume();
  ensure(is_integer(q), "lattice index not integral");
  return num(q);
}

inline bool is_lattice_polyhedron(const Polyhedron& p, const Lattice& L) {
  for (const Vec& v : p.vertices())
    if (!L.contains(v)) return false;
  return true;
}

/// All points of L in the bounded polyhedron p, sorted lexicographically.
inline std::vector<Vec> lattice_points(const Polyhedron& p, const Lattice& L) {
  if (p.is_empty()) return {};
  require(p.is_bounded(), "unbounded enumeration");
  std::size_t r = L.rank();
  std::vector<BigInt> lo(r), hi(r);
  bool first = true;
  for (const Vec& v : p.vertices()) {
    Vec c = L.coordinates(v);
    for (std::size_t i = 0; i < r; ++i) {
      BigInt f = ceil_rat(c[i]), g = floor_rat(c[i]);
      if (first || f < lo[i]) lo[i] = f;
      if (first || g > hi[i]) hi[i] = g;
    }
    first = false;
  }
  for (std::size_t i = 0; i < r; ++i)
    if (lo[i] > hi[i]) return {};
  std::vector<Vec> out;
  std::vector<BigInt> cur = lo;
  for (;;) {
    Vec c(r);
    for (std::size_t i = 0; i < r; ++i) c[i] = Rat(cur[i]);
    Vec x = L.from_coordinates(c);
    if (p.contains(x)) out.push_back(std::move(x));
    std::size_t i = 0;
    while (i < r && cur[i] == hi[i]) {
      cur[i] = lo[i];
      ++i;
    }
    if (i == r) break;
    cur[i] += 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Vec> lattice_points(const Polyhedron& p) {
  return lattice_points(p, Lattice::standard(p.ambient_dim()));
}

}  // namespace torext
