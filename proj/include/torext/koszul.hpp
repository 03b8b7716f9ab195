#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "arrangement.hpp"
#include "fan.hpp"

namespace torext {

using Mask = std::uint32_t;

inline std::vector<std::size_t> mask_indices(Mask m) {
  std::vector<std::size_t> v;
  for (std::size_t i = 0; m; ++i, m >>= 1)
    if (m & 1) v.push_back(i);
  return v;
}

/// Contravariant functor 2^I -> polyhedra, values indexed by bitmask.
struct PolyFunctor {
  std::size_t size = 0;             // |I|
  std::vector<Polyhedron> values;   // 2^size entries; values[0] is F(∅)
  Fan fan;

  const Polyhedron& at(Mask m) const { return values[m]; }

  static PolyFunctor make(std::size_t size, std::vector<Polyhedron> values, const Fan& fan) {
    require(size < 20, "functor: index set too large");
    require(values.size() == (std::size_t{1} << size), "functor: need one value per subset");
    for (Mask a = 0; a < values.size(); ++a)
      for (std::size_t i = 0; i < size; ++i) {
        Mask b = a | (Mask{1} << i);
        require(values[a].contains(values[b]),
                "functor is not monotone at subset " + std::to_string(b));
      }
    return {size, std::move(values), fan};
  }
};

/// Checks a Sigma-family and materializes F(I') for every subset: F(∅) is
/// the union, F(I') the intersection over I'.
inline PolyFunctor validate_sigma_family(const std::vector<Polyhedron>& polys, const Fan& f) {
  require(!polys.empty(), "empty family");
  std::size_t k = polys.size();
  std::size_t n = f.dim();
  std::vector<Polyhedron> values(std::size_t{1} << k);
  std::vector<Vec> pts, rays;
  for (const Polyhedron& p : polys) {
    require(!p.is_empty(), "family member is empty");
    pts.insert(pts.end(), p.vertices().begin(), p.vertices().end());
    rays.insert(rays.end(), p.rays().begin(), p.rays().end());
  }
  values[0] = Polyhedron::hull(n, pts, rays);
  for (Mask m = 1; m < values.size(); ++m) {
    std::size_t low = std::countr_zero(m);
    Mask rest = m & (m - 1);
    values[m] = rest == 0 ? polys[low] : intersect(values[rest], polys[low]);
  }

  // Convexity of the union by inclusion-exclusion of volumes.
  if (k > 1) {
    const Polyhedron& u = values[0];
    if (u.is_bounded()) {
      require(u.is_full_dim(), "union not compatible: family must be full-dimensional");
      Rat incl = 0;
      for (Mask m = 1; m < values.size(); ++m) {
        if (values[m].is_empty()) continue;
        Rat v = volume(values[m]);
        incl += (std::popcount(m) % 2 == 1) ? v : Rat(-v);
      }
      require(incl == volume(u), "union not compatible: union of the family is not convex");
    } else {
      // Unbounded members share a tail cone; compare volumes after a common cut.
      Vec un = zeros(n);
      Cone dual_tail = u.tail_cone().dual();
      for (const Vec& g : dual_tail.rays()) un = un + g;
      Rat top = 0;
      for (const Vec& v : u.vertices()) top = std::max(top, dot(v, un));
      Halfspace h{-un, top + 1};
      auto cut = [&](const Polyhedron& p) {
        std::vector<Halfspace> hs = p.hrep();
        hs.push_back(h);
        return Polyhedron::from_hrep(n, hs);
      };
      Rat incl = 0;
      for (Mask m = 1; m < values.size(); ++m) {
        if (values[m].is_empty()) continue;
        Rat v = volume(cut(values[m]));
        incl += (std::popcount(m) % 2 == 1) ? v : Rat(-v);
      }
      require(incl == volume(cut(u)), "union not compatible: union of the family is not convex");
    }
  }
  require(is_compatible(values[0], f), "union not compatible with the fan");
  for (Mask m = 1; m < values.size(); ++m)
    require(is_compatible(values[m], f),
            "intersection not compatible with fan: subset " + std::to_string(m));
  return PolyFunctor::make(k, std::move(values), f);
}

/// Koszul subcomplex spanned by e_{I'} with F(I') nonempty.
struct KoszulComplex {
  std::vector<std::vector<Mask>> labels;  // labels[p]: subsets of size p
  std::vector<Matrix> d;                  // d[p]: C_p -> C_{p-1}, dim C_{p-1} rows; d[0] empty

  std::size_t top() const { return labels.size() - 1; }
  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> v;
    for (const auto& l : labels) v.push_back(l.size());
    return v;
  }
};

namespace detail {

inline bool label_less(Mask a, Mask b) { return mask_indices(a) < mask_indices(b); }

inline KoszulComplex koszul_on(std::size_t size, const std::vector<bool>& keep) {
  KoszulComplex k;
  k.labels.resize(size + 1);
  for (Mask m = 0; m < keep.size(); ++m)
    if (keep[m]) k.labels[std::popcount(m)].push_back(m);
  for (auto& l : k.labels) std::sort(l.begin(), l.end(), label_less);
  k.d.resize(size + 1);
  for (std::size_t p = 1; p <= size; ++p) {
    const auto& src = k.labels[p];
    const auto& dst = k.labels[p - 1];
    Matrix mat(dst.size(), zeros(src.size()));
    for (std::size_t c = 0; c < src.size(); ++c) {
      auto idx = mask_indices(src[c]);
      for (std::size_t j = 0; j < idx.size(); ++j) {
        Mask face = src[c] & ~(Mask{1} << idx[j]);
        auto it = std::find(dst.begin(), dst.end(), face);
        ensure(it != dst.end(), "koszul: boundary leaves the subcomplex");
        mat[it - dst.begin()][c] += (j % 2 == 0) ? 1 : -1;
      }
    }
    k.d[p] = std::move(mat);
  }
  return k;
}

}  // namespace detail

/// d(e_{I'}) = sum_j (-1)^j e_{I' \ i_j}, with i_0 < i_1 < ... the elements of I'.
inline KoszulComplex koszul_complex(const PolyFunctor& F) {
  std::vector<bool> keep(F.values.size());
  for (Mask m = 0; m < keep.size(); ++m) keep[m] = !F.values[m].is_empty();
  return detail::koszul_on(F.size, keep);
}

/// Subcomplex of labels whose value contains m.
inline KoszulComplex evaluation_subcomplex(const KoszulComplex& K, const PolyFunctor& F, const Vec& m) {
  std::vector<bool> keep(F.values.size(), false);
  for (const auto& level : K.labels)
    for (Mask l : level) keep[l] = F.values[l].contains(m);
  return detail::koszul_on(F.size, keep);
}

inline bool d_squared_zero(const KoszulComplex& K) {
  for (std::size_t p = 2; p < K.d.size(); ++p) {
    if (K.labels[p].empty() || K.labels[p - 2].empty()) continue;
    if (!matrix_is_zero(matmul(K.d[p - 1], K.d[p], K.labels[p].size()))) return false;
  }
  return true;
}

/// rank d_{p+1} + rank d_p = dim C_p in every degree, ends included.
inline bool is_exact(const KoszulComplex& K) {
  ensure(d_squared_zero(K), "koszul: d o d != 0");
  std::vector<std::size_t> r(K.labels.size() + 1, 0);
  for (std::size_t p = 1; p < K.labels.size(); ++p) r[p] = rank(K.d[p]);
  for (std::size_t p = 0; p < K.labels.size(); ++p)
    if (r[p + 1] + r[p] != K.labels[p].size()) return false;
  return true;
}

/// F^sigma: every value plus sigma^dual. The zero cone localizes to F itself
/// (evaluation on the whole variety).
inline PolyFunctor localize(const PolyFunctor& F, const RaySet& sigma) {
  auto all = F.fan.all_cones();
  require(std::find(all.begin(), all.end(), sigma) != all.end(), "cone not in fan");
  if (sigma.empty()) return F;
  Cone dual = F.fan.cone_of(sigma).dual();
  PolyFunctor G = F;
  for (Polyhedron& v : G.values) v = minkowski_sum(v, dual);
  return G;
}

inline PolyFunctor localize(const PolyFunctor& F, const Cone& sigma) {
  RaySet s;
  for (const Vec& r : sigma.rays()) {
    std::size_t i = F.fan.ray_index(r);
    require(i != Fan::npos, "cone not in fan");
    s.push_back(i);
  }
  require(sigma.is_pointed(), "cone not in fan");
  std::sort(s.begin(), s.end());
  return localize(F, s);
}

struct ExactnessWitness {
  RaySet cone;
  Vec point;
  bool lattice = false;  // true for a lattice point, false for a cell sample

  bool operator<(const ExactnessWitness& o) const {
    return std::tie(cone, point, lattice) < std::tie(o.cone, o.point, o.lattice);
  }
};

struct ExactnessReport {
  bool lattice_exact = true;
  bool cells_exact = true;
  std::size_t lattice_checks = 0;
  std::size_t cell_checks = 0;
  std::vector<ExactnessWitness> witnesses;  // sorted

  bool exact() const { return lattice_exact && cells_exact; }
};

/// Half-width of a box meeting every cell of the arrangement and holding
/// every vertex: 1 + the largest coordinate over those vertices and the
/// least-norm points of all flats.
inline BigInt sampling_radius(const std::vector<Hyperplane>& hs, const std::vector<Vec>& extra, std::size_t n) {
  Rat best = 0;
  auto take = [&](const Vec& v) {
    for (const Rat& x : v) best = std::max(best, x < 0 ? Rat(-x) : x);
  };
  for (const Vec& v : extra) take(v);
  std::vector<std::size_t> pick;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (!pick.empty()) {
      Matrix a;
      Vec b;
      for (std::size_t i : pick) {
        a.push_back(hs[i].normal);
        b.push_back(-hs[i].offset);
      }
      if (rank(a) != a.size()) return;
      Matrix aat = matmul(a, transpose(a, n));
      auto inv = inverse(aat);
      ensure(inv.has_value(), "sampling radius: singular Gram matrix");
      Vec y = matvec(*inv, b);
      Vec x = zeros(n);
      for (std::size_t i = 0; i < a.size(); ++i) x = x + y[i] * a[i];
      take(x);
    }
    if (pick.size() == n) return;
    for (std::size_t i = start; i < hs.size(); ++i) {
      pick.push_back(i);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  return ceil_rat(best) + 1;
}

inline Polyhedron box(std::size_t n, const BigInt& r) {
  std::vector<Halfspace> hs;
  for (std::size_t i = 0; i < n; ++i) {
    hs.push_back({unit(n, i), Rat(r)});
    hs.push_back({-unit(n, i), Rat(r)});
  }
  return Polyhedron::from_hrep(n, hs);
}

/// Exactness of every evaluation subcomplex of every localization, over
/// lattice points and over one sample per arrangement cell.
inline ExactnessReport verify_exactness_everywhere(const PolyFunctor& F) {
  ExactnessReport rep;
  std::size_t n = F.fan.dim();
  Lattice M = F.fan.lattice().dual();
  std::set<ExactnessWitness> wit;
  for (const RaySet& sigma : F.fan.all_cones()) {
    PolyFunctor G = localize(F, sigma);
    KoszulComplex K = koszul_complex(G);
    ensure(d_squared_zero(K), "koszul: d o d != 0");
    std::vector<Hyperplane> hs = supporting_hyperplanes(G.values);
    std::vector<Vec> verts;
    for (const Polyhedron& v : G.values)
      if (!v.is_empty()) verts.insert(verts.end(), v.vertices().begin(), v.vertices().end());
    Polyhedron region = box(n, sampling_radius(hs, verts, n));
    CellComplex cx = subdivide(region, hs);
    for (const Cell& c : cx.cells) {
      ++rep.cell_checks;
      if (!is_exact(evaluation_subcomplex(K, G, c.sample))) {
        rep.cells_exact = false;
        wit.insert({sigma, c.sample, false});
      }
    }
    for (const Vec& m : lattice_points(region, M)) {
      ++rep.lattice_checks;
      if (!is_exact(evaluation_subcomplex(K, G, m))) {
        rep.lattice_exact = false;
        wit.insert({sigma, m, true});
      }
    }
  }
  rep.witnesses.assign(wit.begin(), wit.end());
  return rep;
}

/// Exactness at every lattice point of the sampling box of the functor
/// itself (no localization).
inline bool lattice_exact_globally(const PolyFunctor& F) {
  std::size_t n = F.fan.dim();
  KoszulComplex K = koszul_complex(F);
  std::vector<Vec> verts;
  for (const Polyhedron& v : F.values)
    if (!v.is_empty()) verts.insert(verts.end(), v.vertices().begin(), v.vertices().end());
  Polyhedron region = box(n, sampling_radius(supporting_hyperplanes(F.values), verts, n));
  for (const Vec& m : lattice_points(region, F.fan.lattice().dual()))
    if (!is_exact(evaluation_subcomplex(K, F, m))) return false;
  return true;
}

}  // namespace torext
