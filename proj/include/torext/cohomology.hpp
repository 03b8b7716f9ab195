#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "components.hpp"
#include "divisor.hpp"

namespace torext {

/// Reduced cohomology dimensions of minus \ (plus - m).
struct ReducedDims {
  int h_minus1 = 0;  // 1 iff the difference is empty
  int h0 = 0;        // number of components minus one
};

struct Dims {
  long h0 = 0;
  long h1 = 0;
  bool operator==(const Dims& o) const { return h0 == o.h0 && h1 == o.h1; }
  bool operator!=(const Dims& o) const { return !(*this == o); }
};

inline ReducedDims reduced_dims(const Polyhedron& minus, const Polyhedron& plus, const Vec& m) {
  Polyhedron shifted = plus.translate(-m);
  ReducedDims r;
  if (shifted.contains(minus)) {
    r.h_minus1 = 1;
    return r;
  }
  std::size_t n = components(minus, shifted).count();
  r.h0 = n > 0 ? static_cast<int>(n) - 1 : 0;
  return r;
}

/// H^0, H^1 of O(plus - minus) in degree m via the difference formula.
inline Dims difference_dims(const Polyhedron& plus, const Polyhedron& minus, const Vec& m) {
  ReducedDims r = reduced_dims(minus, plus, m);
  return {r.h_minus1, r.h0};
}

/// dim of the degree-0 equivariant Ext space: components minus one.
inline long ext_dim_equivariant(const Polyhedron& minus, const Polyhedron& plus) {
  std::size_t n = components(minus, plus).count();
  return n > 0 ? static_cast<long>(n) - 1 : 0;
}

struct GradedTable {
  std::map<Vec, Dims> entries;  // every lattice degree of the window
  Polyhedron window;

  long total_h0() const {
    long s = 0;
    for (const auto& [m, d] : entries) s += d.h0;
    return s;
  }
  long total_h1() const {
    long s = 0;
    for (const auto& [m, d] : entries) s += d.h1;
    return s;
  }
  /// Degrees with a nonzero entry.
  std::map<Vec, Dims> nonzero() const {
    std::map<Vec, Dims> out;
    for (const auto& [m, d] : entries)
      if (d.h0 || d.h1) out.emplace(m, d);
    return out;
  }
  bool operator==(const GradedTable& o) const { return nonzero() == o.nonzero(); }
};

/// Degrees outside plus + (-minus) have (plus - m) disjoint from minus, so
/// both H^0 and H^1 vanish there.
inline Polyhedron cohomology_window(const Polyhedron& plus, const Polyhedron& minus) {
  return minkowski_sum(plus, minus.negate());
}

inline GradedTable graded_table(const Polyhedron& plus, const Polyhedron& minus, const Fan& f) {
  require(plus.is_bounded() && minus.is_bounded(),
          "graded table needs polytopes; query single degrees for unbounded input");
  require_compatible(plus, f);
  require_compatible(minus, f);
  GradedTable t;
  t.window = cohomology_window(plus, minus);
  for (const Vec& m : lattice_points(t.window, f.lattice().dual())) t.entries[m] = difference_dims(plus, minus, m);
  return t;
}

/// Cover of the toric variety by the charts of the maximal cones, with the
/// rays of every intersection of up to three charts.
struct CechCover {
  std::size_t charts = 0;
  std::vector<RaySet> single;
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, RaySet>> pairs;
  std::vector<std::pair<std::array<std::size_t, 3>, RaySet>> triples;

  explicit CechCover(const Fan& f) : charts(f.maximal_cones().size()), single(f.maximal_cones()) {
    auto meet = [](const RaySet& a, const RaySet& b) {
      RaySet x;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(x));
      return x;
    };
    for (std::size_t i = 0; i < charts; ++i)
      for (std::size_t j = i + 1; j < charts; ++j) {
        pairs.push_back({{i, j}, meet(single[i], single[j])});
        for (std::size_t k = j + 1; k < charts; ++k)
          triples.push_back({{i, j, k}, meet(meet(single[i], single[j]), single[k])});
      }
  }
};

/// Degree-m Cech cohomology of O(plus - minus) on the maximal-cone cover.
///
/// A chart U_tau carries a degree-m section iff <m + m^-_tau - m^+_tau, v> >= 0
/// for every ray v of tau, with Cartier data taken from any maximal cone
/// containing tau.
inline Dims cech_h_degree(const Fan& f, const CechCover& cover, const CartierData& cp,
                          const CartierData& cm, const Vec& m) {
  auto has = [&](std::size_t chart, const RaySet& rays) {
    Vec shift = m + cm.m[chart] - cp.m[chart];
    for (std::size_t r : rays)
      if (dot(shift, f.ray_generator(r)) < 0) return false;
    return true;
  };
  std::vector<long> c0(cover.charts, -1);
  long n0 = 0;
  for (std::size_t i = 0; i < cover.charts; ++i)
    if (has(i, cover.single[i])) c0[i] = n0++;
  std::map<std::pair<std::size_t, std::size_t>, long> c1;
  long n1 = 0;
  for (const auto& [ij, rays] : cover.pairs)
    if (has(ij.first, rays)) c1[ij] = n1++;
  Matrix d0(n1, zeros(n0));
  for (const auto& [ij, row] : c1) {
    if (c0[ij.second] >= 0) d0[row][c0[ij.second]] += 1;
    if (c0[ij.first] >= 0) d0[row][c0[ij.first]] -= 1;
  }
  Matrix d1;
  for (const auto& [ijk, rays] : cover.triples) {
    if (!has(ijk[0], rays)) continue;
    Vec row = zeros(n1);
    auto put = [&](std::size_t a, std::size_t b, int s) {
      auto it = c1.find({a, b});
      if (it != c1.end()) row[it->second] += s;
    };
    put(ijk[1], ijk[2], 1);
    put(ijk[0], ijk[2], -1);
    put(ijk[0], ijk[1], 1);
    d1.push_back(std::move(row));
  }
  if (n0 > 0 && !d1.empty()) ensure(matrix_is_zero(matmul(d1, d0)), "cech: d1 d0 != 0");
  long r0 = static_cast<long>(rank(d0));
  long r1 = static_cast<long>(rank(d1));
  return {n0 - r0, n1 - r1 - r0};
}

inline Dims cech_h_degree(const Polyhedron& plus, const Polyhedron& minus, const Fan& f, const Vec& m) {
  CechCover cover(f);
  return cech_h_degree(f, cover, cartier_data(plus, f), cartier_data(minus, f), m);
}

/// Full table recomputed with the Cech oracle over the same window.
inline GradedTable cech_table(const Polyhedron& plus, const Polyhedron& minus, const Fan& f) {
  require(plus.is_bounded() && minus.is_bounded(), "cech table needs polytopes");
  CechCover cover(f);
  CartierData cp = cartier_data(plus, f), cm = cartier_data(minus, f);
  GradedTable t;
  t.window = cohomology_window(plus, minus);
  for (const Vec& m : lattice_points(t.window, f.lattice().dual()))
    t.entries[m] = cech_h_degree(f, cover, cp, cm, m);
  return t;
}

}  // namespace torext
