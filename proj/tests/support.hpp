#pragma once

#include <random>
#include <string>
#include <vector>

#include "torext/torext.hpp"

namespace fixtures {

using namespace torext;

inline Polyhedron poly(std::initializer_list<std::initializer_list<long long>> pts) {
  std::vector<Vec> vs;
  for (auto p : pts) vs.push_back(ivec(p));
  return Polyhedron::hull(vs[0].size(), vs);
}

inline Vec rvec(std::initializer_list<Rat> xs) { return Vec(xs); }

/// Divisor given by coefficients listed against rays in a chosen order; the
/// fan stores rays sorted, so each ray is looked up by vector.
inline ToricDivisor divisor_in_order(const Fan& f, const std::vector<Vec>& order,
                                     std::initializer_list<long long> coeffs) {
  ToricDivisor d{zeros(f.rays().size())};
  std::size_t k = 0;
  for (long long c : coeffs) d.coefficients[f.ray_index(order[k++])] = c;
  return d;
}

// F1: rays (1,0), (0,1), (-1,-1), (0,-1).
inline Fan f1_fan() {
  return Fan::make({ivec({1, 0}), ivec({0, 1}), ivec({-1, -1}), ivec({0, -1})}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}
inline Polyhedron delta(long long a, long long b) {
  return Polyhedron::from_hrep(2, {{ivec({1, 0}), 0}, {ivec({0, 1}), 0}, {ivec({-1, -1}), a + b}, {ivec({0, -1}), b}});
}

// Cremona: H = A + B, minus = 2B + (1,-1), rays in figure order.
inline Polyhedron cremona_a() { return poly({{0, 0}, {1, 0}, {0, -1}}); }
inline Polyhedron cremona_b() { return poly({{0, 0}, {-1, 0}, {0, 1}}); }
inline Polyhedron cremona_h() { return minkowski_sum(cremona_a(), cremona_b()); }
inline Polyhedron cremona_minus() { return cremona_b().scale(2).translate(ivec({1, -1})); }
inline Fan cremona_fan() { return normal_fan(cremona_h()); }
inline std::vector<Vec> cremona_rays() {
  return {ivec({1, 0}), ivec({0, 1}), ivec({-1, 1}), ivec({-1, 0}), ivec({0, -1}), ivec({1, -1})};
}

// General position pair over a six-ray smooth fan.
inline Polyhedron gp_plus() { return poly({{0, 0}, {1, 0}}); }
inline Polyhedron gp_minus() { return poly({{0, -1}, {1, -1}, {0, 1}}); }
inline std::vector<Vec> gp_rays() {
  return {ivec({1, 0}), ivec({0, 1}), ivec({-1, 0}), ivec({-2, -1}), ivec({-1, -1}), ivec({0, -1})};
}
inline Fan gp_fan() { return Fan::make(gp_rays(), {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}}); }

// P^1 and the interval functor whose evaluation fails off the lattice.
inline Fan p1_fan() { return Fan::make({ivec({1}), ivec({-1})}, {{0}, {1}}); }
inline PolyFunctor p1_functor() {
  return PolyFunctor::make(2, {poly({{0}, {1}}), Polyhedron::point(ivec({0})), Polyhedron::point(ivec({1})),
                               Polyhedron::empty(1)},
                           p1_fan());
}

inline Fan p2_fan() { return Fan::make({ivec({1, 0}), ivec({0, 1}), ivec({-1, -1})}, {{0, 1}, {1, 2}, {0, 2}}); }

inline std::string sample(const std::string& name) { return std::string(TOREXT_SAMPLES) + "/" + name; }

}  // namespace fixtures

namespace gen {

using namespace torext;

inline long long uniform(std::mt19937& rng, long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

inline Vec int_vec(std::mt19937& rng, std::size_t n, long long lo, long long hi) {
  Vec v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(Rat(uniform(rng, lo, hi)));
  return v;
}

/// Full-dimensional polytope with vertices drawn from [lo, hi]^n.
inline Polyhedron polytope(std::mt19937& rng, std::size_t n, long long lo, long long hi, std::size_t points) {
  for (;;) {
    std::vector<Vec> pts;
    for (std::size_t i = 0; i < points; ++i) pts.push_back(int_vec(rng, n, lo, hi));
    Polyhedron p = Polyhedron::hull(n, pts);
    if (p.is_full_dim()) return p;
  }
}

/// Lattice polygon, possibly lower-dimensional.
inline Polyhedron polygon_any(std::mt19937& rng, long long lo, long long hi) {
  std::size_t k = static_cast<std::size_t>(uniform(rng, 1, 5));
  std::vector<Vec> pts;
  for (std::size_t i = 0; i < k; ++i) pts.push_back(int_vec(rng, 2, lo, hi));
  return Polyhedron::hull(2, pts);
}

inline Cone cone(std::mt19937& rng, std::size_t n) {
  std::size_t k = static_cast<std::size_t>(uniform(rng, 1, static_cast<long long>(n) + 2));
  std::vector<Vec> gens;
  for (std::size_t i = 0; i < k; ++i) {
    Vec v = int_vec(rng, n, -3, 3);
    if (!is_zero(v)) gens.push_back(v);
  }
  return Cone::from_generators(n, gens);
}

inline Subspace subspace(std::mt19937& rng, std::size_t n) {
  std::size_t k = static_cast<std::size_t>(uniform(rng, 0, static_cast<long long>(n)));
  Matrix m;
  for (std::size_t i = 0; i < k; ++i) m.push_back(int_vec(rng, n, -2, 2));
  return Subspace::span(n, m);
}

/// Decreasing filtration per ray built from a random flag.
inline Filtration filtration(std::mt19937& rng, std::size_t n, std::size_t rays) {
  std::vector<RayFiltration> rs;
  for (std::size_t i = 0; i < rays; ++i) {
    RayFiltration r;
    r.start = uniform(rng, -3, 3);
    Subspace cur = Subspace::full(n);
    std::size_t len = static_cast<std::size_t>(uniform(rng, 0, 4));
    for (std::size_t l = 0; l < len; ++l) {
      cur = cur.intersect(subspace(rng, n) + subspace(rng, n));
      r.levels.push_back(cur);
    }
    r.levels.push_back(Subspace::zero(n));
    rs.push_back(std::move(r));
  }
  return Filtration(n, rs);
}

/// Common refinement by a random polygon's normal fan, which is compatible
/// with anything the original fan carries.
inline Fan random_refinement(std::mt19937& rng, const Fan& f) {
  Polyhedron p = polytope(rng, 2, -3, 3, 5);
  return common_refinement(f, normal_fan(p));
}

}  // namespace gen
