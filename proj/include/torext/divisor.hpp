#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fan.hpp"

namespace torext {

/// D = sum_rho lambda_rho D_rho, coefficients in the fan's ray order.
struct ToricDivisor {
  std::vector<Rat> coefficients;

  ToricDivisor operator+(const ToricDivisor& o) const {
    require(coefficients.size() == o.coefficients.size(), "divisor: ray count mismatch");
    ToricDivisor d = *this;
    for (std::size_t i = 0; i < coefficients.size(); ++i) d.coefficients[i] += o.coefficients[i];
    return d;
  }
  ToricDivisor operator-(const ToricDivisor& o) const {
    require(coefficients.size() == o.coefficients.size(), "divisor: ray count mismatch");
    ToricDivisor d = *this;
    for (std::size_t i = 0; i < coefficients.size(); ++i) d.coefficients[i] -= o.coefficients[i];
    return d;
  }
  bool operator==(const ToricDivisor& o) const { return coefficients == o.coefficients; }
  bool operator!=(const ToricDivisor& o) const { return !(*this == o); }

  /// Coefficient at the ray through v (zero when absent).
  Rat at(const Fan& f, const Vec& v) const {
    std::size_t i = f.ray_index(v);
    require(i != Fan::npos, "divisor: no such ray " + to_string(v));
    return coefficients[i];
  }
};

/// Cartier data: one vertex m_sigma per maximal cone.
struct CartierData {
  std::vector<Vec> m;
};

inline void require_compatible(const Polyhedron& p, const Fan& f) {
  require(is_compatible(p, f), "polyhedron is not compatible with the fan");
}

/// lambda_rho = -min <p, v_rho> with v_rho primitive in the fan's lattice.
inline ToricDivisor divisor_of(const Polyhedron& p, const Fan& f) {
  require(!p.is_empty(), "divisor of the empty polyhedron");
  require_compatible(p, f);
  ToricDivisor d;
  for (std::size_t i = 0; i < f.rays().size(); ++i) {
    auto mn = p.min_pairing(f.ray_generator(i));
    ensure(mn.has_value(), "divisor: unbounded pairing on a compatible polyhedron");
    d.coefficients.push_back(-*mn);
  }
  return d;
}

inline CartierData cartier_data(const Polyhedron& p, const Fan& f) {
  require(!p.is_empty(), "cartier data of the empty polyhedron");
  require_compatible(p, f);
  CartierData c;
  for (std::size_t k = 0; k < f.maximal_cones().size(); ++k) {
    Vec sum = zeros(f.dim());
    for (std::size_t i : f.maximal_cones()[k]) sum = sum + f.rays()[i];
    const Vec* best = nullptr;
    for (const Vec& v : p.vertices())
      if (!best || dot(v, sum) < dot(*best, sum)) best = &v;
    for (std::size_t i : f.maximal_cones()[k])
      ensure(dot(*best, f.rays()[i]) == *p.min_pairing(f.rays()[i]),
             "cartier data: vertex does not minimize every ray of its cone");
    c.m.push_back(*best);
  }
  return c;
}

/// Ample iff the normal fan equals the fan.
inline bool is_ample(const Polyhedron& p, const Fan& f) {
  if (p.is_empty() || !p.is_full_dim() || !p.lineality().empty()) return false;
  return normal_fan(p, f.lattice()) == f;
}

/// Coordinates c with D = sum_k c_k B_k + div(chi^u) for some u, if any.
inline std::optional<Vec> picard_coordinates(const ToricDivisor& d,
                                             const std::vector<ToricDivisor>& basis,
                                             const Fan& f) {
  std::size_t k = basis.size(), n = f.dim();
  Matrix a;
  for (std::size_t i = 0; i < f.rays().size(); ++i) {
    Vec row;
    for (const ToricDivisor& b : basis) row.push_back(b.coefficients[i]);
    Vec g = f.ray_generator(i);
    row.insert(row.end(), g.begin(), g.end());
    a.push_back(std::move(row));
  }
  auto x = solve(a, d.coefficients, k + n);
  if (!x) return std::nullopt;
  x->resize(k);
  return x;
}

/// "D1+2D3"-style text with 1-based indices in the fan's ray order.
inline std::string to_string(const ToricDivisor& d) {
  std::string s;
  for (std::size_t i = 0; i < d.coefficients.size(); ++i) {
    const Rat& c = d.coefficients[i];
    if (c == 0) continue;
    if (!s.empty() && c > 0) s += "+";
    if (c == -1)
      s += "-";
    else if (c != 1)
      s += to_string(c);
    s += "D" + std::to_string(i + 1);
  }
  return s.empty() ? "0" : s;
}

}  // namespace torext
