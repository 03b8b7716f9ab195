#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "linalg.hpp"

namespace torext {

struct ConeGenerators {
  std::vector<Vec> rays;  // primitive integer extreme rays, sorted
  Matrix lineality;       // primitive rows of the RREF basis
};

/// Canonical primitive-integer basis of a linear subspace given by spanning rows.
inline Matrix canonical_basis(const Matrix& span, std::size_t n) {
  Matrix b = rref(span, n).rows;
  for (Vec& r : b) r = primitive(r);
  return b;
}

/// Generators of the cone {x in Q^n : a x >= 0 for every row a of ineqs}.
///
/// Double description: the lineality space is split off by adding the
/// equalities l x = 0, the remaining pointed cone starts from an invertible
/// subsystem and absorbs one inequality at a time. Two rays are combined only
/// if the rows tight at both have rank n - 2.
inline ConeGenerators double_description(const Matrix& ineqs, std::size_t n) {
  ConeGenerators out;
  if (n == 0) return out;
  Matrix lin = nullspace(ineqs, n);
  out.lineality = canonical_basis(lin, n);

  Matrix rows;
  for (const Vec& a : ineqs)
    if (!is_zero(a)) rows.push_back(a);
  for (const Vec& l : out.lineality) {
    rows.push_back(l);
    rows.push_back(-l);
  }

  std::vector<std::size_t> basis_rows, rest;
  Matrix chosen;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (chosen.size() < n) {
      chosen.push_back(rows[i]);
      if (rank(chosen) == chosen.size()) {
        basis_rows.push_back(i);
        continue;
      }
      chosen.pop_back();
    }
    rest.push_back(i);
  }
  ensure(chosen.size() == n, "double description: system not of full rank");

  auto inv = inverse(chosen);
  ensure(inv.has_value(), "double description: singular start system");
  std::vector<Vec> rays;
  for (std::size_t j = 0; j < n; ++j) {
    Vec c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = (*inv)[i][j];
    rays.push_back(primitive(c));
  }

  std::vector<std::size_t> processed = basis_rows;
  for (std::size_t idx : rest) {
    const Vec& a = rows[idx];
    std::vector<Vec> pos, neg, next;
    std::vector<Rat> pv, nv;
    for (const Vec& r : rays) {
      Rat s = dot(a, r);
      if (s > 0) {
        pos.push_back(r);
        pv.push_back(s);
        next.push_back(r);
      } else if (s < 0) {
        neg.push_back(r);
        nv.push_back(s);
      } else {
        next.push_back(r);
      }
    }
    if (neg.empty()) {
      processed.push_back(idx);
      continue;
    }
    for (std::size_t i = 0; i < pos.size(); ++i) {
      for (std::size_t j = 0; j < neg.size(); ++j) {
        Matrix tight;
        for (std::size_t k : processed)
          if (dot(rows[k], pos[i]) == 0 && dot(rows[k], neg[j]) == 0) tight.push_back(rows[k]);
        if (n >= 2 && (tight.size() < n - 2 || rank(tight) != n - 2)) continue;
        next.push_back(primitive(pv[i] * neg[j] - nv[j] * pos[i]));
      }
    }
    rays = std::move(next);
    processed.push_back(idx);
  }
  std::sort(rays.begin(), rays.end());
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
  out.rays = std::move(rays);
  return out;
}

}  // namespace torext
