#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace torext {

/// Row-major dense matrix over Q.
using Matrix = std::vector<Vec>;

inline std::size_t cols(const Matrix& a, std::size_t fallback = 0) {
  return a.empty() ? fallback : a[0].size();
}

inline Matrix identity(std::size_t n) {
  Matrix m(n, zeros(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline Matrix transpose(const Matrix& a, std::size_t ncols = 0) {
  std::size_t c = cols(a, ncols);
  Matrix t(c, zeros(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < c; ++j) t[j][i] = a[i][j];
  return t;
}

inline Matrix matmul(const Matrix& a, const Matrix& b, std::size_t bcols = 0) {
  std::size_t c = cols(b, bcols);
  Matrix r(a.size(), zeros(c));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < c; ++j) r[i][j] += a[i][k] * b[k][j];
    }
  return r;
}

inline Vec matvec(const Matrix& a, const Vec& x) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = dot(a[i], x);
  return r;
}

struct Echelon {
  Matrix rows;                      // nonzero rows of the reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column per row
};

/// Reduced row echelon form; the result is a canonical basis of the row space.
inline Echelon rref(Matrix a, std::size_t ncols = 0) {
  std::size_t c = cols(a, ncols);
  Echelon e;
  std::size_t r = 0;
  for (std::size_t j = 0; j < c && r < a.size(); ++j) {
    std::size_t p = r;
    while (p < a.size() && a[p][j] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    Rat inv = 1 / a[r][j];
    for (std::size_t k = j; k < c; ++k) a[r][k] *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][j] == 0) continue;
      Rat f = a[i][j];
      for (std::size_t k = j; k < c; ++k) a[i][k] -= f * a[r][k];
    }
    e.pivots.push_back(j);
    ++r;
  }
  a.resize(r);
  e.rows = std::move(a);
  return e;
}

/// Rank by fraction-free (Bareiss) elimination on the integer-scaled rows.
inline std::size_t rank(const Matrix& a) {
  if (a.empty()) return 0;
  std::size_t c = a[0].size();
  std::vector<std::vector<BigInt>> m;
  m.reserve(a.size());
  for (const Vec& row : a) {
    BigInt l = 1;
    for (const Rat& x : row) l = lcm(l, den(x));
    std::vector<BigInt> ir(c);
    for (std::size_t j = 0; j < c; ++j) ir[j] = num(row[j] * Rat(l));
    m.push_back(std::move(ir));
  }
  BigInt prev = 1;
  std::size_t r = 0;
  for (std::size_t j = 0; j < c && r < m.size(); ++j) {
    std::size_t p = r;
    while (p < m.size() && m[p][j] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      for (std::size_t k = j + 1; k < c; ++k)
        m[i][k] = (m[r][j] * m[i][k] - m[i][j] * m[r][k]) / prev;
      m[i][j] = 0;
    }
    prev = m[r][j];
    ++r;
  }
  return r;
}

/// Basis of {x : a x = 0}, one vector per free column.
inline Matrix nullspace(const Matrix& a, std::size_t ncols) {
  Echelon e = rref(a, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (std::size_t p : e.pivots) is_pivot[p] = true;
  Matrix basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    Vec v = zeros(ncols);
    v[f] = 1;
    for (std::size_t i = 0; i < e.rows.size(); ++i) v[e.pivots[i]] = -e.rows[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Some solution of a x = b, if one exists.
inline std::optional<Vec> solve(const Matrix& a, const Vec& b, std::size_t ncols) {
  Matrix aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  Echelon e = rref(aug, ncols + 1);
  Vec x = zeros(ncols);
  for (std::size_t i = 0; i < e.rows.size(); ++i) {
    if (e.pivots[i] == ncols) return std::nullopt;
    x[e.pivots[i]] = e.rows[i][ncols];
  }
  return x;
}

inline std::optional<Matrix> inverse(const Matrix& a) {
  std::size_t n = a.size();
  Matrix aug = a;
  for (std::size_t i = 0; i < n; ++i) {
    aug[i].resize(2 * n, Rat(0));
    aug[i][n + i] = 1;
  }
  Echelon e = rref(aug, 2 * n);
  if (e.rows.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(n);
  for (std::size_t i = 0; i < n; ++i) inv[i] = Vec(e.rows[i].begin() + n, e.rows[i].end());
  return inv;
}

inline Rat determinant(Matrix a) {
  std::size_t n = a.size();
  Rat det = 1;
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t p = j;
    while (p < n && a[p][j] == 0) ++p;
    if (p == n) return 0;
    if (p != j) {
      std::swap(a[p], a[j]);
      det = -det;
    }
    det *= a[j][j];
    for (std::size_t i = j + 1; i < n; ++i) {
      if (a[i][j] == 0) continue;
      Rat f = a[i][j] / a[j][j];
      for (std::size_t k = j; k < n; ++k) a[i][k] -= f * a[j][k];
    }
  }
  return det;
}

/// Dimension of the affine hull of a nonempty point set.
inline std::size_t affine_rank(const std::vector<Vec>& pts) {
  if (pts.size() <= 1) return 0;
  Matrix d;
  for (std::size_t i = 1; i < pts.size(); ++i) d.push_back(pts[i] - pts[0]);
  return rank(d);
}

inline bool matrix_is_zero(const Matrix& a) {
  for (const Vec& r : a)
    if (!is_zero(r)) return false;
  return true;
}

}  // namespace torext
