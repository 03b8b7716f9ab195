#pragma once

#include <numeric>
#include <vector>

#include "torext/torext.hpp"

namespace oracle {

using namespace torext;

namespace detail {

// Integer form a*X + b*Y + c >= 0 of a halfspace, in coordinates scaled by step.
struct IntHalfspace {
  long long a, b, c;
};

inline std::vector<IntHalfspace> scaled_hrep(const Polyhedron& p, long step) {
  std::vector<IntHalfspace> out;
  for (const Halfspace& h : p.hrep()) {
    BigInt l = lcm(lcm(den(h.normal[0]), den(h.normal[1])), den(h.offset));
    out.push_back({to_ll(h.normal[0] * Rat(l)), to_ll(h.normal[1] * Rat(l)), to_ll(h.offset * Rat(l) * step)});
  }
  return out;
}

inline bool inside(const std::vector<IntHalfspace>& hs, long long x, long long y) {
  for (const IntHalfspace& h : hs)
    if (h.a * x + h.b * y + h.c < 0) return false;
  return true;
}

}  // namespace detail

/// Segment [a,b] misses the polygon with scaled integer vertices vs and
/// halfspaces hs: a halfspace of p or the line through the segment
/// separates them.
inline bool segment_misses(long long ax, long long ay, long long bx, long long by,
                           const std::vector<detail::IntHalfspace>& hs,
                           const std::vector<std::pair<long long, long long>>& vs) {
  if (vs.empty()) return true;
  for (const detail::IntHalfspace& h : hs)
    if (h.a * ax + h.b * ay + h.c < 0 && h.a * bx + h.b * by + h.c < 0) return true;
  long long wx = by - ay, wy = ax - bx, c = wx * ax + wy * ay;
  bool below = true, above = true;
  for (auto [x, y] : vs) {
    long long s = wx * x + wy * y - c;
    below = below && s < 0;
    above = above && s > 0;
  }
  return below || above;
}

/// Connected components of minus \ plus for bounded 2D inputs, counted by
/// flood fill over the grid (1/step) Z^2. Two grid points of the difference
/// are joined when they lie within `radius` grid steps and the segment
/// between them avoids plus; that segment then lies in the difference.
inline std::size_t flood_fill_components(const Polyhedron& minus, const Polyhedron& plus, long step = 8,
                                         long radius = 4) {
  if (minus.is_empty()) return 0;
  Rat lo_x = minus.vertices()[0][0], hi_x = lo_x, lo_y = minus.vertices()[0][1], hi_y = lo_y;
  for (const Vec& v : minus.vertices()) {
    lo_x = std::min(lo_x, v[0]), hi_x = std::max(hi_x, v[0]);
    lo_y = std::min(lo_y, v[1]), hi_y = std::max(hi_y, v[1]);
  }
  long x0 = to_ll(floor_rat(lo_x * step)), x1 = to_ll(ceil_rat(hi_x * step));
  long y0 = to_ll(floor_rat(lo_y * step)), y1 = to_ll(ceil_rat(hi_y * step));
  long w = x1 - x0 + 1, h = y1 - y0 + 1;
  std::vector<detail::IntHalfspace> mh = detail::scaled_hrep(minus, step), ph;
  std::vector<std::pair<long long, long long>> pv;
  if (!plus.is_empty()) {
    ph = detail::scaled_hrep(plus, step);
    for (const Vec& v : plus.vertices()) {
      Rat x = v[0] * step, y = v[1] * step;
      ensure(is_integer(x) && is_integer(y), "flood fill: plus vertices must lie on the grid");
      pv.push_back({to_ll(x), to_ll(y)});
    }
  }
  std::vector<int> id(static_cast<std::size_t>(w * h), -1);
  std::vector<std::pair<long long, long long>> pts;
  for (long i = 0; i < w; ++i)
    for (long j = 0; j < h; ++j) {
      long long x = x0 + i, y = y0 + j;
      if (detail::inside(mh, x, y) && (pv.empty() || !detail::inside(ph, x, y))) {
        id[i * h + j] = static_cast<int>(pts.size());
        pts.push_back({x, y});
      }
    }
  std::vector<std::size_t> parent(pts.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (long i = 0; i < w; ++i)
    for (long j = 0; j < h; ++j) {
      int a = id[i * h + j];
      if (a < 0) continue;
      for (long di = 0; di <= radius; ++di)
        for (long dj = -radius; dj <= radius; ++dj) {
          if (di == 0 && dj <= 0) continue;
          long ni = i + di, nj = j + dj;
          if (ni >= w || nj < 0 || nj >= h) continue;
          int b = id[ni * h + nj];
          if (b < 0 || find(a) == find(b)) continue;
          if (!segment_misses(pts[a].first, pts[a].second, pts[b].first, pts[b].second, ph, pv)) continue;
          parent[find(a)] = find(b);
        }
    }
  std::size_t count = 0;
  for (std::size_t a = 0; a < pts.size(); ++a) count += find(a) == a;
  return count;
}

/// H^1 of O(plus - minus) in degree m from the flood-fill count.
inline long flood_fill_h1(const Polyhedron& plus, const Polyhedron& minus, const Vec& m) {
  std::size_t k = flood_fill_components(minus, plus.translate(-m));
  return k > 0 ? static_cast<long>(k) - 1 : 0;
}

}  // namespace oracle
