#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "uf/geometry.hpp"
#include "uf/region.hpp"

namespace testutil {

using uf::Vec2;

inline Vec2 random_point(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return Vec2(d(rng), d(rng));
}

inline uf::ConvexPolygon random_convex_polygon(std::mt19937_64& rng, const Vec2& center,
                                               double radius) {
  std::uniform_int_distribution<int> nd(3, 8);
  std::uniform_real_distribution<double> rd(0.35 * radius, radius);
  std::uniform_real_distribution<double> ad(0.0, 2.0 * 3.14159265358979323846);
  const int n = nd(rng);
  std::vector<Vec2> pts;
  for (int i = 0; i < n + 4; ++i) {
    const double a = ad(rng);
    const double r = rd(rng);
    pts.push_back(center + r * Vec2(std::cos(a), std::sin(a)));
  }
  return uf::convex_hull(pts);
}

// Random compact region: 3..6 convex polygons and discs, possibly overlapping.
inline uf::Region random_region(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nd(3, 6);
  std::uniform_real_distribution<double> cd(-2.5, 2.5);
  std::uniform_real_distribution<double> rd(0.4, 1.4);
  std::bernoulli_distribution coin(0.5);
  const int n = nd(rng);
  std::vector<uf::Primitive> prims;
  for (int i = 0; i < n; ++i) {
    const Vec2 c(cd(rng), cd(rng));
    if (coin(rng)) {
      prims.emplace_back(uf::Disc{c, rd(rng)});
    } else {
      prims.emplace_back(random_convex_polygon(rng, c, rd(rng)));
    }
  }
  return uf::Region(std::move(prims));
}

// Membership-count oracle at pitch h over the bounding box.
inline double grid_area(const uf::Region& region, double h) {
  Vec2 lo, hi;
  region.bounds(lo, hi);
  long count = 0;
  for (double x = lo.x() + 0.5 * h; x < hi.x(); x += h) {
    for (double y = lo.y() + 0.5 * h; y < hi.y(); y += h) {
      if (region.member(Vec2(x, y), 0.0)) ++count;
    }
  }
  return count * h * h;
}

// Hausdorff distance between convex polygons; d(., K) is convex, so the
// supremum over a convex set sits at a vertex.
inline double polygon_hausdorff(const uf::ConvexPolygon& a, const uf::ConvexPolygon& b) {
  auto directed = [](const uf::ConvexPolygon& from, const uf::ConvexPolygon& to) {
    double worst = 0.0;
    for (const Vec2& p : from.vertices()) {
      worst = std::max(worst, std::max(0.0, -to.signed_inner_distance(p)));
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace testutil
