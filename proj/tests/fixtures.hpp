#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "uf/region.hpp"
#include "uf/unfolded.hpp"

namespace fixtures {

using uf::ConvexPolygon;
using uf::Disc;
using uf::Region;
using uf::Segment;
using uf::SinglePoint;
using uf::Vec2;

inline Region square() {
  return Region({ConvexPolygon::from_ccw({{0, 0}, {1, 0}, {1, 1}, {0, 1}})});
}

inline Region rectangle() {
  return Region({ConvexPolygon::from_ccw({{0, 0}, {2, 0}, {2, 1}, {0, 1}})});
}

inline Region unit_disc() { return Region({Disc{{0, 0}, 1.0}}); }

inline Region acute_triangle() {
  return Region({ConvexPolygon::from_ccw({{0, 0}, {4, 0}, {1, 3}})});
}

inline Region obtuse_triangle() {
  return Region({ConvexPolygon::from_ccw({{-3, 0}, {1, 0}, {0, 1}})});
}

inline Region three_discs() {
  const double side = 4.0;
  return Region({Disc{{0, 0}, 1.0}, Disc{{side, 0}, 1.0},
                 Disc{{side / 2.0, side * std::sqrt(3.0) / 2.0}, 1.0}});
}

inline Region three_discs_hull() { return uf::convex_hull_region(three_discs()); }

inline Region ushape() {
  return Region({Segment{{0, 0}, {0, 1}}, Segment{{0, 0}, {1, 0}}, Segment{{1, 0}, {1, 1}}});
}

inline Region ushape_parallel() { return uf::parallel_body(ushape(), 1.0); }

inline Region step_shape() {
  return Region({ConvexPolygon::from_ccw({{0, -1}, {1, -1}, {1, 1}, {0, 1}}),
                 ConvexPolygon::from_ccw({{1, -1}, {2, -1}, {2, 0}, {1, 0}})});
}

struct Named {
  std::string name;
  Region region;
};

inline std::vector<Named> corpus() {
  return {{"square", square()},
          {"rectangle", rectangle()},
          {"disc", unit_disc()},
          {"acute_triangle", acute_triangle()},
          {"obtuse_triangle", obtuse_triangle()},
          {"three_discs", three_discs()},
          {"three_discs_hull", three_discs_hull()},
          {"ushape", ushape()},
          {"ushape_parallel_1", ushape_parallel()},
          {"step", step_shape()}};
}

// Everything except the bare segment union.
inline std::vector<Named> full_dimensional_corpus() {
  std::vector<Named> out;
  for (Named& f : corpus()) {
    if (f.name != "ushape") out.push_back(std::move(f));
  }
  return out;
}

// The minimal unfolded region of an acute triangle: two angle bisectors and
// two perpendicular bisectors bound it. All six candidate half-planes are
// intersected; the inactive ones drop out.
inline std::vector<uf::HalfPlane> triangle_bisector_halfplanes(const Vec2& a, const Vec2& b,
                                                               const Vec2& c) {
  std::vector<uf::HalfPlane> planes;
  const Vec2 vs[3] = {a, b, c};
  auto angle_at = [&](int i) {
    const Vec2 p = vs[(i + 1) % 3] - vs[i];
    const Vec2 q = vs[(i + 2) % 3] - vs[i];
    return std::acos(std::clamp(p.dot(q) / (p.norm() * q.norm()), -1.0, 1.0));
  };
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    // Perpendicular bisector of edge ij, binding from the larger-angle side.
    const Vec2 mid = 0.5 * (vs[i] + vs[j]);
    const Vec2 e = (vs[j] - vs[i]).normalized();
    if (angle_at(i) >= angle_at(j)) {
      planes.push_back({uf::Direction(e), mid.dot(e)});
    } else {
      planes.push_back({uf::Direction(Vec2(-e)), -mid.dot(e)});
    }
    // Angle bisector at vertex i, keeping the side of the longer adjacent
    // edge (the shorter side folds into it).
    const Vec2 p = vs[(i + 1) % 3] - vs[i];
    const Vec2 q = vs[(i + 2) % 3] - vs[i];
    const Vec2 shorter = p.norm() <= q.norm() ? p : q;
    const Vec2 bis = (p.normalized() + q.normalized()).normalized();
    Vec2 n = uf::perp_cw(bis);
    if (n.dot(shorter) < 0.0) n = -n;
    planes.push_back({uf::Direction(n), vs[i].dot(n)});
  }
  return planes;
}

}  // namespace fixtures
