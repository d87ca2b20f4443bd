#pragma once

#include <Eigen/Core>

#include <optional>
#include <string>
#include <vector>

namespace uf {

using Vec2 = Eigen::Vector2d;

// Global snapping tolerance for boolean operations and vertex dedup.
inline constexpr double kSnapEps = 1e-9;
// Slack allowed when validating unit vectors.
inline constexpr double kUnitEps = 1e-12;

inline double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

// Clockwise perpendicular. Lines parallel to v are indexed by s = p . perp_cw(v),
// which matches the line parameterization used by the cap-level operations.
inline Vec2 perp_cw(const Vec2& v) { return Vec2(v.y(), -v.x()); }

// Unit vector on the circle. Construction validates |u| = 1 within kUnitEps.
class Direction {
 public:
  explicit Direction(const Vec2& u);
  Direction(double ux, double uy) : Direction(Vec2(ux, uy)) {}

  static Direction from_angle(double theta);
  // Normalizes an arbitrary non-zero vector.
  static Direction of(const Vec2& any);

  const Vec2& u() const { return u_; }
  double x() const { return u_.x(); }
  double y() const { return u_.y(); }
  double angle() const;  // in [0, 2*pi)
  Direction reversed() const { return Direction(Vec2(-u_.x(), -u_.y())); }

 private:
  Vec2 u_;
};

// Mirror image of p in the line {x : x.v = b}.
Vec2 reflect_point(const Direction& v, double b, const Vec2& p);

// Closed half-plane {x : x.v <= b}.
struct HalfPlane {
  Direction v;
  double b = 0.0;

  HalfPlane(const Direction& v_, double b_) : v(v_), b(b_) {}
  double signed_excess(const Vec2& p) const { return p.dot(v.u()) - b; }
};

// Closed convex polygon, CCW vertex list. One vertex encodes a point,
// two a segment; normalization merges duplicate and collinear vertices.
class ConvexPolygon {
 public:
  ConvexPolygon() = default;

  // Normalizes an arbitrarily ordered convex vertex set (hull is taken).
  static ConvexPolygon from_points(const std::vector<Vec2>& pts);
  // Accepts vertices already in convex position (CW input is reversed).
  static ConvexPolygon from_ccw(std::vector<Vec2> verts);

  const std::vector<Vec2>& vertices() const { return verts_; }
  std::size_t size() const { return verts_.size(); }
  bool empty() const { return verts_.empty(); }
  bool is_degenerate() const { return verts_.size() < 3; }

  double area() const;
  Vec2 centroid() const;  // area centroid; degenerate polygons use vertex mean
  double support(const Direction& v) const;
  bool contains(const Vec2& p, double tol = 0.0) const;
  // Positive inside, negative outside, distance to the boundary.
  double signed_inner_distance(const Vec2& p) const;
  double diameter() const;

  ConvexPolygon clipped(const HalfPlane& hp, double slack = 1e-12) const;
  ConvexPolygon translated(const Vec2& t) const;

 private:
  std::vector<Vec2> verts_;
};

// Smallest convex polygon containing pts. Throws on empty input.
ConvexPolygon convex_hull(const std::vector<Vec2>& pts);

// Result of a boolean union: outer loops CCW, holes CW. Degenerate inputs
// (points, segments) pass through as separate degenerate loops.
struct PolygonSet {
  struct Loop {
    std::vector<Vec2> pts;
    bool hole = false;
  };
  std::vector<Loop> loops;

  double area() const;
  Vec2 centroid() const;
  bool contains(const Vec2& p, double tol = 0.0) const;
  // Distance from p to the set (0 inside).
  double distance(const Vec2& p) const;
  // Signed: positive depth inside, negative distance outside.
  double signed_inner_distance(const Vec2& p) const;

  static PolygonSet from_convex(const ConvexPolygon& poly);
};

// Boundary of the set-theoretic union of convex polygons.
PolygonSet polygon_union(const std::vector<ConvexPolygon>& polys);

// Bounded intersection of half-planes. Returns nullopt when empty; throws
// std::domain_error("direction set does not bound") when unbounded.
std::optional<ConvexPolygon> halfplane_intersection(const std::vector<HalfPlane>& planes);

struct ContainmentReport {
  bool contains = false;
  double margin = 0.0;  // signed distance of the worst inner boundary point
};

// Tests inner subset-of outer dilated by tol.
ContainmentReport contains_polygon(const PolygonSet& outer, const ConvexPolygon& inner,
                                   double tol);

// Distance helpers shared across modules.
double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b);
double segment_segment_distance(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d);

}  // namespace uf
