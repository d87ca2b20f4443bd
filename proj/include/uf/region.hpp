#pragma once

#include <string>
#include <variant>
#include <vector>

#include "uf/geometry.hpp"

namespace uf {

struct Disc {
  Vec2 center = Vec2::Zero();
  double radius = 0.0;  // > 0
};

struct Segment {
  Vec2 a = Vec2::Zero();
  Vec2 b = Vec2::Zero();  // endpoints distinct
};

struct SinglePoint {
  Vec2 p = Vec2::Zero();
};

using Primitive = std::variant<ConvexPolygon, Disc, Segment, SinglePoint>;

bool primitive_is_full_dimensional(const Primitive& prim);
double primitive_support(const Primitive& prim, const Direction& v);
double primitive_distance(const Primitive& prim, const Vec2& p);
Primitive primitive_translated(const Primitive& prim, const Vec2& t);

// Compact planar set: a finite union of closed convex primitives. Primitives
// may overlap arbitrarily; set-level quantities are computed on the union.
class Region {
 public:
  explicit Region(std::vector<Primitive> prims);

  const std::vector<Primitive>& primitives() const { return prims_; }

  double support(const Direction& v) const;
  bool member(const Vec2& p, double tol = 0.0) const;
  double distance(const Vec2& p) const;

  // Union area / area centroid; exact for overlapping mixtures of polygons
  // and discs (arc pieces integrated in closed form).
  double area() const;
  Vec2 centroid() const;  // throws when the union has zero area

  Region translated(const Vec2& t) const;
  // Axis-aligned bounds of the union.
  void bounds(Vec2& lo, Vec2& hi) const;
  double diameter_hint() const;

 private:
  std::vector<Primitive> prims_;
};

struct ParallelBodyOptions {
  double delta = 0.0;     // > 0
  int arc_segments = 64;  // even, >= 8; retained for arc-approximation call
                          // sites, the decomposition below is exact

  void validate() const;
  double hausdorff_arc_error() const;  // delta * (1 - cos(pi/k))
};

// Exact structural decomposition of {x : dist(x, region) <= delta}:
// polygons keep themselves plus one delta-by-edge rectangle per edge and one
// delta-disc per vertex; segments get a rectangle plus end discs; points and
// discs grow into discs. The union equals the parallel body exactly.
Region parallel_body(const Region& region, double delta);
Region parallel_body(const Region& region, const ParallelBodyOptions& opts);

// Inner/outer polygonal hulls. Discs contribute inscribed (inner) or
// circumscribed (outer) regular k-gon vertices, so
// inner <= conv(region) <= outer with Hausdorff gap
// <= r * (1 - cos(pi/k)) + r * (sec(pi/k) - 1).
struct HullSandwich {
  ConvexPolygon inner;
  ConvexPolygon outer;
};
HullSandwich region_convex_hull(const Region& region, int arc_segments = 256);

// Exact convex hull represented as a region: the tangent-point polygon of the
// support envelope plus every disc that attains the envelope. Equals conv(region)
// as a point set.
Region convex_hull_region(const Region& region);

// Region JSON file I/O (schema documented in README). Throws
// RegionSchemaError on malformed input.
struct RegionSchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
Region load_region(const std::string& path);
Region parse_region_json(const std::string& text);
void save_region(const Region& region, const std::string& path);
std::string region_to_json(const Region& region);

}  // namespace uf
