#pragma once

#include <optional>
#include <vector>

#include "uf/geometry.hpp"
#include "uf/region.hpp"

namespace uf {

// Maximal closed interval of region ∩ line, in v-coordinates.
struct ChordInterval {
  double lo = 0.0;
  double hi = 0.0;
  double mid() const { return 0.5 * (lo + hi); }
};

// Lines parallel to v are indexed by s = p . perp_cw(v); coordinates along
// the line are t = p . v.
std::vector<ChordInterval> chord_components(const Region& region, const Direction& v, double s);

// Certified bracket for the cap level l(v): the infimum of levels b such that
// reflecting the closed cap above b lands inside the region. Equals the
// supremum over lines parallel to v of the largest chord-component midpoint.
struct CapLevel {
  Direction v;
  double lower = 0.0;
  double upper = 0.0;
  double mid() const { return 0.5 * (lower + upper); }
};

// Exact evaluator: critical-offset sweep with closed-form arc extrema.
// lower == upper up to floating-point rounding. Throws when tol <= 0.
CapLevel cap_level_exact(const Region& region, const Direction& v, double tol = 1e-9);

// Brute-force sweep at pitch h; the +-C*h bracket uses a sampled slope
// estimate and is heuristic, not certified.
CapLevel cap_level_oracle(const Region& region, const Direction& v, double h);

// True when the reflected closed cap at level b lies in the region dilated
// by tol (chord criterion: every component midpoint <= b + tol/2).
bool reflection_containment(const Region& region, const Direction& v, double b, double tol);

// Directions where the cap level can jump: edge and segment directions of
// the region's straight boundary pieces, both orientations.
std::vector<double> critical_direction_angles(const Region& region);

// Critical directions plus the normals of every pairwise line bisector;
// reflections can lock one straight piece onto another there. Used to pin
// the outer Uf approximation.
std::vector<double> fold_direction_angles(const Region& region);

struct CapLevelProfile {
  std::vector<CapLevel> entries;  // sorted by direction angle
  int direction_count = 0;        // requested uniform count m
};

struct UfApproximation {
  ConvexPolygon outer;  // contains the true minimal unfolded region
  CapLevelProfile profile;
  int directions = 0;
  double tolerance = 0.0;
};

// Outer approximation of the minimal unfolded region from m uniform
// directions plus the region's critical directions. Requires m >= 8.
UfApproximation unfolded_region(const Region& region, int m, double tol = 1e-9);

// Levels for an explicit direction set (angles in radians).
CapLevelProfile cap_level_profile(const Region& region, const std::vector<double>& angles,
                                  double tol = 1e-9);

struct DirectionMargin {
  double angle = 0.0;
  double margin = 0.0;
};

struct TheoremReport {
  bool holds = false;
  double min_margin = 0.0;
  std::optional<bool> convex_equality;  // parallel-body check, convex inputs only
  double max_equality_gap = 0.0;
  std::vector<DirectionMargin> per_direction;
  ConvexPolygon uf_region;
  ConvexPolygon uf_other;  // hull or parallel body
};

// Verifies l_conv(v) <= l_region(v) per direction and Uf(conv) inside
// Uf(region) dilated by tol, using the exact hull region.
TheoremReport check_theorem_convex_hull(const Region& region, int m, double tol);

// Verifies l_{region_delta}(v) <= l_region(v) per direction; for a single
// convex primitive additionally checks two-sided equality.
TheoremReport check_theorem_parallel_body(const Region& region, double delta, int m, double tol);

struct ConvCapReport {
  bool subset_holds = false;
  bool strict = false;
  double area_conv_of_cap = 0.0;
  double area_cap_of_conv = 0.0;
  double margin = 0.0;
};

// conv(cap(region)) vs cap(conv(region)), closed caps. Disc caps are
// polygonized inward on the left side and outward on the right side, so a
// reported violation is never an artifact of the approximation.
ConvCapReport check_conv_cap_inclusion(const Region& region, const Direction& v, double b,
                                       double tol = 1e-6);

// Thread cap for the direction sweep: UF_THREADS env var, else hardware.
int direction_sweep_threads();

}  // namespace uf
