#include "uf/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>

namespace uf {

namespace bg = boost::geometry;
using BoostPoint = bg::model::d2::point_xy<double>;
using BoostPolygon = bg::model::polygon<BoostPoint, /*ClockWise=*/false, /*Closed=*/true>;
using BoostMultiPolygon = bg::model::multi_polygon<BoostPolygon>;

Direction::Direction(const Vec2& u) : u_(u) {
  const double n2 = u.squaredNorm();
  if (!std::isfinite(n2) || std::abs(n2 - 1.0) > 3.0 * kUnitEps) {
    throw std::invalid_argument("Direction: vector is not unit length");
  }
}

Direction Direction::from_angle(double theta) {
  return Direction(Vec2(std::cos(theta), std::sin(theta)));
}

Direction Direction::of(const Vec2& any) {
  const double n = any.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument("Direction: zero or non-finite vector");
  }
  return Direction(Vec2(any / n));
}

double Direction::angle() const {
  double a = std::atan2(u_.y(), u_.x());
  if (a < 0.0) a += 2.0 * std::numbers::pi;
  return a;
}

Vec2 reflect_point(const Direction& v, double b, const Vec2& p) {
  return p - 2.0 * (p.dot(v.u()) - b) * v.u();
}

namespace {

double coord_scale(const std::vector<Vec2>& pts) {
  double m = 1.0;
  for (const Vec2& p : pts) m = std::max({m, std::abs(p.x()), std::abs(p.y())});
  return m;
}

// Removes duplicate adjacent vertices and merges collinear runs; enforces CCW.
std::vector<Vec2> normalize_ring(std::vector<Vec2> v) {
  if (v.size() >= 2) {
    const double eps = kSnapEps * 1e-3 * coord_scale(v);
    std::vector<Vec2> dedup;
    dedup.reserve(v.size());
    for (const Vec2& p : v) {
      if (dedup.empty() || (p - dedup.back()).norm() > eps) dedup.push_back(p);
    }
    while (dedup.size() > 1 && (dedup.front() - dedup.back()).norm() <= eps) dedup.pop_back();
    v = std::move(dedup);
  }
  if (v.size() >= 3) {
    double a2 = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      a2 += cross2(v[i], v[(i + 1) % v.size()]);
    }
    if (a2 < 0.0) std::reverse(v.begin(), v.end());
    // Merge collinear vertices; the turn-angle test is relative to the
    // adjacent edge lengths so mixed coordinate scales stay intact.
    auto collinear = [](const Vec2& prev, const Vec2& cur, const Vec2& next) {
      const Vec2 e0 = cur - prev;
      const Vec2 e1 = next - cur;
      return std::abs(cross2(e0, e1)) <= 1e-12 * e0.norm() * e1.norm();
    };
    std::vector<Vec2> out;
    out.reserve(v.size());
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (!collinear(v[(i + n - 1) % n], v[i], v[(i + 1) % n])) out.push_back(v[i]);
    }
    if (out.size() >= 3) v = std::move(out);
    // A fully collinear ring collapses to a segment.
    if (v.size() >= 3) {
      bool all_collinear = true;
      for (std::size_t i = 2; i < v.size(); ++i) {
        const Vec2 e0 = v[1] - v[0];
        const Vec2 e1 = v[i] - v[0];
        if (std::abs(cross2(e0, e1)) > 1e-12 * e0.norm() * e1.norm()) {
          all_collinear = false;
          break;
        }
      }
      if (all_collinear) {
        auto cmp = [](const Vec2& a, const Vec2& b) {
          return a.x() != b.x() ? a.x() < b.x() : a.y() < b.y();
        };
        const Vec2 lo = *std::min_element(v.begin(), v.end(), cmp);
        const Vec2 hi = *std::max_element(v.begin(), v.end(), cmp);
        v = {lo, hi};
      }
    }
  }
  return v;
}

}  // namespace

ConvexPolygon ConvexPolygon::from_ccw(std::vector<Vec2> verts) {
  ConvexPolygon poly;
  poly.verts_ = normalize_ring(std::move(verts));
  return poly;
}

ConvexPolygon ConvexPolygon::from_points(const std::vector<Vec2>& pts) {
  return convex_hull(pts);
}

double ConvexPolygon::area() const {
  if (verts_.size() < 3) return 0.0;
  double a2 = 0.0;
  for (std::size_t i = 0; i < verts_.size(); ++i) {
    a2 += cross2(verts_[i], verts_[(i + 1) % verts_.size()]);
  }
  return 0.5 * a2;
}

Vec2 ConvexPolygon::centroid() const {
  if (verts_.empty()) throw std::invalid_argument("centroid of empty polygon");
  if (verts_.size() < 3) {
    Vec2 m = Vec2::Zero();
    for (const Vec2& p : verts_) m += p;
    return m / static_cast<double>(verts_.size());
  }
  double a2 = 0.0;
  Vec2 acc = Vec2::Zero();
  for (std::size_t i = 0; i < verts_.size(); ++i) {
    const Vec2& p = verts_[i];
    const Vec2& q = verts_[(i + 1) % verts_.size()];
    const double c = cross2(p, q);
    a2 += c;
    acc += c * (p + q);
  }
  if (std::abs(a2) < 1e-300) {
    Vec2 m = Vec2::Zero();
    for (const Vec2& p : verts_) m += p;
    return m / static_cast<double>(verts_.size());
  }
  return acc / (3.0 * a2);
}

double ConvexPolygon::support(const Direction& v) const {
  double best = -std::numeric_limits<double>::infinity();
  for (const Vec2& p : verts_) best = std::max(best, p.dot(v.u()));
  return best;
}

bool ConvexPolygon::contains(const Vec2& p, double tol) const {
  if (verts_.empty()) return false;
  return signed_inner_distance(p) >= -tol;
}

double ConvexPolygon::signed_inner_distance(const Vec2& p) const {
  if (verts_.empty()) return -std::numeric_limits<double>::infinity();
  if (verts_.size() == 1) return -(p - verts_[0]).norm();
  if (verts_.size() == 2) return -point_segment_distance(p, verts_[0], verts_[1]);
  double inner = std::numeric_limits<double>::infinity();
  bool inside = true;
  for (std::size_t i = 0; i < verts_.size(); ++i) {
    const Vec2& a = verts_[i];
    const Vec2& b = verts_[(i + 1) % verts_.size()];
    if (cross2(b - a, p - a) < 0.0) inside = false;
    inner = std::min(inner, point_segment_distance(p, a, b));
  }
  return inside ? inner : -inner;
}

double ConvexPolygon::diameter() const {
  double d = 0.0;
  for (std::size_t i = 0; i < verts_.size(); ++i) {
    for (std::size_t j = i + 1; j < verts_.size(); ++j) {
      d = std::max(d, (verts_[i] - verts_[j]).norm());
    }
  }
  return d;
}

ConvexPolygon ConvexPolygon::clipped(const HalfPlane& hp, double slack) const {
  if (verts_.empty()) return {};
  const double eps = slack * (1.0 + std::abs(hp.b));
  std::vector<Vec2> out;
  const std::size_t n = verts_.size();
  if (n == 1) {
    if (hp.signed_excess(verts_[0]) <= eps) out = verts_;
  } else if (n == 2) {
    const double da = hp.signed_excess(verts_[0]);
    const double db = hp.signed_excess(verts_[1]);
    if (da <= eps) out.push_back(verts_[0]);
    if ((da > eps) != (db > eps) && std::abs(db - da) > 0.0) {
      const double t = (0.0 - da) / (db - da);
      out.push_back(verts_[0] + std::clamp(t, 0.0, 1.0) * (verts_[1] - verts_[0]));
    }
    if (db <= eps) out.push_back(verts_[1]);
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2& a = verts_[i];
      const Vec2& b = verts_[(i + 1) % n];
      const double da = hp.signed_excess(a);
      const double db = hp.signed_excess(b);
      if (da <= eps) out.push_back(a);
      if ((da > eps) != (db > eps) && std::abs(db - da) > 0.0) {
        const double t = (0.0 - da) / (db - da);
        out.push_back(a + std::clamp(t, 0.0, 1.0) * (b - a));
      }
    }
  }
  return ConvexPolygon::from_ccw(std::move(out));
}

ConvexPolygon ConvexPolygon::translated(const Vec2& t) const {
  ConvexPolygon p = *this;
  for (Vec2& v : p.verts_) v += t;
  return p;
}

ConvexPolygon convex_hull(const std::vector<Vec2>& pts) {
  if (pts.empty()) throw std::invalid_argument("empty point set");
  std::vector<Vec2> p = pts;
  std::sort(p.begin(), p.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() != b.x() ? a.x() < b.x() : a.y() < b.y();
  });
  p.erase(std::unique(p.begin(), p.end(),
                      [](const Vec2& a, const Vec2& b) { return a == b; }),
          p.end());
  const std::size_t n = p.size();
  if (n <= 2) {
    ConvexPolygon poly = ConvexPolygon::from_ccw(std::move(p));
    return poly;
  }
  // Andrew monotone chain.
  std::vector<Vec2> h(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross2(h[k - 1] - h[k - 2], p[i] - h[k - 2]) <= 0.0) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross2(h[k - 1] - h[k - 2], p[i] - h[k - 2]) <= 0.0) --k;
    h[k++] = p[i];
  }
  h.resize(k - 1);
  return ConvexPolygon::from_ccw(std::move(h));
}

// ---------------------------------------------------------------------------
// PolygonSet

double PolygonSet::area() const {
  double a = 0.0;
  for (const Loop& loop : loops) {
    if (loop.pts.size() < 3) continue;
    double a2 = 0.0;
    for (std::size_t i = 0; i < loop.pts.size(); ++i) {
      a2 += cross2(loop.pts[i], loop.pts[(i + 1) % loop.pts.size()]);
    }
    a += 0.5 * a2;  // holes are CW and contribute negatively
  }
  return a;
}

Vec2 PolygonSet::centroid() const {
  double a2 = 0.0;
  Vec2 acc = Vec2::Zero();
  for (const Loop& loop : loops) {
    if (loop.pts.size() < 3) continue;
    for (std::size_t i = 0; i < loop.pts.size(); ++i) {
      const Vec2& p = loop.pts[i];
      const Vec2& q = loop.pts[(i + 1) % loop.pts.size()];
      const double c = cross2(p, q);
      a2 += c;
      acc += c * (p + q);
    }
  }
  if (std::abs(a2) < 1e-300) throw std::domain_error("centroid undefined for measure-zero region");
  return acc / (3.0 * a2);
}

namespace {

// Even-odd with winding sign per loop; loops of a union never overlap, so
// summing signed winding parities is equivalent to membership.
bool loop_contains(const std::vector<Vec2>& ring, const Vec2& p) {
  bool in = false;
  const std::size_t n = ring.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& a = ring[i];
    const Vec2& b = ring[j];
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      const double xi = a.x() + (p.y() - a.y()) / (b.y() - a.y()) * (b.x() - a.x());
      if (p.x() < xi) in = !in;
    }
  }
  return in;
}

}  // namespace

bool PolygonSet::contains(const Vec2& p, double tol) const {
  int depth = 0;
  double boundary = std::numeric_limits<double>::infinity();
  for (const Loop& loop : loops) {
    const std::size_t n = loop.pts.size();
    if (n >= 3 && loop_contains(loop.pts, p)) depth += loop.hole ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) {
      boundary = std::min(boundary, point_segment_distance(p, loop.pts[i], loop.pts[(i + 1) % n]));
    }
    if (n == 1) boundary = std::min(boundary, (p - loop.pts[0]).norm());
  }
  if (depth > 0) return true;
  return boundary <= tol;
}

double PolygonSet::distance(const Vec2& p) const {
  const double s = signed_inner_distance(p);
  return s >= 0.0 ? 0.0 : -s;
}

double PolygonSet::signed_inner_distance(const Vec2& p) const {
  int depth = 0;
  double boundary = std::numeric_limits<double>::infinity();
  for (const Loop& loop : loops) {
    const std::size_t n = loop.pts.size();
    if (n >= 3 && loop_contains(loop.pts, p)) depth += loop.hole ? -1 : 1;
    if (n == 1) {
      boundary = std::min(boundary, (p - loop.pts[0]).norm());
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) {
      boundary = std::min(boundary, point_segment_distance(p, loop.pts[i], loop.pts[(i + 1) % n]));
    }
  }
  return depth > 0 ? boundary : -boundary;
}

PolygonSet PolygonSet::from_convex(const ConvexPolygon& poly) {
  PolygonSet set;
  if (!poly.empty()) set.loops.push_back({poly.vertices(), false});
  return set;
}

PolygonSet polygon_union(const std::vector<ConvexPolygon>& polys) {
  PolygonSet result;
  BoostMultiPolygon acc;
  std::vector<const ConvexPolygon*> seen;
  for (const ConvexPolygon& poly : polys) {
    if (poly.empty()) continue;
    if (poly.is_degenerate()) {
      // Degenerate inputs pass through untouched as separate loops.
      result.loops.push_back({poly.vertices(), false});
      continue;
    }
    bool dup = false;
    for (const ConvexPolygon* other : seen) {
      if (other->size() == poly.size() && other->vertices() == poly.vertices()) {
        dup = true;
        break;
      }
    }
    if (dup) continue;
    seen.push_back(&poly);
    BoostPolygon bp;
    for (const Vec2& v : poly.vertices()) bg::append(bp.outer(), BoostPoint(v.x(), v.y()));
    bg::correct(bp);
    BoostMultiPolygon merged;
    bg::union_(acc, bp, merged);
    acc = std::move(merged);
  }
  for (const BoostPolygon& bp : acc) {
    PolygonSet::Loop outer;
    for (const BoostPoint& p : bp.outer()) outer.pts.emplace_back(bg::get<0>(p), bg::get<1>(p));
    if (!outer.pts.empty() && (outer.pts.front() - outer.pts.back()).norm() <= kSnapEps) {
      outer.pts.pop_back();
    }
    if (outer.pts.size() >= 3) result.loops.push_back(std::move(outer));
    for (const auto& ring : bp.inners()) {
      PolygonSet::Loop hole;
      hole.hole = true;
      for (const BoostPoint& p : ring) hole.pts.emplace_back(bg::get<0>(p), bg::get<1>(p));
      if (!hole.pts.empty() && (hole.pts.front() - hole.pts.back()).norm() <= kSnapEps) {
        hole.pts.pop_back();
      }
      if (hole.pts.size() >= 3) result.loops.push_back(std::move(hole));
    }
  }
  return result;
}

std::optional<ConvexPolygon> halfplane_intersection(const std::vector<HalfPlane>& planes) {
  if (planes.empty()) throw std::domain_error("direction set does not bound");
  double scale = 1.0;
  for (const HalfPlane& hp : planes) scale = std::max(scale, std::abs(hp.b));

  // Clip a bounding box down; start small for precision and escalate only
  // when the result still touches the box.
  for (const double factor : {64.0, 1e9}) {
    const double R = factor * scale;
    ConvexPolygon cur =
        ConvexPolygon::from_ccw({Vec2(-R, -R), Vec2(R, -R), Vec2(R, R), Vec2(-R, R)});
    for (const HalfPlane& hp : planes) {
      cur = cur.clipped(hp);
      if (cur.empty()) return std::nullopt;
    }
    bool touches_box = false;
    for (const Vec2& v : cur.vertices()) {
      touches_box = touches_box || std::abs(v.x()) >= 0.5 * R || std::abs(v.y()) >= 0.5 * R;
    }
    if (!touches_box) return cur;
  }
  throw std::domain_error("direction set does not bound");
}

ContainmentReport contains_polygon(const PolygonSet& outer, const ConvexPolygon& inner,
                                   double tol) {
  ContainmentReport rep;
  if (inner.empty()) {
    rep.contains = true;
    rep.margin = std::numeric_limits<double>::infinity();
    return rep;
  }
  double margin = std::numeric_limits<double>::infinity();
  auto consider = [&](const Vec2& p) { margin = std::min(margin, outer.signed_inner_distance(p)); };
  const auto& vs = inner.vertices();
  for (const Vec2& p : vs) consider(p);
  // Boundary points of inner closest to the outer boundary: project outer
  // vertices onto inner edges.
  for (const PolygonSet::Loop& loop : outer.loops) {
    for (const Vec2& q : loop.pts) {
      for (std::size_t i = 0; i + 1 < vs.size() + (vs.size() > 2 ? 1 : 0); ++i) {
        const Vec2& a = vs[i];
        const Vec2& b = vs[(i + 1) % vs.size()];
        const Vec2 ab = b - a;
        const double len2 = ab.squaredNorm();
        if (len2 <= 0.0) continue;
        const double t = std::clamp((q - a).dot(ab) / len2, 0.0, 1.0);
        consider(a + t * ab);
      }
    }
  }
  rep.margin = margin;
  rep.contains = margin >= -tol;
  return rep;
}

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 <= 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

double segment_segment_distance(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const double d1 = cross2(b - a, c - a);
  const double d2 = cross2(b - a, d - a);
  const double d3 = cross2(d - c, a - c);
  const double d4 = cross2(d - c, b - c);
  if (((d1 > 0.0) != (d2 > 0.0)) && ((d3 > 0.0) != (d4 > 0.0))) return 0.0;
  return std::min(std::min(point_segment_distance(a, c, d), point_segment_distance(b, c, d)),
                  std::min(point_segment_distance(c, a, b), point_segment_distance(d, a, b)));
}

}  // namespace uf
