#include "uf/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>

#include "uf/json_io.hpp"
#include <nlohmann/json.hpp>

namespace uf {

namespace {

constexpr double kPi = std::numbers::pi;

double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

}  // namespace

bool primitive_is_full_dimensional(const Primitive& prim) {
  if (const auto* poly = std::get_if<ConvexPolygon>(&prim)) return poly->size() >= 3;
  return std::holds_alternative<Disc>(prim);
}

double primitive_support(const Primitive& prim, const Direction& v) {
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ConvexPolygon>) {
          return p.support(v);
        } else if constexpr (std::is_same_v<T, Disc>) {
          return p.center.dot(v.u()) + p.radius;
        } else if constexpr (std::is_same_v<T, Segment>) {
          return std::max(p.a.dot(v.u()), p.b.dot(v.u()));
        } else {
          return p.p.dot(v.u());
        }
      },
      prim);
}

double primitive_distance(const Primitive& prim, const Vec2& q) {
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ConvexPolygon>) {
          return std::max(0.0, -p.signed_inner_distance(q));
        } else if constexpr (std::is_same_v<T, Disc>) {
          return std::max(0.0, (q - p.center).norm() - p.radius);
        } else if constexpr (std::is_same_v<T, Segment>) {
          return point_segment_distance(q, p.a, p.b);
        } else {
          return (q - p.p).norm();
        }
      },
      prim);
}

Primitive primitive_translated(const Primitive& prim, const Vec2& t) {
  return std::visit(
      [&](const auto& p) -> Primitive {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ConvexPolygon>) {
          return p.translated(t);
        } else if constexpr (std::is_same_v<T, Disc>) {
          return Disc{p.center + t, p.radius};
        } else if constexpr (std::is_same_v<T, Segment>) {
          return Segment{p.a + t, p.b + t};
        } else {
          return SinglePoint{p.p + t};
        }
      },
      prim);
}

Region::Region(std::vector<Primitive> prims) : prims_(std::move(prims)) {
  if (prims_.empty()) throw std::invalid_argument("empty region");
  for (const Primitive& prim : prims_) {
    if (const auto* d = std::get_if<Disc>(&prim)) {
      if (!(d->radius > 0.0)) throw std::invalid_argument("disc radius must be positive");
    } else if (const auto* s = std::get_if<Segment>(&prim)) {
      if ((s->a - s->b).norm() <= 0.0) {
        throw std::invalid_argument("segment endpoints must be distinct");
      }
    } else if (const auto* p = std::get_if<ConvexPolygon>(&prim)) {
      if (p->empty()) throw std::invalid_argument("polygon primitive has no vertices");
    }
  }
}

double Region::support(const Direction& v) const {
  double best = -std::numeric_limits<double>::infinity();
  for (const Primitive& prim : prims_) best = std::max(best, primitive_support(prim, v));
  return best;
}

bool Region::member(const Vec2& p, double tol) const { return distance(p) <= tol; }

double Region::distance(const Vec2& p) const {
  double best = std::numeric_limits<double>::infinity();
  for (const Primitive& prim : prims_) best = std::min(best, primitive_distance(prim, p));
  return best;
}

Region Region::translated(const Vec2& t) const {
  std::vector<Primitive> out;
  out.reserve(prims_.size());
  for (const Primitive& prim : prims_) out.push_back(primitive_translated(prim, t));
  return Region(std::move(out));
}

void Region::bounds(Vec2& lo, Vec2& hi) const {
  lo = Vec2(std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity());
  hi = -lo;
  auto eat = [&](const Vec2& p, double pad) {
    lo.x() = std::min(lo.x(), p.x() - pad);
    lo.y() = std::min(lo.y(), p.y() - pad);
    hi.x() = std::max(hi.x(), p.x() + pad);
    hi.y() = std::max(hi.y(), p.y() + pad);
  };
  for (const Primitive& prim : prims_) {
    std::visit(
        [&](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, ConvexPolygon>) {
            for (const Vec2& v : p.vertices()) eat(v, 0.0);
          } else if constexpr (std::is_same_v<T, Disc>) {
            eat(p.center, p.radius);
          } else if constexpr (std::is_same_v<T, Segment>) {
            eat(p.a, 0.0);
            eat(p.b, 0.0);
          } else {
            eat(p.p, 0.0);
          }
        },
        prim);
  }
}

double Region::diameter_hint() const {
  Vec2 lo, hi;
  bounds(lo, hi);
  return (hi - lo).norm();
}

// ---------------------------------------------------------------------------
// Exact union area / centroid.
//
// Green's theorem over the uncovered parts of every primitive boundary:
//   A = (1/2) oint (x dy - y dx),  Ix = (1/2) oint x^2 dy,  Iy = -(1/2) oint y^2 dx.
// A boundary piece is dropped where it sits in the interior of another
// primitive; coincident opposite-oriented pieces cancel, coincident
// same-oriented pieces keep a single representative.

namespace {

struct Moments {
  double a2 = 0.0;  // oint x dy - y dx
  double sx = 0.0;  // oint x^2 dy
  double sy = 0.0;  // oint y^2 dx

  void add_segment(const Vec2& p, const Vec2& q) {
    const Vec2 d = q - p;
    a2 += cross2(p, q);
    sx += d.y() * (p.x() * p.x() + p.x() * d.x() + d.x() * d.x() / 3.0);
    sy += d.x() * (p.y() * p.y() + p.y() * d.y() + d.y() * d.y() / 3.0);
  }

  // CCW arc of circle (c, r) from alpha to beta (beta >= alpha).
  void add_arc(const Vec2& c, double r, double alpha, double beta) {
    const double dth = beta - alpha;
    const double sa = std::sin(alpha), sb = std::sin(beta);
    const double ca = std::cos(alpha), cb = std::cos(beta);
    a2 += r * r * dth + r * (c.x() * (sb - sa) - c.y() * (cb - ca));
    const double s1 = sb - sa;
    const double c2 = 0.5 * (dth + 0.5 * (std::sin(2.0 * beta) - std::sin(2.0 * alpha)));
    const double c3 = s1 - (sb * sb * sb - sa * sa * sa) / 3.0;
    sx += r * (c.x() * c.x() * s1 + 2.0 * c.x() * r * c2 + r * r * c3);
    const double s1y = -(cb - ca);
    const double s2 = 0.5 * (dth - 0.5 * (std::sin(2.0 * beta) - std::sin(2.0 * alpha)));
    const double s3 = -(cb - ca) + (cb * cb * cb - ca * ca * ca) / 3.0;
    sy += -r * (c.y() * c.y() * s1y + 2.0 * c.y() * r * s2 + r * r * s3);
  }
};

// Sorted, disjoint closed sub-intervals of [lo, hi].
class IntervalSet {
 public:
  IntervalSet(double lo, double hi) : lo_(lo), hi_(hi) {}

  void cover(double a, double b) {
    a = std::max(a, lo_);
    b = std::min(b, hi_);
    if (b <= a) return;
    covered_.emplace_back(a, b);
  }

  std::vector<std::pair<double, double>> uncovered() const {
    auto cov = covered_;
    std::sort(cov.begin(), cov.end());
    std::vector<std::pair<double, double>> out;
    double cur = lo_;
    for (const auto& [a, b] : cov) {
      if (a > cur) out.emplace_back(cur, a);
      cur = std::max(cur, b);
    }
    if (cur < hi_) out.emplace_back(cur, hi_);
    return out;
  }

 private:
  double lo_, hi_;
  std::vector<std::pair<double, double>> covered_;
};

// Angle intervals on a circle, stored unwrapped into [0, 4*pi) pieces.
class ArcCover {
 public:
  void cover(double a, double b) {  // 0 <= b - a <= 2*pi
    const double len = std::clamp(b - a, 0.0, 2.0 * kPi);
    if (len <= 0.0) return;
    a = std::fmod(a, 2.0 * kPi);
    if (a < 0.0) a += 2.0 * kPi;
    segs_.emplace_back(a, a + len);
  }
  void cover_all() { segs_.emplace_back(0.0, 2.0 * kPi); }

  std::vector<std::pair<double, double>> uncovered() const {
    // Split wrap-around pieces at 2*pi.
    std::vector<std::pair<double, double>> cov;
    for (auto [a, b] : segs_) {
      if (b <= 2.0 * kPi) {
        cov.emplace_back(a, b);
      } else {
        cov.emplace_back(a, 2.0 * kPi);
        cov.emplace_back(0.0, b - 2.0 * kPi);
      }
    }
    std::sort(cov.begin(), cov.end());
    std::vector<std::pair<double, double>> out;
    double cur = 0.0;
    for (const auto& [a, b] : cov) {
      if (a > cur) out.emplace_back(cur, a);
      cur = std::max(cur, b);
    }
    if (cur < 2.0 * kPi) out.emplace_back(cur, 2.0 * kPi);
    return out;
  }

 private:
  std::vector<std::pair<double, double>> segs_;
};

struct AreaPrim {
  bool is_disc = false;
  ConvexPolygon poly;
  Disc disc;
};

Moments union_moments(const std::vector<Primitive>& region_prims);

bool same_disc(const Disc& a, const Disc& b) {
  return a.center == b.center && a.radius == b.radius;
}

bool same_poly(const ConvexPolygon& a, const ConvexPolygon& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.vertices()[i] != b.vertices()[i]) return false;
  }
  return true;
}

double prim_signed_inner(const AreaPrim& prim, const Vec2& p) {
  if (prim.is_disc) return prim.disc.radius - (p - prim.disc.center).norm();
  return prim.poly.signed_inner_distance(p);
}

// Interval of edge parameter t in [0,1] covered by the closed primitive.
bool edge_cover_interval(const Vec2& p, const Vec2& q, const AreaPrim& other, double& t0,
                         double& t1) {
  if (other.is_disc) {
    const Vec2 e = q - p;
    const Vec2 w = p - other.disc.center;
    const double A = e.squaredNorm();
    const double B = 2.0 * e.dot(w);
    const double C = w.squaredNorm() - other.disc.radius * other.disc.radius;
    const double D = B * B - 4.0 * A * C;
    if (D <= 0.0 || A <= 0.0) return false;
    const double sq = std::sqrt(D);
    t0 = std::max(0.0, (-B - sq) / (2.0 * A));
    t1 = std::min(1.0, (-B + sq) / (2.0 * A));
    return t1 > t0;
  }
  t0 = 0.0;
  t1 = 1.0;
  const auto& vs = other.poly.vertices();
  const std::size_t n = vs.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = vs[i];
    const Vec2& b = vs[(i + 1) % n];
    const Vec2 nrm(b.y() - a.y(), a.x() - b.x());  // outward for CCW
    const double f0 = nrm.dot(p - a);
    const double f1 = nrm.dot(q - a);
    if (f0 > 0.0 && f1 > 0.0) return false;
    if (f0 > 0.0 || f1 > 0.0) {
      const double t = f0 / (f0 - f1);
      if (f0 > 0.0) {
        t0 = std::max(t0, t);
      } else {
        t1 = std::min(t1, t);
      }
    }
    if (t1 <= t0) return false;
  }
  return t1 > t0;
}

Moments union_moments(const std::vector<Primitive>& region_prims) {
  Moments m;
  // Collect full-dimensional primitives, dropping exact duplicates.
  std::vector<AreaPrim> prims;
  for (const Primitive& prim : region_prims) {
    if (!primitive_is_full_dimensional(prim)) continue;
    AreaPrim ap;
    if (const auto* d = std::get_if<Disc>(&prim)) {
      ap.is_disc = true;
      ap.disc = *d;
      bool dup = false;
      for (const AreaPrim& o : prims) dup = dup || (o.is_disc && same_disc(o.disc, ap.disc));
      if (dup) continue;
    } else {
      ap.poly = std::get<ConvexPolygon>(prim);
      bool dup = false;
      for (const AreaPrim& o : prims) dup = dup || (!o.is_disc && same_poly(o.poly, ap.poly));
      if (dup) continue;
    }
    prims.push_back(std::move(ap));
  }
  if (prims.empty()) return m;

  double scale = 1.0;
  for (const AreaPrim& ap : prims) {
    if (ap.is_disc) {
      scale = std::max({scale, std::abs(ap.disc.center.x()) + ap.disc.radius,
                        std::abs(ap.disc.center.y()) + ap.disc.radius});
    } else {
      for (const Vec2& v : ap.poly.vertices()) {
        scale = std::max({scale, std::abs(v.x()), std::abs(v.y())});
      }
    }
  }
  const double coin_eps = kSnapEps * scale;

  for (std::size_t i = 0; i < prims.size(); ++i) {
    const AreaPrim& pi = prims[i];
    if (!pi.is_disc) {
      const auto& vs = pi.poly.vertices();
      const std::size_t n = vs.size();
      for (std::size_t e = 0; e < n; ++e) {
        const Vec2& p = vs[e];
        const Vec2& q = vs[(e + 1) % n];
        IntervalSet keep(0.0, 1.0);
        for (std::size_t j = 0; j < prims.size(); ++j) {
          if (j == i) continue;
          double t0, t1;
          if (!edge_cover_interval(p, q, prims[j], t0, t1)) continue;
          const Vec2 mid = p + 0.5 * (t0 + t1) * (q - p);
          const double sd = prim_signed_inner(prims[j], mid);
          if (sd > coin_eps) {
            keep.cover(t0, t1);  // strictly interior to j
          } else if (sd >= -coin_eps && !prims[j].is_disc) {
            // Coincident straight boundaries: orientation decides.
            const Vec2 dir = q - p;
            const auto& ws = prims[j].poly.vertices();
            for (std::size_t f = 0; f < ws.size(); ++f) {
              const Vec2& a = ws[f];
              const Vec2& b = ws[(f + 1) % ws.size()];
              if (point_segment_distance(mid, a, b) > coin_eps) continue;
              const double along = dir.dot(b - a);
              if (along < 0.0) {
                keep.cover(t0, t1);  // opposite orientation: interior on both sides
              } else if (along > 0.0 && j < i) {
                keep.cover(t0, t1);  // same orientation: lower index keeps it
              }
              break;
            }
          }
        }
        for (const auto& [t0, t1] : keep.uncovered()) {
          m.add_segment(p + t0 * (q - p), p + t1 * (q - p));
        }
      }
    } else {
      const Disc& d = pi.disc;
      ArcCover cover;
      for (std::size_t j = 0; j < prims.size(); ++j) {
        if (j == i) continue;
        const AreaPrim& pj = prims[j];
        if (pj.is_disc) {
          const Vec2 dc = pj.disc.center - d.center;
          const double dist = dc.norm();
          if (dist <= coin_eps) {
            if (pj.disc.radius >= d.radius) cover.cover_all();
            continue;
          }
          const double q = (dist * dist + d.radius * d.radius -
                            pj.disc.radius * pj.disc.radius) /
                           (2.0 * d.radius * dist);
          if (q >= 1.0) continue;
          if (q <= -1.0) {
            cover.cover_all();
            continue;
          }
          const double phi = std::atan2(dc.y(), dc.x());
          const double half = std::acos(clamp_unit(q));
          cover.cover(phi - half, phi + half);
        } else {
          // Intersect the circle with every half-plane of the polygon.
          const auto& ws = pj.poly.vertices();
          const std::size_t nw = ws.size();
          std::vector<std::pair<double, double>> arcs = {{0.0, 2.0 * kPi}};
          bool empty = false;
          for (std::size_t f = 0; f < nw && !empty; ++f) {
            const Vec2& a = ws[f];
            const Vec2& b = ws[(f + 1) % nw];
            Vec2 nrm(b.y() - a.y(), a.x() - b.x());
            const double nn = nrm.norm();
            if (nn <= 0.0) continue;
            nrm /= nn;
            // Constraint nrm . x <= nrm . a ; on the circle:
            // cos(theta - phi) <= t.
            const double t = (nrm.dot(a - d.center)) / d.radius;
            if (t >= 1.0) continue;
            if (t <= -1.0) {
              arcs.clear();
              empty = true;
              break;
            }
            const double phi = std::atan2(nrm.y(), nrm.x());
            const double a0 = std::acos(clamp_unit(t));
            // Allowed: theta in [phi + a0, phi + 2*pi - a0].
            std::vector<std::pair<double, double>> next;
            for (auto [lo, hi] : arcs) {
              // Intersect [lo, hi] with the allowed wrap-around interval.
              double s0 = phi + a0;
              double s1 = phi + 2.0 * kPi - a0;
              for (int shift = -2; shift <= 2; ++shift) {
                const double u0 = s0 + 2.0 * kPi * shift;
                const double u1 = s1 + 2.0 * kPi * shift;
                const double c0 = std::max(lo, u0);
                const double c1 = std::min(hi, u1);
                if (c1 > c0 + 1e-15) next.emplace_back(c0, c1);
              }
            }
            arcs = std::move(next);
            empty = arcs.empty();
          }
          for (auto [a0, b0] : arcs) cover.cover(a0, b0);
        }
      }
      for (const auto& [a0, b0] : cover.uncovered()) {
        m.add_arc(d.center, d.radius, a0, b0);
      }
    }
  }
  return m;
}

}  // namespace

double Region::area() const { return 0.5 * union_moments(prims_).a2; }

Vec2 Region::centroid() const {
  const Moments m = union_moments(prims_);
  const double a = 0.5 * m.a2;
  if (!(a > 1e-14)) throw std::domain_error("centroid undefined for measure-zero region");
  return Vec2(0.5 * m.sx / a, -0.5 * m.sy / a);
}

// ---------------------------------------------------------------------------

void ParallelBodyOptions::validate() const {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  if (arc_segments < 8 || arc_segments % 2 != 0) {
    throw std::invalid_argument("arc_segments must be even and >= 8");
  }
}

double ParallelBodyOptions::hausdorff_arc_error() const {
  return delta * (1.0 - std::cos(kPi / arc_segments));
}

namespace {

void push_disc(std::vector<Primitive>& out, std::vector<Disc>& seen, const Vec2& c, double r) {
  for (const Disc& d : seen) {
    if (same_disc(d, Disc{c, r})) return;
  }
  seen.push_back(Disc{c, r});
  out.emplace_back(Disc{c, r});
}

void push_edge_rect(std::vector<Primitive>& out, const Vec2& a, const Vec2& b, double delta) {
  Vec2 d = b - a;
  const double len = d.norm();
  if (len <= 0.0) return;
  d /= len;
  const Vec2 n(-d.y(), d.x());
  out.emplace_back(ConvexPolygon::from_ccw(
      {a - delta * n, b - delta * n, b + delta * n, a + delta * n}));
}

}  // namespace

Region parallel_body(const Region& region, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  std::vector<Primitive> out;
  std::vector<Disc> seen;
  for (const Primitive& prim : region.primitives()) {
    std::visit(
        [&](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, ConvexPolygon>) {
            const auto& vs = p.vertices();
            if (vs.size() == 1) {
              push_disc(out, seen, vs[0], delta);
            } else if (vs.size() == 2) {
              push_edge_rect(out, vs[0], vs[1], delta);
              push_disc(out, seen, vs[0], delta);
              push_disc(out, seen, vs[1], delta);
            } else {
              out.emplace_back(p);
              for (std::size_t i = 0; i < vs.size(); ++i) {
                push_edge_rect(out, vs[i], vs[(i + 1) % vs.size()], delta);
                push_disc(out, seen, vs[i], delta);
              }
            }
          } else if constexpr (std::is_same_v<T, Disc>) {
            push_disc(out, seen, p.center, p.radius + delta);
          } else if constexpr (std::is_same_v<T, Segment>) {
            push_edge_rect(out, p.a, p.b, delta);
            push_disc(out, seen, p.a, delta);
            push_disc(out, seen, p.b, delta);
          } else {
            push_disc(out, seen, p.p, delta);
          }
        },
        prim);
  }
  return Region(std::move(out));
}

Region parallel_body(const Region& region, const ParallelBodyOptions& opts) {
  opts.validate();
  return parallel_body(region, opts.delta);
}

// ---------------------------------------------------------------------------

HullSandwich region_convex_hull(const Region& region, int arc_segments) {
  if (arc_segments < 8) throw std::invalid_argument("arc_segments must be >= 8");
  const int k = arc_segments;
  std::vector<Vec2> inner_pts;
  std::vector<Vec2> outer_pts;
  auto both = [&](const Vec2& p) {
    inner_pts.push_back(p);
    outer_pts.push_back(p);
  };
  for (const Primitive& prim : region.primitives()) {
    std::visit(
        [&](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, ConvexPolygon>) {
            for (const Vec2& v : p.vertices()) both(v);
          } else if constexpr (std::is_same_v<T, Disc>) {
            const double rout = p.radius / std::cos(kPi / k);
            for (int t = 0; t < k; ++t) {
              const double th = 2.0 * kPi * t / k;
              inner_pts.push_back(p.center + p.radius * Vec2(std::cos(th), std::sin(th)));
              const double to = th + kPi / k;
              outer_pts.push_back(p.center + rout * Vec2(std::cos(to), std::sin(to)));
            }
          } else if constexpr (std::is_same_v<T, Segment>) {
            both(p.a);
            both(p.b);
          } else {
            both(p.p);
          }
        },
        prim);
  }
  return HullSandwich{convex_hull(inner_pts), convex_hull(outer_pts)};
}

Region convex_hull_region(const Region& region) {
  struct Item {
    Vec2 c;
    double r;
  };
  std::vector<Item> items;
  auto add_point = [&](const Vec2& p) { items.push_back({p, 0.0}); };
  for (const Primitive& prim : region.primitives()) {
    std::visit(
        [&](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, ConvexPolygon>) {
            for (const Vec2& v : p.vertices()) add_point(v);
          } else if constexpr (std::is_same_v<T, Disc>) {
            items.push_back({p.center, p.radius});
          } else if constexpr (std::is_same_v<T, Segment>) {
            add_point(p.a);
            add_point(p.b);
          } else {
            add_point(p.p);
          }
        },
        prim);
  }
  // Dedupe identical items.
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    if (a.c.x() != b.c.x()) return a.c.x() < b.c.x();
    if (a.c.y() != b.c.y()) return a.c.y() < b.c.y();
    return a.r < b.r;
  });
  items.erase(std::unique(items.begin(), items.end(),
                          [](const Item& a, const Item& b) {
                            return a.c == b.c && a.r == b.r;
                          }),
              items.end());

  auto support_at = [&](const Item& it, double th) {
    return it.c.dot(Vec2(std::cos(th), std::sin(th))) + it.r;
  };
  auto argmax_at = [&](double th) {
    std::size_t best = 0;
    double bv = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < items.size(); ++i) {
      const double v = support_at(items[i], th);
      if (v > bv + 1e-15) {
        bv = v;
        best = i;
      }
    }
    return best;
  };

  if (items.size() == 1) {
    if (items[0].r > 0.0) return Region({Disc{items[0].c, items[0].r}});
    return Region({SinglePoint{items[0].c}});
  }

  // Breakpoints of the support envelope: crossings of pairwise support sinusoids.
  std::vector<double> brk;
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (std::size_t j = i + 1; j < items.size(); ++j) {
      const Vec2 d = items[i].c - items[j].c;
      const double A = d.norm();
      if (A <= 1e-15) continue;  // concentric: no crossing
      const double t = (items[j].r - items[i].r) / A;
      if (std::abs(t) > 1.0) continue;
      const double phi = std::atan2(d.y(), d.x());
      const double a0 = std::acos(clamp_unit(t));
      for (double th : {phi + a0, phi - a0}) {
        th = std::fmod(th, 2.0 * kPi);
        if (th < 0.0) th += 2.0 * kPi;
        brk.push_back(th);
      }
    }
  }
  std::sort(brk.begin(), brk.end());
  brk.erase(std::unique(brk.begin(), brk.end(),
                        [](double a, double b) { return std::abs(a - b) <= 1e-13; }),
            brk.end());
  if (brk.empty()) {
    // One item dominates everywhere.
    const Item& it = items[argmax_at(0.0)];
    if (it.r > 0.0) return Region({Disc{it.c, it.r}});
    return Region({SinglePoint{it.c}});
  }

  // Argmax item per envelope interval, in angle order.
  std::vector<std::pair<double, std::size_t>> segs;  // (start angle, item)
  for (std::size_t b = 0; b < brk.size(); ++b) {
    const double a0 = brk[b];
    const double a1 = b + 1 < brk.size() ? brk[b + 1] : brk[0] + 2.0 * kPi;
    const std::size_t who = argmax_at(0.5 * (a0 + a1));
    if (segs.empty() || segs.back().second != who) segs.emplace_back(a0, who);
  }
  // Merge the wrap-around: the leading segment really starts where the
  // trailing one does, one turn earlier.
  while (segs.size() > 1 && segs.front().second == segs.back().second) {
    segs.front().first = segs.back().first - 2.0 * kPi;
    segs.pop_back();
  }
  if (segs.size() == 1) {
    const Item& it = items[segs[0].second];
    if (it.r > 0.0) return Region({Disc{it.c, it.r}});
    return Region({SinglePoint{it.c}});
  }

  std::vector<Vec2> tangent_pts;
  std::set<std::size_t> disc_items;
  for (std::size_t s = 0; s < segs.size(); ++s) {
    const auto& [th, who] = segs[s];
    const Item& it = items[who];
    if (it.r > 0.0) disc_items.insert(who);
    const double th_end = s + 1 < segs.size() ? segs[s + 1].first : segs[0].first + 2.0 * kPi;
    const Vec2 u0(std::cos(th), std::sin(th));
    const Vec2 u1(std::cos(th_end), std::sin(th_end));
    tangent_pts.push_back(it.c + it.r * u0);
    if (it.r > 0.0) tangent_pts.push_back(it.c + it.r * u1);
  }

  std::vector<Primitive> prims;
  ConvexPolygon tangent_poly = convex_hull(tangent_pts);
  if (!tangent_poly.empty()) prims.emplace_back(tangent_poly);
  for (std::size_t who : disc_items) prims.emplace_back(Disc{items[who].c, items[who].r});
  return Region(std::move(prims));
}

// ---------------------------------------------------------------------------
// JSON I/O

namespace {

Vec2 parse_pair(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw RegionSchemaError("expected [x,y] pair at " + where);
  }
  return Vec2(j[0].get<double>(), j[1].get<double>());
}

}  // namespace

Region parse_region_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw RegionSchemaError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("primitives") || !j["primitives"].is_array()) {
    throw RegionSchemaError("expected object with \"primitives\" array");
  }
  const auto& arr = j["primitives"];
  if (arr.empty()) throw RegionSchemaError("empty region");
  std::vector<Primitive> prims;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& p = arr[i];
    const std::string where = "primitives[" + std::to_string(i) + "]";
    if (!p.is_object() || !p.contains("type") || !p["type"].is_string()) {
      throw RegionSchemaError("missing type at " + where);
    }
    const std::string type = p["type"].get<std::string>();
    if (type == "polygon") {
      if (!p.contains("vertices") || !p["vertices"].is_array() || p["vertices"].empty()) {
        throw RegionSchemaError("polygon needs vertices at " + where);
      }
      std::vector<Vec2> vs;
      for (std::size_t k = 0; k < p["vertices"].size(); ++k) {
        vs.push_back(parse_pair(p["vertices"][k], where + ".vertices[" + std::to_string(k) + "]"));
      }
      prims.emplace_back(ConvexPolygon::from_ccw(std::move(vs)));
    } else if (type == "disc") {
      if (!p.contains("center") || !p.contains("radius") || !p["radius"].is_number()) {
        throw RegionSchemaError("disc needs center and radius at " + where);
      }
      const double r = p["radius"].get<double>();
      if (!(r > 0.0)) throw RegionSchemaError("radius must be > 0 at " + where + ".radius");
      prims.emplace_back(Disc{parse_pair(p["center"], where + ".center"), r});
    } else if (type == "segment") {
      if (!p.contains("a") || !p.contains("b")) {
        throw RegionSchemaError("segment needs a and b at " + where);
      }
      const Vec2 a = parse_pair(p["a"], where + ".a");
      const Vec2 b = parse_pair(p["b"], where + ".b");
      if ((a - b).norm() <= 0.0) throw RegionSchemaError("degenerate segment at " + where);
      prims.emplace_back(Segment{a, b});
    } else if (type == "point") {
      if (!p.contains("p")) throw RegionSchemaError("point needs p at " + where);
      prims.emplace_back(SinglePoint{parse_pair(p["p"], where + ".p")});
    } else {
      throw RegionSchemaError("unknown primitive type \"" + type + "\" at " + where);
    }
  }
  try {
    return Region(std::move(prims));
  } catch (const std::invalid_argument& e) {
    throw RegionSchemaError(e.what());
  }
}

Region load_region(const std::string& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const std::runtime_error& e) {
    throw RegionSchemaError(e.what());
  }
  return parse_region_json(text);
}

std::string region_to_json(const Region& region) {
  std::string out = "{\"primitives\":[";
  bool first = true;
  for (const Primitive& prim : region.primitives()) {
    if (!first) out += ",";
    first = false;
    std::visit(
        [&](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, ConvexPolygon>) {
            out += "{\"type\":\"polygon\",\"vertices\":[";
            for (std::size_t i = 0; i < p.vertices().size(); ++i) {
              if (i) out += ",";
              out += format_point(p.vertices()[i].x(), p.vertices()[i].y());
            }
            out += "]}";
          } else if constexpr (std::is_same_v<T, Disc>) {
            out += "{\"type\":\"disc\",\"center\":" + format_point(p.center.x(), p.center.y()) +
                   ",\"radius\":" + format_double(p.radius) + "}";
          } else if constexpr (std::is_same_v<T, Segment>) {
            out += "{\"type\":\"segment\",\"a\":" + format_point(p.a.x(), p.a.y()) +
                   ",\"b\":" + format_point(p.b.x(), p.b.y()) + "}";
          } else {
            out += "{\"type\":\"point\",\"p\":" + format_point(p.p.x(), p.p.y()) + "}";
          }
        },
        prim);
  }
  out += "]}\n";
  return out;
}

void save_region(const Region& region, const std::string& path) {
  write_text_file(path, region_to_json(region));
}

}  // namespace uf
