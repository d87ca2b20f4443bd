#include "uf/unfolded.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace uf {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct PolyData {
  std::vector<Vec2> v;
};

// Direction-independent arrangement data for one region.
struct Prep {
  std::vector<PolyData> polys;            // full polygons (>= 3 vertices)
  std::vector<Disc> discs;                // deduped
  std::vector<std::pair<Vec2, Vec2>> segs;  // segments and 2-vertex polygons
  std::vector<Vec2> pts;                  // isolated points, 1-vertex polygons
  std::vector<Vec2> critical_pts;         // endpoints plus boundary crossings
  std::vector<Vec2> pverts;               // polygon vertices, flattened
  std::vector<int> poly_off;              // polys.size() + 1 offsets into pverts
  double scale = 1.0;

  Prep(const Region& region, bool with_crossings);
};

void seg_seg_crossings(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d,
                       std::vector<Vec2>& out) {
  const Vec2 r = b - a;
  const Vec2 s = d - c;
  const double den = cross2(r, s);
  if (std::abs(den) < 1e-15 * (r.norm() * s.norm() + 1e-300)) return;  // parallel/collinear
  const double t = cross2(c - a, s) / den;
  const double u = cross2(c - a, r) / den;
  if (t < 0.0 || t > 1.0 || u < 0.0 || u > 1.0) return;
  out.push_back(a + t * r);
}

void seg_circle_crossings(const Vec2& a, const Vec2& b, const Vec2& c, double r,
                          std::vector<Vec2>& out) {
  const Vec2 e = b - a;
  const Vec2 w = a - c;
  const double A = e.squaredNorm();
  if (A <= 0.0) return;
  const double B = 2.0 * e.dot(w);
  const double C = w.squaredNorm() - r * r;
  const double D = B * B - 4.0 * A * C;
  if (D < 0.0) return;
  const double sq = std::sqrt(D);
  for (double t : {(-B - sq) / (2.0 * A), (-B + sq) / (2.0 * A)}) {
    if (t >= 0.0 && t <= 1.0) out.push_back(a + t * e);
  }
}

void circle_circle_crossings(const Disc& p, const Disc& q, std::vector<Vec2>& out) {
  const Vec2 d = q.center - p.center;
  const double dist = d.norm();
  if (dist <= 1e-15) return;
  const double a = (dist * dist + p.radius * p.radius - q.radius * q.radius) / (2.0 * dist);
  const double h2 = p.radius * p.radius - a * a;
  if (h2 < 0.0) return;
  const double h = std::sqrt(h2);
  const Vec2 u = d / dist;
  const Vec2 n(-u.y(), u.x());
  const Vec2 base = p.center + a * u;
  out.push_back(base + h * n);
  if (h > 0.0) out.push_back(base - h * n);
}

Prep::Prep(const Region& region, bool with_crossings) {
  for (const Primitive& prim : region.primitives()) {
    std::visit(
        [&](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, ConvexPolygon>) {
            if (p.size() >= 3) {
              polys.push_back({p.vertices()});
            } else if (p.size() == 2) {
              segs.emplace_back(p.vertices()[0], p.vertices()[1]);
            } else if (p.size() == 1) {
              pts.push_back(p.vertices()[0]);
            }
          } else if constexpr (std::is_same_v<T, Disc>) {
            for (const Disc& d : discs) {
              if (d.center == p.center && d.radius == p.radius) return;
            }
            discs.push_back(p);
          } else if constexpr (std::is_same_v<T, Segment>) {
            segs.emplace_back(p.a, p.b);
          } else {
            pts.push_back(p.p);
          }
        },
        prim);
  }
  auto eat_scale = [&](const Vec2& p) {
    scale = std::max({scale, std::abs(p.x()), std::abs(p.y())});
  };
  std::vector<std::pair<Vec2, Vec2>> straights = segs;
  for (const PolyData& pd : polys) {
    for (std::size_t i = 0; i < pd.v.size(); ++i) {
      straights.emplace_back(pd.v[i], pd.v[(i + 1) % pd.v.size()]);
    }
  }
  for (const auto& [a, b] : straights) {
    critical_pts.push_back(a);
    critical_pts.push_back(b);
    eat_scale(a);
    eat_scale(b);
  }
  for (const Vec2& p : pts) {
    critical_pts.push_back(p);
    eat_scale(p);
  }
  for (const Disc& d : discs) {
    eat_scale(d.center + Vec2(d.radius, d.radius));
    eat_scale(d.center - Vec2(d.radius, d.radius));
  }
  poly_off.push_back(0);
  for (const PolyData& pd : polys) {
    for (const Vec2& p : pd.v) pverts.push_back(p);
    poly_off.push_back(static_cast<int>(pverts.size()));
  }
  if (!with_crossings) return;

  // All pairwise boundary crossings; projected per direction they cut the
  // offset axis into slabs with constant chord structure.
  for (std::size_t i = 0; i < straights.size(); ++i) {
    for (std::size_t j = i + 1; j < straights.size(); ++j) {
      seg_seg_crossings(straights[i].first, straights[i].second, straights[j].first,
                        straights[j].second, critical_pts);
    }
  }
  for (const auto& [a, b] : straights) {
    for (const Disc& d : discs) seg_circle_crossings(a, b, d.center, d.radius, critical_pts);
  }
  for (std::size_t i = 0; i < discs.size(); ++i) {
    for (std::size_t j = i + 1; j < discs.size(); ++j) {
      circle_circle_crossings(discs[i], discs[j], critical_pts);
    }
  }

  // Points strictly inside the union never touch the merged chord structure;
  // merged endpoints and merge/split events live on the union boundary.
  const double keep_eps = 1e-12 * scale;
  auto strictly_interior = [&](const Vec2& p) {
    for (const PolyData& pd : polys) {
      bool inside = true;
      const std::size_t n = pd.v.size();
      for (std::size_t i = 0; i < n && inside; ++i) {
        const Vec2& a = pd.v[i];
        const Vec2& b = pd.v[(i + 1) % n];
        inside = cross2(b - a, p - a) > keep_eps * (b - a).norm();
      }
      if (inside) return true;
    }
    for (const Disc& d : discs) {
      if ((p - d.center).norm() < d.radius - keep_eps) return true;
    }
    return false;
  };
  critical_pts.erase(
      std::remove_if(critical_pts.begin(), critical_pts.end(), strictly_interior),
      critical_pts.end());
}

// Chord endpoint as a function of the line offset s.
struct Gen {
  enum Kind { kAffine, kArcLo, kArcUp } kind = kAffine;
  double sig0 = 0.0, tau0 = 0.0, slope = 0.0;  // affine
  double sigc = 0.0, tauc = 0.0, r = 0.0;      // arc

  double eval(double s) const {
    if (kind == kAffine) return tau0 + slope * (s - sig0);
    const double g2 = r * r - (s - sigc) * (s - sigc);
    const double g = g2 > 0.0 ? std::sqrt(g2) : 0.0;
    return kind == kArcLo ? tauc - g : tauc + g;
  }
  bool is_arc() const { return kind != kAffine; }
};

struct TaggedInterval {
  double lo = 0.0, hi = 0.0;
  Gen glo, ghi;
};

struct Workspace {
  std::vector<double> crit_s;
  std::vector<double> special_s;
  std::vector<TaggedInterval> ivals;
  std::vector<double> vsig, vtau;              // cached per polygon vertex
  std::vector<double> ismin, ismax, itaumax;   // per item (polys, discs, segs)
  std::vector<double> seg_sa, seg_sb, seg_ta, seg_tb;
  std::vector<double> slab_bound;
  std::vector<int> slab_order;
  std::vector<ChordInterval> comps;
};

// Per-line chord components with full degenerate handling. Used for the
// public chord_components op, oracle sampling, and special lines.
void components_at(const Prep& prep, const Vec2& vu, const Vec2& wu, double s,
                   std::vector<ChordInterval>& out) {
  out.clear();
  const double eps = 1e-12 * prep.scale;
  std::vector<ChordInterval> raw;
  for (const PolyData& pd : prep.polys) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    bool hit = false;
    const std::size_t n = pd.v.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2& a = pd.v[i];
      const Vec2& b = pd.v[(i + 1) % n];
      const double sa = a.dot(wu) - s;
      const double sb = b.dot(wu) - s;
      if (std::abs(sa) <= eps) {
        const double t = a.dot(vu);
        lo = std::min(lo, t);
        hi = std::max(hi, t);
        hit = true;
      }
      if ((sa < -eps && sb > eps) || (sa > eps && sb < -eps)) {
        const double t = sa / (sa - sb);
        const double tau = a.dot(vu) + t * (b.dot(vu) - a.dot(vu));
        lo = std::min(lo, tau);
        hi = std::max(hi, tau);
        hit = true;
      }
    }
    if (hit) raw.push_back({lo, hi});
  }
  for (const Disc& d : prep.discs) {
    const double sc = d.center.dot(wu) - s;
    const double g2 = d.radius * d.radius - sc * sc;
    if (g2 < 0.0) continue;
    const double g = g2 > 0.0 ? std::sqrt(g2) : 0.0;
    const double tc = d.center.dot(vu);
    raw.push_back({tc - g, tc + g});
  }
  for (const auto& [a, b] : prep.segs) {
    const double sa = a.dot(wu) - s;
    const double sb = b.dot(wu) - s;
    if (std::abs(sa) <= eps && std::abs(sb) <= eps) {
      const double ta = a.dot(vu), tb = b.dot(vu);
      raw.push_back({std::min(ta, tb), std::max(ta, tb)});
    } else if ((sa <= eps && sb >= -eps) || (sa >= -eps && sb <= eps)) {
      const double den = sa - sb;
      if (std::abs(den) > 0.0) {
        const double t = std::clamp(sa / den, 0.0, 1.0);
        const double tau = a.dot(vu) + t * (b.dot(vu) - a.dot(vu));
        raw.push_back({tau, tau});
      }
    }
  }
  for (const Vec2& p : prep.pts) {
    if (std::abs(p.dot(wu) - s) <= eps) {
      const double t = p.dot(vu);
      raw.push_back({t, t});
    }
  }
  if (raw.empty()) return;
  std::sort(raw.begin(), raw.end(),
            [](const ChordInterval& a, const ChordInterval& b) { return a.lo < b.lo; });
  ChordInterval cur = raw[0];
  for (std::size_t i = 1; i < raw.size(); ++i) {
    if (raw[i].lo <= cur.hi + eps) {
      cur.hi = std::max(cur.hi, raw[i].hi);
    } else {
      out.push_back(cur);
      cur = raw[i];
    }
  }
  out.push_back(cur);
}

// Tagged intervals at a slab-interior line built from the per-direction
// caches; no degenerate cases can occur strictly inside a slab.
void tagged_intervals_at(const Prep& prep, const Vec2& vu, const Vec2& wu, double s,
                         Workspace& ws) {
  ws.ivals.clear();
  const std::size_t np = prep.polys.size();
  const std::size_t nd = prep.discs.size();
  const std::size_t nsg = prep.segs.size();
  for (std::size_t p = 0; p < np; ++p) {
    if (!(ws.ismin[p] < s && s < ws.ismax[p])) continue;
    const int off = prep.poly_off[p];
    const int end = prep.poly_off[p + 1];
    const int n = end - off;
    TaggedInterval ti;
    ti.lo = std::numeric_limits<double>::infinity();
    ti.hi = -ti.lo;
    bool hit = false;
    for (int i = 0; i < n; ++i) {
      const int k0 = off + i;
      const int k1 = off + (i + 1 == n ? 0 : i + 1);
      const double sa = ws.vsig[k0];
      const double sb = ws.vsig[k1];
      if ((sa < s) == (sb < s) || sa == sb) continue;
      const double ta = ws.vtau[k0];
      const double tb = ws.vtau[k1];
      const double slope = (tb - ta) / (sb - sa);
      const double tau = ta + slope * (s - sa);
      if (tau < ti.lo) {
        ti.lo = tau;
        ti.glo = Gen{Gen::kAffine, sa, ta, slope, 0, 0, 0};
      }
      if (tau > ti.hi) {
        ti.hi = tau;
        ti.ghi = Gen{Gen::kAffine, sa, ta, slope, 0, 0, 0};
      }
      hit = true;
    }
    if (hit) ws.ivals.push_back(ti);
  }
  for (std::size_t d = 0; d < nd; ++d) {
    const std::size_t item = np + d;
    if (!(ws.ismin[item] < s && s < ws.ismax[item])) continue;
    const Disc& dc = prep.discs[d];
    const double sc = dc.center.dot(wu);
    const double g2 = dc.radius * dc.radius - (s - sc) * (s - sc);
    if (g2 <= 0.0) continue;
    const double g = std::sqrt(g2);
    const double tc = dc.center.dot(vu);
    TaggedInterval ti;
    ti.lo = tc - g;
    ti.hi = tc + g;
    ti.glo = Gen{Gen::kArcLo, 0, 0, 0, sc, tc, dc.radius};
    ti.ghi = Gen{Gen::kArcUp, 0, 0, 0, sc, tc, dc.radius};
    ws.ivals.push_back(ti);
  }
  for (std::size_t q = 0; q < nsg; ++q) {
    const double sa = ws.seg_sa[q];
    const double sb = ws.seg_sb[q];
    if ((sa < s) == (sb < s) || sa == sb) continue;
    const double ta = ws.seg_ta[q];
    const double tb = ws.seg_tb[q];
    const double slope = (tb - ta) / (sb - sa);
    const double tau = ta + slope * (s - sa);
    Gen g{Gen::kAffine, sa, ta, slope, 0, 0, 0};
    ws.ivals.push_back({tau, tau, g, g});
  }
}

double merge_and_scan(std::vector<TaggedInterval>& ivals, double merge_eps, double sa, double sb,
                      double best) {
  if (ivals.empty()) return best;
  std::sort(ivals.begin(), ivals.end(),
            [](const TaggedInterval& a, const TaggedInterval& b) { return a.lo < b.lo; });
  auto scan = [&](const TaggedInterval& ti) {
    const Gen& gl = ti.glo;
    const Gen& gh = ti.ghi;
    best = std::max(best, 0.5 * (gl.eval(sa) + gh.eval(sa)));
    best = std::max(best, 0.5 * (gl.eval(sb) + gh.eval(sb)));
    if (!gl.is_arc() && !gh.is_arc()) return;
    if (gl.is_arc() && gh.is_arc() && gl.sigc == gh.sigc && gl.tauc == gh.tauc &&
        gl.r == gh.r) {
      best = std::max(best, gl.tauc);
      return;
    }
    double cand[2];
    int nc = 0;
    if (gl.is_arc() && gh.is_arc()) {
      // d/ds[(tau1 - g1 + tau2 + g2)/2] = 0  =>  (s-s1) r2 = +- (s-s2) r1.
      for (double e : {1.0, -1.0}) {
        const double den = gh.r - e * gl.r;
        if (std::abs(den) < 1e-14) continue;
        cand[nc++] = (gl.sigc * gh.r - e * gh.sigc * gl.r) / den;
      }
    } else {
      const Gen& arc = gl.is_arc() ? gl : gh;
      const Gen& aff = gl.is_arc() ? gh : gl;
      const double beta = aff.slope;
      const double f = beta * arc.r / std::sqrt(1.0 + beta * beta);
      // Stationary offsets of (affine + arc)/2; both signs kept, off-slab
      // and non-stationary candidates are harmless extra samples.
      cand[nc++] = arc.sigc + f;
      cand[nc++] = arc.sigc - f;
    }
    for (int k = 0; k < nc; ++k) {
      const double s = cand[k];
      if (s > sa && s < sb) best = std::max(best, 0.5 * (gl.eval(s) + gh.eval(s)));
    }
  };
  TaggedInterval cur = ivals[0];
  for (std::size_t i = 1; i < ivals.size(); ++i) {
    const TaggedInterval& nx = ivals[i];
    if (nx.lo <= cur.hi + merge_eps) {
      if (nx.hi > cur.hi) {
        cur.hi = nx.hi;
        cur.ghi = nx.ghi;
      }
    } else {
      scan(cur);
      cur = nx;
    }
  }
  scan(cur);
  return best;
}

double evaluate_direction(const Prep& prep, const Vec2& vu, Workspace& ws) {
  const Vec2 wu = perp_cw(vu);
  const double eps = 1e-12 * prep.scale;
  double best = -std::numeric_limits<double>::infinity();

  // Per-direction caches: vertex projections and item ranges.
  const std::size_t np = prep.polys.size();
  const std::size_t nd = prep.discs.size();
  const std::size_t nsg = prep.segs.size();
  const std::size_t nitems = np + nd + nsg;
  ws.vsig.resize(prep.pverts.size());
  ws.vtau.resize(prep.pverts.size());
  for (std::size_t k = 0; k < prep.pverts.size(); ++k) {
    ws.vsig[k] = prep.pverts[k].dot(wu);
    ws.vtau[k] = prep.pverts[k].dot(vu);
  }
  ws.ismin.assign(nitems, 0.0);
  ws.ismax.assign(nitems, 0.0);
  ws.itaumax.assign(nitems, 0.0);
  for (std::size_t p = 0; p < np; ++p) {
    double smin = std::numeric_limits<double>::infinity();
    double smax = -smin, tmax = -smin;
    for (int k = prep.poly_off[p]; k < prep.poly_off[p + 1]; ++k) {
      smin = std::min(smin, ws.vsig[k]);
      smax = std::max(smax, ws.vsig[k]);
      tmax = std::max(tmax, ws.vtau[k]);
    }
    ws.ismin[p] = smin;
    ws.ismax[p] = smax;
    ws.itaumax[p] = tmax;
  }
  for (std::size_t d = 0; d < nd; ++d) {
    const Disc& dc = prep.discs[d];
    const double sc = dc.center.dot(wu);
    ws.ismin[np + d] = sc - dc.radius;
    ws.ismax[np + d] = sc + dc.radius;
    ws.itaumax[np + d] = dc.center.dot(vu) + dc.radius;
  }
  ws.seg_sa.resize(nsg);
  ws.seg_sb.resize(nsg);
  ws.seg_ta.resize(nsg);
  ws.seg_tb.resize(nsg);
  for (std::size_t q = 0; q < nsg; ++q) {
    const auto& [a, b] = prep.segs[q];
    ws.seg_sa[q] = a.dot(wu);
    ws.seg_sb[q] = b.dot(wu);
    ws.seg_ta[q] = a.dot(vu);
    ws.seg_tb[q] = b.dot(vu);
    const std::size_t item = np + nd + q;
    ws.ismin[item] = std::min(ws.seg_sa[q], ws.seg_sb[q]);
    ws.ismax[item] = std::max(ws.seg_sa[q], ws.seg_sb[q]);
    ws.itaumax[item] = std::max(ws.seg_ta[q], ws.seg_tb[q]);
  }

  ws.crit_s.clear();
  for (const Vec2& p : prep.critical_pts) ws.crit_s.push_back(p.dot(wu));
  for (std::size_t d = 0; d < nd; ++d) {
    ws.crit_s.push_back(ws.ismin[np + d]);
    ws.crit_s.push_back(ws.ismax[np + d]);
  }
  std::sort(ws.crit_s.begin(), ws.crit_s.end());
  const double dedupe = 1e-13 * prep.scale;
  ws.crit_s.erase(std::unique(ws.crit_s.begin(), ws.crit_s.end(),
                              [&](double a, double b) { return b - a <= dedupe; }),
                  ws.crit_s.end());

  // Lines carrying measure-zero structure have to be sampled exactly:
  // isolated points and straight pieces parallel to v.
  ws.special_s.clear();
  for (const Vec2& p : prep.pts) ws.special_s.push_back(p.dot(wu));
  for (std::size_t q = 0; q < nsg; ++q) {
    if (std::abs(ws.seg_sa[q] - ws.seg_sb[q]) <= eps) ws.special_s.push_back(ws.seg_sa[q]);
  }
  for (std::size_t p = 0; p < np; ++p) {
    const int off = prep.poly_off[p];
    const int n = prep.poly_off[p + 1] - off;
    for (int i = 0; i < n; ++i) {
      const int k1 = off + (i + 1 == n ? 0 : i + 1);
      if (std::abs(ws.vsig[off + i] - ws.vsig[k1]) <= eps) ws.special_s.push_back(ws.vsig[off + i]);
    }
  }
  std::sort(ws.special_s.begin(), ws.special_s.end());
  ws.special_s.erase(std::unique(ws.special_s.begin(), ws.special_s.end(),
                                 [&](double a, double b) { return b - a <= dedupe; }),
                     ws.special_s.end());
  for (double s : ws.special_s) {
    components_at(prep, vu, wu, s, ws.comps);
    for (const ChordInterval& c : ws.comps) best = std::max(best, c.mid());
  }

  // Upper bound per slab: the largest tau-support among items that span it.
  // Slabs are then visited best-bound first so most prune against the
  // running maximum.
  const std::size_t nslab = ws.crit_s.size() > 0 ? ws.crit_s.size() - 1 : 0;
  ws.slab_bound.assign(nslab, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < nitems; ++i) {
    if (!(ws.ismax[i] > ws.ismin[i])) continue;
    auto lo_it = std::lower_bound(ws.crit_s.begin(), ws.crit_s.end(), ws.ismin[i]);
    std::size_t lo = static_cast<std::size_t>(lo_it - ws.crit_s.begin());
    lo = lo > 0 ? lo - 1 : 0;
    auto hi_it = std::upper_bound(ws.crit_s.begin(), ws.crit_s.end(), ws.ismax[i]);
    std::size_t hi = static_cast<std::size_t>(hi_it - ws.crit_s.begin());
    hi = std::min(hi + 1, nslab);
    for (std::size_t k = lo; k < hi; ++k) {
      ws.slab_bound[k] = std::max(ws.slab_bound[k], ws.itaumax[i]);
    }
  }
  ws.slab_order.resize(nslab);
  for (std::size_t k = 0; k < nslab; ++k) ws.slab_order[k] = static_cast<int>(k);
  std::sort(ws.slab_order.begin(), ws.slab_order.end(),
            [&](int a, int b) { return ws.slab_bound[a] > ws.slab_bound[b]; });

  const double merge_eps = 1e-12 * prep.scale;
  for (int k : ws.slab_order) {
    if (ws.slab_bound[k] <= best) break;
    const double sa = ws.crit_s[k];
    const double sb = ws.crit_s[k + 1];
    if (!(sb - sa > 0.0)) continue;
    const double sm = 0.5 * (sa + sb);
    tagged_intervals_at(prep, vu, wu, sm, ws);
    best = merge_and_scan(ws.ivals, merge_eps, sa, sb, best);
  }
  return best;
}

std::vector<double> uniform_angles(int m) {
  std::vector<double> a(m);
  for (int k = 0; k < m; ++k) a[k] = kTwoPi * k / m;
  return a;
}

std::vector<double> merged_angles(std::vector<double> a) {
  for (double& x : a) {
    x = std::fmod(x, kTwoPi);
    if (x < 0.0) x += kTwoPi;
  }
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end(), [](double p, double q) { return q - p <= 1e-13; }),
          a.end());
  if (a.size() > 1 && (a.front() + kTwoPi) - a.back() <= 1e-13) a.pop_back();
  return a;
}

CapLevelProfile profile_for(const Prep& prep, const std::vector<double>& angles, int m) {
  CapLevelProfile prof;
  prof.direction_count = m;
  prof.entries.reserve(angles.size());
  for (double a : angles) {
    prof.entries.push_back(CapLevel{Direction::from_angle(a), 0.0, 0.0});
  }
  const int threads = std::min<int>(direction_sweep_threads(), std::max<std::size_t>(angles.size(), 1));
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    Workspace ws;
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= angles.size()) break;
      const double l = evaluate_direction(prep, prof.entries[i].v.u(), ws);
      prof.entries[i].lower = l;
      prof.entries[i].upper = l;
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  return prof;
}

ConvexPolygon outer_from_profile(const CapLevelProfile& prof) {
  // Intersect in a frame anchored at the least-squares center of the
  // constraint lines, with a hair of dilation: point-like intersections
  // stay nonempty under floating-point noise and the result is still an
  // outer approximation.
  Eigen::Matrix2d gram = Eigen::Matrix2d::Zero();
  Vec2 rhs = Vec2::Zero();
  for (const CapLevel& e : prof.entries) {
    gram += e.v.u() * e.v.u().transpose();
    rhs += e.upper * e.v.u();
  }
  Vec2 anchor = Vec2::Zero();
  const double det = gram(0, 0) * gram(1, 1) - gram(0, 1) * gram(1, 0);
  if (std::abs(det) > 1e-9) {
    anchor = Vec2((gram(1, 1) * rhs.x() - gram(0, 1) * rhs.y()) / det,
                  (gram(0, 0) * rhs.y() - gram(1, 0) * rhs.x()) / det);
  }

  std::vector<HalfPlane> planes;
  planes.reserve(prof.entries.size());
  double spread = 0.0;
  for (const CapLevel& e : prof.entries) {
    spread = std::max(spread, std::abs(e.upper - anchor.dot(e.v.u())));
  }
  for (const CapLevel& e : prof.entries) {
    const double b = e.upper - anchor.dot(e.v.u());
    planes.emplace_back(e.v, b + 1e-12 * (1.0 + spread));
  }
  auto poly = halfplane_intersection(planes);
  if (!poly) throw std::runtime_error("unfolded region approximation is empty");
  return poly->translated(anchor);
}

}  // namespace

std::vector<ChordInterval> chord_components(const Region& region, const Direction& v, double s) {
  Prep prep(region, /*with_crossings=*/false);
  std::vector<ChordInterval> out;
  components_at(prep, v.u(), perp_cw(v.u()), s, out);
  return out;
}

CapLevel cap_level_exact(const Region& region, const Direction& v, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  Prep prep(region, true);
  Workspace ws;
  const double l = evaluate_direction(prep, v.u(), ws);
  return CapLevel{v, l, l};
}

CapLevel cap_level_oracle(const Region& region, const Direction& v, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("h must be positive");
  Prep prep(region, true);
  const Vec2 wu = perp_cw(v.u());
  const double smax = region.support(Direction(wu));
  const double smin = -region.support(Direction(Vec2(-wu)));
  std::vector<ChordInterval> comps;
  auto line_max = [&](double s) {
    components_at(prep, v.u(), wu, s, comps);
    double m = -std::numeric_limits<double>::infinity();
    for (const ChordInterval& c : comps) m = std::max(m, c.mid());
    return m;
  };

  std::vector<std::pair<double, double>> samples;  // (value, s)
  std::vector<double> slopes;
  double prev = std::numeric_limits<double>::quiet_NaN();
  const long steps = std::lround(std::ceil((smax - smin) / h));
  for (long k = 0; k <= steps; ++k) {
    const double s = std::min(smin + k * h, smax);
    const double m = line_max(s);
    if (std::isfinite(m)) samples.emplace_back(m, s);
    if (!std::isnan(prev) && std::isfinite(m)) slopes.push_back(std::abs(m - prev) / h);
    prev = std::isfinite(m) ? m : std::numeric_limits<double>::quiet_NaN();
  }

  // Chord structure can change inside a single pitch step (two boundary
  // pieces crossing almost tangentially), so also sample finely around the
  // projections of pairwise boundary crossings. The values still come only
  // from sampled chords.
  {
    std::vector<double> events;
    for (const Vec2& p : prep.critical_pts) events.push_back(p.dot(wu));
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end(),
                             [&](double a, double b) { return b - a <= 0.5 * h; }),
                 events.end());
    for (double s0 : events) {
      for (int i = -128; i <= 128; ++i) {
        const double s = std::clamp(s0 + 2.0 * h * i / 128.0, smin, smax);
        const double m = line_max(s);
        if (std::isfinite(m)) samples.emplace_back(m, s);
      }
    }
  }
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& [m, s] : samples) best = std::max(best, m);

  // The maximum can sit on a narrow spike (chords collapsing onto a vertex)
  // or just past a component split narrower than the pitch, so zoom into the
  // strongest coarse samples and the biggest sample-to-sample jumps with
  // shrinking grids. Still brute force: only chord sampling, no critical
  // offsets.
  std::vector<double> visited;
  auto refine_window = [&](double s0) {
    for (double sv : visited) {
      if (std::abs(sv - s0) <= 2.0 * h) return;
    }
    visited.push_back(s0);
    double center = s0;
    double half = 1.5 * h;
    for (int round = 0; round < 16; ++round) {
      double local_best = -std::numeric_limits<double>::infinity();
      double local_arg = center;
      for (int i = -8; i <= 8; ++i) {
        const double s = std::clamp(center + half * i / 8.0, smin, smax);
        const double m = line_max(s);
        if (m > local_best) {
          local_best = m;
          local_arg = s;
        }
      }
      best = std::max(best, local_best);
      center = local_arg;
      half /= 5.0;
    }
  };
  auto by_value = samples;
  std::sort(by_value.rbegin(), by_value.rend());
  for (std::size_t i = 0; i < by_value.size() && visited.size() < 32; ++i) {
    refine_window(by_value[i].second);
  }
  std::vector<std::pair<double, double>> jumps;  // (|delta|, window center)
  std::sort(samples.begin(), samples.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
  for (std::size_t k = 0; k + 1 < samples.size(); ++k) {
    jumps.emplace_back(std::abs(samples[k + 1].first - samples[k].first),
                       0.5 * (samples[k].second + samples[k + 1].second));
  }
  std::sort(jumps.rbegin(), jumps.rend());
  const std::size_t limit = visited.size() + 32;
  for (std::size_t i = 0; i < jumps.size() && visited.size() < limit; ++i) {
    refine_window(jumps[i].second);
  }

  // Heuristic Lipschitz estimate: a high quantile of sampled slopes, which
  // discards jump discontinuities; the bracket is not certified.
  double c_est = 1.0;
  if (!slopes.empty()) {
    std::sort(slopes.begin(), slopes.end());
    c_est += slopes[static_cast<std::size_t>(0.9 * (slopes.size() - 1))];
  }
  return CapLevel{v, best - c_est * h, best + c_est * h};
}

bool reflection_containment(const Region& region, const Direction& v, double b, double tol) {
  const CapLevel l = cap_level_exact(region, v, std::max(tol, 1e-12));
  return l.upper <= b + 0.5 * tol;
}

namespace {

// Orientations (mod pi) of every straight boundary piece.
std::vector<double> straight_piece_orientations(const Region& region) {
  std::vector<double> lines;
  auto add_dir = [&](const Vec2& a, const Vec2& b) {
    const Vec2 d = b - a;
    const double n = d.norm();
    if (n <= 0.0) return;
    double th = std::atan2(d.y() / n, d.x() / n);
    th = std::fmod(th, kPi);
    if (th < 0.0) th += kPi;
    lines.push_back(th);
  };
  for (const Primitive& prim : region.primitives()) {
    std::visit(
        [&](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, ConvexPolygon>) {
            const auto& vs = p.vertices();
            if (vs.size() >= 2) {
              for (std::size_t i = 0; i < vs.size(); ++i) {
                add_dir(vs[i], vs[(i + 1) % vs.size()]);
                if (vs.size() == 2) break;
              }
            }
          } else if constexpr (std::is_same_v<T, Segment>) {
            add_dir(p.a, p.b);
          }
        },
        prim);
  }
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end(),
                          [](double a, double b) { return b - a <= 1e-13; }),
              lines.end());
  return lines;
}

}  // namespace

std::vector<double> critical_direction_angles(const Region& region) {
  std::vector<double> angles;
  for (double th : straight_piece_orientations(region)) {
    angles.push_back(th);
    angles.push_back(th + kPi);
  }
  return merged_angles(std::move(angles));
}

std::vector<double> fold_direction_angles(const Region& region) {
  // The cap level can kink or jump exactly where a reflection maps one
  // straight boundary line onto another: at edge directions and at the
  // normals of the two line bisectors of every pair of orientations.
  const std::vector<double> lines = straight_piece_orientations(region);
  std::vector<double> angles;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i; j < lines.size(); ++j) {
      const double m = 0.5 * (lines[i] + lines[j]);
      for (double th : {m, m + 0.5 * kPi, m + kPi, m + 1.5 * kPi}) angles.push_back(th);
    }
  }
  return merged_angles(std::move(angles));
}

CapLevelProfile cap_level_profile(const Region& region, const std::vector<double>& angles,
                                  double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  Prep prep(region, true);
  return profile_for(prep, merged_angles(angles), static_cast<int>(angles.size()));
}

UfApproximation unfolded_region(const Region& region, int m, double tol) {
  if (m < 8) throw std::invalid_argument("m must be >= 8");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  std::vector<double> angles = uniform_angles(m);
  for (double a : fold_direction_angles(region)) angles.push_back(a);
  Prep prep(region, true);
  CapLevelProfile prof = profile_for(prep, merged_angles(angles), m);
  UfApproximation uf;
  uf.outer = outer_from_profile(prof);
  uf.profile = std::move(prof);
  uf.directions = m;
  uf.tolerance = tol;
  return uf;
}

int direction_sweep_threads() {
  if (const char* env = std::getenv("UF_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace {

std::vector<double> combined_angles(int m, const Region& a, const Region& b) {
  std::vector<double> angles = uniform_angles(m);
  for (double x : critical_direction_angles(a)) angles.push_back(x);
  for (double x : critical_direction_angles(b)) angles.push_back(x);
  return merged_angles(std::move(angles));
}

}  // namespace

TheoremReport check_theorem_convex_hull(const Region& region, int m, double tol) {
  const Region hull = convex_hull_region(region);
  const std::vector<double> angles = combined_angles(m, region, hull);
  Prep prep_region(region, true);
  Prep prep_hull(hull, true);
  const CapLevelProfile pr = profile_for(prep_region, angles, m);
  const CapLevelProfile ph = profile_for(prep_hull, angles, m);

  TheoremReport rep;
  rep.min_margin = std::numeric_limits<double>::infinity();
  rep.per_direction.reserve(angles.size());
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const double margin = pr.entries[i].lower - ph.entries[i].upper;
    rep.per_direction.push_back({angles[i], margin});
    rep.min_margin = std::min(rep.min_margin, margin);
  }
  rep.uf_region = outer_from_profile(pr);
  rep.uf_other = outer_from_profile(ph);
  const ContainmentReport inc =
      contains_polygon(PolygonSet::from_convex(rep.uf_region), rep.uf_other, tol);
  rep.holds = rep.min_margin >= -tol && inc.contains;
  return rep;
}

TheoremReport check_theorem_parallel_body(const Region& region, double delta, int m, double tol) {
  const Region body = parallel_body(region, delta);
  const std::vector<double> angles = combined_angles(m, region, body);
  Prep prep_region(region, true);
  Prep prep_body(body, true);
  const CapLevelProfile pr = profile_for(prep_region, angles, m);
  const CapLevelProfile pb = profile_for(prep_body, angles, m);

  TheoremReport rep;
  rep.min_margin = std::numeric_limits<double>::infinity();
  rep.max_equality_gap = 0.0;
  rep.per_direction.reserve(angles.size());
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const double margin = pr.entries[i].lower - pb.entries[i].upper;
    rep.per_direction.push_back({angles[i], margin});
    rep.min_margin = std::min(rep.min_margin, margin);
    rep.max_equality_gap = std::max(rep.max_equality_gap, std::abs(margin));
  }
  rep.uf_region = outer_from_profile(pr);
  rep.uf_other = outer_from_profile(pb);
  rep.holds = rep.min_margin >= -tol;
  if (region.primitives().size() == 1) {
    rep.convex_equality = rep.max_equality_gap <= tol;
    rep.holds = rep.holds && *rep.convex_equality;
  }
  return rep;
}

ConvCapReport check_conv_cap_inclusion(const Region& region, const Direction& v, double b,
                                       double tol) {
  constexpr int kArcSamples = 128;
  std::vector<Vec2> cap_pts;
  const Vec2 vu = v.u();
  for (const Primitive& prim : region.primitives()) {
    std::visit(
        [&](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          const HalfPlane keep_above(Direction(Vec2(-vu)), -b);  // x.v >= b
          if constexpr (std::is_same_v<T, ConvexPolygon>) {
            const ConvexPolygon clipped = p.clipped(keep_above);
            for (const Vec2& q : clipped.vertices()) cap_pts.push_back(q);
          } else if constexpr (std::is_same_v<T, Disc>) {
            const double t = (b - p.center.dot(vu)) / p.radius;
            if (t >= 1.0) return;  // cap empty (tangent point has measure zero)
            const double phi = std::atan2(vu.y(), vu.x());
            const double a0 = t <= -1.0 ? kPi : std::acos(t);
            for (int k = 0; k <= kArcSamples; ++k) {
              const double th = phi - a0 + 2.0 * a0 * k / kArcSamples;
              cap_pts.push_back(p.center + p.radius * Vec2(std::cos(th), std::sin(th)));
            }
            if (t > -1.0) {
              // Chord endpoints close the cap exactly.
              const Vec2 wu = perp_cw(vu);
              const double g = p.radius * std::sqrt(std::max(0.0, 1.0 - t * t));
              const Vec2 base = p.center + (b - p.center.dot(vu)) * vu;
              cap_pts.push_back(base + g * wu);
              cap_pts.push_back(base - g * wu);
            }
          } else if constexpr (std::is_same_v<T, Segment>) {
            const ConvexPolygon seg = ConvexPolygon::from_ccw({p.a, p.b}).clipped(keep_above);
            for (const Vec2& q : seg.vertices()) cap_pts.push_back(q);
          } else {
            if (p.p.dot(vu) >= b - 1e-12) cap_pts.push_back(p.p);
          }
        },
        prim);
  }
  ConvCapReport rep;
  const HalfPlane keep_above(Direction(Vec2(-vu)), -b);
  const ConvexPolygon rhs = region_convex_hull(region).outer.clipped(keep_above);
  rep.area_cap_of_conv = rhs.area();
  if (cap_pts.empty()) {
    rep.subset_holds = true;
    rep.strict = false;
    rep.margin = std::numeric_limits<double>::infinity();
    return rep;
  }
  const ConvexPolygon lhs = convex_hull(cap_pts);
  rep.area_conv_of_cap = lhs.area();
  const ContainmentReport inc = contains_polygon(PolygonSet::from_convex(rhs), lhs, tol);
  rep.subset_holds = inc.contains;
  rep.margin = inc.margin;
  // Strictness threshold absorbs the disc polygonization slack.
  double slack = 1e-9;
  for (const Primitive& prim : region.primitives()) {
    if (const auto* d = std::get_if<Disc>(&prim)) {
      slack += d->radius * d->radius * 4.0 * kPi * kPi * kPi /
               (3.0 * kArcSamples * kArcSamples);
      slack += d->radius * d->radius * kPi * kPi * kPi / (256.0 * 256.0);
    }
  }
  rep.strict = rep.area_cap_of_conv - rep.area_conv_of_cap > std::max(tol, slack);
  return rep;
}

}  // namespace uf
