#include "uf/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace uf {

namespace {

constexpr double kPi = std::numbers::pi;

// Gauss-Legendre n=5 on [0,1].
constexpr int kGauss = 5;
constexpr double kGx[kGauss] = {0.5, (1.0 - 0.5384693101056831) / 2.0,
                                (1.0 + 0.5384693101056831) / 2.0,
                                (1.0 - 0.9061798459386640) / 2.0,
                                (1.0 + 0.9061798459386640) / 2.0};
constexpr double kGw[kGauss] = {0.5688888888888889 / 2.0, 0.4786286704993665 / 2.0,
                                0.4786286704993665 / 2.0, 0.2369268850561891 / 2.0,
                                0.2369268850561891 / 2.0};

double tri_area(const Vec2& a, const Vec2& b, const Vec2& c) {
  return 0.5 * cross2(b - a, c - a);
}

}  // namespace

Kernel Kernel::riesz(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("riesz alpha must be > 0");
  return Kernel{kRiesz, alpha, 0.0};
}

Kernel Kernel::poisson(double t) {
  if (!(t > 0.0)) throw std::invalid_argument("poisson t must be > 0");
  return Kernel{kPoisson, 0.0, t};
}

Kernel Kernel::parse(const std::string& spec) {
  if (spec == "log") return log_kernel();
  const auto colon = spec.find(':');
  if (colon != std::string::npos) {
    const std::string head = spec.substr(0, colon);
    const std::string num = spec.substr(colon + 1);
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(num, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad kernel spec: " + spec);
    }
    if (used != num.size()) throw std::invalid_argument("bad kernel spec: " + spec);
    if (head == "riesz") return riesz(x);
    if (head == "poisson") return poisson(x);
  }
  throw std::invalid_argument("bad kernel spec: " + spec);
}

std::string Kernel::describe() const {
  switch (kind) {
    case kLog:
      return "log";
    case kRiesz:
      return "riesz:" + std::to_string(alpha);
    default:
      return "poisson:" + std::to_string(t);
  }
}

double Kernel::operator()(double r) const {
  switch (kind) {
    case kLog:
      return std::log(std::max(r, 1e-300));
    case kRiesz:
      return std::pow(r, alpha);
    default:
      return t * std::pow(r * r + t * t, -1.5);
  }
}

void QuadratureSpec::validate() const {
  if (degree < 3) throw std::invalid_argument("quadrature degree must be >= 3");
  if (max_cell_diameter < 0.0 || singular_split_radius < 0.0) {
    throw std::invalid_argument("quadrature radii must be positive");
  }
  if (disc_segments < 8) throw std::invalid_argument("disc_segments must be >= 8");
}

namespace {

// Vertical trapezoid decomposition of a union polygon set.
std::vector<std::array<Vec2, 3>> triangulate_set(const PolygonSet& set) {
  std::vector<std::array<Vec2, 3>> tris;
  std::vector<double> xs;
  for (const auto& loop : set.loops) {
    if (loop.pts.size() < 3) continue;
    for (const Vec2& p : loop.pts) xs.push_back(p.x());
  }
  if (xs.empty()) return tris;
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  struct Piece {
    double y1, y2;
  };
  std::vector<Piece> pieces;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    const double x1 = xs[k];
    const double x2 = xs[k + 1];
    if (!(x2 - x1 > 0.0)) continue;
    pieces.clear();
    for (const auto& loop : set.loops) {
      const std::size_t n = loop.pts.size();
      if (n < 3) continue;
      for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = loop.pts[i];
        const Vec2& b = loop.pts[(i + 1) % n];
        const double lo = std::min(a.x(), b.x());
        const double hi = std::max(a.x(), b.x());
        if (hi - lo <= 0.0) continue;  // vertical edge
        if (!(lo <= x1 + 1e-15 && hi >= x2 - 1e-15)) continue;  // must span the slab
        const double t1 = (x1 - a.x()) / (b.x() - a.x());
        const double t2 = (x2 - a.x()) / (b.x() - a.x());
        pieces.push_back({a.y() + t1 * (b.y() - a.y()), a.y() + t2 * (b.y() - a.y())});
      }
    }
    std::sort(pieces.begin(), pieces.end(),
              [](const Piece& p, const Piece& q) { return p.y1 + p.y2 < q.y1 + q.y2; });
    for (std::size_t i = 0; i + 1 < pieces.size(); i += 2) {
      const Piece& lo = pieces[i];
      const Piece& hi = pieces[i + 1];
      const Vec2 p00(x1, lo.y1), p10(x2, lo.y2), p11(x2, hi.y2), p01(x1, hi.y1);
      if (std::abs(tri_area(p00, p10, p11)) > 1e-14) tris.push_back({p00, p10, p11});
      if (std::abs(tri_area(p00, p11, p01)) > 1e-14) tris.push_back({p00, p11, p01});
    }
  }
  return tris;
}

}  // namespace

QuadratureDomain::QuadratureDomain(const Region& region, const QuadratureSpec& spec)
    : spec_(spec) {
  spec_.validate();
  std::vector<ConvexPolygon> polys;
  const int k = spec_.disc_segments;
  for (const Primitive& prim : region.primitives()) {
    std::visit(
        [&](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, ConvexPolygon>) {
            if (p.size() >= 3) polys.push_back(p);
          } else if constexpr (std::is_same_v<T, Disc>) {
            std::vector<Vec2> vs;
            vs.reserve(k);
            const double rout = p.radius / std::cos(kPi / k);
            for (int i = 0; i < k; ++i) {
              const double th = 2.0 * kPi * (i + 0.5) / k;
              vs.push_back(p.center + rout * Vec2(std::cos(th), std::sin(th)));
            }
            polys.push_back(ConvexPolygon::from_ccw(std::move(vs)));
          }
        },
        prim);
  }
  if (polys.empty()) throw std::domain_error("potential requires positive area");
  const PolygonSet set = polygon_union(polys);
  auto base = triangulate_set(set);
  if (base.empty()) throw std::domain_error("potential requires positive area");

  Vec2 lo, hi;
  region.bounds(lo, hi);
  diameter_ = (hi - lo).norm();
  const double max_cell =
      spec_.max_cell_diameter > 0.0 ? spec_.max_cell_diameter : diameter_ / 24.0;

  // Subdivide long triangles by splitting the longest edge.
  std::vector<std::array<Vec2, 3>> queue = std::move(base);
  while (!queue.empty()) {
    const auto t = queue.back();
    queue.pop_back();
    const double e0 = (t[1] - t[0]).norm();
    const double e1 = (t[2] - t[1]).norm();
    const double e2 = (t[0] - t[2]).norm();
    const double longest = std::max({e0, e1, e2});
    if (longest <= max_cell) {
      tris_.push_back({t[0], t[1], t[2]});
      continue;
    }
    int i = e0 >= e1 && e0 >= e2 ? 0 : (e1 >= e2 ? 1 : 2);
    const Vec2 a = t[i], b = t[(i + 1) % 3], c = t[(i + 2) % 3];
    const Vec2 m = 0.5 * (a + b);
    queue.push_back({a, m, c});
    queue.push_back({m, b, c});
  }

  polygon_area_ = 0.0;
  for (const Tri& t : tris_) polygon_area_ += tri_area(t.a, t.b, t.c);
  area_defect_ = polygon_area_ - region.area();

  // Fixed nodes: collapsed 5x5 Gauss per triangle (exact through degree 8).
  const int per_tri = kGauss * kGauss;
  nodes_.resize(static_cast<Eigen::Index>(tris_.size()) * per_tri, 2);
  weights_.resize(nodes_.rows());
  Eigen::Index row = 0;
  for (const Tri& t : tris_) {
    const double a2 = 2.0 * tri_area(t.a, t.b, t.c);
    for (int i = 0; i < kGauss; ++i) {
      for (int j = 0; j < kGauss; ++j) {
        const double u = kGx[i];
        const double xi = kGx[j];
        const Vec2 p = t.a + u * ((t.b - t.a) + xi * (t.c - t.b));
        nodes_(row, 0) = p.x();
        nodes_(row, 1) = p.y();
        weights_(row) = kGw[i] * kGw[j] * a2 * u;
        ++row;
      }
    }
  }
}

double QuadratureDomain::integrate_fast(const Kernel& kernel, const Vec2& x) const {
  const auto dx = nodes_.col(0).array() - x.x();
  const auto dy = nodes_.col(1).array() - x.y();
  const Eigen::ArrayXd r2 = (dx * dx + dy * dy).max(1e-300);
  switch (kernel.kind) {
    case Kernel::kLog:
      return (weights_.array() * 0.5 * r2.log()).sum();
    case Kernel::kRiesz:
      return (weights_.array() * r2.pow(0.5 * kernel.alpha)).sum();
    default:
      return (weights_.array() * kernel.t * (r2 + kernel.t * kernel.t).pow(-1.5)).sum();
  }
}

namespace {

double rule_eval(const Vec2& a, const Vec2& b, const Vec2& c, const Kernel& kernel,
                 const Vec2& x) {
  const double a2 = 2.0 * tri_area(a, b, c);
  double acc = 0.0;
  for (int i = 0; i < kGauss; ++i) {
    for (int j = 0; j < kGauss; ++j) {
      const double u = kGx[i];
      const double xi = kGx[j];
      const Vec2 p = a + u * ((b - a) + xi * (c - b));
      acc += kGw[i] * kGw[j] * a2 * u * kernel((p - x).norm());
    }
  }
  return acc;
}

struct AdaptiveResult {
  double value = 0.0;
  double error = 0.0;
};

void adaptive_tri(const Vec2& a, const Vec2& b, const Vec2& c, const Kernel& kernel,
                  const Vec2& x, double tol, int depth, AdaptiveResult& out) {
  const double i1 = rule_eval(a, b, c, kernel, x);
  const Vec2 mab = 0.5 * (a + b), mbc = 0.5 * (b + c), mca = 0.5 * (c + a);
  const double i4 = rule_eval(a, mab, mca, kernel, x) + rule_eval(mab, b, mbc, kernel, x) +
                    rule_eval(mca, mbc, c, kernel, x) + rule_eval(mab, mbc, mca, kernel, x);
  const double diff = std::abs(i4 - i1);
  if (depth >= 12 || diff <= tol) {
    out.value += i4;
    out.error += diff;
    return;
  }
  adaptive_tri(a, mab, mca, kernel, x, 0.25 * tol, depth + 1, out);
  adaptive_tri(mab, b, mbc, kernel, x, 0.25 * tol, depth + 1, out);
  adaptive_tri(mca, mbc, c, kernel, x, 0.25 * tol, depth + 1, out);
  adaptive_tri(mab, mbc, mca, kernel, x, 0.25 * tol, depth + 1, out);
}

}  // namespace

double QuadratureDomain::integrate(const Kernel& kernel, const Vec2& x,
                                   double* error_estimate) const {
  AdaptiveResult out;
  double rough = 0.0;
  for (const Tri& t : tris_) rough += std::abs(rule_eval(t.a, t.b, t.c, kernel, x));
  const double tol_total = 1e-9 * std::max(rough, 1e-6);
  for (const Tri& t : tris_) {
    const double share = std::abs(tri_area(t.a, t.b, t.c)) / std::max(polygon_area_, 1e-300);
    // Split at x when it sits inside the cell: the collapsed rule then
    // clusters its nodes at the singularity.
    const double w0 = cross2(t.b - t.a, x - t.a);
    const double w1 = cross2(t.c - t.b, x - t.b);
    const double w2 = cross2(t.a - t.c, x - t.c);
    const double a2 = 2.0 * tri_area(t.a, t.b, t.c);
    const bool inside = a2 > 0.0 && w0 > 1e-14 && w1 > 1e-14 && w2 > 1e-14;
    if (inside && kernel.singular_at_zero()) {
      adaptive_tri(x, t.a, t.b, kernel, x, tol_total * share / 3.0, 0, out);
      adaptive_tri(x, t.b, t.c, kernel, x, tol_total * share / 3.0, 0, out);
      adaptive_tri(x, t.c, t.a, kernel, x, tol_total * share / 3.0, 0, out);
    } else {
      adaptive_tri(t.a, t.b, t.c, kernel, x, tol_total * share, 0, out);
    }
  }
  if (error_estimate) *error_estimate = out.error;
  return out.value;
}

PotentialValue potential_value(const Region& region, const Kernel& kernel, const Vec2& x,
                               const QuadratureSpec& quad) {
  QuadratureDomain dom(region, quad);
  PotentialValue pv;
  pv.value = dom.integrate(kernel, x, &pv.error_estimate);
  pv.area_defect = dom.area_defect();
  return pv;
}

namespace {

struct SimplexPoint {
  Vec2 x;
  double f = 0.0;
};

}  // namespace

ExtremumReport find_extremum(const Region& region, const Kernel& kernel, ExtremumMode mode,
                             const QuadratureSpec& quad, const UfApproximation* uf) {
  const ConvexPolygon hull = region_convex_hull(region, quad.disc_segments).outer;
  const double diam = std::max(hull.diameter(), 1e-12);
  const double sign = mode == ExtremumMode::kMin ? 1.0 : -1.0;

  QuadratureDomain fine(region, quad);
  QuadratureSpec coarse_spec = quad;
  coarse_spec.disc_segments = 64;
  coarse_spec.max_cell_diameter = diam / 8.0;
  QuadratureDomain coarse(region, coarse_spec);

  Vec2 lo(std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity());
  Vec2 hi = -lo;
  for (const Vec2& p : hull.vertices()) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const double pitch = diam / 100.0;
  Vec2 best = hull.centroid();
  double best_f = std::numeric_limits<double>::infinity();
  for (double gx = lo.x(); gx <= hi.x() + 0.5 * pitch; gx += pitch) {
    for (double gy = lo.y(); gy <= hi.y() + 0.5 * pitch; gy += pitch) {
      const Vec2 p(gx, gy);
      if (hull.signed_inner_distance(p) < -1e-12 * diam) continue;
      const double f = sign * coarse.integrate_fast(kernel, p);
      if (f < best_f) {
        best_f = f;
        best = p;
      }
    }
  }

  // Singular kernels need the adaptive route in the refinement phase: the
  // fixed-node rule is noisy near the singular point and biases the argmin.
  auto objective = [&](const Vec2& p) {
    if (hull.signed_inner_distance(p) < -1e-12 * diam) {
      return std::numeric_limits<double>::infinity();
    }
    if (kernel.singular_at_zero()) return sign * fine.integrate(kernel, p);
    return sign * fine.integrate_fast(kernel, p);
  };

  // Nelder-Mead until the simplex shrinks below 1e-7 * diameter.
  const double h0 = 0.5 * pitch;
  SimplexPoint sp[3] = {{best, objective(best)},
                        {best + Vec2(h0, 0.0), objective(best + Vec2(h0, 0.0))},
                        {best + Vec2(0.0, h0), objective(best + Vec2(0.0, h0))}};
  for (int iter = 0; iter < 500; ++iter) {
    std::sort(sp, sp + 3, [](const SimplexPoint& a, const SimplexPoint& b) { return a.f < b.f; });
    const double size = std::max((sp[0].x - sp[1].x).norm(),
                                 std::max((sp[0].x - sp[2].x).norm(), (sp[1].x - sp[2].x).norm()));
    if (size < 1e-7 * diam) break;
    const Vec2 centroid = 0.5 * (sp[0].x + sp[1].x);
    const Vec2 xr = centroid + (centroid - sp[2].x);
    const double fr = objective(xr);
    if (fr < sp[0].f) {
      const Vec2 xe = centroid + 2.0 * (centroid - sp[2].x);
      const double fe = objective(xe);
      sp[2] = fe < fr ? SimplexPoint{xe, fe} : SimplexPoint{xr, fr};
    } else if (fr < sp[1].f) {
      sp[2] = {xr, fr};
    } else {
      const Vec2 xc = centroid + 0.5 * (sp[2].x - centroid);
      const double fc = objective(xc);
      if (fc < sp[2].f) {
        sp[2] = {xc, fc};
      } else {
        for (int i = 1; i < 3; ++i) {
          sp[i].x = sp[0].x + 0.5 * (sp[i].x - sp[0].x);
          sp[i].f = objective(sp[i].x);
        }
      }
    }
  }
  std::sort(sp, sp + 3, [](const SimplexPoint& a, const SimplexPoint& b) { return a.f < b.f; });

  ExtremumReport rep;
  rep.point = sp[0].x;
  rep.mode = mode;
  rep.value = fine.integrate(kernel, rep.point, nullptr);
  UfApproximation local;
  if (uf == nullptr) {
    local = unfolded_region(region, 720, 1e-9);
    uf = &local;
  }
  rep.margin = uf->outer.signed_inner_distance(rep.point);
  rep.in_uf = rep.margin >= -1e-4 * diam;
  rep.on_hull_boundary = hull.signed_inner_distance(rep.point) <= 1e-5 * diam;
  return rep;
}

}  // namespace uf
