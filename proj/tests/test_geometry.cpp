#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "uf/geometry.hpp"

using uf::ConvexPolygon;
using uf::Direction;
using uf::HalfPlane;
using uf::Vec2;

namespace {

ConvexPolygon box(double x0, double y0, double x1, double y1) {
  return ConvexPolygon::from_ccw({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

}  // namespace

TEST_CASE("reflect_point examples") {
  const Vec2 a = uf::reflect_point(Direction(0, 1), 0.0, Vec2(0.3, 0.7));
  CHECK(a.x() == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(a.y() == doctest::Approx(-0.7).epsilon(1e-12));

  const Vec2 b = uf::reflect_point(Direction(1, 0), 1.0, Vec2(1, 5));
  CHECK((b - Vec2(1, 5)).norm() <= 1e-12);

  const double s = 1.0 / std::sqrt(2.0);
  const Vec2 c = uf::reflect_point(Direction(s, s), 0.0, Vec2(1, 0));
  CHECK((c - Vec2(0, -1)).norm() <= 1e-12);
}

TEST_CASE("reflection is an isometric involution") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coord(-5.0, 5.0);
  std::uniform_real_distribution<double> ang(0.0, 6.28318530717958648);
  for (int i = 0; i < 200; ++i) {
    const Direction v = Direction::from_angle(ang(rng));
    const double b = coord(rng);
    const Vec2 p(coord(rng), coord(rng));
    const Vec2 q(coord(rng), coord(rng));
    const Vec2 rp = uf::reflect_point(v, b, p);
    const Vec2 rq = uf::reflect_point(v, b, q);
    CHECK((uf::reflect_point(v, b, rp) - p).norm() <= 1e-10);
    CHECK(std::abs((rp - rq).norm() - (p - q).norm()) <= 1e-10);
  }
}

TEST_CASE("convex_hull examples") {
  const ConvexPolygon tri = uf::convex_hull({{0, 0}, {1, 0}, {0, 1}, {0.2, 0.2}});
  CHECK(tri.size() == 3);
  CHECK(tri.area() == doctest::Approx(0.5).epsilon(1e-12));

  const ConvexPolygon pt = uf::convex_hull({Vec2(0, 0)});
  CHECK(pt.size() == 1);

  const ConvexPolygon seg = uf::convex_hull({{0, 0}, {1, 1}, {2, 2}});
  CHECK(seg.size() == 2);
  CHECK((seg.vertices()[0] - Vec2(0, 0)).norm() <= 1e-12);
  CHECK((seg.vertices()[1] - Vec2(2, 2)).norm() <= 1e-12);

  CHECK_THROWS_WITH_AS(uf::convex_hull({}), "empty point set", std::invalid_argument);
}

TEST_CASE("convex_hull is idempotent") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const ConvexPolygon h = testutil::random_convex_polygon(rng, testutil::random_point(rng, -2, 2), 1.5);
    const ConvexPolygon hh = uf::convex_hull(h.vertices());
    REQUIRE(hh.size() == h.size());
    for (std::size_t k = 0; k < h.size(); ++k) {
      CHECK(std::abs(hh.signed_inner_distance(h.vertices()[k])) <= 1e-12);
    }
  }
}

TEST_CASE("polygon_union examples") {
  const uf::PolygonSet overlap = uf::polygon_union({box(0, 0, 1, 1), box(0.5, 0, 1.5, 1)});
  CHECK(overlap.loops.size() == 1);
  CHECK(overlap.area() == doctest::Approx(1.5).epsilon(1e-9));

  const uf::PolygonSet disjoint = uf::polygon_union({box(0, 0, 1, 1), box(2, 0, 3, 1)});
  CHECK(disjoint.loops.size() == 2);
  CHECK(disjoint.area() == doctest::Approx(2.0).epsilon(1e-9));

  const uf::PolygonSet nested = uf::polygon_union({box(0, 0, 2, 2), box(0.5, 0.5, 1.5, 1.5)});
  CHECK(nested.area() == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("polygon_union passes degenerate inputs through") {
  const ConvexPolygon seg = ConvexPolygon::from_ccw({{0, 0}, {1, 0}});
  const uf::PolygonSet set = uf::polygon_union({box(2, 2, 3, 3), seg});
  CHECK(set.loops.size() == 2);
  CHECK(set.area() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(set.contains(Vec2(0.5, 0), 1e-9));
}

TEST_CASE("polygon_union is commutative and idempotent") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 20; ++i) {
    std::vector<ConvexPolygon> polys;
    for (int k = 0; k < 3; ++k) {
      polys.push_back(testutil::random_convex_polygon(rng, testutil::random_point(rng, -2, 2), 1.2));
    }
    auto rev = polys;
    std::reverse(rev.begin(), rev.end());
    auto twice = polys;
    twice.insert(twice.end(), polys.begin(), polys.end());
    const double a = uf::polygon_union(polys).area();
    CHECK(uf::polygon_union(rev).area() == doctest::Approx(a).epsilon(1e-7));
    CHECK(uf::polygon_union(twice).area() == doctest::Approx(a).epsilon(1e-7));
  }
}

TEST_CASE("halfplane_intersection examples") {
  const std::vector<HalfPlane> square = {
      {Direction(1, 0), 1.0}, {Direction(-1, 0), 0.0}, {Direction(0, 1), 1.0},
      {Direction(0, -1), 0.0}};
  const auto poly = uf::halfplane_intersection(square);
  REQUIRE(poly.has_value());
  CHECK(poly->area() == doctest::Approx(1.0).epsilon(1e-9));

  const auto empty = uf::halfplane_intersection({{Direction(1, 0), 0.0}, {Direction(-1, 0), -1.0}});
  CHECK(!empty.has_value());

  CHECK_THROWS_WITH_AS(
      uf::halfplane_intersection({{Direction(1, 0), 1.0}, {Direction(-1, 0), 0.0}}),
      "direction set does not bound", std::domain_error);
}

TEST_CASE("halfplane_intersection output satisfies every constraint") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> ang(0.0, 6.28318530717958648);
  std::uniform_real_distribution<double> off(0.2, 3.0);
  for (int i = 0; i < 30; ++i) {
    std::vector<HalfPlane> planes;
    for (int k = 0; k < 16; ++k) planes.push_back({Direction::from_angle(ang(rng)), off(rng)});
    for (int k = 0; k < 8; ++k) {
      planes.push_back({Direction::from_angle(6.28318530717958648 * k / 8.0), off(rng)});
    }
    const auto poly = uf::halfplane_intersection(planes);
    REQUIRE(poly.has_value());
    for (const Vec2& v : poly->vertices()) {
      for (const HalfPlane& hp : planes) {
        CHECK(hp.signed_excess(v) <= 1e-9);
      }
    }
  }
}

TEST_CASE("contains_polygon examples") {
  const auto outer = uf::PolygonSet::from_convex(box(0, 0, 2, 2));
  const auto rep1 = uf::contains_polygon(outer, box(0.5, 0.5, 1.5, 1.5), 0.0);
  CHECK(rep1.contains);
  CHECK(rep1.margin == doctest::Approx(0.5).epsilon(1e-9));

  const auto unit = uf::PolygonSet::from_convex(box(0, 0, 1, 1));
  const auto rep2 = uf::contains_polygon(unit, box(0, 0, 1.1, 1.0), 0.0);
  CHECK(!rep2.contains);
  CHECK(rep2.margin == doctest::Approx(-0.1).epsilon(1e-6));

  const auto rep3 = uf::contains_polygon(unit, box(0, 0, 1.1, 1.0), 0.2);
  CHECK(rep3.contains);
}
