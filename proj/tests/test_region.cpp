#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "helpers.hpp"
#include "uf/json_io.hpp"
#include "uf/region.hpp"

using uf::ConvexPolygon;
using uf::Direction;
using uf::Disc;
using uf::Region;
using uf::Segment;
using uf::SinglePoint;
using uf::Vec2;

namespace {

Region unit_square() {
  return Region({ConvexPolygon::from_ccw({{0, 0}, {1, 0}, {1, 1}, {0, 1}})});
}

constexpr double kPi = 3.14159265358979323846;

}  // namespace

TEST_CASE("member examples") {
  const Region disc({Disc{{0, 0}, 1.0}});
  CHECK(disc.member(Vec2(0, 1), 0.0));
  CHECK(!unit_square().member(Vec2(2, 0), 0.0));
  const Region seg({Segment{{0, 0}, {1, 0}}});
  CHECK(seg.member(Vec2(0.5, 1e-12), 1e-9));
}

TEST_CASE("support examples") {
  CHECK(unit_square().support(Direction(0, 1)) == doctest::Approx(1.0).epsilon(1e-12));
  const Region disc({Disc{{1, 2}, 0.5}});
  CHECK(disc.support(Direction(1, 0)) == doctest::Approx(1.5).epsilon(1e-12));
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(unit_square().support(Direction(s, s)) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("support is sublinear across union") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
  for (int i = 0; i < 20; ++i) {
    const Region a = testutil::random_region(rng);
    const Region b = testutil::random_region(rng);
    std::vector<uf::Primitive> both = a.primitives();
    for (const auto& p : b.primitives()) both.push_back(p);
    const Region ab(std::move(both));
    for (int k = 0; k < 8; ++k) {
      const Direction v = Direction::from_angle(ang(rng));
      CHECK(ab.support(v) ==
            doctest::Approx(std::max(a.support(v), b.support(v))).epsilon(1e-12));
    }
  }
}

TEST_CASE("centroid examples") {
  const Vec2 c1 = unit_square().centroid();
  CHECK((c1 - Vec2(0.5, 0.5)).norm() <= 1e-12);

  const Region disc({Disc{{3, -1}, 1.0}});
  CHECK((disc.centroid() - Vec2(3, -1)).norm() <= 1e-12);

  const Region two({ConvexPolygon::from_ccw({{0, 0}, {1, 0}, {1, 1}, {0, 1}}),
                    ConvexPolygon::from_ccw({{2, 0}, {3, 0}, {3, 1}, {2, 1}})});
  CHECK((two.centroid() - Vec2(1.5, 0.5)).norm() <= 1e-12);

  const Region segs({Segment{{0, 0}, {1, 0}}});
  CHECK_THROWS_WITH_AS(segs.centroid(), "centroid undefined for measure-zero region",
                       std::domain_error);
}

TEST_CASE("centroid and area of overlapping mixtures are exact") {
  // Square plus disc centered on its corner: quarter of the disc overlaps.
  const Region r({ConvexPolygon::from_ccw({{0, 0}, {1, 0}, {1, 1}, {0, 1}}),
                  Disc{{0, 0}, 0.5}});
  const double expected = 1.0 + 0.75 * kPi * 0.25;
  CHECK(r.area() == doctest::Approx(expected).epsilon(1e-12));
  CHECK(r.area() == doctest::Approx(testutil::grid_area(r, 2e-3)).epsilon(2e-2));

  // Identical duplicated primitives collapse.
  const Region dup({Disc{{0, 0}, 1.0}, Disc{{0, 0}, 1.0}});
  CHECK(dup.area() == doctest::Approx(kPi).epsilon(1e-12));

  // Overlapping squares.
  const Region two({ConvexPolygon::from_ccw({{0, 0}, {2, 0}, {2, 2}, {0, 2}}),
                    ConvexPolygon::from_ccw({{1, 1}, {3, 1}, {3, 3}, {1, 3}})});
  CHECK(two.area() == doctest::Approx(7.0).epsilon(1e-12));
  const Vec2 c = two.centroid();
  CHECK((c - Vec2(1.5, 1.5)).norm() <= 1e-12);
}

TEST_CASE("region_convex_hull examples") {
  const auto hull1 = uf::region_convex_hull(unit_square());
  CHECK(hull1.inner.area() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(hull1.outer.area() == doctest::Approx(1.0).epsilon(1e-12));

  const Region pts({SinglePoint{{0, 0}}, SinglePoint{{4, 0}}, SinglePoint{{2, 3}}});
  const auto hull2 = uf::region_convex_hull(pts);
  CHECK(hull2.outer.size() == 3);
  CHECK(hull2.outer.area() == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("three-disc hull sandwich against support membership") {
  const double side = 4.0;
  const Vec2 c1(0, 0), c2(side, 0), c3(side / 2.0, side * std::sqrt(3.0) / 2.0);
  const Region discs({Disc{c1, 1.0}, Disc{c2, 1.0}, Disc{c3, 1.0}});
  const int k = 256;
  const auto hull = uf::region_convex_hull(discs, k);
  const double gap_bound = (1.0 - std::cos(kPi / k)) + (1.0 / std::cos(kPi / k) - 1.0);

  // Support membership is the independent description of conv(region):
  // p is inside iff p.u <= max_i (c_i.u + r) for all u.
  auto support_feasible = [&](const Vec2& p, double slack) {
    for (int a = 0; a < 720; ++a) {
      const Direction u = Direction::from_angle(2.0 * kPi * a / 720.0);
      const double h = discs.support(u);
      if (p.dot(u.u()) > h + slack) return false;
    }
    return true;
  };
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> dx(-1.5, 5.5);
  std::uniform_real_distribution<double> dy(-1.5, 5.0);
  int inner_hits = 0;
  for (int i = 0; i < 4000; ++i) {
    const Vec2 p(dx(rng), dy(rng));
    if (hull.inner.contains(p, 0.0)) {
      ++inner_hits;
      CHECK(support_feasible(p, 1e-9));
    }
    if (support_feasible(p, -1e-3)) {
      // Strictly feasible points sit inside the outer hull dilated by the gap.
      CHECK(hull.outer.signed_inner_distance(p) >= -(gap_bound + 1e-3));
    }
  }
  CHECK(inner_hits > 500);
}

TEST_CASE("parallel_body examples") {
  const Region pt({SinglePoint{{0, 0}}});
  const Region pb1 = uf::parallel_body(pt, 1.0);
  REQUIRE(pb1.primitives().size() == 1);
  const auto* d1 = std::get_if<Disc>(&pb1.primitives()[0]);
  REQUIRE(d1 != nullptr);
  CHECK(d1->radius == doctest::Approx(1.0));

  const Region disc({Disc{{2, 1}, 0.5}});
  const Region pb2 = uf::parallel_body(disc, 0.25);
  const auto* d2 = std::get_if<Disc>(&pb2.primitives()[0]);
  REQUIRE(d2 != nullptr);
  CHECK(d2->radius == doctest::Approx(0.75));
  CHECK((d2->center - Vec2(2, 1)).norm() <= 1e-15);

  // Steiner: area + perimeter * delta + pi * delta^2 for a convex body.
  const Region pb3 = uf::parallel_body(unit_square(), 0.5);
  const double steiner = 1.0 + 4.0 * 0.5 + kPi * 0.25;
  CHECK(pb3.area() == doctest::Approx(steiner).epsilon(1e-12));
  CHECK(std::abs(testutil::grid_area(pb3, 1e-3) - steiner) <= 0.02);

  CHECK_THROWS_AS(uf::parallel_body(unit_square(), 0.0), std::invalid_argument);
}

TEST_CASE("parallel body support adds delta exactly") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> dd(0.1, 1.5);
  for (int i = 0; i < 20; ++i) {
    const Region r = testutil::random_region(rng);
    const double delta = dd(rng);
    const Region pb = uf::parallel_body(r, delta);
    for (int k = 0; k < 16; ++k) {
      const Direction v = Direction::from_angle(ang(rng));
      CHECK(pb.support(v) == doctest::Approx(r.support(v) + delta).epsilon(1e-12));
    }
  }
}

TEST_CASE("parallel body membership matches distance") {
  std::mt19937_64 rng(41);
  const Region r = testutil::random_region(rng);
  const double delta = 0.7;
  const Region pb = uf::parallel_body(r, delta);
  Vec2 lo, hi;
  pb.bounds(lo, hi);
  const double h = 0.11;
  for (double x = lo.x(); x <= hi.x(); x += h) {
    for (double y = lo.y(); y <= hi.y(); y += h) {
      const Vec2 p(x, y);
      const bool inside = pb.member(p, 0.0);
      const double dist = r.distance(p);
      if (dist <= delta - 1e-9) CHECK(inside);
      if (dist >= delta + 1e-9) CHECK(!inside);
    }
  }
}

TEST_CASE("centroid lies inside the outer hull; translation equivariance") {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 10; ++i) {
    const Region r = testutil::random_region(rng);
    const auto hull = uf::region_convex_hull(r);
    const Vec2 c = r.centroid();
    CHECK(hull.outer.signed_inner_distance(c) >= -1e-9);

    const Vec2 t = testutil::random_point(rng, -3, 3);
    const Region rt = r.translated(t);
    CHECK((rt.centroid() - (c + t)).norm() <= 1e-9);
    for (int k = 0; k < 8; ++k) {
      const Direction v = Direction::from_angle(2.0 * kPi * k / 8.0);
      CHECK(rt.support(v) == doctest::Approx(r.support(v) + t.dot(v.u())).epsilon(1e-9));
    }
  }
}

TEST_CASE("region JSON round trip and schema errors") {
  const Region r({Disc{{0, 0}, 1.0}});
  const std::string one_disc = R"({"primitives":[{"type":"disc","center":[0,0],"radius":1}]})";
  const Region parsed = uf::parse_region_json(one_disc);
  REQUIRE(parsed.primitives().size() == 1);
  CHECK(std::holds_alternative<Disc>(parsed.primitives()[0]));

  CHECK_THROWS_AS(uf::parse_region_json(R"({"primitives":[]})"), uf::RegionSchemaError);
  CHECK_THROWS_AS(uf::parse_region_json(R"({"primitives":[{"type":"blob"}]})"),
                  uf::RegionSchemaError);
  CHECK_THROWS_AS(
      uf::parse_region_json(R"({"primitives":[{"type":"disc","center":[0,0],"radius":-1}]})"),
      uf::RegionSchemaError);
  CHECK_THROWS_AS(uf::parse_region_json("{"), uf::RegionSchemaError);

  // Round trip through 17-significant-digit decimals is coordinate exact.
  const Region mixed({ConvexPolygon::from_ccw({{0.1, 0.2}, {1.0 / 3.0, 0.0}, {0.7, 0.9}}),
                      Disc{{std::sqrt(2.0), -1.0 / 7.0}, kPi / 3.0},
                      Segment{{0, 0}, {1e-3, 1e77}}, SinglePoint{{-0.25, 2.5}}});
  const std::string path = std::filesystem::temp_directory_path() / "uf_roundtrip.json";
  uf::save_region(mixed, path);
  const Region back = uf::load_region(path);
  REQUIRE(back.primitives().size() == mixed.primitives().size());
  const std::string again = uf::region_to_json(back);
  CHECK(again == uf::region_to_json(mixed));
  const auto* d = std::get_if<Disc>(&back.primitives()[1]);
  REQUIRE(d != nullptr);
  CHECK(d->center.x() == std::sqrt(2.0));
  CHECK(d->radius == kPi / 3.0);
}
