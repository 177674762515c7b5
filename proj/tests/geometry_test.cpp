#include <doctest.h>

#include <random>

#include "threeway/geometry.hpp"
#include "threeway/roots.hpp"

using namespace threeway;

namespace {

const Scalar r2 = Scalar::sqrt2(), r3 = Scalar::sqrt3(), r6 = Scalar::sqrt6();
Scalar q(long p, long d = 1) { return Scalar::rational(p, d); }

ConvexPolygon unit_square() { return ConvexPolygon::rectangle(0, 0, 1, 1); }

ConvexPolygon random_convex(std::mt19937_64& rng) {
  // random triangle with small rational coordinates, oriented CCW
  std::uniform_int_distribution<long> c(-8, 8);
  for (;;) {
    Vec2 a{q(c(rng), 4), q(c(rng), 4)}, b{q(c(rng), 4), q(c(rng), 4)}, d{q(c(rng), 4), q(c(rng), 4)};
    int s = cross(b - a, d - a).sign();
    if (s == 0)
      continue;
    return s > 0 ? ConvexPolygon::triangle(a, b, d) : ConvexPolygon::triangle(a, d, b);
  }
}

Mat2 rotation_by(const Scalar& c, const Scalar& s) { return {c, -s, s, c}; }

}  // namespace

TEST_CASE("polygon validation") {
  CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {0, 1}, {1, 0}}), std::invalid_argument);  // clockwise
  CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {1, 1}, {2, 2}}), std::invalid_argument);  // flat
  CHECK_THROWS_AS(ConvexPolygon({{0, 0}, {2, 0}, {1, 1}, {2, 2}, {0, 2}}), std::invalid_argument);
  ConvexPolygon p({{0, 0}, {1, 0}, {2, 0}, {2, 2}, {0, 2}});
  CHECK(p.size() == 4);
  CHECK(p.area() == Scalar(4));
}

TEST_CASE("clip examples") {
  CHECK_FALSE(clip(unit_square(), HalfPlane({1, 0}, -1)).has_value());
  auto same = clip(unit_square(), HalfPlane({1, 0}, 5));
  REQUIRE(same);
  CHECK(same->vertices() == unit_square().vertices());

  // v >= u/sqrt3 on [0, sqrt2/2] x [0, sqrt6/6]
  ConvexPolygon k1 = ConvexPolygon::rectangle(0, 0, q(1, 2) * r2, q(1, 6) * r6);
  auto k11 = clip(k1, HalfPlane({q(1, 3) * r3, -1}, 0));
  REQUIRE(k11);
  ConvexPolygon expected = ConvexPolygon::triangle({0, 0}, {q(1, 2) * r2, q(1, 6) * r6}, {0, q(1, 6) * r6});
  CHECK(equal_ae(*k11, expected));
  CHECK(k11->size() == 3);
}

TEST_CASE("clip is idempotent") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> c(-6, 6);
  for (int i = 0; i < 100; ++i) {
    ConvexPolygon p = random_convex(rng);
    Vec2 n{q(c(rng)), q(c(rng))};
    if (n.is_zero())
      continue;
    HalfPlane h(n, q(c(rng), 8));
    auto once = clip(p, h);
    if (!once)
      continue;
    auto twice = clip(*once, h);
    REQUIRE(twice);
    CHECK(twice->vertices() == once->vertices());
    CHECK(once->area().sign() > 0);
  }
}

TEST_CASE("alcove areas") {
  CHECK(area(build_root_system(RootSystemName::A2).alcove) == q(1, 6) * r3);
  CHECK(area(build_root_system(RootSystemName::B2).alcove) == q(1, 4));
  CHECK(area(build_root_system(RootSystemName::G2).alcove) == q(1, 36) * r3);
}

TEST_CASE("apply examples") {
  Region r = ConvexPolygon({{1, 0}, {1, q(1, 2)}, {q(3, 4), q(1, 4)}});
  CHECK(equal_ae(apply(Isometry::identity(), r), r));
  Isometry swap(Mat2{0, 1, 1, 0}, {0, 0});
  Region img = apply(swap, r);
  CHECK(equal_ae(img, ConvexPolygon({{0, 1}, {q(1, 4), q(3, 4)}, {q(1, 2), 1}})));
  CHECK(area(img) == area(r));

  Region c = build_root_system(RootSystemName::A2).alcove;
  Region moved = apply(Isometry::translation({r2, 0}), c);
  CHECK(moved.parts()[0].vertices()[0] == c.parts()[0].vertices()[0] + Vec2{r2, 0});
}

TEST_CASE("isometries preserve area") {
  std::mt19937_64 rng(9);
  // rotations by multiples of 30 and 45 degrees stay in the field
  std::vector<Mat2> lin = {rotation_by(q(1, 2) * r3, q(1, 2)), rotation_by(q(1, 2) * r2, q(1, 2) * r2),
                           Mat2{0, 1, 1, 0}, Mat2{-1, 0, 0, 1}};
  for (int i = 0; i < 50; ++i) {
    ConvexPolygon p = random_convex(rng);
    Isometry g(lin[i % lin.size()], {q(i, 7), q(-i, 3) * r2});
    CHECK(area(apply(g, Region(p))) == p.area());
  }
  CHECK_THROWS_AS(Isometry(Mat2{2, 0, 0, 1}, {0, 0}), std::invalid_argument);
}

TEST_CASE("boolean examples") {
  Region k1 = ConvexPolygon::rectangle(0, 0, 1, q(1, 2));
  Region k11 = ConvexPolygon::triangle({q(1, 2), q(1, 2)}, {q(3, 4), q(1, 4)}, {1, q(1, 2)});
  CHECK(difference(k1, k1).empty());
  Region right = ConvexPolygon({{q(1, 2), 0}, {1, 0}, {1, q(1, 2)}, {q(1, 2), q(1, 2)}});
  Region rest = boolean(k1, right, BooleanOp::difference);
  CHECK(equal_ae(rest, ConvexPolygon::rectangle(0, 0, q(1, 2), q(1, 2))));

  // K~1 minus K~11 for B2 variant 1 and C minus C1 are the same quadrilateral
  Region quad = ConvexPolygon({{0, 0}, {q(1, 2), 0}, {q(3, 4), q(1, 4)}, {q(1, 2), q(1, 2)}});
  Region kk = ConvexPolygon({{0, 0}, {q(1, 2), 0}, {1, q(1, 2)}, {q(1, 2), q(1, 2)}});
  Region diff1 = boolean(kk, k11, BooleanOp::difference);
  CHECK(equal_ae(diff1, quad));
  CHECK(area(diff1) == area(kk) - area(k11));
  Region c = build_root_system(RootSystemName::B2).alcove;
  Region c1 = ConvexPolygon::triangle({q(1, 2), 0}, {1, 0}, {q(3, 4), q(1, 4)});
  CHECK(equal_ae(difference(c, c1), quad));
  CHECK(equal_ae(diff1, difference(c, c1)));

  Region u = disjoint_union(quad, k11);
  CHECK(area(u) == area(quad) + area(k11));
  CHECK_THROWS_AS(disjoint_union(quad, kk), OverlapError);
}

TEST_CASE("difference and union reconstitute") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 60; ++i) {
    Region a = random_convex(rng), b = random_convex(rng);
    Region diff = difference(a, b), inter = intersection(a, b);
    CHECK(area(diff) + area(inter) == area(a));
    CHECK(self_overlap_area(diff).is_zero());
    CHECK(equal_ae(disjoint_union(diff, inter), a));
  }
}

TEST_CASE("locate examples") {
  Region c = build_root_system(RootSystemName::A2).alcove;
  CHECK(locate(c, Vec2{0, 0}) == Location::boundary);
  CHECK(locate(c, Vec2{q(1, 8) * r2, q(1, 8) * r6}) == Location::interior);
  CHECK(locate(c, Vec2{-1, 0}) == Location::outside);
  Region two(std::vector<ConvexPolygon>{ConvexPolygon::rectangle(0, 0, 1, 1), ConvexPolygon::rectangle(1, 0, 2, 1)});
  CHECK(locate(two, Vec2{1, q(1, 2)}) == Location::boundary);
}

TEST_CASE("equal_ae examples") {
  Region sq = unit_square();
  Region split(std::vector<ConvexPolygon>{ConvexPolygon::triangle({0, 0}, {1, 0}, {1, 1}),
                                          ConvexPolygon::triangle({0, 0}, {1, 1}, {0, 1})});
  CHECK(equal_ae(sq, split));
  Region c = build_root_system(RootSystemName::A2).alcove;
  Region k1 = ConvexPolygon::rectangle(0, 0, q(1, 2) * r2, q(1, 6) * r6);
  CHECK(area(c) == area(k1));
  CHECK_FALSE(equal_ae(c, k1));
}
