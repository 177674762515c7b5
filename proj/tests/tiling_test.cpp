#include <doctest.h>

#include <cmath>
#include <complex>

#include "threeway/tiling.hpp"

using namespace threeway;

namespace {

const Scalar r2 = Scalar::sqrt2(), r6 = Scalar::sqrt6();
Scalar q(long p, long d = 1) { return Scalar::rational(p, d); }

struct A2Fixture {
  RootSystemData rs = build_root_system(RootSystemName::A2);
  Lattice lattice{Vec2{q(1, 2) * r2, 0}, Vec2{0, q(1, 6) * r6}};
  Region cell = ConvexPolygon::rectangle(0, 0, q(1, 2) * r2, q(1, 6) * r6);
  Region k11 = ConvexPolygon::triangle({0, 0}, {q(1, 2) * r2, q(1, 6) * r6}, {0, q(1, 6) * r6});
  // K~12 + eta1 + delta1
  Region moved = ConvexPolygon::triangle({q(1, 2) * r2, q(1, 6) * r6}, {r2, q(1, 6) * r6}, {r2, q(1, 3) * r6});
  Region omega = disjoint_union(k11, moved);
  Isometry fold_back{Mat2{-1, 0, 0, 1}, Vec2{r2, 0}};  // rho_alpha then + alpha
};

Region square(const Scalar& side) { return ConvexPolygon::rectangle(0, 0, side, side); }

}  // namespace

TEST_CASE("verify the A2 witness and a perturbed copy") {
  A2Fixture f;
  CongruenceWitness w{f.omega, Region(f.rs.alcove), {{f.k11, Isometry::identity()}, {f.moved, f.fold_back}}};
  auto rep = verify_congruence(w);
  CHECK(rep.ok);
  CHECK(verify_congruence(w.inverted()).ok);

  CongruenceWitness bad = w;
  bad.entries[1].g = Isometry::translation({r2, 0}) * f.fold_back;
  auto brep = verify_congruence(bad);
  CHECK_FALSE(brep.ok);
  CHECK(brep.failing_entry == 1u);
  CHECK(brep.offending_area.sign() > 0);

  CongruenceWitness ident{f.omega, f.omega, {{f.omega, Isometry::identity()}}};
  CHECK(verify_congruence(ident).ok);

  CongruenceWitness missing{f.omega, Region(f.rs.alcove), {{f.k11, Isometry::identity()}}};
  CHECK_FALSE(verify_congruence(missing).ok);
}

TEST_CASE("search finds witnesses") {
  A2Fixture f;
  auto w = search_congruence(f.omega, Region(f.rs.alcove), f.rs, 4);
  REQUIRE(w);
  CHECK(verify_congruence(*w).ok);
  CHECK(w->entries.size() == 2);
  CHECK(w->entries[0].g.is_identity());

  auto back = search_congruence(f.omega, f.cell, f.lattice, 3);
  REQUIRE(back);
  CHECK(verify_congruence(*back).ok);
  CHECK(verify_congruence(back->inverted()).ok);
  // the alcove itself is not a tile for the rectangle lattice: its upper corner
  // reduces onto K~11
  CHECK_FALSE(search_congruence(Region(f.rs.alcove), f.cell, f.lattice, 3));
  CHECK_FALSE(mc_tiling_multiplicity(Region(f.rs.alcove), f.lattice, 2000, 1, centred_box(f.omega, 1.0, 3)).pass);

  CHECK_FALSE(search_congruence(square(1), square(q(11, 10)), Lattice({1, 0}, {0, 1}), 3));
  // right area, but no lattice translation rearranges a triangle into the square
  Region tri = ConvexPolygon::triangle({0, 0}, {2, 0}, {0, 1});
  CHECK_FALSE(search_congruence(tri, square(1), Lattice({2, 0}, {0, 2}), 2));
}

TEST_CASE("Monte-Carlo multiplicity under lattices") {
  Lattice z2({1, 0}, {0, 1});
  Region sq = square(1);
  auto box = centred_box(sq, std::sqrt(2.0), 3);
  auto rep = mc_tiling_multiplicity(sq, z2, 10000, 1, box);
  CHECK(rep.pass);
  CHECK(rep.histogram.size() == 1);
  CHECK(rep.histogram[1] + rep.boundary == 10000);

  A2Fixture f;
  auto arep = mc_tiling_multiplicity(f.omega, f.lattice, 10000, 2, centred_box(f.omega, 1.0, 3));
  CHECK(arep.pass);

  auto big = mc_tiling_multiplicity(square(q(11, 10)), z2, 10000, 3, box);
  CHECK_FALSE(big.pass);
  CHECK(big.histogram[2] > 0);

  // the double fast path and the exact path agree on a sample of points
  auto again = mc_tiling_multiplicity(f.omega, f.lattice, 10000, 2, centred_box(f.omega, 1.0, 3));
  CHECK(again.histogram == arep.histogram);
  CHECK(again.boundary == arep.boundary);
}

TEST_CASE("Monte-Carlo multiplicity under affine Weyl groups") {
  A2Fixture f;
  auto box = centred_box(f.omega, 1.0, 3);
  CHECK(mc_tiling_multiplicity(f.omega, f.rs, 5000, 4, box).pass);
  for (auto name : {RootSystemName::A1xA1, RootSystemName::B2, RootSystemName::G2}) {
    auto rs = build_root_system(name);
    Region c(rs.alcove);
    CHECK(mc_tiling_multiplicity(c, rs, 3000, 5, centred_box(c, 1.0, 3)).pass);
  }
  // the lattice cell of A2 variant 1 is not an alcove
  auto rep = mc_tiling_multiplicity(f.cell, f.rs, 3000, 6, box);
  CHECK_FALSE(rep.pass);
}

TEST_CASE("sample points are exact grid points inside the box") {
  SampleBox box{-1.5, -2.25, 3.0, 1.75};
  for (uint64_t i = 0; i < 1000; ++i) {
    auto p = sample_point(box, 99, i);
    CHECK(p[0] >= box.xmin);
    CHECK(p[0] < box.xmax);
    double scaled = (p[0] - box.xmin) / (box.xmax - box.xmin) * 0x1p28;
    CHECK(scaled == std::floor(scaled));
  }
  CHECK(sample_point(box, 1, 5) == sample_point(box, 1, 5));
  CHECK(sample_point(box, 1, 5) != sample_point(box, 2, 5));
}

TEST_CASE("shortest lattice points") {
  auto pts = shortest_lattice_points(Lattice({1, 0}, {0, 1}), 5);
  REQUIRE(pts.size() == 5);
  CHECK(pts[0] == Vec2{0, 0});
  CHECK(pts[1] == Vec2{-1, 0});
  CHECK(pts[2] == Vec2{0, -1});
  CHECK(pts[3] == Vec2{0, 1});
  CHECK(pts[4] == Vec2{1, 0});
  // a skewed basis still returns the true shortest vectors
  auto sk = shortest_lattice_points(Lattice({1, 0}, {7, 1}), 3);
  CHECK(dot(sk[1], sk[1]) == Scalar(1));
  CHECK(dot(sk[2], sk[2]) == Scalar(1));
}

TEST_CASE("triangle integration matches the closed form on the square") {
  Region sq(std::vector<ConvexPolygon>{ConvexPolygon::triangle({0, 0}, {1, 0}, {1, 1}),
                                       ConvexPolygon::triangle({0, 0}, {1, 1}, {0, 1})});
  Lattice l({2, 0}, {0, 1});  // shortest nonzero dual vector (-1/2, 0)
  auto rep = fuglede_gram(Region(square(1)), Lattice({1, 0}, {0, 1}), 9);
  CHECK(rep.deviation < 1e-12);
  auto rep2 = fuglede_gram(sq, Lattice({1, 0}, {0, 1}), 9);
  CHECK(rep2.deviation < 1e-12);
  // |integral_0^1 exp(-pi i x) dx| = 2/pi
  auto half = fuglede_gram(sq, l, 2, 53);
  CHECK(half.deviation == doctest::Approx(2 / M_PI).epsilon(1e-12));
}

TEST_CASE("Fuglede Gram check") {
  A2Fixture f;
  auto rep = fuglede_gram(f.omega, f.lattice, 20);
  CHECK(rep.frequencies == 20);
  CHECK(rep.deviation <= 1e-3);
  CHECK(fuglede_gram(f.omega, f.lattice, 20, 53).deviation <= 1e-3);
  auto neg = fuglede_gram(square(q(11, 10)), Lattice({1, 0}, {0, 1}), 9);
  CHECK(neg.deviation > 1e-2);
  CHECK_THROWS_AS(fuglede_gram(f.omega, f.lattice, 4, 113), std::invalid_argument);
}
