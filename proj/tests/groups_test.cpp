#include <doctest.h>

#include <random>

#include "threeway/groups.hpp"

using namespace threeway;

namespace {

const Scalar r2 = Scalar::sqrt2(), r3 = Scalar::sqrt3(), r6 = Scalar::sqrt6();
Scalar q(long p, long d = 1) { return Scalar::rational(p, d); }

Lattice gamma_of(const RootSystemData& rs) { return Lattice(rs.coroot_lattice_basis[0], rs.coroot_lattice_basis[1]); }

// Orbit oracle: W-images of x shifted by coroot-lattice vectors with small
// coefficients; returns those landing in the closed alcove.
std::vector<Vec2> orbit_in_alcove(const Vec2& x, const RootSystemData& rs, long bound) {
  Lattice g = gamma_of(rs);
  std::vector<Vec2> hits;
  for (const auto& w : rs.weyl_group)
    for (long m = -bound; m <= bound; ++m)
      for (long n = -bound; n <= bound; ++n) {
        Vec2 p = w(x) + g.point(m, n);
        if (locate(Region(rs.alcove), p) != Location::outside &&
            std::find(hits.begin(), hits.end(), p) == hits.end())
          hits.push_back(p);
      }
  return hits;
}

// Bounded-enumeration oracle: all points of a with |m|,|n| <= bound lying in b.
std::vector<Vec2> common_points(const Lattice& a, const Lattice& b, long bound) {
  std::vector<Vec2> out;
  for (long m = -bound; m <= bound; ++m)
    for (long n = -bound; n <= bound; ++n)
      if (b.contains(a.point(m, n)))
        out.push_back(a.point(m, n));
  return out;
}

Lattice random_lattice(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> c(-5, 5);
  for (;;) {
    Vec2 u{q(c(rng), 3), q(c(rng), 2) * r2}, v{q(c(rng), 4) * r3, q(c(rng), 5)};
    if (!cross(u, v).is_zero())
      return Lattice(u, v);
  }
}

}  // namespace

TEST_CASE("affine reflection examples") {
  auto a2 = build_root_system(RootSystemName::A2);
  Vec2 alpha = a2.simple_roots[0];
  CHECK(affine_reflection(alpha, 0)(alpha) == -alpha);
  Isometry r = affine_reflection({1, 1}, 1);
  CHECK(r(Vec2{q(1, 3), q(1, 5)}) == Vec2{q(4, 5), q(2, 3)});
  CHECK(r.det() == -1);
  CHECK_THROWS_AS(affine_reflection({0, 0}, 1), std::invalid_argument);

  std::mt19937_64 rng(1);
  std::uniform_int_distribution<long> c(-4, 4);
  for (int i = 0; i < 50; ++i) {
    Vec2 root{q(c(rng), 2), q(c(rng)) * r3};
    if (root.is_zero())
      continue;
    long k = c(rng);
    Isometry s = affine_reflection(root, k);
    CHECK((s * s).is_identity());
    // fixes the hyperplane <x, r> = k pointwise
    Vec2 on = (Scalar(k) / dot(root, root)) * root + q(c(rng)) * Vec2{-root.y, root.x};
    CHECK(s(on) == on);
  }
}

TEST_CASE("fold examples") {
  auto a2 = build_root_system(RootSystemName::A2);
  Vec2 inside{q(1, 8) * r2, q(1, 8) * r6};
  auto f0 = fold(inside, a2);
  CHECK(f0.representative == inside);
  CHECK(f0.word.empty());
  CHECK(f0.isometry.is_identity());

  auto f1 = fold({-q(1, 4) * r2, 0}, a2);
  CHECK(f1.representative == inside);
  CHECK(f1.word == std::vector<int>{0, 1});
  CHECK(a2.walls[0].label == "H_alpha");
  CHECK(a2.walls[1].label == "H_beta");
  auto oracle = orbit_in_alcove({-q(1, 4) * r2, 0}, a2, 3);
  REQUIRE(oracle.size() == 1);
  CHECK(oracle[0] == inside);

  auto b2 = build_root_system(RootSystemName::B2);
  auto f2 = fold({10, 10}, b2);
  CHECK(locate(Region(b2.alcove), f2.representative) != Location::outside);
  CHECK(f2.isometry(Vec2{10, 10}) == f2.representative);
}

TEST_CASE("fold agrees with the orbit oracle, is a retraction and is lattice periodic") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> c(-40, 40);
  for (auto name : {RootSystemName::A1xA1, RootSystemName::A2, RootSystemName::B2, RootSystemName::G2}) {
    auto rs = build_root_system(name);
    Lattice g = gamma_of(rs);
    for (int i = 0; i < 25; ++i) {
      Vec2 x{q(c(rng), 17), q(c(rng), 13) * (name == RootSystemName::B2 || name == RootSystemName::A1xA1 ? Scalar(1) : r3)};
      auto f = fold(x, rs);
      CHECK(f.isometry(x) == f.representative);
      CHECK(locate(Region(rs.alcove), f.representative) != Location::outside);
      CHECK(f.isometry.linear().det().abs() == Scalar(1));
      auto again = fold(f.representative, rs);
      CHECK(again.word.empty());
      CHECK(again.representative == f.representative);
      auto shifted = fold(x + g.point(2, -3), rs);
      CHECK(shifted.representative == f.representative);
      auto oracle = orbit_in_alcove(x, rs, 8);
      CHECK(std::find(oracle.begin(), oracle.end(), f.representative) != oracle.end());
      if (locate(Region(rs.alcove), f.representative) == Location::interior)
        CHECK(oracle.size() == 1);
    }
  }
}

TEST_CASE("dual lattice") {
  Lattice z2({1, 0}, {0, 1});
  CHECK(dual_lattice(z2).same_as(z2));
  Lattice t1({q(1, 2) * r2, 0}, {0, q(1, 6) * r6});
  Lattice d = dual_lattice(t1);
  CHECK(d.same_as(Lattice({r2, 0}, {0, r6})));
  CHECK(dot(d.u(), t1.u()) == Scalar(1));
  CHECK(dot(d.u(), t1.v()).is_zero());
  std::mt19937_64 rng(4);
  for (int i = 0; i < 40; ++i) {
    Lattice l = random_lattice(rng);
    Lattice dd = dual_lattice(dual_lattice(l));
    CHECK(dd.u() == l.u());
    CHECK(dd.v() == l.v());
    CHECK(dual_lattice(l).cell_area() * l.cell_area() == Scalar(1));
  }
  CHECK_THROWS_AS(Lattice({1, 2}, {2, 4}), std::invalid_argument);
}

TEST_CASE("lattice reduce") {
  Lattice t1({q(1, 2) * r2, 0}, {0, q(1, 6) * r6});
  auto z = lattice_reduce({0, 0}, t1);
  CHECK(z.representative.is_zero());
  CHECK(z.gamma.is_zero());
  auto a = lattice_reduce({r2, 0}, t1);
  CHECK(a.representative.is_zero());
  CHECK(a.gamma == Vec2{r2, 0});
  CHECK(a.coefficients[0] == 2);

  std::mt19937_64 rng(8);
  std::uniform_int_distribution<long> c(-50, 50);
  for (int i = 0; i < 40; ++i) {
    Lattice l = random_lattice(rng);
    Vec2 x{q(c(rng), 7) * r2, q(c(rng), 3) + q(c(rng), 5) * r6};
    auto red = lattice_reduce(x, l);
    CHECK(red.representative + red.gamma == x);
    CHECK(l.contains(red.gamma));
    auto cc = l.coordinates(red.representative);
    for (const auto& t : cc) {
      CHECK(t.sign() >= 0);
      CHECK(t < Scalar(1));
    }
    CHECK(lattice_reduce(x + l.u(), l).representative == red.representative);
  }
}

TEST_CASE("lattice intersection examples") {
  auto a2 = build_root_system(RootSystemName::A2);
  Lattice t1({q(1, 2) * r2, 0}, {0, q(1, 6) * r6});
  auto j = lattice_intersection(t1, gamma_of(a2));
  REQUIRE(j.commensurable);
  CHECK(j.lattice->same_as(gamma_of(a2)));
  CHECK(j.index_in_first == 6);
  CHECK(j.index_in_second == 1);

  auto b2 = build_root_system(RootSystemName::B2);
  Lattice b1({q(1, 2), q(1, 2)}, {q(1, 2), 0});
  auto jb = lattice_intersection(b1, gamma_of(b2));
  REQUIRE(jb.commensurable);
  CHECK(jb.lattice->same_as(Lattice({1, 1}, {2, 0})));
  CHECK(jb.index_in_first == 8);

  auto self = lattice_intersection(t1, t1);
  CHECK(self.lattice->same_as(t1));
  CHECK(self.index_in_first == 1);
  CHECK(self.index_in_second == 1);

  CHECK_FALSE(lattice_intersection(Lattice({1, 0}, {0, 1}), Lattice({r2, 0}, {0, 1})).commensurable);
}

TEST_CASE("lattice intersection agrees with bounded enumeration") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<long> c(-6, 6);
  for (int i = 0; i < 40; ++i) {
    Lattice a = random_lattice(rng);
    // b: rational change of basis from a
    Mat2 m{q(c(rng), 2), q(c(rng), 3), q(c(rng), 1), q(c(rng), 4)};
    if (m.det().is_zero())
      continue;
    Mat2 bm = a.matrix() * m;
    Lattice b(bm.col(0), bm.col(1));
    auto j = lattice_intersection(a, b);
    REQUIRE(j.commensurable);
    CHECK(a.contains(*j.lattice));
    CHECK(b.contains(*j.lattice));
    CHECK(j.lattice->cell_area() == Scalar(mpq_class(j.index_in_first)) * a.cell_area());
    CHECK(j.lattice->cell_area() == Scalar(mpq_class(j.index_in_second)) * b.cell_area());
    for (const auto& p : common_points(a, b, 12))
      CHECK(j.lattice->contains(p));
  }
}
