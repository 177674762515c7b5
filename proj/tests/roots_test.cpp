#include <doctest.h>

#include <algorithm>

#include "threeway/roots.hpp"

using namespace threeway;

namespace {

const Scalar r2 = Scalar::sqrt2(), r3 = Scalar::sqrt3(), r6 = Scalar::sqrt6();
Scalar q(long p, long d = 1) { return Scalar::rational(p, d); }

const RootSystemName all_systems[] = {RootSystemName::A1xA1, RootSystemName::A2, RootSystemName::B2,
                                      RootSystemName::G2};

bool same_vertex_set(const ConvexPolygon& p, std::vector<Vec2> expected) {
  if (p.size() != expected.size())
    return false;
  for (const auto& v : p.vertices())
    if (std::find(expected.begin(), expected.end(), v) == expected.end())
      return false;
  return true;
}

// Embedding of R^3 coordinates (sum zero plane) into the (v1, v2) frame:
// v1 along the first simple root, v2 chosen so that the second simple root has v2 > 0.
Vec2 frame(const std::array<long, 3>& e, const std::array<Scalar, 3>& f1, const std::array<Scalar, 3>& f2) {
  Scalar x, y;
  for (int i = 0; i < 3; ++i) {
    x += Scalar(e[i]) * f1[i];
    y += Scalar(e[i]) * f2[i];
  }
  return {x, y};
}

}  // namespace

TEST_CASE("simple and highest roots") {
  auto a2 = build_root_system(RootSystemName::A2);
  CHECK(a2.simple_roots[0] == Vec2{r2, 0});
  CHECK(a2.simple_roots[1] == Vec2{-q(1, 2) * r2, q(1, 2) * r6});
  auto b2 = build_root_system(RootSystemName::B2);
  CHECK(b2.simple_roots[0] == Vec2{1, -1});
  CHECK(b2.simple_roots[1] == Vec2{0, 1});
  CHECK(*b2.highest_root == Vec2{1, 1});
  auto g2 = build_root_system(RootSystemName::G2);
  CHECK(g2.simple_roots[1] == Vec2{q(-3, 2) * r2, q(1, 2) * r6});
  CHECK(*g2.highest_root == Vec2{0, r6});
  CHECK_FALSE(build_root_system(RootSystemName::A1xA1).highest_root.has_value());
}

TEST_CASE("alcove vertices") {
  CHECK(same_vertex_set(build_root_system(RootSystemName::A2).alcove,
                        {{0, 0}, {q(1, 2) * r2, q(1, 6) * r6}, {0, q(1, 3) * r6}}));
  CHECK(same_vertex_set(build_root_system(RootSystemName::B2).alcove, {{0, 0}, {q(1, 2), q(1, 2)}, {1, 0}}));
  // (0, 1/sqrt6) = (0, sqrt6/6)
  CHECK(same_vertex_set(build_root_system(RootSystemName::G2).alcove,
                        {{0, 0}, {0, q(1, 6) * r6}, {q(1, 6) * r2, q(1, 6) * r6}}));
  CHECK(same_vertex_set(build_root_system(RootSystemName::A1xA1).alcove, {{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
}

TEST_CASE("G2 roots in e-coordinates land on the tabulated frame") {
  // f1 = (1,-1,0)/sqrt2 is alpha/|alpha|; f2 = (-1,-1,2)/sqrt6 makes beta's v2 positive
  std::array<Scalar, 3> f1 = {q(1, 2) * r2, -q(1, 2) * r2, 0};
  std::array<Scalar, 3> f2 = {-q(1, 6) * r6, -q(1, 6) * r6, q(1, 3) * r6};
  auto g2 = build_root_system(RootSystemName::G2);
  CHECK(frame({1, -1, 0}, f1, f2) == g2.simple_roots[0]);
  CHECK(frame({-2, 1, 1}, f1, f2) == g2.simple_roots[1]);
  // the long root 2e3 - e1 - e2 is the highest root
  CHECK(frame({-1, -1, 2}, f1, f2) == *g2.highest_root);
  // every short root e_i - e_j and long root (permutations of 2e1 - e2 - e3) is present
  std::vector<std::array<long, 3>> e_roots = {{1, -1, 0}, {1, 0, -1}, {0, 1, -1}, {2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}};
  for (auto e : e_roots) {
    for (int s : {1, -1}) {
      std::array<long, 3> es = {s * e[0], s * e[1], s * e[2]};
      Vec2 v = frame(es, f1, f2);
      CHECK(std::find(g2.roots.begin(), g2.roots.end(), v) != g2.roots.end());
    }
  }
  CHECK(g2.roots.size() == 12);
  CHECK_FALSE(g2.notes.empty());

  // A2 frame: f2 = (1,1,-2)/sqrt6
  std::array<Scalar, 3> a2f2 = {q(1, 6) * r6, q(1, 6) * r6, -q(1, 3) * r6};
  auto a2 = build_root_system(RootSystemName::A2);
  CHECK(frame({0, 1, -1}, f1, a2f2) == a2.simple_roots[1]);
  CHECK(frame({1, 0, -1}, f1, a2f2) == *a2.highest_root);
}

TEST_CASE("Weyl group orders") {
  CHECK(build_root_system(RootSystemName::A1xA1).weyl_group.size() == 4);
  CHECK(build_root_system(RootSystemName::A2).weyl_group.size() == 6);
  CHECK(build_root_system(RootSystemName::B2).weyl_group.size() == 8);
  CHECK(build_root_system(RootSystemName::G2).weyl_group.size() == 12);
  // irrational angle between the mirrors: infinite dihedral group
  CHECK_THROWS_AS(enumerate_weyl_group({Vec2{1, 0}, Vec2{1, Scalar(1) + r2 + r3}}), std::runtime_error);
}

TEST_CASE("invariants of every system") {
  for (auto name : all_systems) {
    auto rs = build_root_system(name);
    CAPTURE(to_string(name));
    CHECK(validate_root_system(rs.roots).ok());
    for (const auto& w : rs.weyl_group) {
      CHECK(w.translation_part().is_zero());
      for (const auto& r : rs.roots)
        CHECK(std::find(rs.roots.begin(), rs.roots.end(), w(r)) != rs.roots.end());
    }
    Scalar det = cross(rs.coroot_lattice_basis[0], rs.coroot_lattice_basis[1]).abs();
    CHECK(area(Region(rs.alcove)) * Scalar(static_cast<long>(rs.weyl_group.size())) == det);
    // the lattice basis generates the coroots
    for (const auto& c : rs.coroots) {
      Mat2 b = Mat2::from_columns(rs.coroot_lattice_basis[0], rs.coroot_lattice_basis[1]);
      Vec2 coords = b.inverse() * c;
      CHECK(coords.x.is_integer());
      CHECK(coords.y.is_integer());
    }
    // alcove lies in the dominant chamber; walls bound it exactly
    for (const auto& v : rs.alcove.vertices()) {
      CHECK(dot(v, rs.simple_roots[0]).sign() >= 0);
      CHECK(dot(v, rs.simple_roots[1]).sign() >= 0);
      for (const auto& wall : rs.walls)
        CHECK(wall.inside().side(v) >= 0);
    }
    for (const auto& wall : rs.walls) {
      int on = 0;
      for (const auto& v : rs.alcove.vertices())
        on += wall.inside().side(v) == 0;
      CHECK(on == 2);
    }
  }
}

TEST_CASE("validate examples") {
  std::vector<Vec2> a1a1 = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  CHECK(validate_root_system(a1a1).ok());
  std::vector<Vec2> line = {{1, 0}, {-1, 0}};
  auto rep = validate_root_system(line);
  CHECK_FALSE(rep.spans);
  CHECK_FALSE(rep.ok());

  auto a2 = build_root_system(RootSystemName::A2);
  Vec2 beta = a2.simple_roots[1];
  std::vector<Vec2> bent;
  for (const auto& r : a2.roots) {
    if (r == beta)
      bent.push_back(q(11, 10) * beta);
    else if (r == -beta)
      bent.push_back(q(-11, 10) * beta);
    else
      bent.push_back(r);
  }
  auto bad = validate_root_system(bent);
  CHECK_FALSE(bad.integral);
  CHECK_FALSE(bad.ok());
}

TEST_CASE("coroot examples") {
  CHECK(coroot({1, 1}) == Vec2{1, 1});
  CHECK(coroot({0, 1}) == Vec2{0, 2});
  CHECK(coroot({0, r6}) == Vec2{0, q(1, 3) * r6});
  CHECK_THROWS_AS(coroot({0, 0}), std::invalid_argument);
  // roots of squared length 2 are self-dual
  for (auto name : all_systems)
    for (const auto& r : build_root_system(name).roots)
      if (dot(r, r) == Scalar(2))
        CHECK(coroot(r) == r);
}

TEST_CASE("root system names") {
  CHECK(parse_root_system_name("a2") == RootSystemName::A2);
  CHECK(parse_root_system_name("G2") == RootSystemName::G2);
  CHECK(parse_root_system_name("A1xA1") == RootSystemName::A1xA1);
  CHECK_THROWS_AS(parse_root_system_name("e8"), std::invalid_argument);
}
