#include "threeway/roots.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <stdexcept>

namespace threeway {

std::string_view to_string(RootSystemName n) {
  switch (n) {
    case RootSystemName::A1xA1: return "A1xA1";
    case RootSystemName::A2: return "A2";
    case RootSystemName::B2: return "B2";
    case RootSystemName::G2: return "G2";
  }
  return "?";
}

RootSystemName parse_root_system_name(std::string_view s) {
  std::string low(s);
  std::transform(low.begin(), low.end(), low.begin(), [](unsigned char c) { return std::tolower(c); });
  if (low == "a1xa1" || low == "a1a1")
    return RootSystemName::A1xA1;
  if (low == "a2")
    return RootSystemName::A2;
  if (low == "b2")
    return RootSystemName::B2;
  if (low == "g2")
    return RootSystemName::G2;
  throw std::invalid_argument("unknown root system '" + std::string(s) + "' (expected a1xa1, a2, b2 or g2)");
}

HalfPlane AlcoveWall::inside() const {
  if (lower_bound)
    return HalfPlane(-root, Scalar(-level));
  return HalfPlane(root, Scalar(level));
}

Vec2 coroot(const Vec2& r) {
  if (r.is_zero())
    throw std::invalid_argument("coroot of the zero vector");
  return (Scalar(2) / dot(r, r)) * r;
}

Mat2 reflection_matrix(const Vec2& r) {
  Vec2 rv = coroot(r);
  return {Scalar(1) - rv.x * r.x, -rv.x * r.y, -rv.y * r.x, Scalar(1) - rv.y * r.y};
}

namespace {

bool contains(std::span<const Vec2> set, const Vec2& v) { return std::find(set.begin(), set.end(), v) != set.end(); }

Vec2 combo(long a, const Vec2& alpha, long b, const Vec2& beta) { return Scalar(a) * alpha + Scalar(b) * beta; }

struct Table {
  Vec2 alpha, beta;
  // positive roots as (alpha, beta) coefficients
  std::vector<std::pair<long, long>> positive;
  std::optional<std::pair<long, long>> highest;
  std::array<Vec2, 2> lattice;
  std::vector<Vec2> alcove;
};

Table table_for(RootSystemName name) {
  const Scalar h = Scalar::rational(1, 2);
  const Scalar r2 = Scalar::sqrt2(), r6 = Scalar::sqrt6();
  switch (name) {
    case RootSystemName::A1xA1: {
      Vec2 e1{1, 0}, e2{0, 1};
      return {e1, e2, {{1, 0}, {0, 1}}, std::nullopt, {{Vec2{2, 0}, Vec2{0, 2}}},
              {{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
    }
    case RootSystemName::A2: {
      Vec2 alpha{r2, 0}, beta{-h * r2, h * r6};
      return {alpha, beta, {{1, 0}, {0, 1}, {1, 1}}, std::pair{1L, 1L}, {alpha, beta},
              {{0, 0}, {h * r2, Scalar::rational(1, 6) * r6}, {0, Scalar::rational(1, 3) * r6}}};
    }
    case RootSystemName::B2: {
      // alpha = e1 - e2, beta = e2
      Vec2 alpha{1, -1}, beta{0, 1};
      return {alpha, beta, {{1, 0}, {0, 1}, {1, 1}, {1, 2}}, std::pair{1L, 2L}, {Vec2{1, -1}, Vec2{1, 1}},
              {{0, 0}, {1, 0}, {h, h}}};
    }
    case RootSystemName::G2: {
      Vec2 alpha{r2, 0}, beta{Scalar::rational(-3, 2) * r2, h * r6};
      Vec2 third = Scalar::rational(1, 3) * beta;
      return {alpha, beta, {{1, 0}, {0, 1}, {1, 1}, {2, 1}, {3, 1}, {3, 2}}, std::pair{3L, 2L},
              {alpha + third, alpha + Scalar(2) * third},
              {{0, 0}, {Scalar::rational(1, 6) * r2, Scalar::rational(1, 6) * r6}, {0, Scalar::rational(1, 6) * r6}}};
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

std::vector<Isometry> enumerate_weyl_group(const std::array<Vec2, 2>& simple_roots) {
  const std::array<Mat2, 2> gens = {reflection_matrix(simple_roots[0]), reflection_matrix(simple_roots[1])};
  std::vector<Mat2> found{Mat2::identity()};
  std::deque<Mat2> queue{Mat2::identity()};
  while (!queue.empty()) {
    Mat2 m = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      Mat2 next = g * m;
      if (std::find(found.begin(), found.end(), next) != found.end())
        continue;
      if (found.size() >= 64)
        throw std::runtime_error("reflection group exceeds 64 elements; simple roots do not generate a finite group");
      found.push_back(next);
      queue.push_back(next);
    }
  }
  std::vector<Isometry> out;
  out.reserve(found.size());
  for (auto& m : found)
    out.emplace_back(std::move(m), Vec2{0, 0});
  return out;
}

RootSystemData build_root_system(RootSystemName name) {
  Table t = table_for(name);
  RootSystemData rs{name, {}, {t.alpha, t.beta}, {}, std::nullopt, {}, {}, t.lattice,
                    ConvexPolygon(t.alcove), {}, {}};
  for (auto [a, b] : t.positive)
    rs.positive_roots.push_back(combo(a, t.alpha, b, t.beta));
  for (const auto& r : rs.positive_roots)
    rs.roots.push_back(r);
  for (const auto& r : rs.positive_roots)
    rs.roots.push_back(-r);
  for (const auto& r : rs.roots)
    rs.coroots.push_back(coroot(r));
  if (t.highest)
    rs.highest_root = combo(t.highest->first, t.alpha, t.highest->second, t.beta);
  rs.weyl_group = enumerate_weyl_group(rs.simple_roots);

  rs.walls.push_back({"H_alpha", t.alpha, 0, true});
  rs.walls.push_back({"H_beta", t.beta, 0, true});
  if (rs.highest_root) {
    rs.walls.push_back({"H_highest_1", *rs.highest_root, 1, false});
  } else {
    rs.walls.push_back({"H_alpha_1", t.alpha, 1, false});
    rs.walls.push_back({"H_beta_1", t.beta, 1, false});
  }
  if (name == RootSystemName::G2)
    rs.notes.push_back("long root 2e3 - e1 - e2 completes the permutation orbit of 2e1 - e2 - e3");
  return rs;
}

RootSystemReport validate_root_system(std::span<const Vec2> roots) {
  RootSystemReport rep;
  if (roots.empty()) {
    rep.failures.push_back("empty root list");
    return rep;
  }
  for (const auto& r : roots)
    if (r.is_zero()) {
      rep.failures.push_back("zero vector in root list");
      return rep;
    }

  rep.spans = false;
  for (size_t i = 0; i < roots.size() && !rep.spans; ++i)
    for (size_t j = i + 1; j < roots.size() && !rep.spans; ++j)
      rep.spans = !cross(roots[i], roots[j]).is_zero();
  if (!rep.spans)
    rep.failures.push_back("span: roots do not span the plane");

  rep.plus_minus_pairs = true;
  for (const auto& r : roots) {
    if (!contains(roots, -r)) {
      rep.plus_minus_pairs = false;
      rep.failures.push_back("pairs: -" + r.str() + " missing");
      continue;
    }
    for (const auto& s : roots) {
      if (!cross(r, s).is_zero())
        continue;
      Scalar ratio = dot(r, s) / dot(r, r);
      if (ratio != Scalar(1) && ratio != Scalar(-1)) {
        rep.plus_minus_pairs = false;
        rep.failures.push_back("pairs: " + s.str() + " is a non-unit multiple of " + r.str());
      }
    }
  }

  rep.reflection_closed = true;
  rep.integral = true;
  rep.angle_constraint = true;
  for (const auto& r : roots) {
    Mat2 m = reflection_matrix(r);
    Vec2 rv = coroot(r);
    for (const auto& s : roots) {
      if (!contains(roots, m * s)) {
        rep.reflection_closed = false;
        rep.failures.push_back("closure: reflection of " + s.str() + " in " + r.str() + " not a root");
      }
      if (!dot(s, rv).is_integer()) {
        rep.integral = false;
        rep.failures.push_back("integrality: <" + s.str() + ", coroot " + r.str() + "> not an integer");
      }
      Scalar rs = dot(r, s);
      Scalar four_cos2 = Scalar(4) * rs * rs / (dot(r, r) * dot(s, s));
      if (!four_cos2.is_integer()) {
        rep.angle_constraint = false;
        rep.failures.push_back("angle: 4cos^2 between " + r.str() + " and " + s.str() + " not an integer");
      }
    }
  }
  return rep;
}

}  // namespace threeway
