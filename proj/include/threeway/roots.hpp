// The four rank-2 root systems, their finite Weyl groups, coroot lattices
// and fundamental alcoves, in the (v1, v2) frame where the first simple root
// lies along the positive v1 axis.

#ifndef THREEWAY_ROOTS_HPP_
#define THREEWAY_ROOTS_HPP_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "threeway/geometry.hpp"

namespace threeway {

enum class RootSystemName { A1xA1, A2, B2, G2 };

std::string_view to_string(RootSystemName n);
// Accepts "a1xa1", "A2", "b2", ... (case-insensitive).  Throws std::invalid_argument.
RootSystemName parse_root_system_name(std::string_view s);

// The affine hyperplane H_{r,k} = {x : <x, r> = k}; the alcove lies on the
// side <x, r> >= k when lower_bound is set, on <x, r> <= k otherwise.
struct AlcoveWall {
  std::string label;
  Vec2 root;
  long level = 0;
  bool lower_bound = true;

  HalfPlane inside() const;
};

struct RootSystemData {
  RootSystemName name;
  std::vector<Vec2> roots;
  std::array<Vec2, 2> simple_roots;
  std::vector<Vec2> positive_roots;
  // Unset for the reducible A1xA1, which has one highest root per factor.
  std::optional<Vec2> highest_root;
  std::vector<Vec2> coroots;
  std::vector<Isometry> weyl_group;
  std::array<Vec2, 2> coroot_lattice_basis;
  ConvexPolygon alcove;
  std::vector<AlcoveWall> walls;
  std::vector<std::string> notes;
};

// r^vee = 2 r / <r, r>.  Throws std::invalid_argument for r = 0.
Vec2 coroot(const Vec2& r);
// Linear part of the reflection x -> x - <x, r> r^vee.
Mat2 reflection_matrix(const Vec2& r);

RootSystemData build_root_system(RootSystemName name);

struct RootSystemReport {
  bool spans = false;
  bool plus_minus_pairs = false;
  bool reflection_closed = false;
  bool integral = false;
  bool angle_constraint = false;
  std::vector<std::string> failures;

  bool ok() const { return spans && plus_minus_pairs && reflection_closed && integral && angle_constraint; }
};

RootSystemReport validate_root_system(std::span<const Vec2> roots);

// Closure of the two simple reflections under composition.  Throws
// std::runtime_error past 64 elements (the input does not generate a finite group).
std::vector<Isometry> enumerate_weyl_group(const std::array<Vec2, 2>& simple_roots);

}  // namespace threeway

#endif  // THREEWAY_ROOTS_HPP_
