// Affine Weyl group actions (affine reflections, folding into the alcove)
// and full-rank lattices (cells, reduction, duals, intersections).

#ifndef THREEWAY_GROUPS_HPP_
#define THREEWAY_GROUPS_HPP_

#include <array>
#include <optional>
#include <vector>

#include "threeway/geometry.hpp"
#include "threeway/roots.hpp"

namespace threeway {

// Reflection about H_{r,k} = {<x, r> = k}: x -> rho_r(x) + k r^vee.
// Throws std::invalid_argument for r = 0.
Isometry affine_reflection(const Vec2& r, long k);

struct FoldResult {
  Vec2 representative;
  std::vector<int> word;  // indices into RootSystemData::walls, in application order
  Isometry isometry;      // isometry(input) == representative
};

// Reflects x across violated alcove walls until it lies in the closed alcove.
// Throws std::runtime_error after 100000 reflections (malformed alcove data).
FoldResult fold(const Vec2& x, const RootSystemData& rs);

class Lattice {
 public:
  // Throws std::invalid_argument when u and v are linearly dependent.
  Lattice(Vec2 u, Vec2 v);

  const Vec2& u() const { return u_; }
  const Vec2& v() const { return v_; }
  Mat2 matrix() const { return Mat2::from_columns(u_, v_); }
  Scalar cell_area() const { return cross(u_, v_).abs(); }
  ConvexPolygon cell() const { return ConvexPolygon::parallelogram(Vec2{0, 0}, u_, v_); }

  Vec2 point(const mpz_class& m, const mpz_class& n) const;
  Vec2 point(long m, long n) const { return point(mpz_class(m), mpz_class(n)); }
  // Coordinates of p in the basis (u, v).
  std::array<Scalar, 2> coordinates(const Vec2& p) const;
  bool contains(const Vec2& p) const;
  // Same point set (the change of basis is unimodular).
  bool same_as(const Lattice& other) const;
  bool contains(const Lattice& sub) const { return contains(sub.u_) && contains(sub.v_); }
  Lattice scaled(long k) const { return Lattice(Scalar(k) * u_, Scalar(k) * v_); }

 private:
  Vec2 u_, v_;
};

// {g : <g, s> integer for all s in L}; basis is the inverse transpose.
Lattice dual_lattice(const Lattice& l);

struct ReducedPoint {
  Vec2 representative;                     // cell coordinates in [0, 1)^2
  Vec2 gamma;                              // lattice vector, x = representative + gamma
  std::array<mpz_class, 2> coefficients;  // gamma = m u + n v
};

ReducedPoint lattice_reduce(const Vec2& x, const Lattice& l);

struct LatticeIntersection {
  bool commensurable = false;
  std::optional<Lattice> lattice;
  mpz_class index_in_first, index_in_second;
};

// Intersection of two lattices whose change of basis is rational; reports
// incommensurable otherwise.  The returned basis is Lagrange-reduced.
LatticeIntersection lattice_intersection(const Lattice& a, const Lattice& b);

// Lagrange-Gauss reduction of a 2-D basis.
Lattice reduce_basis(const Lattice& l);

}  // namespace threeway

#endif  // THREEWAY_GROUPS_HPP_
