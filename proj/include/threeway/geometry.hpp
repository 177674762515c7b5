// Exact planar polygon algebra over Scalar.
//
// Regions are finite unions of interior-disjoint convex polygons.  All set
// equality is "almost everywhere": two regions are equal when the area of
// their symmetric difference is zero.

#ifndef THREEWAY_GEOMETRY_HPP_
#define THREEWAY_GEOMETRY_HPP_

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "threeway/scalar.hpp"

namespace threeway {

struct Vec2 {
  Scalar x, y;

  Vec2() = default;
  Vec2(Scalar x_, Scalar y_) : x(std::move(x_)), y(std::move(y_)) {}

  Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
  friend Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
  friend Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
  Vec2 operator-() const { return {-x, -y}; }
  friend Vec2 operator*(const Scalar& s, const Vec2& v) { return {s * v.x, s * v.y}; }
  friend bool operator==(const Vec2&, const Vec2&) = default;

  bool is_zero() const { return x.is_zero() && y.is_zero(); }
  std::array<double, 2> to_double() const { return {x.to_double(), y.to_double()}; }
  std::string str() const { return "(" + x.str() + ", " + y.str() + ")"; }
};

inline Scalar dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline Scalar cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

// Row-major 2x2 matrix [[a, b], [c, d]].
struct Mat2 {
  Scalar a{1}, b{0}, c{0}, d{1};

  static Mat2 identity() { return {}; }
  static Mat2 from_columns(const Vec2& u, const Vec2& v) { return {u.x, v.x, u.y, v.y}; }

  Scalar det() const { return a * d - b * c; }
  Mat2 transpose() const { return {a, c, b, d}; }
  Mat2 inverse() const;  // throws DomainError when singular
  Vec2 col(int i) const { return i == 0 ? Vec2{a, c} : Vec2{b, d}; }

  friend Vec2 operator*(const Mat2& m, const Vec2& v) { return {m.a * v.x + m.b * v.y, m.c * v.x + m.d * v.y}; }
  friend Mat2 operator*(const Mat2& m, const Mat2& n) {
    return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
  }
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

// x -> linear * x + translation, with an orthogonal linear part.
class Isometry {
 public:
  Isometry() = default;
  // Throws std::invalid_argument unless linear is exactly orthogonal.
  Isometry(Mat2 linear, Vec2 translation);

  static Isometry identity() { return {}; }
  static Isometry translation(const Vec2& t) { return Isometry(Mat2::identity(), t); }

  const Mat2& linear() const { return linear_; }
  const Vec2& translation_part() const { return translation_; }
  int det() const { return linear_.det().sign(); }
  bool is_identity() const { return linear_ == Mat2::identity() && translation_.is_zero(); }
  bool is_translation() const { return linear_ == Mat2::identity(); }

  Vec2 operator()(const Vec2& p) const { return linear_ * p + translation_; }
  // (f * g)(p) == f(g(p))
  friend Isometry operator*(const Isometry& f, const Isometry& g);
  Isometry inverse() const;

  friend bool operator==(const Isometry&, const Isometry&) = default;
  std::string str() const;

 private:
  Mat2 linear_;
  Vec2 translation_{Scalar(0), Scalar(0)};
};

// {p : <p, normal> <= offset}
struct HalfPlane {
  Vec2 normal;
  Scalar offset;

  HalfPlane(Vec2 n, Scalar off);

  // +1 strictly inside, 0 on the boundary line, -1 outside.
  int side(const Vec2& p) const { return (offset - dot(p, normal)).sign(); }
  HalfPlane complement() const { return {-normal, -offset}; }
};

struct BBox {
  double xmin, ymin, xmax, ymax;
  bool overlaps(const BBox& o) const {
    return xmin <= o.xmax && o.xmin <= xmax && ymin <= o.ymax && o.ymin <= ymax;
  }
  bool contains(double x, double y) const { return xmin <= x && x <= xmax && ymin <= y && y <= ymax; }
  BBox merged(const BBox& o) const;
};

class ConvexPolygon {
 public:
  // Validates: after dropping repeated and collinear vertices the polygon must
  // be strictly convex, counterclockwise, with positive area.  Throws
  // std::invalid_argument otherwise.
  explicit ConvexPolygon(std::vector<Vec2> vertices);

  static ConvexPolygon triangle(Vec2 a, Vec2 b, Vec2 c) { return ConvexPolygon({std::move(a), std::move(b), std::move(c)}); }
  // Parallelogram spanned by u and v at origin (either orientation).
  static ConvexPolygon parallelogram(const Vec2& origin, const Vec2& u, const Vec2& v);
  static ConvexPolygon rectangle(const Scalar& x0, const Scalar& y0, const Scalar& x1, const Scalar& y1);

  const std::vector<Vec2>& vertices() const { return vertices_; }
  size_t size() const { return vertices_.size(); }
  Scalar area() const;
  // Approximate bounding box, padded outward by a relative 1e-9.
  const BBox& bbox() const { return bbox_; }
  std::vector<HalfPlane> edges() const;
  Vec2 centroid() const;

 private:
  struct Trusted {};
  ConvexPolygon(std::vector<Vec2> vertices, Trusted);
  static std::optional<ConvexPolygon> from_clip(std::vector<Vec2> vertices);
  void compute_bbox();

  std::vector<Vec2> vertices_;
  BBox bbox_{};

  friend std::optional<ConvexPolygon> clip(const ConvexPolygon& p, const HalfPlane& h);
  friend ConvexPolygon apply(const Isometry& g, const ConvexPolygon& p);
  friend ConvexPolygon apply_linear(const Mat2& m, const Vec2& t, const ConvexPolygon& p);
};

class Region {
 public:
  Region() = default;
  explicit Region(std::vector<ConvexPolygon> parts) : parts_(std::move(parts)) {}
  Region(ConvexPolygon p) { parts_.push_back(std::move(p)); }  // NOLINT

  const std::vector<ConvexPolygon>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  Scalar area() const;
  std::optional<BBox> bbox() const;
  void add(ConvexPolygon p) { parts_.push_back(std::move(p)); }

 private:
  std::vector<ConvexPolygon> parts_;
};

enum class Location { interior, boundary, outside };

// Sutherland-Hodgman step; returns nothing when the intersection has zero area.
std::optional<ConvexPolygon> clip(const ConvexPolygon& p, const HalfPlane& h);
Region clip(const Region& r, const HalfPlane& h);

std::optional<ConvexPolygon> intersect(const ConvexPolygon& a, const ConvexPolygon& b);
// a \ b as interior-disjoint convex pieces.
std::vector<ConvexPolygon> subtract(const ConvexPolygon& a, const ConvexPolygon& b);

Scalar area(const Region& r);
ConvexPolygon apply(const Isometry& g, const ConvexPolygon& p);
Region apply(const Isometry& g, const Region& r);
// Image under an invertible affine map x -> m x + t (m need not be orthogonal).
ConvexPolygon apply_linear(const Mat2& m, const Vec2& t, const ConvexPolygon& p);
Region apply_linear(const Mat2& m, const Vec2& t, const Region& r);
Region translate(const Region& r, const Vec2& t);

class OverlapError : public std::runtime_error {
 public:
  OverlapError(const std::string& what, Scalar overlap) : std::runtime_error(what), overlap_area(std::move(overlap)) {}
  Scalar overlap_area;
};

Region intersection(const Region& a, const Region& b);
Region difference(const Region& a, const Region& b);
// Throws OverlapError when the interiors of a and b meet.
Region disjoint_union(const Region& a, const Region& b);

enum class BooleanOp { difference, disjoint_union };
Region boolean(const Region& a, const Region& b, BooleanOp op);

Location locate(const ConvexPolygon& p, const Vec2& q);
Location locate(const Region& r, const Vec2& q);

bool equal_ae(const Region& a, const Region& b);
// Sum over pairs of parts of the pairwise intersection area (zero for a valid region).
Scalar self_overlap_area(const Region& r);

}  // namespace threeway

#endif  // THREEWAY_GEOMETRY_HPP_
