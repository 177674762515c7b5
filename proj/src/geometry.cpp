#include "threeway/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace threeway {

Mat2 Mat2::inverse() const {
  Scalar dt = det();
  if (dt.is_zero())
    throw DomainError("singular matrix");
  Scalar inv = dt.inverse();
  return {d * inv, -b * inv, -c * inv, a * inv};
}

Isometry::Isometry(Mat2 linear, Vec2 translation) : linear_(std::move(linear)), translation_(std::move(translation)) {
  if (!(linear_.transpose() * linear_ == Mat2::identity()))
    throw std::invalid_argument("isometry linear part is not orthogonal");
}

Isometry operator*(const Isometry& f, const Isometry& g) {
  Isometry h;
  h.linear_ = f.linear_ * g.linear_;
  h.translation_ = f.linear_ * g.translation_ + f.translation_;
  return h;
}

Isometry Isometry::inverse() const {
  Isometry h;
  h.linear_ = linear_.transpose();
  h.translation_ = -(h.linear_ * translation_);
  return h;
}

std::string Isometry::str() const {
  return "[[" + linear_.a.str() + ", " + linear_.b.str() + "], [" + linear_.c.str() + ", " + linear_.d.str() +
         "]] + " + translation_.str();
}

HalfPlane::HalfPlane(Vec2 n, Scalar off) : normal(std::move(n)), offset(std::move(off)) {
  if (normal.is_zero())
    throw std::invalid_argument("half-plane with zero normal");
}

BBox BBox::merged(const BBox& o) const {
  return {std::min(xmin, o.xmin), std::min(ymin, o.ymin), std::max(xmax, o.xmax), std::max(ymax, o.ymax)};
}

namespace {

// Drops repeated vertices and vertices lying on the segment of their
// neighbours.  Works for any vertex list that traces a convex polygon.
std::vector<Vec2> simplify(std::vector<Vec2> v) {
  bool changed = true;
  while (changed && v.size() >= 3) {
    changed = false;
    for (size_t i = 0; i < v.size() && v.size() >= 3; ++i) {
      const Vec2& prev = v[(i + v.size() - 1) % v.size()];
      const Vec2& next = v[(i + 1) % v.size()];
      if (v[i] == next || cross(v[i] - prev, next - v[i]).is_zero()) {
        v.erase(v.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
    }
  }
  if (v.size() == 2 && v[0] == v[1])
    v.pop_back();
  return v;
}

}  // namespace

ConvexPolygon::ConvexPolygon(std::vector<Vec2> vertices) : vertices_(simplify(std::move(vertices))) {
  const size_t n = vertices_.size();
  if (n < 3)
    throw std::invalid_argument("polygon has fewer than 3 non-collinear vertices");
  for (size_t i = 0; i != n; ++i) {
    const Vec2& a = vertices_[i];
    const Vec2& b = vertices_[(i + 1) % n];
    // every other vertex strictly left of edge a->b (convex, counterclockwise, simple)
    for (size_t j = 0; j != n; ++j) {
      if (j == i || j == (i + 1) % n)
        continue;
      if (cross(b - a, vertices_[j] - a).sign() <= 0)
        throw std::invalid_argument("polygon is not strictly convex and counterclockwise");
    }
  }
  compute_bbox();
}

ConvexPolygon::ConvexPolygon(std::vector<Vec2> vertices, Trusted) : vertices_(std::move(vertices)) { compute_bbox(); }

std::optional<ConvexPolygon> ConvexPolygon::from_clip(std::vector<Vec2> vertices) {
  auto v = simplify(std::move(vertices));
  if (v.size() < 3)
    return std::nullopt;
  return ConvexPolygon(std::move(v), Trusted{});
}

void ConvexPolygon::compute_bbox() {
  bbox_ = {HUGE_VAL, HUGE_VAL, -HUGE_VAL, -HUGE_VAL};
  for (const Vec2& p : vertices_) {
    auto [x, y] = p.to_double();
    bbox_.xmin = std::min(bbox_.xmin, x);
    bbox_.ymin = std::min(bbox_.ymin, y);
    bbox_.xmax = std::max(bbox_.xmax, x);
    bbox_.ymax = std::max(bbox_.ymax, y);
  }
  double pad = 1e-9 * (1 + std::max({std::fabs(bbox_.xmin), std::fabs(bbox_.xmax), std::fabs(bbox_.ymin),
                                     std::fabs(bbox_.ymax)}));
  bbox_.xmin -= pad;
  bbox_.ymin -= pad;
  bbox_.xmax += pad;
  bbox_.ymax += pad;
}

ConvexPolygon ConvexPolygon::parallelogram(const Vec2& origin, const Vec2& u, const Vec2& v) {
  if (cross(u, v).sign() > 0)
    return ConvexPolygon({origin, origin + u, origin + u + v, origin + v});
  return ConvexPolygon({origin, origin + v, origin + u + v, origin + u});
}

ConvexPolygon ConvexPolygon::rectangle(const Scalar& x0, const Scalar& y0, const Scalar& x1, const Scalar& y1) {
  return ConvexPolygon({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

Scalar ConvexPolygon::area() const {
  Scalar twice;
  const size_t n = vertices_.size();
  for (size_t i = 0; i != n; ++i)
    twice += cross(vertices_[i], vertices_[(i + 1) % n]);
  return Scalar::rational(1, 2) * twice;
}

std::vector<HalfPlane> ConvexPolygon::edges() const {
  std::vector<HalfPlane> out;
  const size_t n = vertices_.size();
  out.reserve(n);
  for (size_t i = 0; i != n; ++i) {
    const Vec2& p = vertices_[i];
    const Vec2& q = vertices_[(i + 1) % n];
    Vec2 normal{q.y - p.y, p.x - q.x};
    Scalar off = dot(p, normal);
    out.emplace_back(std::move(normal), std::move(off));
  }
  return out;
}

Vec2 ConvexPolygon::centroid() const {
  Scalar twice_area, cx, cy;
  const size_t n = vertices_.size();
  for (size_t i = 0; i != n; ++i) {
    const Vec2& p = vertices_[i];
    const Vec2& q = vertices_[(i + 1) % n];
    Scalar c = cross(p, q);
    twice_area += c;
    cx += (p.x + q.x) * c;
    cy += (p.y + q.y) * c;
  }
  Scalar k = (Scalar(3) * twice_area).inverse();
  return {cx * k, cy * k};
}

Scalar Region::area() const {
  Scalar total;
  for (const auto& p : parts_)
    total += p.area();
  return total;
}

std::optional<BBox> Region::bbox() const {
  if (parts_.empty())
    return std::nullopt;
  BBox b = parts_.front().bbox();
  for (const auto& p : parts_)
    b = b.merged(p.bbox());
  return b;
}

std::optional<ConvexPolygon> clip(const ConvexPolygon& p, const HalfPlane& h) {
  const auto& v = p.vertices();
  const size_t n = v.size();
  std::vector<Scalar> val(n);
  std::vector<int> s(n);
  bool all_in = true, all_out = true;
  for (size_t i = 0; i != n; ++i) {
    val[i] = h.offset - dot(v[i], h.normal);
    s[i] = val[i].sign();
    all_in = all_in && s[i] >= 0;
    all_out = all_out && s[i] <= 0;
  }
  if (all_in)
    return p;
  if (all_out)
    return std::nullopt;
  std::vector<Vec2> out;
  out.reserve(n + 1);
  for (size_t i = 0; i != n; ++i) {
    size_t j = (i + 1) % n;
    if (s[i] >= 0)
      out.push_back(v[i]);
    if (s[i] * s[j] < 0) {
      Scalar t = val[i] / (val[i] - val[j]);
      out.push_back(v[i] + t * (v[j] - v[i]));
    }
  }
  return ConvexPolygon::from_clip(std::move(out));
}

Region clip(const Region& r, const HalfPlane& h) {
  Region out;
  for (const auto& p : r.parts())
    if (auto c = clip(p, h))
      out.add(std::move(*c));
  return out;
}

std::optional<ConvexPolygon> intersect(const ConvexPolygon& a, const ConvexPolygon& b) {
  if (!a.bbox().overlaps(b.bbox()))
    return std::nullopt;
  std::optional<ConvexPolygon> cur = a;
  for (const auto& h : b.edges()) {
    cur = clip(*cur, h);
    if (!cur)
      return std::nullopt;
  }
  return cur;
}

std::vector<ConvexPolygon> subtract(const ConvexPolygon& a, const ConvexPolygon& b) {
  if (!a.bbox().overlaps(b.bbox()) || !intersect(a, b))
    return {a};
  std::vector<ConvexPolygon> out;
  std::optional<ConvexPolygon> rest = a;
  for (const auto& h : b.edges()) {
    if (auto outside = clip(*rest, h.complement()))
      out.push_back(std::move(*outside));
    rest = clip(*rest, h);
    if (!rest)
      break;
  }
  return out;
}

Scalar area(const Region& r) { return r.area(); }

ConvexPolygon apply_linear(const Mat2& m, const Vec2& t, const ConvexPolygon& p) {
  std::vector<Vec2> v;
  v.reserve(p.size());
  for (const auto& q : p.vertices())
    v.push_back(m * q + t);
  int s = m.det().sign();
  if (s == 0)
    throw DomainError("singular affine map");
  if (s < 0)
    std::reverse(v.begin(), v.end());
  return ConvexPolygon(std::move(v), ConvexPolygon::Trusted{});
}

ConvexPolygon apply(const Isometry& g, const ConvexPolygon& p) {
  return apply_linear(g.linear(), g.translation_part(), p);
}

Region apply(const Isometry& g, const Region& r) {
  Region out;
  for (const auto& p : r.parts())
    out.add(apply(g, p));
  return out;
}

Region apply_linear(const Mat2& m, const Vec2& t, const Region& r) {
  Region out;
  for (const auto& p : r.parts())
    out.add(apply_linear(m, t, p));
  return out;
}

Region translate(const Region& r, const Vec2& t) { return apply(Isometry::translation(t), r); }

Region intersection(const Region& a, const Region& b) {
  Region out;
  for (const auto& pa : a.parts())
    for (const auto& pb : b.parts())
      if (auto c = intersect(pa, pb))
        out.add(std::move(*c));
  return out;
}

Region difference(const Region& a, const Region& b) {
  Region out;
  for (const auto& pa : a.parts()) {
    std::vector<ConvexPolygon> pieces{pa};
    for (const auto& pb : b.parts()) {
      if (!pa.bbox().overlaps(pb.bbox()))
        continue;
      std::vector<ConvexPolygon> next;
      for (const auto& piece : pieces)
        for (auto& rest : subtract(piece, pb))
          next.push_back(std::move(rest));
      pieces = std::move(next);
      if (pieces.empty())
        break;
    }
    for (auto& piece : pieces)
      out.add(std::move(piece));
  }
  return out;
}

Region disjoint_union(const Region& a, const Region& b) {
  Region overlap = intersection(a, b);
  if (!overlap.empty())
    throw OverlapError("disjoint union of overlapping regions", overlap.area());
  Region out = a;
  for (const auto& p : b.parts())
    out.add(p);
  return out;
}

Region boolean(const Region& a, const Region& b, BooleanOp op) {
  return op == BooleanOp::difference ? difference(a, b) : disjoint_union(a, b);
}

Location locate(const ConvexPolygon& p, const Vec2& q) {
  auto [x, y] = q.to_double();
  if (!p.bbox().contains(x, y))
    return Location::outside;
  bool on_edge = false;
  for (const auto& h : p.edges()) {
    int s = h.side(q);
    if (s < 0)
      return Location::outside;
    if (s == 0)
      on_edge = true;
  }
  return on_edge ? Location::boundary : Location::interior;
}

Location locate(const Region& r, const Vec2& q) {
  Location best = Location::outside;
  for (const auto& p : r.parts()) {
    Location l = locate(p, q);
    if (l == Location::interior)
      return l;
    if (l == Location::boundary)
      best = l;
  }
  return best;
}

bool equal_ae(const Region& a, const Region& b) {
  return difference(a, b).empty() && difference(b, a).empty();
}

Scalar self_overlap_area(const Region& r) {
  Scalar total;
  const auto& p = r.parts();
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j)
      if (auto c = intersect(p[i], p[j]))
        total += c->area();
  return total;
}

}  // namespace threeway
