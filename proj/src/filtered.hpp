// Doubles carrying a rigorous absolute error bound, used as a fast filter in
// front of exact Scalar predicates.  Internal to the library.

#ifndef THREEWAY_SRC_FILTERED_HPP_
#define THREEWAY_SRC_FILTERED_HPP_

#include <cmath>
#include <vector>

#include "threeway/geometry.hpp"

namespace threeway::filtered {

// Double with a rigorous absolute error bound.
struct F {
  double v = 0, e = 0;
};

constexpr double kRel = 0x1p-50;
constexpr double kAbs = 0x1p-1000;

inline F operator+(F a, F b) {
  double r = a.v + b.v;
  return {r, a.e + b.e + std::abs(r) * kRel + kAbs};
}
inline F operator-(F a, F b) {
  double r = a.v - b.v;
  return {r, a.e + b.e + std::abs(r) * kRel + kAbs};
}
inline F operator*(F a, F b) {
  double r = a.v * b.v;
  return {r, (a.e * std::abs(b.v) + b.e * std::abs(a.v) + a.e * b.e) * (1 + kRel) + std::abs(r) * kRel + kAbs};
}
// +1, -1, or 0 when undecided
inline int sure_sign(F a) { return a.v - a.e > 0 ? 1 : (a.v + a.e < 0 ? -1 : 0); }

inline F to_f(const Scalar& s) {
  auto ap = s.approx(80);
  double d = ap.value.get_d();
  mpq_class rest = ap.value - mpq_class(d);
  return {d, std::abs(rest.get_d()) * 2 + ap.error_bound.get_d() * 2 + kAbs};
}

struct FVec {
  F x, y;
};
inline FVec to_f(const Vec2& v) { return {to_f(v.x), to_f(v.y)}; }

struct FMat {
  F a, b, c, d;
  FVec operator()(const FVec& p) const { return {a * p.x + b * p.y, c * p.x + d * p.y}; }
};
inline FMat to_f(const Mat2& m) { return {to_f(m.a), to_f(m.b), to_f(m.c), to_f(m.d)}; }

struct FEdge {
  F nx, ny, off;
};
struct FPart {
  BBox box;
  std::vector<FEdge> edges;
};

enum class Hit { none, some, unsure };

class FilteredRegion {
 public:
  explicit FilteredRegion(const Region& r) {
    for (const auto& p : r.parts()) {
      FPart fp{p.bbox(), {}};
      for (const auto& h : p.edges())
        fp.edges.push_back({to_f(h.normal.x), to_f(h.normal.y), to_f(h.offset)});
      parts_.push_back(std::move(fp));
    }
    box_ = *r.bbox();
  }
  const BBox& box() const { return box_; }

  // Number of parts containing p in their interior; -1 when undecided.
  int count(const FVec& p) const {
    if (!box_.contains(p.x.v, p.y.v))
      return 0;
    int hits = 0;
    for (const auto& part : parts_) {
      if (!part.box.contains(p.x.v, p.y.v))
        continue;
      bool unsure = false, out = false;
      for (const auto& e : part.edges) {
        int s = sure_sign(e.off - (p.x * e.nx + p.y * e.ny));
        if (s < 0) {
          out = true;
          break;
        }
        unsure = unsure || s == 0;
      }
      if (out)
        continue;
      if (unsure)
        return -1;
      ++hits;
    }
    return hits;
  }

 private:
  std::vector<FPart> parts_;
  BBox box_;
};

}  // namespace threeway::filtered

#endif  // THREEWAY_SRC_FILTERED_HPP_
