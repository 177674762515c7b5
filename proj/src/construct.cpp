#include "threeway/construct.hpp"

#include "filtered.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

namespace threeway {

namespace {

using namespace filtered;

const Scalar r2 = Scalar::sqrt2(), r3 = Scalar::sqrt3(), r6 = Scalar::sqrt6();
Scalar q(long p, long d = 1) { return Scalar::rational(p, d); }

Region concat(std::initializer_list<const Region*> rs) {
  Region out;
  for (const Region* r : rs)
    for (const auto& p : r->parts())
      out.add(p);
  return out;
}

void append(Region& into, const Region& r) {
  for (const auto& p : r.parts())
    into.add(p);
}

Isometry linear(const Mat2& m) { return Isometry(m, Vec2{0, 0}); }

std::string cut_text(const HalfPlane& h) {
  return "{p : <p, " + h.normal.str() + "> <= " + h.offset.str() + "}";
}

// ---------------------------------------------------------------- packages

struct Display {
  std::string label;
  std::vector<WitnessEntry> entries;
};

struct PackageSpec {
  Vec2 delta, eta;
  HalfPlane cut{Vec2{1, 0}, 0};  // the cut piece K~i1 is cell ∩ cut
  bool cut_piece_moves;
  Vec2 shift;
  long k;
  // Printed witnesses omega -> alcove, built from (cut piece, complement, cell).
  std::function<std::vector<Display>(const Region&, const Region&, const Region&)> displays;
};

PackageSpec package_spec(const RootSystemData& rs, int variant) {
  const Vec2 alpha = rs.simple_roots[0], beta = rs.simple_roots[1];
  const Isometry rho_alpha = linear(reflection_matrix(alpha));
  const Isometry rho_beta = linear(reflection_matrix(beta));
  const Region alcove = rs.alcove;
  PackageSpec s;
  switch (rs.name) {
    case RootSystemName::A2:
      if (variant == 1) {
        s.eta = {q(1, 2) * r2, 0};
        s.delta = {0, q(1, 6) * r6};
        s.cut = HalfPlane({q(1, 3) * r3, -1}, 0);  // v >= u/sqrt3
        s.cut_piece_moves = false;
        s.shift = s.eta + s.delta;
        s.k = 6;
        Vec2 two_eta = Scalar(2) * s.eta;
        s.displays = [=](const Region& cut, const Region& rest, const Region&) {
          return std::vector<Display>{
              {"C = K11 ∪ [rho_alpha(K12 + eta1 + delta1) + 2 eta1]",
               {{cut, Isometry::identity()}, {translate(rest, s.shift), Isometry::translation(two_eta) * rho_alpha}}}};
        };
      } else {
        s.delta = {0, q(1, 6) * r6};
        s.eta = {q(1, 2) * r2, q(1, 6) * r6};
        s.cut = HalfPlane({q(1, 3) * r3, 1}, q(1, 3) * r6);  // v <= -u/sqrt3 + sqrt6/3
        s.cut_piece_moves = false;
        s.shift = s.eta - s.delta;
        s.k = 6;
        s.displays = [=](const Region& cut, const Region& rest, const Region&) {
          return std::vector<Display>{
              {"C = K21 ∪ [rho_alpha(K22 + eta2 - delta2) + alpha]",
               {{cut, Isometry::identity()}, {translate(rest, s.shift), Isometry::translation(alpha) * rho_alpha}}}};
        };
      }
      break;
    case RootSystemName::B2: {
      const Isometry rho_top = affine_reflection(*rs.highest_root, 1);
      if (variant == 1) {
        s.delta = {q(1, 2), q(1, 2)};
        s.eta = {q(1, 2), 0};
        s.shift = s.delta - Scalar(2) * s.eta;
        // C1 = C ∩ {y <= x - 1/2}
        Region c1 = clip(alcove, HalfPlane({-1, 1}, q(-1, 2)));
        Region c_rest = difference(alcove, c1);
        Isometry back = (rho_alpha * rho_top).inverse();
        s.displays = [=](const Region&, const Region&, const Region& cell) {
          return std::vector<Display>{{"rho_alpha∘rho_{highest,1}(C1) = K1 + delta1 - 2 eta1",
                                       {{c_rest, Isometry::identity()}, {translate(cell, s.shift), back}}}};
        };
      } else {
        s.delta = {q(1, 4), q(1, 4)};
        s.eta = {1, 0};
        s.shift = Scalar(-2) * s.delta;
        // C2 = C ∩ {y <= 1/4}
        Region c2 = clip(alcove, HalfPlane({0, 1}, q(1, 4)));
        s.displays = [=](const Region& cut, const Region&, const Region& cell) {
          Region moved = translate(cut, s.shift);
          return std::vector<Display>{
              {"C = K2 ∪ rho_beta(K21 - 2 delta2)", {{cell, Isometry::identity()}, {moved, rho_beta}}},
              {"C = C2 ∪ rho_beta(K21 - 2 delta2)", {{c2, Isometry::identity()}, {moved, rho_beta}}}};
        };
      }
      s.cut = HalfPlane({-1, -1}, -1);  // y >= 1 - x
      s.cut_piece_moves = true;
      s.k = 4;
      break;
    }
    case RootSystemName::G2: {
      const Isometry rho_top = affine_reflection(*rs.highest_root, 1);
      if (variant == 1) {
        s.delta = {0, q(1, 6) * r6};
        s.eta = {q(1, 12) * r2, q(1, 12) * r6};
        s.cut = HalfPlane({0, -1}, -q(1, 6) * r6);  // v >= sqrt6/6
        s.shift = s.delta - Scalar(2) * s.eta;
        // C1 = C ∩ {u >= sqrt2/12}
        Region c1 = clip(alcove, HalfPlane({-1, 0}, -q(1, 12) * r2));
        Region c_rest = difference(alcove, c1);
        Isometry back = (rho_alpha * rho_top).inverse();
        s.displays = [=](const Region&, const Region&, const Region& cell) {
          return std::vector<Display>{{"rho_alpha∘rho_{highest,1}(C1) = K1 + delta1 - 2 eta1",
                                       {{c_rest, Isometry::identity()}, {translate(cell, s.shift), back}}}};
        };
      } else {
        s.delta = {0, q(1, 12) * r6};
        s.eta = {q(1, 6) * r2, q(1, 6) * r6};
        s.cut = HalfPlane({0, -1}, -1);  // v >= 1
        s.shift = Scalar(-2) * s.delta - s.eta;
        // C2 = C ∩ {v >= sqrt6 u + sqrt6/12}
        Region c2 = clip(alcove, HalfPlane({r6, -1}, -q(1, 12) * r6));
        s.displays = [=](const Region& cut, const Region&, const Region&) {
          Region moved = translate(cut, s.shift);
          return std::vector<Display>{
              {"C = K21 ∪ rho_alpha(K21 - 2 delta2 - eta2)", {{cut, Isometry::identity()}, {moved, rho_alpha}}},
              {"C = C2 ∪ rho_alpha(K21 - 2 delta2 - eta2)", {{c2, Isometry::identity()}, {moved, rho_alpha}}}};
        };
      }
      s.cut_piece_moves = true;
      s.k = 6;
      break;
    }
    case RootSystemName::A1xA1:
      throw std::logic_error("no cut package for A1xA1");
  }
  return s;
}

struct CutParts {
  Region cut, rest, omega, moving;
};

// Both sides of the cut must have positive area.
std::optional<CutParts> cut_cell(const Region& cell, const HalfPlane& h, bool cut_moves, const Vec2& shift) {
  CutParts p;
  p.cut = clip(cell, h);
  p.rest = clip(cell, h.complement());
  if (p.cut.empty() || p.rest.empty())
    return std::nullopt;
  const Region& stay = cut_moves ? p.rest : p.cut;
  p.moving = cut_moves ? p.cut : p.rest;
  Region moved = translate(p.moving, shift);
  p.omega = concat({&stay, &moved});
  return p;
}

// Offsets of lines parallel to h through vertices of the given polygons and
// midway between them, nearest to the stated offset first.
std::vector<Scalar> cut_family(const HalfPlane& h, const std::vector<const ConvexPolygon*>& polys) {
  std::vector<Scalar> vals;
  for (const auto* p : polys)
    for (const auto& v : p->vertices())
      vals.push_back(dot(v, h.normal));
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  std::vector<Scalar> out = vals;
  for (size_t i = 0; i + 1 < vals.size(); ++i)
    out.push_back(q(1, 2) * (vals[i] + vals[i + 1]));
  std::stable_sort(out.begin(), out.end(), [&](const Scalar& a, const Scalar& b) {
    Scalar da = (a - h.offset).abs(), db = (b - h.offset).abs();
    if (da != db)
      return da < db;
    return a < b;
  });
  return out;
}

OmegaPackage square_package() {
  OmegaPackage pkg{build_root_system(RootSystemName::A1xA1)};
  pkg.variant = 1;
  pkg.delta = {1, 0};
  pkg.eta = {0, 1};
  pkg.lattice = Lattice(pkg.delta, pkg.eta);
  pkg.cell = pkg.lattice.cell();
  pkg.omega = pkg.rs.alcove;
  pkg.shift = {0, 0};
  pkg.witness_lattice = {pkg.omega, pkg.cell, {{pkg.omega, Isometry::identity()}}};
  pkg.witness_weyl = {pkg.omega, pkg.rs.alcove, {{pkg.omega, Isometry::identity()}}};
  pkg.claimed_k = 2;
  return pkg;
}

}  // namespace

OmegaPackage build_omega(RootSystemName name, int variant) {
  if (variant != 1 && variant != 2)
    throw std::invalid_argument("variant must be 1 or 2");
  OmegaPackage pkg = [&] {
    if (name == RootSystemName::A1xA1) {
      if (variant != 1)
        throw std::invalid_argument("A1xA1 has only the square package (variant 1)");
      return square_package();
    }
    OmegaPackage p{build_root_system(name)};
    p.variant = variant;
    PackageSpec spec = package_spec(p.rs, variant);
    p.delta = spec.delta;
    p.eta = spec.eta;
    p.lattice = Lattice(spec.delta, spec.eta);
    p.cell = ConvexPolygon::parallelogram(Vec2{0, 0}, spec.delta, spec.eta);
    p.cut_piece_moves = spec.cut_piece_moves;
    p.shift = spec.shift;
    p.claimed_k = spec.k;
    const Region alcove = p.rs.alcove;

    auto finish = [&](const CutParts& parts, const HalfPlane& h, CongruenceWitness weyl) {
      p.cut = h;
      p.omega = parts.omega;
      const Region& stay = spec.cut_piece_moves ? parts.rest : parts.cut;
      p.witness_lattice = {p.omega, p.cell,
                           {{stay, Isometry::identity()},
                            {translate(parts.moving, spec.shift), Isometry::translation(-spec.shift)}}};
      p.witness_weyl = std::move(weyl);
    };

    std::string stated_failure;
    if (auto parts = cut_cell(p.cell, spec.cut, spec.cut_piece_moves, spec.shift)) {
      auto displays = spec.displays(parts->cut, parts->rest, p.cell);
      std::vector<std::string> failures;
      for (const auto& d : displays) {
        CongruenceWitness w{parts->omega, alcove, d.entries};
        VerifyReport rep = verify_congruence(w);
        if (rep.ok) {
          if (!failures.empty())
            p.derived_cuts.push_back({"alcove witness", displays.front().label, d.label,
                                      "printed form fails verification (" + failures.front() + "); the alternative display verifies"});
          finish(*parts, spec.cut, std::move(w));
          return p;
        }
        failures.push_back(d.label + ": " + rep.message);
      }
      if (auto w = search_congruence(parts->omega, alcove, p.rs, 3)) {
        std::ostringstream used;
        used << "search_congruence witness with " << w->entries.size() << " entries, stated cut kept";
        p.derived_cuts.push_back({"alcove witness", displays.front().label, used.str(),
                                  "printed form fails verification (" + failures.front() + ")"});
        finish(*parts, spec.cut, std::move(*w));
        return p;
      }
      stated_failure = "no witness for the stated cut";
    } else {
      stated_failure = "stated cut leaves an empty piece of the cell";
    }

    const ConvexPolygon& cell_poly = p.cell.parts().front();
    for (const Scalar& t : cut_family(spec.cut, {&cell_poly, &p.rs.alcove})) {
      if (t == spec.cut.offset)
        continue;
      HalfPlane h(spec.cut.normal, t);
      auto parts = cut_cell(p.cell, h, spec.cut_piece_moves, spec.shift);
      if (!parts)
        continue;
      if (auto w = search_congruence(parts->omega, alcove, p.rs, 3)) {
        p.derived_cuts.push_back({"cut", cut_text(spec.cut), cut_text(h), stated_failure + "; nearest parallel cut with a verified alcove witness"});
        finish(*parts, h, std::move(*w));
        return p;
      }
    }
    throw ConstructionError(std::string(to_string(name)) + " variant " + std::to_string(variant) +
                            ": no cut in the family verifies");
  }();

  Lattice gamma(pkg.rs.coroot_lattice_basis[0], pkg.rs.coroot_lattice_basis[1]);
  LatticeIntersection li = lattice_intersection(pkg.lattice, gamma);
  if (!li.commensurable || !li.lattice)
    throw ConstructionError("lattice and coroot lattice are incommensurable");
  pkg.intersection = *li.lattice;
  if (!verify_congruence(pkg.witness_lattice).ok)
    throw ConstructionError("lattice witness fails verification");
  return pkg;
}

// ---------------------------------------------------------------- dilation

bool is_expansive(const Mat2& a) {
  for (const Scalar* s : {&a.a, &a.b, &a.c, &a.d})
    if (!s->is_rational())
      throw std::invalid_argument("dilation matrix must be rational");
  // roots of x^2 - t x + d outside the unit circle <=> |d| > 1 and |t| < |1 + d|
  mpq_class t = a.a.one() + a.d.one();
  mpq_class d = a.a.one() * a.d.one() - a.b.one() * a.c.one();
  return abs(d) > 1 && abs(t) < abs(1 + d);
}

ExpansiveMap::ExpansiveMap(Mat2 a, Vec2 theta) : a_(std::move(a)), theta_(std::move(theta)) {
  if (!is_expansive(a_))
    throw std::invalid_argument("matrix is not expansive");
  inv_ = a_.inverse();
}

Mat2 ExpansiveMap::power(int k) const {
  Mat2 base = k >= 0 ? a_ : inv_;
  Mat2 out;
  for (int i = 0; i < std::abs(k); ++i)
    out = out * base;
  return out;
}

Vec2 ExpansiveMap::apply(int k, const Vec2& x) const { return power(k) * (x - theta_) + theta_; }

ConvexPolygon ExpansiveMap::apply(int k, const ConvexPolygon& p) const {
  Mat2 m = power(k);
  return apply_linear(m, theta_ - m * theta_, p);
}

Region ExpansiveMap::apply(int k, const Region& r) const {
  Mat2 m = power(k);
  return apply_linear(m, theta_ - m * theta_, r);
}

double ExpansiveMap::octave() const { return std::sqrt(std::abs(a_.det().to_double())); }

Vec2 alcove_barycenter(const RootSystemData& rs) {
  Vec2 s{0, 0};
  for (const auto& v : rs.alcove.vertices())
    s += v;
  return Scalar::rational(1, static_cast<long>(rs.alcove.size())) * s;
}

namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double inf_norm(double x, double y) { return std::max(std::abs(x), std::abs(y)); }

// Range of |x - theta|_inf over a polygon, slightly widened.
std::pair<double, double> radial_range(const ConvexPolygon& p, const std::array<double, 2>& th) {
  double hi = 0;
  for (const auto& v : p.vertices()) {
    auto d = v.to_double();
    hi = std::max(hi, inf_norm(d[0] - th[0], d[1] - th[1]));
  }
  const BBox& b = p.bbox();
  double dx = std::max({b.xmin - th[0], th[0] - b.xmax, 0.0});
  double dy = std::max({b.ymin - th[1], th[1] - b.ymax, 0.0});
  // Euclidean distance to the polygon bounds the sup-norm one from below
  double eu = HUGE_VAL;
  bool inside = true;
  const auto& vs = p.vertices();
  for (size_t i = 0; i < vs.size(); ++i) {
    auto a = vs[i].to_double(), c = vs[(i + 1) % vs.size()].to_double();
    double ex = c[0] - a[0], ey = c[1] - a[1], px = th[0] - a[0], py = th[1] - a[1];
    inside = inside && ex * py - ey * px > 0;
    double t = std::clamp((px * ex + py * ey) / (ex * ex + ey * ey), 0.0, 1.0);
    eu = std::min(eu, std::hypot(px - t * ex, py - t * ey));
  }
  double lo = std::max(std::max(dx, dy), inside ? 0.0 : eu / std::sqrt(2.0));
  return {lo * (1 - 1e-9), hi * (1 + 1e-9) + 1e-300};
}

// Parts of a region bucketed by binary octave of their distance to theta.
class RadialIndex {
 public:
  static constexpr int kLo = -200, kHi = 200;

  RadialIndex(const Region& r, const Vec2& theta) : th_(theta.to_double()) {
    buckets_.resize(kHi - kLo + 1);
    for (const auto& p : r.parts()) {
      FPart fp{p.bbox(), {}};
      for (const auto& h : p.edges())
        fp.edges.push_back({to_f(h.normal.x), to_f(h.normal.y), to_f(h.offset)});
      auto [lo, hi] = radial_range(p, th_);
      int b0 = bucket(lo), b1 = bucket(hi);
      for (int b = b0; b <= b1; ++b)
        buckets_[b - kLo].push_back(parts_.size());
      parts_.push_back(std::move(fp));
      exact_.push_back(p);
    }
  }

  static int bucket(double r) {
    if (r <= 0)
      return kLo;
    return std::clamp(static_cast<int>(std::floor(std::log2(r))), kLo, kHi);
  }

  // Parts containing p in their interior; -1 when undecided.
  int count(const FVec& p) const {
    int hits = 0;
    for (size_t i : near(p.x.v, p.y.v)) {
      const FPart& part = parts_[i];
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

  // Exact count; nullopt on a boundary hit.
  std::optional<int> count_exact(const Vec2& p, double px, double py) const {
    int hits = 0;
    for (size_t i : near(px, py)) {
      const BBox& b = parts_[i].box;
      double pad = 1e-9 * (1 + std::abs(px) + std::abs(py));
      if (px < b.xmin - pad || px > b.xmax + pad || py < b.ymin - pad || py > b.ymax + pad)
        continue;
      Location l = locate(exact_[i], p);
      if (l == Location::boundary)
        return std::nullopt;
      hits += l == Location::interior;
    }
    return hits;
  }

 private:
  const std::vector<size_t>& near(double x, double y) const {
    return buckets_[bucket(inf_norm(x - th_[0], y - th_[1])) - kLo];
  }

  std::array<double, 2> th_;
  std::vector<FPart> parts_;
  std::vector<ConvexPolygon> exact_;
  std::vector<std::vector<size_t>> buckets_;
};

ConvexPolygon centred_square(const Vec2& c, const Scalar& half) {
  return ConvexPolygon::rectangle(c.x - half, c.y - half, c.x + half, c.y + half);
}

BBox approx_box(const ConvexPolygon& p) {
  const BBox& b = p.bbox();
  double pad = 1e-9 * (1 + std::abs(b.xmin) + std::abs(b.xmax) + std::abs(b.ymin) + std::abs(b.ymax));
  return {b.xmin - pad, b.ymin - pad, b.xmax + pad, b.ymax + pad};
}

BBox approx_image(const std::array<double, 4>& m, const std::array<double, 2>& t, const BBox& b) {
  BBox out{HUGE_VAL, HUGE_VAL, -HUGE_VAL, -HUGE_VAL};
  for (double x : {b.xmin, b.xmax})
    for (double y : {b.ymin, b.ymax}) {
      double px = m[0] * x + m[1] * y + t[0], py = m[2] * x + m[3] * y + t[1];
      out.xmin = std::min(out.xmin, px);
      out.xmax = std::max(out.xmax, px);
      out.ymin = std::min(out.ymin, py);
      out.ymax = std::max(out.ymax, py);
    }
  double pad = 1e-9 * (1 + std::abs(out.xmin) + std::abs(out.xmax) + std::abs(out.ymin) + std::abs(out.ymax));
  return {out.xmin - pad, out.ymin - pad, out.xmax + pad, out.ymax + pad};
}

}  // namespace

DefectReport dilation_defect(const Region& w, const ExpansiveMap& map, int depth, double r_inner, double r_outer,
                             uint64_t samples, uint64_t seed) {
  if (!(r_inner > 0) || !(r_outer > r_inner))
    throw std::invalid_argument("annulus needs 0 < r_inner < r_outer");
  if (depth < 0)
    throw std::invalid_argument("depth must be non-negative");
  DefectReport rep;
  const Vec2& theta = map.theta();
  const auto th = theta.to_double();
  Scalar rin{mpq_class(r_inner)}, rout{mpq_class(r_outer)};
  Region outer = centred_square(theta, rout), inner = centred_square(theta, rin);
  Region ann = difference(outer, inner);
  rep.annulus_area = Scalar(4) * (rout * rout - rin * rin);

  // sampled window counts
  std::vector<Mat2> inv;     // A^-n for n = -depth..depth
  std::vector<FMat> inv_f;
  for (int n = -depth; n <= depth; ++n) {
    inv.push_back(map.power(-n));
    inv_f.push_back(to_f(inv.back()));
  }
  const FVec th_f = to_f(theta);
  RadialIndex index(w, theta);
  for (uint64_t i = 0; rep.samples + rep.boundary < samples; ++i) {
    uint64_t h = splitmix64(seed ^ splitmix64(i + 0x2545f4914f6cdd1dULL));
    constexpr uint64_t mask = (uint64_t{1} << 28) - 1;
    double ox = r_outer * (2 * static_cast<double>(h & mask) * 0x1p-28 - 1);
    double oy = r_outer * (2 * static_cast<double>((h >> 28) & mask) * 0x1p-28 - 1);
    if (inf_norm(ox, oy) < r_inner)
      continue;
    FVec o{{ox, 0}, {oy, 0}};
    int count = 0;
    bool unsure = false;
    for (size_t k = 0; k < inv_f.size() && !unsure; ++k) {
      FVec d = inv_f[k](o);
      int c = index.count({th_f.x + d.x, th_f.y + d.y});
      if (c < 0)
        unsure = true;
      else
        count += c;
    }
    if (unsure) {
      Vec2 oe{Scalar(mpq_class(ox)), Scalar(mpq_class(oy))};
      count = 0;
      bool boundary = false;
      for (size_t k = 0; k < inv.size() && !boundary; ++k) {
        Vec2 y = theta + inv[k] * oe;
        auto yd = y.to_double();
        auto c = index.count_exact(y, yd[0], yd[1]);
        if (!c)
          boundary = true;
        else
          count += *c;
      }
      if (boundary) {
        ++rep.boundary;
        continue;
      }
    }
    ++rep.samples;
    if (count != 1)
      ++rep.bad;
    if (count == 0)
      ++rep.uncovered;
  }
  (void)th;

  // exact pairwise overlaps D^n(W) ∩ D^(n+d)(W) inside the annulus
  const BBox ann_box = approx_box(outer.parts().front());
  const BBox hole_box = inner.parts().front().bbox();
  auto inside_hole = [&](const BBox& b) {
    return b.xmin > hole_box.xmin && b.xmax < hole_box.xmax && b.ymin > hole_box.ymin && b.ymax < hole_box.ymax;
  };
  auto affine_f = [&](int k) {
    Mat2 m = map.power(k);
    Vec2 t = theta - m * theta;
    auto td = t.to_double();
    return std::pair<std::array<double, 4>, std::array<double, 2>>{
        {m.a.to_double(), m.b.to_double(), m.c.to_double(), m.d.to_double()}, td};
  };
  const auto& parts = w.parts();
  for (int d = 1; d <= 2 * depth; ++d) {
    auto [md, td] = affine_f(d);
    for (const auto& qp : parts) {
      BBox qbox = approx_image(md, td, qp.bbox());
      std::optional<ConvexPolygon> qd;
      for (const auto& pp : parts) {
        if (!approx_box(pp).overlaps(qbox))
          continue;
        if (!qd)
          qd = map.apply(d, qp);
        auto inter = intersect(pp, *qd);
        if (!inter)
          continue;
        for (int n = -depth; n + d <= depth; ++n) {
          auto [mn, tn] = affine_f(n);
          BBox ib = approx_image(mn, tn, inter->bbox());
          if (!ib.overlaps(ann_box) || inside_hole(ib))
            continue;
          ConvexPolygon img = map.apply(n, *inter);
          for (const auto& a : ann.parts())
            if (auto x = intersect(img, a))
              rep.overlap_area += x->area();
        }
      }
    }
  }
  rep.sample_fraction = rep.samples ? static_cast<double>(rep.bad) / static_cast<double>(rep.samples) : 0.0;
  rep.overlap_fraction = (rep.overlap_area / rep.annulus_area).to_double();
  rep.defect = rep.sample_fraction + rep.overlap_fraction;
  return rep;
}

// ---------------------------------------------------------------- tiler

bool pieces_recompose(const std::vector<TilerPiece>& pieces, const Region& omega, const Lattice& j) {
  // inside omega, pairwise disjoint, same total area: then they cover omega
  std::vector<const ConvexPolygon*> all;
  Scalar total;
  for (const auto& p : pieces) {
    if (!j.contains(p.translation))
      return false;
    for (const auto& c : p.part.parts()) {
      if (!difference(Region(c), omega).empty())
        return false;
      all.push_back(&c);
      total += c.area();
    }
  }
  if (total != omega.area())
    return false;
  for (size_t a = 0; a < all.size(); ++a)
    for (size_t b = 0; b < a; ++b)
      if (all[a]->bbox().overlaps(all[b]->bbox()) && intersect(*all[a], *all[b]))
        return false;
  return true;
}

namespace {

// Lattice vectors t with box + t inside target (both approximate), by norm.
std::vector<Vec2> lattice_points_in(const Lattice& l, double xlo, double ylo, double xhi, double yhi) {
  auto ud = l.u().to_double(), vd = l.v().to_double();
  double det = ud[0] * vd[1] - ud[1] * vd[0];
  double inv[4] = {vd[1] / det, -vd[0] / det, -ud[1] / det, ud[0] / det};
  double mlo = HUGE_VAL, mhi = -HUGE_VAL, nlo = HUGE_VAL, nhi = -HUGE_VAL;
  for (double x : {xlo, xhi})
    for (double y : {ylo, yhi}) {
      double m = inv[0] * x + inv[1] * y, n = inv[2] * x + inv[3] * y;
      mlo = std::min(mlo, m);
      mhi = std::max(mhi, m);
      nlo = std::min(nlo, n);
      nhi = std::max(nhi, n);
    }
  std::vector<std::pair<double, std::pair<long, long>>> found;
  if (mhi - mlo > 4000 || nhi - nlo > 4000)
    throw std::runtime_error("lattice search window too large");
  for (long m = static_cast<long>(std::floor(mlo)) - 1; m <= static_cast<long>(std::ceil(mhi)) + 1; ++m)
    for (long n = static_cast<long>(std::floor(nlo)) - 1; n <= static_cast<long>(std::ceil(nhi)) + 1; ++n) {
      double x = m * ud[0] + n * vd[0], y = m * ud[1] + n * vd[1];
      double pad = 1e-9 * (1 + std::abs(x) + std::abs(y));
      if (x < xlo - pad || x > xhi + pad || y < ylo - pad || y > yhi + pad)
        continue;
      found.push_back({x * x + y * y, {m, n}});
    }
  std::sort(found.begin(), found.end());
  std::vector<Vec2> out;
  for (const auto& f : found)
    out.push_back(l.point(f.second.first, f.second.second));
  return out;
}

// Convex hull of points with rational coordinates (counter-clockwise).
ConvexPolygon hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<Vec2> h;
  for (int pass = 0; pass < 2; ++pass) {
    size_t start = h.size();
    for (const auto& p : pts) {
      while (h.size() >= start + 2 && cross(h[h.size() - 1] - h[h.size() - 2], p - h[h.size() - 2]).sign() <= 0)
        h.pop_back();
      h.push_back(p);
    }
    h.pop_back();
    std::reverse(pts.begin(), pts.end());
  }
  return ConvexPolygon(h);
}

mpq_class row_norm(const Mat2& m) {
  return std::max(abs(m.a.one()) + abs(m.b.one()), abs(m.c.one()) + abs(m.d.one()));
}

// Convex Q around theta with D^-1 Q inside Q, scaled by a power of two until
// it fits into `room`.
ConvexPolygon reference_polygon(const ExpansiveMap& map, const Region& room) {
  int m = 1;
  while (row_norm(map.power(-m)) > 1) {
    if (++m > 64)
      throw std::runtime_error("reference polygon: no contracting power");
  }
  std::vector<Vec2> pts;
  for (int k = 0; k < m; ++k) {
    Mat2 p = map.power(-k);
    for (int sx : {-1, 1})
      for (int sy : {-1, 1})
        pts.push_back(p * Vec2{sx, sy});
  }
  ConvexPolygon base = hull(pts);
  for (int k = 0; k < 80; ++k) {
    Scalar s = Scalar(mpq_class(1, 1) / (mpz_class(1) << k));
    ConvexPolygon qk = apply_linear(Mat2{s, 0, 0, s}, map.theta(), base);
    if (difference(Region(qk), room).empty())
      return qk;
  }
  throw std::runtime_error("reference polygon does not fit");
}

struct ShellPiece {
  Region part;  // inside J-translates of omega, at scale n of the shell
  Vec2 j;       // part - j lies in omega
  int n;
};

std::string describe(const Vec2& v) { return v.str(); }

}  // namespace

TilerResult build_three_way_tiler(const OmegaPackage& pkg, const ExpansiveMap& map, const TilerOptions& opt) {
  if (locate(Region(pkg.rs.alcove), map.theta()) != Location::interior)
    throw std::invalid_argument("theta must be interior to the alcove");
  if (opt.depth < 1 || opt.max_iter < 1)
    throw std::invalid_argument("depth and max_iter must be positive");
  const Lattice& jl = pkg.intersection;
  const Region& omega = pkg.omega;
  TilerResult res;

  // reference shell E0 = Q \ D^-1 Q; Q inside omega when theta is interior to it
  bool interior = locate(omega, map.theta()) == Location::interior;
  res.reference = reference_polygon(map, interior ? omega : Region(pkg.rs.alcove));
  Region shell = difference(Region(res.reference), map.apply(-1, Region(res.reference)));

  // pack the shell: scale by scale, J-translates of unused omega
  std::vector<ShellPiece> packed;
  Region gap = shell, unused = omega, covered;
  for (int n = 0; n <= opt.depth && !gap.empty(); ++n) {
    Region target = map.apply(n, gap);
    auto tb = target.bbox();
    auto ob = unused.bbox();
    if (!tb || !ob)
      break;
    for (const Vec2& j : lattice_points_in(jl, tb->xmin - ob->xmax, tb->ymin - ob->ymax, tb->xmax - ob->xmin,
                                           tb->ymax - ob->ymin)) {
      if (unused.empty() || target.empty())
        break;
      Region p = intersection(target, translate(unused, j));
      if (p.empty())
        continue;
      Region back = map.apply(-n, p);
      gap = difference(gap, back);
      append(covered, back);
      target = difference(target, p);
      unused = difference(unused, translate(p, -j));
      packed.push_back({std::move(p), j, n});
    }
  }
  res.unrepresented_shell_area = gap.area();

  // far placement: omega + j inside D^n of one convex part of the covered shell
  auto om_box = *omega.bbox();
  bool placed = false;
  for (int n = 1; n <= 4 * opt.depth && !placed; ++n) {
    std::optional<Vec2> best;
    for (const auto& c : covered.parts()) {
      ConvexPolygon k = map.apply(n, c);
      const BBox& kb = k.bbox();
      if (kb.xmax - kb.xmin < om_box.xmax - om_box.xmin || kb.ymax - kb.ymin < om_box.ymax - om_box.ymin)
        continue;
      for (const Vec2& j : lattice_points_in(jl, kb.xmin - om_box.xmin, kb.ymin - om_box.ymin,
                                             kb.xmax - om_box.xmax, kb.ymax - om_box.ymax)) {
        if (best && dot(*best, *best) <= dot(j, j))
          break;
        bool inside = true;
        for (const auto& p : omega.parts())
          for (const auto& v : p.vertices())
            if (inside && locate(k, v + j) == Location::outside)
              inside = false;
        if (inside) {
          best = j;
          break;
        }
      }
    }
    if (best) {
      res.far_translation = *best;
      res.far_scale = n;
      placed = true;
    }
  }
  if (!placed)
    throw std::runtime_error("no J-translate of omega fits a dilated shell");
  const Vec2 jf = res.far_translation;
  const int nf = res.far_scale;

  // annulus: every W point reachable from every sample within the window
  double r_lo = HUGE_VAL, r_hi = 0;
  auto th = map.theta().to_double();
  for (const auto& sp : packed)
    for (const auto& p : sp.part.parts()) {
      auto [a, b] = radial_range(p, th);
      r_lo = std::min(r_lo, a);
      r_hi = std::max(r_hi, b);
    }
  Region far = translate(omega, jf);
  for (const auto& p : far.parts()) {
    auto [a, b] = radial_range(p, th);
    r_lo = std::min(r_lo, a);
    r_hi = std::max(r_hi, b);
  }
  // sup-norm radii scale by about sqrt|det A| per step (exactly for A = cI)
  double lam = map.octave(), reach = std::pow(lam, opt.depth), wide = lam * lam * lam;
  if (opt.annulus) {
    res.r_inner = opt.annulus->first;
    res.r_outer = opt.annulus->second;
  } else {
    double lo = r_hi / reach, hi = r_lo * reach / wide;
    // when the window cannot span all of W, keep the inner shell (most orbits) in reach
    double rin = lo <= hi ? std::sqrt(lo * hi) : hi;
    rin = std::exp2(std::round(std::log2(rin)));
    if (lo <= hi)
      rin = std::clamp(rin, lo, hi);
    res.r_inner = rin;
    res.r_outer = rin * wide;
  }
  res.window_covers = res.r_inner * reach >= r_hi && res.r_outer / reach <= r_lo;

  auto evaluate = [&](const std::vector<TilerPiece>& pieces, Region& w) {
    w = Region();
    for (const auto& p : pieces)
      append(w, translate(p.part, p.translation));
    return dilation_defect(w, map, opt.depth, res.r_inner, res.r_outer, opt.samples, opt.seed);
  };

  // iterate 0: omega itself
  std::vector<TilerPiece> pieces{{omega, Vec2{0, 0}}};
  res.bookkeeping_ok = pieces_recompose(pieces, omega, jl);
  Region w;
  DefectReport cur = evaluate(pieces, w);
  res.log.push_back({0, "start from omega", Scalar(0), cur.defect, true});

  // migration: A_0 = omega not used by the shell, A_(k+1) = the shell pieces
  // whose dilation class A_k + jf now claims
  std::vector<Region> rest;
  for (const auto& sp : packed)
    rest.push_back(translate(sp.part, -sp.j));
  Region moved, front = unused;
  int flat = 0;
  auto note = [&](const std::string& m) { res.message += (res.message.empty() ? "" : "; ") + m; };
  auto far_image = [&](const Region& a) { return map.apply(-nf, translate(a, jf)); };
  for (int it = 1; it <= opt.max_iter; ++it) {
    if (cur.defect <= opt.eps)
      break;
    Region next_moved = moved;
    append(next_moved, front);
    std::vector<Region> next_rest;
    for (const auto& r : rest)
      next_rest.push_back(front.empty() ? r : difference(r, front));
    std::vector<TilerPiece> cand;
    if (!next_moved.empty())
      cand.push_back({next_moved, jf});
    for (size_t i = 0; i < packed.size(); ++i)
      if (!next_rest[i].empty())
        cand.push_back({next_rest[i], packed[i].j});
    bool book = pieces_recompose(cand, omega, jl);
    Region cw;
    DefectReport d = evaluate(cand, cw);
    std::ostringstream act;
    if (it == 1)
      act << "place " << packed.size() << " shell pieces; ";
    act << "migrate " << front.parts().size() << " parts by " << describe(jf) << " into scale " << nf;
    bool accept = book && d.defect <= cur.defect;
    res.log.push_back({it, act.str(), front.area(), d.defect, accept});
    res.bookkeeping_ok = res.bookkeeping_ok && book;
    if (!accept) {
      note(book ? "stalled: the next migration would raise the defect" : "bookkeeping failure");
      break;
    }
    flat = d.defect < cur.defect ? 0 : flat + 1;
    pieces = std::move(cand);
    w = std::move(cw);
    cur = d;
    if (flat >= 3) {
      res.iterations = it;
      note("stalled: no defect decrease in 3 steps");
      break;
    }
    res.iterations = it;
    moved = std::move(next_moved);
    rest = std::move(next_rest);
    // pieces of the shell claimed by the freshly migrated front
    Region img = far_image(front);
    Region nxt;
    for (const auto& sp : packed) {
      Region hit = intersection(map.apply(sp.n, img), sp.part);
      if (!hit.empty())
        append(nxt, translate(hit, -sp.j));
    }
    front = std::move(nxt);
    if (front.empty()) {
      if (cur.defect > opt.eps)
        note("no overlapping piece left");
      break;
    }
  }
  res.converged = cur.defect <= opt.eps && res.window_covers;
  if (!res.window_covers)
    note("the sample window does not reach every scale of W, so the defect is not conclusive");
  if (res.converged)
    note("converged");
  else if (res.iterations == opt.max_iter)
    note("iteration limit reached");
  if (!res.converged && res.unrepresented_shell_area.sign() > 0)
    note("part of the reference shell meets no J-translate of omega within the depth");
  res.w = std::move(w);
  res.pieces = std::move(pieces);
  res.defect = cur;
  for (size_t i = 1; i < res.log.size(); ++i)
    if (res.log[i].accepted && res.log[i].defect > res.log[i - 1].defect)
      res.monotone = false;
  return res;
}

}  // namespace threeway
