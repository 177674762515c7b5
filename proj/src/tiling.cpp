#include "threeway/tiling.hpp"

#include "filtered.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace threeway {

CongruenceWitness CongruenceWitness::inverted() const {
  CongruenceWitness out{target, source, {}};
  for (const auto& e : entries)
    out.entries.push_back({apply(e.g, e.piece), e.g.inverse()});
  return out;
}

namespace {

using namespace filtered;

Region concat(const std::vector<Region>& rs) {
  Region out;
  for (const auto& r : rs)
    for (const auto& p : r.parts())
      out.add(p);
  return out;
}

VerifyReport failure(std::string msg, std::optional<size_t> entry, Region offending) {
  VerifyReport rep;
  rep.message = std::move(msg);
  rep.failing_entry = entry;
  rep.offending_area = offending.area();
  rep.offending = std::move(offending);
  return rep;
}

// Checks that the regions are pairwise interior-disjoint and that their union
// is a.e. equal to whole.  what names the side ("pieces" or "images").
std::optional<VerifyReport> check_partition(const std::vector<Region>& rs, const Region& whole, const std::string& what) {
  for (size_t i = 0; i < rs.size(); ++i) {
    if (!self_overlap_area(rs[i]).is_zero())
      return failure(what + " " + std::to_string(i) + " overlaps itself", i, rs[i]);
    for (size_t j = 0; j < i; ++j) {
      Region o = intersection(rs[j], rs[i]);
      if (!o.empty())
        return failure(what + " " + std::to_string(j) + " and " + std::to_string(i) + " overlap", i, o);
    }
  }
  for (size_t i = 0; i < rs.size(); ++i) {
    Region extra = difference(rs[i], whole);
    if (!extra.empty())
      return failure(what + " " + std::to_string(i) + " leaves its " + (what == "piece" ? "source" : "target"), i, extra);
  }
  Region gap = difference(whole, concat(rs));
  if (!gap.empty())
    return failure(what + "s leave a gap", std::nullopt, gap);
  return std::nullopt;
}

}  // namespace

VerifyReport verify_congruence(const CongruenceWitness& w) {
  std::vector<Region> pieces, images;
  Scalar total;
  for (const auto& e : w.entries) {
    pieces.push_back(e.piece);
    images.push_back(apply(e.g, e.piece));
    total += e.piece.area();
  }
  if (auto f = check_partition(pieces, w.source, "piece"))
    return *f;
  if (auto f = check_partition(images, w.target, "image"))
    return *f;
  if (total != w.source.area() || total != w.target.area())
    return failure("area bookkeeping mismatch", std::nullopt, Region());
  VerifyReport ok;
  ok.ok = true;
  ok.message = "ok";
  return ok;
}

namespace {

BBox approx_image(const Isometry& g, const BBox& b) {
  double m[4] = {g.linear().a.to_double(), g.linear().b.to_double(), g.linear().c.to_double(),
                 g.linear().d.to_double()};
  auto t = g.translation_part().to_double();
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

// Lattice coefficient pairs ordered by max(|m|, |n|), then m, then n.
std::vector<std::pair<long, long>> coefficient_shells(int bound) {
  std::vector<std::pair<long, long>> out;
  for (long r = 0; r <= bound; ++r)
    for (long m = -r; m <= r; ++m)
      for (long n = -r; n <= r; ++n)
        if (std::max(std::abs(m), std::abs(n)) == r)
          out.emplace_back(m, n);
  return out;
}

std::vector<Isometry> group_elements(const GroupAction& group, int bound) {
  std::vector<Isometry> out;
  auto shells = coefficient_shells(bound);
  if (const auto* l = std::get_if<Lattice>(&group)) {
    for (auto [m, n] : shells)
      out.push_back(Isometry::translation(l->point(m, n)));
  } else {
    const auto& rs = std::get<RootSystemData>(group);
    Lattice g(rs.coroot_lattice_basis[0], rs.coroot_lattice_basis[1]);
    for (auto [m, n] : shells)
      for (const auto& w : rs.weyl_group)
        out.emplace_back(w.linear(), g.point(m, n));
  }
  return out;
}

}  // namespace

std::optional<CongruenceWitness> search_congruence(const Region& source, const Region& target,
                                                   const GroupAction& group, int bound) {
  if (source.area() != target.area())
    return std::nullopt;
  Region src_left = source, tgt_left = target;
  std::vector<WitnessEntry> entries;
  for (const auto& g : group_elements(group, bound)) {
    if (src_left.empty())
      break;
    if (!approx_image(g, *src_left.bbox()).overlaps(*tgt_left.bbox()))
      continue;
    Region img = intersection(apply(g, src_left), tgt_left);
    if (img.empty())
      continue;
    Region piece = apply(g.inverse(), img);
    src_left = difference(src_left, piece);
    tgt_left = difference(tgt_left, img);
    entries.push_back({std::move(piece), g});
  }
  if (!src_left.empty() || !tgt_left.empty())
    return std::nullopt;
  CongruenceWitness w{source, target, std::move(entries)};
  if (!verify_congruence(w).ok)
    return std::nullopt;
  return w;
}

SampleBox centred_box(const Region& r, double diameter, double multiple) {
  auto b = r.bbox();
  if (!b)
    throw std::invalid_argument("sample box of an empty region");
  double cx = 0.5 * (b->xmin + b->xmax), cy = 0.5 * (b->ymin + b->ymax);
  double half = 0.5 * multiple * diameter;
  half = std::max({half, 0.5 * (b->xmax - b->xmin), 0.5 * (b->ymax - b->ymin)});
  auto lo = [](double v) { return std::floor(v * 256) / 256; };
  auto hi = [](double v) { return std::ceil(v * 256) / 256; };
  return {lo(cx - half), lo(cy - half), hi(cx + half), hi(cy + half)};
}

namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Coefficient ranges of lattice vectors g with y - g in box.
struct Range {
  long m0, m1, n0, n1;
};

class LatticeCounter {
 public:
  LatticeCounter(const Lattice& l, const Region& r) : lattice_(l), region_(r), filtered_(r) {
    u_ = to_f(l.u());
    v_ = to_f(l.v());
    auto ud = l.u().to_double(), vd = l.v().to_double();
    double det = ud[0] * vd[1] - ud[1] * vd[0];
    inv_ = {vd[1] / det, -vd[0] / det, -ud[1] / det, ud[0] / det};
  }

  Range range(double x, double y) const {
    const BBox& b = filtered_.box();
    double mlo = HUGE_VAL, mhi = -HUGE_VAL, nlo = HUGE_VAL, nhi = -HUGE_VAL;
    for (double bx : {b.xmin, b.xmax})
      for (double by : {b.ymin, b.ymax}) {
        double dx = x - bx, dy = y - by;
        double m = inv_[0] * dx + inv_[1] * dy, n = inv_[2] * dx + inv_[3] * dy;
        mlo = std::min(mlo, m);
        mhi = std::max(mhi, m);
        nlo = std::min(nlo, n);
        nhi = std::max(nhi, n);
      }
    return {static_cast<long>(std::floor(mlo)) - 1, static_cast<long>(std::ceil(mhi)) + 1,
            static_cast<long>(std::floor(nlo)) - 1, static_cast<long>(std::ceil(nhi)) + 1};
  }

  // Lattice translates of r containing p; -1 when undecided.
  int count(const FVec& p) const {
    Range rg = range(p.x.v, p.y.v);
    int total = 0;
    for (long m = rg.m0; m <= rg.m1; ++m)
      for (long n = rg.n0; n <= rg.n1; ++n) {
        F fm{static_cast<double>(m), 0}, fn{static_cast<double>(n), 0};
        FVec q{p.x - (fm * u_.x + fn * v_.x), p.y - (fm * u_.y + fn * v_.y)};
        int c = filtered_.count(q);
        if (c < 0)
          return -1;
        total += c;
      }
    return total;
  }

  // Exact count; -1 when p lies on the boundary of some translate.
  int count_exact(const Vec2& p) const {
    auto pd = p.to_double();
    Range rg = range(pd[0], pd[1]);
    int total = 0;
    for (long m = rg.m0; m <= rg.m1; ++m)
      for (long n = rg.n0; n <= rg.n1; ++n) {
        Vec2 q = p - lattice_.point(m, n);
        for (const auto& part : region_.parts()) {
          Location loc = locate(part, q);
          if (loc == Location::boundary)
            return -1;
          total += loc == Location::interior;
        }
      }
    return total;
  }

 private:
  Lattice lattice_;
  Region region_;
  FilteredRegion filtered_;
  FVec u_, v_;
  std::array<double, 4> inv_;
};

Vec2 exact_point(const std::array<double, 2>& p) { return {Scalar(mpq_class(p[0])), Scalar(mpq_class(p[1]))}; }

class AffineCounter {
 public:
  AffineCounter(const RootSystemData& rs, const Region& r)
      : rs_(rs), lattice_(Lattice(rs.coroot_lattice_basis[0], rs.coroot_lattice_basis[1]), r) {
    for (const auto& w : rs.walls) {
      HalfPlane h = w.inside();
      walls_.push_back({to_f(h.normal.x), to_f(h.normal.y), to_f(h.offset)});
      Isometry s = affine_reflection(w.root, w.level);
      reflections_.push_back({to_f(s.linear()), to_f(s.translation_part())});
    }
    for (const auto& w : rs.weyl_group)
      weyl_.push_back(to_f(w.linear()));
  }

  int count(const std::array<double, 2>& x) const {
    FVec c{{x[0], 0}, {x[1], 0}};
    for (int step = 0;; ++step) {
      if (step > 100000)
        throw std::runtime_error("fold did not terminate");
      bool moved = false;
      for (size_t i = 0; i != walls_.size(); ++i) {
        const auto& e = walls_[i];
        int s = sure_sign(e.off - (c.x * e.nx + c.y * e.ny));
        if (s == 0)
          return -1;
        if (s < 0) {
          FVec r = reflections_[i].first(c);
          c = {r.x + reflections_[i].second.x, r.y + reflections_[i].second.y};
          moved = true;
          break;
        }
      }
      if (!moved)
        break;
    }
    int total = 0;
    for (const auto& w : weyl_) {
      int k = lattice_.count(w(c));
      if (k < 0)
        return -1;
      total += k;
    }
    return total;
  }

  int count_exact(const Vec2& x) const {
    Vec2 c = fold(x, rs_).representative;
    int total = 0;
    for (const auto& w : rs_.weyl_group) {
      int k = lattice_.count_exact(w(c));
      if (k < 0)
        return -1;
      total += k;
    }
    return total;
  }

 private:
  RootSystemData rs_;
  LatticeCounter lattice_;
  std::vector<FEdge> walls_;
  std::vector<std::pair<FMat, FVec>> reflections_;
  std::vector<FMat> weyl_;
};

}  // namespace

std::array<double, 2> sample_point(const SampleBox& box, uint64_t seed, uint64_t index) {
  uint64_t h = splitmix64(seed ^ splitmix64(index + 0x632be59bd9b4e019ULL));
  constexpr uint64_t mask = (uint64_t{1} << 28) - 1;
  double fx = static_cast<double>(h & mask) * 0x1p-28, fy = static_cast<double>((h >> 28) & mask) * 0x1p-28;
  return {box.xmin + (box.xmax - box.xmin) * fx, box.ymin + (box.ymax - box.ymin) * fy};
}

TilingReport mc_tiling_multiplicity(const Region& r, const GroupAction& group, uint64_t samples, uint64_t seed,
                                    const SampleBox& box) {
  if (r.empty())
    throw std::invalid_argument("multiplicity of an empty region");
  auto rb = *r.bbox();
  if (rb.xmin < box.xmin || rb.ymin < box.ymin || rb.xmax > box.xmax || rb.ymax > box.ymax)
    throw std::invalid_argument("sample box does not contain the region");
  TilingReport rep;
  rep.samples = samples;
  rep.seed = seed;
  std::optional<LatticeCounter> lat;
  std::optional<AffineCounter> aff;
  if (const auto* l = std::get_if<Lattice>(&group))
    lat.emplace(*l, r);
  else
    aff.emplace(std::get<RootSystemData>(group), r);

  for (uint64_t i = 0; i < samples; ++i) {
    auto p = sample_point(box, seed, i);
    int k = lat ? lat->count(FVec{{p[0], 0}, {p[1], 0}}) : aff->count(p);
    if (k < 0) {
      ++rep.exact_fallbacks;
      Vec2 x = exact_point(p);
      k = lat ? lat->count_exact(x) : aff->count_exact(x);
    }
    if (k < 0)
      ++rep.boundary;
    else
      ++rep.histogram[k];
  }
  rep.pass = rep.histogram.size() == 1 && rep.histogram.begin()->first == 1;
  return rep;
}

std::vector<Vec2> shortest_lattice_points(const Lattice& l, size_t n) {
  if (n == 0)
    return {};
  auto ud = l.u().to_double(), vd = l.v().to_double();
  double det = std::abs(ud[0] * vd[1] - ud[1] * vd[0]);
  double ulen = std::hypot(ud[0], ud[1]), vlen = std::hypot(vd[0], vd[1]);
  long k = static_cast<long>(std::ceil(std::sqrt(static_cast<double>(n)))) + 1;
  for (;;) {
    struct Entry {
      Scalar norm;
      long m, n;
      Vec2 p;
    };
    std::vector<Entry> pts;
    for (long m = -k; m <= k; ++m)
      for (long j = -k; j <= k; ++j) {
        Vec2 p = l.point(m, j);
        pts.push_back({dot(p, p), m, j, p});
      }
    std::sort(pts.begin(), pts.end(), [](const Entry& a, const Entry& b) {
      int s = (a.norm - b.norm).sign();
      if (s != 0)
        return s < 0;
      return std::pair(a.m, a.n) < std::pair(b.m, b.n);
    });
    // every point of norm <= the n-th one has |m| <= |p||v|/det and |n| <= |p||u|/det
    double radius = std::sqrt(pts[n - 1].norm.to_double()) * (1 + 1e-9);
    double need = radius * std::max(ulen, vlen) / det;
    if (static_cast<double>(k) >= need + 1e-9) {
      std::vector<Vec2> out;
      for (size_t i = 0; i < n; ++i)
        out.push_back(pts[i].p);
      return out;
    }
    k = static_cast<long>(std::ceil(need)) + 1;
  }
}

namespace {

template <class T>
T to_real(const Scalar& s) {
  auto ap = s.approx(96);
  double hi = ap.value.get_d();
  double lo = mpq_class(ap.value - mpq_class(hi)).get_d();
  return static_cast<T>(hi) + static_cast<T>(lo);
}

// (e^{it} - 1) / (it) = e^{it/2} sin(t/2) / (t/2)
template <class T>
std::complex<T> psi1(T t) {
  T s = t / 2;
  T sinc = std::abs(s) < T(1e-4) ? T(1) - s * s / 6 : std::sin(s) / s;
  return std::polar(sinc, s);
}

// Second divided difference of exp(i x) at 0, h1, h2.
template <class T>
std::complex<T> dd2(T h1, T h2) {
  const std::complex<T> I(0, 1);
  T d = h2 - h1;
  if (std::max({std::abs(h1), std::abs(h2), std::abs(d)}) < T(0.05)) {
    // sum_m i^m H_m(h1, h2) / (m + 2)!, H_m complete homogeneous
    std::complex<T> sum = 0, ipow = 1;
    T fact = 2;
    for (int m = 0; m <= 14; ++m) {
      T hm = 0;
      for (int a = 0; a <= m; ++a)
        hm += std::pow(h1, a) * std::pow(h2, m - a);
      sum += ipow * hm / fact;
      ipow *= I;
      fact *= m + 3;
    }
    return sum;
  }
  return (psi1(h2) - psi1(h1)) / (I * d);
}

// Integral of exp(i theta(x)) over a triangle with vertex phases th and area a.
template <class T>
std::complex<T> triangle_integral(const std::array<T, 3>& th, T a) {
  // pivot on the vertex outside the widest pair
  int p = 0;
  T best = -1;
  for (int i = 0; i < 3; ++i) {
    T w = std::abs(th[(i + 1) % 3] - th[(i + 2) % 3]);
    if (w > best) {
      best = w;
      p = i;
    }
  }
  T h1 = th[(p + 1) % 3] - th[p], h2 = th[(p + 2) % 3] - th[p];
  return T(2) * a * std::polar(T(1), th[p]) * dd2(h1, h2);
}

template <class T>
GramReport gram(const Region& r, const Lattice& l, size_t n) {
  struct Tri {
    std::array<std::array<T, 2>, 3> v;
    T area;
  };
  std::vector<Tri> tris;
  for (const auto& part : r.parts()) {
    const auto& vs = part.vertices();
    for (size_t i = 1; i + 1 < vs.size(); ++i) {
      Tri t;
      for (int k = 0; k < 3; ++k) {
        const Vec2& v = vs[k == 0 ? 0 : i + k - 1];
        t.v[k] = {to_real<T>(v.x), to_real<T>(v.y)};
      }
      Scalar exact = cross(vs[i] - vs[0], vs[i + 1] - vs[0]);
      if (exact.sign() <= 0)
        throw std::invalid_argument("degenerate triangle in Gram integration");
      t.area = to_real<T>(exact) / 2;
      tris.push_back(t);
    }
  }
  const T total = to_real<T>(r.area());
  auto freqs = shortest_lattice_points(dual_lattice(l), n);
  const T two_pi = 2 * std::numbers::pi_v<T>;
  GramReport rep;
  rep.frequencies = freqs.size();
  for (size_t j = 0; j < freqs.size(); ++j)
    for (size_t k = 0; k < freqs.size(); ++k) {
      Vec2 xi = freqs[j] - freqs[k];
      T xx = to_real<T>(xi.x), xy = to_real<T>(xi.y);
      std::complex<T> sum = 0;
      for (const auto& t : tris) {
        std::array<T, 3> th;
        for (int q = 0; q < 3; ++q)
          th[q] = two_pi * (xx * t.v[q][0] + xy * t.v[q][1]);
        sum += triangle_integral(th, t.area);
      }
      std::complex<T> g = sum / total - std::complex<T>(j == k ? 1 : 0);
      rep.deviation = std::max(rep.deviation, static_cast<double>(std::abs(g)));
    }
  return rep;
}

}  // namespace

GramReport fuglede_gram(const Region& r, const Lattice& l, size_t n, int precision_bits) {
  if (r.empty())
    throw std::invalid_argument("Gram check of an empty region");
  if (precision_bits == 53)
    return gram<double>(r, l, n);
  if (precision_bits == 64)
    return gram<long double>(r, l, n);
  throw std::invalid_argument("Gram precision must be 53 or 64 bits");
}

}  // namespace threeway
