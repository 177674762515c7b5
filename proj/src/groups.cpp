#include "threeway/groups.hpp"

#include <stdexcept>

namespace threeway {

Isometry affine_reflection(const Vec2& r, long k) {
  return Isometry(reflection_matrix(r), Scalar(k) * coroot(r));
}

FoldResult fold(const Vec2& x, const RootSystemData& rs) {
  std::vector<HalfPlane> inside;
  std::vector<Isometry> reflections;
  for (const auto& w : rs.walls) {
    inside.push_back(w.inside());
    reflections.push_back(affine_reflection(w.root, w.level));
  }
  FoldResult res{x, {}, Isometry::identity()};
  for (int step = 0; step < 100000; ++step) {
    bool moved = false;
    for (size_t i = 0; i != inside.size(); ++i) {
      if (inside[i].side(res.representative) < 0) {
        res.representative = reflections[i](res.representative);
        res.isometry = reflections[i] * res.isometry;
        res.word.push_back(static_cast<int>(i));
        moved = true;
        break;
      }
    }
    if (!moved)
      return res;
  }
  throw std::runtime_error("fold did not terminate; alcove walls are malformed");
}

Lattice::Lattice(Vec2 u, Vec2 v) : u_(std::move(u)), v_(std::move(v)) {
  if (cross(u_, v_).is_zero())
    throw std::invalid_argument("lattice basis is rank deficient");
}

Vec2 Lattice::point(const mpz_class& m, const mpz_class& n) const {
  return Scalar(mpq_class(m)) * u_ + Scalar(mpq_class(n)) * v_;
}

std::array<Scalar, 2> Lattice::coordinates(const Vec2& p) const {
  Scalar d = cross(u_, v_);
  Scalar inv = d.inverse();
  return {cross(p, v_) * inv, cross(u_, p) * inv};
}

bool Lattice::contains(const Vec2& p) const {
  auto c = coordinates(p);
  return c[0].is_integer() && c[1].is_integer();
}

bool Lattice::same_as(const Lattice& other) const {
  return contains(other) && other.contains(*this);
}

Lattice dual_lattice(const Lattice& l) {
  Mat2 dual = l.matrix().inverse().transpose();
  return Lattice(dual.col(0), dual.col(1));
}

ReducedPoint lattice_reduce(const Vec2& x, const Lattice& l) {
  auto c = l.coordinates(x);
  mpz_class m = c[0].floor(), n = c[1].floor();
  Vec2 gamma = l.point(m, n);
  return {x - gamma, gamma, {m, n}};
}

Lattice reduce_basis(const Lattice& l) {
  Vec2 a = l.u(), b = l.v();
  if (dot(b, b) < dot(a, a))
    std::swap(a, b);
  for (int guard = 0; guard < 1000; ++guard) {
    Scalar mu = dot(a, b) / dot(a, a);
    mpz_class k = (mu + Scalar::rational(1, 2)).floor();
    if (k != 0)
      b = b - Scalar(mpq_class(k)) * a;
    if (!(dot(b, b) < dot(a, a)))
      break;
    std::swap(a, b);
  }
  // orient counterclockwise with the shortest vector first
  if (cross(a, b).sign() < 0)
    b = -b;
  return Lattice(a, b);
}

namespace {

struct IntVec {
  mpz_class x, y;
};

// Basis {(g, s), (0, h)} of the integer lattice spanned by gens.
std::optional<std::array<IntVec, 2>> integer_basis(const std::vector<IntVec>& gens) {
  IntVec pivot{0, 0};
  mpz_class h = 0;
  for (const auto& w : gens) {
    if (w.x == 0) {
      h = gcd(h, w.y);
      continue;
    }
    if (pivot.x == 0) {
      pivot = w;
      continue;
    }
    mpz_class g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), pivot.x.get_mpz_t(), w.x.get_mpz_t());
    IntVec next{s * pivot.x + t * w.x, s * pivot.y + t * w.y};
    mpz_class rem_y = (w.x / g) * pivot.y - (pivot.x / g) * w.y;
    h = gcd(h, rem_y);
    pivot = next;
  }
  if (pivot.x == 0 || h == 0)
    return std::nullopt;
  return std::array<IntVec, 2>{pivot, IntVec{0, h}};
}

}  // namespace

LatticeIntersection lattice_intersection(const Lattice& a, const Lattice& b) {
  LatticeIntersection res;
  Mat2 m = a.matrix().inverse() * b.matrix();
  for (const Scalar* e : {&m.a, &m.b, &m.c, &m.d})
    if (!e->is_rational())
      return res;
  res.commensurable = true;

  // In a-coordinates: a = Z^2, b = M Z^2, and Z^2 cap M Z^2 = (Z^2 + M^-T Z^2)^*.
  Mat2 mit = m.inverse().transpose();
  std::vector<mpq_class> entries = {1, 0, 0, 1, mit.a.one(), mit.c.one(), mit.b.one(), mit.d.one()};
  mpz_class denom = 1;
  for (const auto& q : entries)
    denom = lcm(denom, q.get_den());
  std::vector<IntVec> gens;
  for (size_t i = 0; i < entries.size(); i += 2) {
    mpq_class x = entries[i] * denom, y = entries[i + 1] * denom;
    gens.push_back({x.get_num(), y.get_num()});
  }
  auto basis = integer_basis(gens);
  if (!basis)
    throw std::logic_error("lattice sum lost rank");
  Mat2 sum_basis{Scalar(mpq_class((*basis)[0].x, denom)), Scalar(mpq_class((*basis)[1].x, denom)),
                 Scalar(mpq_class((*basis)[0].y, denom)), Scalar(mpq_class((*basis)[1].y, denom))};
  Mat2 inter = a.matrix() * sum_basis.inverse().transpose();
  Lattice j = reduce_basis(Lattice(inter.col(0), inter.col(1)));
  Scalar ia = j.cell_area() / a.cell_area(), ib = j.cell_area() / b.cell_area();
  if (!ia.is_integer() || !ib.is_integer())
    throw std::logic_error("non-integral lattice index");
  res.index_in_first = ia.one().get_num();
  res.index_in_second = ib.one().get_num();
  res.lattice = j;
  return res;
}

}  // namespace threeway
