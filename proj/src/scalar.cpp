#include "threeway/scalar.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>

namespace threeway {

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);
const double kSqrt6 = std::sqrt(6.0);

struct RatInterval {
  mpq_class lo, hi;
};

// Rational enclosures of sqrt2, sqrt3, sqrt6 of width 2^-p.
const std::array<RatInterval, 3>& sqrt_enclosures(unsigned p) {
  thread_local std::map<unsigned, std::array<RatInterval, 3>> cache;
  auto it = cache.find(p);
  if (it != cache.end())
    return it->second;
  std::array<RatInterval, 3> out;
  const unsigned long radicands[3] = {2, 3, 6};
  mpz_class scale = 1;
  scale <<= p;
  for (int i = 0; i != 3; ++i) {
    mpz_class n = radicands[i];
    n <<= 2 * p;
    mpz_class r = sqrt(n);  // floor, never exact for non-squares
    out[i].lo = mpq_class(r, scale);
    out[i].hi = mpq_class(r + 1, scale);
    out[i].lo.canonicalize();
    out[i].hi.canonicalize();
  }
  return cache.emplace(p, out).first->second;
}

void add_term(RatInterval& acc, const mpq_class& coef, const RatInterval& e) {
  if (sgn(coef) >= 0) {
    acc.lo += coef * e.lo;
    acc.hi += coef * e.hi;
  } else {
    acc.lo += coef * e.hi;
    acc.hi += coef * e.lo;
  }
}

RatInterval enclose(const Scalar& x, unsigned p) {
  const auto& enc = sqrt_enclosures(p);
  RatInterval acc{x.one(), x.one()};
  add_term(acc, x.coef_sqrt2(), enc[0]);
  add_term(acc, x.coef_sqrt3(), enc[1]);
  add_term(acc, x.coef_sqrt6(), enc[2]);
  return acc;
}

// Number of bits needed to hold |q| rounded up.
long magnitude_bits(const mpq_class& q) {
  if (sgn(q) == 0)
    return 0;
  mpz_class num = abs(q.get_num());
  return static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
         static_cast<long>(mpz_sizeinbase(q.get_den().get_mpz_t(), 2)) + 1;
}

// Double-precision filter.  Returns 0 when undecided.
int filtered_sign(const Scalar& x) {
  const double c[4] = {x.one().get_d(), x.coef_sqrt2().get_d(), x.coef_sqrt3().get_d(),
                       x.coef_sqrt6().get_d()};
  const mpq_class* q[4] = {&x.one(), &x.coef_sqrt2(), &x.coef_sqrt3(), &x.coef_sqrt6()};
  for (int i = 0; i != 4; ++i) {
    // get_d is only relatively accurate inside the normal range
    if (sgn(*q[i]) != 0 && !(std::fabs(c[i]) > 1e-280 && std::fabs(c[i]) < 1e280))
      return 0;
  }
  const double t[4] = {c[0], c[1] * kSqrt2, c[2] * kSqrt3, c[3] * kSqrt6};
  double sum = 0, mag = 0;
  for (double v : t) {
    sum += v;
    mag += std::fabs(v);
  }
  const double bound = mag * 0x1p-48;
  if (sum > bound)
    return 1;
  if (sum < -bound)
    return -1;
  return 0;
}

}  // namespace

Scalar::Scalar(mpq_class one, mpq_class sqrt2, mpq_class sqrt3, mpq_class sqrt6)
    : one_(std::move(one)), sqrt2_(std::move(sqrt2)), sqrt3_(std::move(sqrt3)), sqrt6_(std::move(sqrt6)) {
  one_.canonicalize();
  sqrt2_.canonicalize();
  sqrt3_.canonicalize();
  sqrt6_.canonicalize();
}

Scalar Scalar::rational(long num, long den) {
  if (den == 0)
    throw DomainError("zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return Scalar(q);
}

Scalar& Scalar::operator+=(const Scalar& o) {
  one_ += o.one_;
  sqrt2_ += o.sqrt2_;
  sqrt3_ += o.sqrt3_;
  sqrt6_ += o.sqrt6_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  one_ -= o.one_;
  sqrt2_ -= o.sqrt2_;
  sqrt3_ -= o.sqrt3_;
  sqrt6_ -= o.sqrt6_;
  return *this;
}

// sqrt2*sqrt3 = sqrt6, sqrt2*sqrt6 = 2 sqrt3, sqrt3*sqrt6 = 3 sqrt2, sqrt6^2 = 6
Scalar operator*(const Scalar& x, const Scalar& y) {
  const mpq_class &a = x.one_, &b = x.sqrt2_, &c = x.sqrt3_, &d = x.sqrt6_;
  const mpq_class &e = y.one_, &f = y.sqrt2_, &g = y.sqrt3_, &h = y.sqrt6_;
  Scalar r;
  if (x.is_rational()) {
    r.one_ = a * e;
    r.sqrt2_ = a * f;
    r.sqrt3_ = a * g;
    r.sqrt6_ = a * h;
    return r;
  }
  if (y.is_rational()) {
    r.one_ = e * a;
    r.sqrt2_ = e * b;
    r.sqrt3_ = e * c;
    r.sqrt6_ = e * d;
    return r;
  }
  r.one_ = a * e + 2 * b * f + 3 * c * g + 6 * d * h;
  r.sqrt2_ = a * f + b * e + 3 * (c * h + d * g);
  r.sqrt3_ = a * g + c * e + 2 * (b * h + d * f);
  r.sqrt6_ = a * h + d * e + b * g + c * f;
  return r;
}

Scalar Scalar::conjugate(bool flip2, bool flip3) const {
  Scalar r = *this;
  if (flip2)
    r.sqrt2_ = -r.sqrt2_;
  if (flip3)
    r.sqrt3_ = -r.sqrt3_;
  if (flip2 != flip3)
    r.sqrt6_ = -r.sqrt6_;
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero())
    throw DomainError("division by zero");
  if (is_rational())
    return Scalar(1 / one_);
  // x * sigma3(x) lies in Q(sqrt2); its norm down to Q is rational.
  Scalar s3 = conjugate(false, true);
  Scalar y = *this * s3;
  Scalar y2 = y.conjugate(true, false);
  Scalar n = y * y2;
  mpq_class inv_norm = 1 / n.one_;
  return s3 * y2 * Scalar(inv_norm);
}

Scalar operator/(const Scalar& x, const Scalar& y) {
  if (y.is_zero())
    throw DomainError("division by zero");
  if (y.is_rational()) {
    mpq_class inv = 1 / y.one_;
    return x * Scalar(inv);
  }
  return x * y.inverse();
}

int Scalar::sign() const {
  if (is_rational())
    return sgn(one_);
  if (int s = filtered_sign(*this))
    return s;
  if (is_zero())
    return 0;
  // A nonzero element has a nonzero value, so refinement terminates.
  for (unsigned p = 64;; p *= 2) {
    RatInterval iv = enclose(*this, p);
    if (sgn(iv.lo) > 0)
      return 1;
    if (sgn(iv.hi) < 0)
      return -1;
  }
}

Approximation Scalar::approx(int bits) const {
  if (bits < 32)
    bits = 32;
  if (is_rational())
    return {one_, 0};
  long mag = std::max({magnitude_bits(sqrt2_), magnitude_bits(sqrt3_), magnitude_bits(sqrt6_)});
  long p = bits + mag + 2;
  mpq_class limit(1);
  limit /= mpq_class(mpz_class(1) << (bits - 4));
  for (;; p += 16) {
    RatInterval iv = enclose(*this, static_cast<unsigned>(p < 32 ? 32 : p));
    mpq_class half = (iv.hi - iv.lo) / 2;
    if (half <= limit)
      return {(iv.lo + iv.hi) / 2, half};
  }
}

double Scalar::to_double() const {
  return one_.get_d() + sqrt2_.get_d() * kSqrt2 + sqrt3_.get_d() * kSqrt3 + sqrt6_.get_d() * kSqrt6;
}

mpz_class Scalar::floor() const {
  if (is_rational()) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), one_.get_num_mpz_t(), one_.get_den_mpz_t());
    return f;
  }
  Approximation a = approx(64);
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), a.value.get_num_mpz_t(), a.value.get_den_mpz_t());
  // The approximation may sit on the other side of an integer; step to fix.
  while ((*this - Scalar(mpq_class(f))).sign() < 0)
    --f;
  while ((*this - Scalar(mpq_class(f + 1))).sign() >= 0)
    ++f;
  return f;
}

std::string Scalar::str() const {
  std::ostringstream os;
  bool first = true;
  auto term = [&](const mpq_class& q, const char* name) {
    if (sgn(q) == 0)
      return;
    if (!first)
      os << (sgn(q) > 0 ? " + " : " - ");
    else if (sgn(q) < 0)
      os << "-";
    mpq_class m = ::abs(q);
    if (*name == '\0')
      os << m;
    else if (m == 1)
      os << name;
    else
      os << m << "*" << name;
    first = false;
  };
  term(one_, "");
  term(sqrt2_, "sqrt2");
  term(sqrt3_, "sqrt3");
  term(sqrt6_, "sqrt6");
  if (first)
    os << "0";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& x) { return os << x.str(); }

mpq_class parse_rational(const std::string& text) {
  auto valid_int = [](const std::string& s, bool allow_sign) {
    if (s.empty())
      return false;
    size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+'))
      i = 1;
    if (i == s.size())
      return false;
    for (; i != s.size(); ++i)
      if (s[i] < '0' || s[i] > '9')
        return false;
    return true;
  };
  auto slash = text.find('/');
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false))
    throw std::invalid_argument("malformed rational '" + text + "'");
  if (num[0] == '+')
    num.erase(0, 1);
  mpz_class n(num, 10), d(den, 10);
  if (d == 0)
    throw std::invalid_argument("zero denominator in rational '" + text + "'");
  mpq_class q(n, d);
  q.canonicalize();
  return q;
}

std::string format_rational(const mpq_class& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace threeway
