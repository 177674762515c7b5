// Exact arithmetic in the real field Q(sqrt2, sqrt3).
//
// Every coordinate handled by the library lives in this field: a Scalar is
// a + b*sqrt2 + c*sqrt3 + d*sqrt6 with arbitrary-precision rationals a..d.

#ifndef THREEWAY_SCALAR_HPP_
#define THREEWAY_SCALAR_HPP_

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace threeway {

// Thrown on division by zero and similar domain violations.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A dyadic approximation together with a rigorous error bound.
struct Approximation {
  mpq_class value;
  mpq_class error_bound;
  double as_double() const { return value.get_d(); }
};

class Scalar {
 public:
  Scalar() = default;
  Scalar(long n) : one_(n) {}  // NOLINT(google-explicit-constructor)
  Scalar(mpq_class one, mpq_class sqrt2 = 0, mpq_class sqrt3 = 0, mpq_class sqrt6 = 0);

  static Scalar rational(long num, long den);
  static Scalar sqrt2() { return Scalar(0, 1, 0, 0); }
  static Scalar sqrt3() { return Scalar(0, 0, 1, 0); }
  static Scalar sqrt6() { return Scalar(0, 0, 0, 1); }

  const mpq_class& one() const { return one_; }
  const mpq_class& coef_sqrt2() const { return sqrt2_; }
  const mpq_class& coef_sqrt3() const { return sqrt3_; }
  const mpq_class& coef_sqrt6() const { return sqrt6_; }

  bool is_zero() const { return sgn(one_) == 0 && sgn(sqrt2_) == 0 && sgn(sqrt3_) == 0 && sgn(sqrt6_) == 0; }
  bool is_rational() const { return sgn(sqrt2_) == 0 && sgn(sqrt3_) == 0 && sgn(sqrt6_) == 0; }
  bool is_integer() const { return is_rational() && one_.get_den() == 1; }

  // Galois conjugate: flip the sign of sqrt2 and/or sqrt3 (sqrt6 follows).
  Scalar conjugate(bool flip2, bool flip3) const;
  Scalar inverse() const;

  // -1, 0 or +1; exact.
  int sign() const;
  Scalar abs() const { return sign() < 0 ? -*this : *this; }

  // |value - true| <= error_bound <= 2^(4 - bits).  bits >= 32.
  Approximation approx(int bits = 64) const;
  // Fast double approximation (not rounded correctly, relative error ~1e-15).
  double to_double() const;

  // Largest integer <= value.
  mpz_class floor() const;

  Scalar operator-() const { return Scalar(-one_, -sqrt2_, -sqrt3_, -sqrt6_); }
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
  friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
  friend Scalar operator*(const Scalar& x, const Scalar& y);
  friend Scalar operator/(const Scalar& x, const Scalar& y);

  // Canonical form makes structural equality coincide with numeric equality.
  friend bool operator==(const Scalar& x, const Scalar& y) {
    return x.one_ == y.one_ && x.sqrt2_ == y.sqrt2_ && x.sqrt3_ == y.sqrt3_ && x.sqrt6_ == y.sqrt6_;
  }
  friend std::strong_ordering operator<=>(const Scalar& x, const Scalar& y) {
    int s = (x - y).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  // Human readable, e.g. "1/2 + 1/3*sqrt6".
  std::string str() const;

 private:
  mpq_class one_, sqrt2_, sqrt3_, sqrt6_;
};

inline int sign(const Scalar& x) { return x.sign(); }
inline Scalar min(const Scalar& a, const Scalar& b) { return b < a ? b : a; }
inline Scalar max(const Scalar& a, const Scalar& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const Scalar& x);

// Parses "p/q" or "p" (decimal integers, q > 0) into a canonical rational.
// Throws std::invalid_argument on malformed text or a zero denominator.
mpq_class parse_rational(const std::string& text);
std::string format_rational(const mpq_class& q);

}  // namespace threeway

#endif  // THREEWAY_SCALAR_HPP_
