#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <random>

#include "threeway/scalar.hpp"

using namespace threeway;

namespace {

using BigFloat = boost::multiprecision::cpp_bin_float_50;

// Independent sign oracle: repeated squaring in the tower Q < Q(sqrt2) < Q(sqrt2, sqrt3).
int sign_q2(const mpq_class& p, const mpq_class& q) {
  int sp = sgn(p), sq = sgn(q);
  if (sq == 0 || sp == sq)
    return sp != 0 ? sp : sq;
  if (sp == 0)
    return sq;
  return sp * sgn(p * p - 2 * q * q);
}

int oracle_sign(const Scalar& x) {
  const mpq_class &a = x.one(), &b = x.coef_sqrt2(), &c = x.coef_sqrt3(), &d = x.coef_sqrt6();
  int sp = sign_q2(a, b), sq = sign_q2(c, d);
  if (sq == 0 || sp == sq)
    return sp != 0 ? sp : sq;
  if (sp == 0)
    return sq;
  // P^2 - 3 Q^2 with P = a + b sqrt2, Q = c + d sqrt2
  mpq_class one = a * a + 2 * b * b - 3 * (c * c + 2 * d * d);
  mpq_class root2 = 2 * a * b - 6 * c * d;
  return sp * sign_q2(one, root2);
}

BigFloat to_big(const mpq_class& q) { return BigFloat(q.get_num().get_str()) / BigFloat(q.get_den().get_str()); }

BigFloat oracle_value(const Scalar& x) {
  return to_big(x.one()) + to_big(x.coef_sqrt2()) * sqrt(BigFloat(2)) +
         to_big(x.coef_sqrt3()) * sqrt(BigFloat(3)) + to_big(x.coef_sqrt6()) * sqrt(BigFloat(6));
}

Scalar random_scalar(std::mt19937_64& rng, int range = 20) {
  std::uniform_int_distribution<long> num(-range, range), den(1, range);
  auto q = [&] { return mpq_class(num(rng), den(rng)); };
  mpq_class a = q(), b = q(), c = q(), d = q();
  a.canonicalize(); b.canonicalize(); c.canonicalize(); d.canonicalize();
  return Scalar(a, b, c, d);
}

}  // namespace

TEST_CASE("multiplication table") {
  CHECK(Scalar::sqrt2() * Scalar::sqrt3() == Scalar::sqrt6());
  CHECK(Scalar::sqrt2() * Scalar::sqrt6() == Scalar(2) * Scalar::sqrt3());
  CHECK(Scalar::sqrt3() * Scalar::sqrt6() == Scalar(3) * Scalar::sqrt2());
  CHECK(Scalar::sqrt6() * Scalar::sqrt6() == Scalar(6));
}

TEST_CASE("division and rationalization") {
  CHECK(Scalar(1) / Scalar::sqrt2() == Scalar::rational(1, 2) * Scalar::sqrt2());
  Scalar one_plus = Scalar(1) + Scalar::sqrt2(), one_minus = Scalar(1) - Scalar::sqrt2();
  CHECK(one_plus * one_minus == Scalar(-1));
  CHECK_THROWS_AS(Scalar(1) / Scalar(0), DomainError);
  CHECK_THROWS_AS(Scalar().inverse(), DomainError);
}

TEST_CASE("sign examples") {
  CHECK(Scalar(0).sign() == 0);
  CHECK((Scalar::sqrt6() - Scalar(2)).sign() == 1);
  CHECK((Scalar::sqrt2() + Scalar::sqrt3() - Scalar::sqrt6()).sign() == 1);
  // sqrt2 - 665857/470832 ~ 1.6e-12: forces interval refinement past the double filter
  Scalar tiny = Scalar(mpq_class(1, 1000000000)) * (Scalar::sqrt2() - Scalar::rational(665857, 470832));
  CHECK(tiny.sign() == oracle_sign(tiny));
  Scalar huge_cancel = Scalar(mpq_class("665857")) - Scalar(mpq_class("470832")) * Scalar::sqrt2();
  CHECK(huge_cancel.sign() == 1);
}

TEST_CASE("approx examples") {
  auto a = (Scalar::rational(1, 6) * Scalar::sqrt3()).approx(64);
  CHECK(a.as_double() == doctest::Approx(0.28867513459481287).epsilon(1e-15));
  CHECK(a.error_bound <= mpq_class(1, mpz_class(1) << 60));
  auto z = Scalar(0).approx(64);
  CHECK(z.value == 0);
  CHECK(z.error_bound == 0);
  auto b = (Scalar::rational(1, 2) * Scalar::sqrt2()).approx(128);
  CHECK(b.as_double() == doctest::Approx(0.70710678118654752).epsilon(1e-15));
}

TEST_CASE("approx error bound is rigorous") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    Scalar x = random_scalar(rng);
    for (int bits : {32, 64, 128}) {
      auto a = x.approx(bits);
      CHECK(a.error_bound <= mpq_class(1, mpz_class(1) << (bits - 4)));
      BigFloat err = abs(oracle_value(x) - to_big(a.value));
      if (bits <= 128)
        CHECK(err <= to_big(a.error_bound) + BigFloat(1e-48));
    }
  }
}

TEST_CASE("field axioms on random scalars") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    Scalar x = random_scalar(rng), y = random_scalar(rng), z = random_scalar(rng);
    CHECK((x + y) + z == x + (y + z));
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK(x * y == y * x);
    if (!x.is_zero())
      CHECK(x * x.inverse() == Scalar(1));
  }
}

TEST_CASE("sign agrees with the squaring oracle and with high-precision approximations") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    Scalar x = random_scalar(rng, i < 1000 ? 5 : 2000);
    int s = x.sign();
    CHECK(s == oracle_sign(x));
    auto a = x.approx(128);
    if (abs(a.value) > a.error_bound)
      CHECK(s == sgn(a.value));
  }
}

TEST_CASE("canonical form") {
  Scalar a(mpq_class(2, 4), mpq_class(-3, 6));
  Scalar b(mpq_class(1, 2), mpq_class(-1, 2));
  CHECK(a == b);
  CHECK(a.one().get_den() == 2);
  CHECK(a.coef_sqrt2().get_num() == -1);
  CHECK(!(a == Scalar(mpq_class(1, 2))));
}

TEST_CASE("floor") {
  CHECK(Scalar::sqrt2().floor() == 1);
  CHECK((-Scalar::sqrt2()).floor() == -2);
  CHECK(Scalar(3).floor() == 3);
  CHECK(Scalar::rational(-7, 2).floor() == -4);
  CHECK((Scalar(10) * Scalar::sqrt6()).floor() == 24);
}

TEST_CASE("rational text") {
  CHECK(parse_rational("3/6") == mpq_class(1, 2));
  CHECK(parse_rational("-4") == mpq_class(-4));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/-2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK(format_rational(mpq_class(-3, 1)) == "-3/1");
}
