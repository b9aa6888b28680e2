// spincouple: exact arithmetic for spin-orbit coupling coefficients
// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <cmath>
#include <random>

#include "spincouple/halfint.hpp"
#include "spincouple/json_io.hpp"
#include "spincouple/qsqrt.hpp"
#include "spincouple/rational.hpp"

using namespace spincouple;

namespace {

Rational random_rational(std::mt19937_64& rng, long long hi) {
  std::uniform_int_distribution<long long> num(-hi, hi);
  std::uniform_int_distribution<long long> den(1, hi);
  return Rational(num(rng), den(rng));
}

Rational random_positive_rational(std::mt19937_64& rng, long long hi) {
  std::uniform_int_distribution<long long> num(1, hi);
  std::uniform_int_distribution<long long> den(1, hi);
  return Rational(num(rng), den(rng));
}

QSqrt random_qsqrt(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nterms(0, 3);
  QSqrt q;
  const int n = nterms(rng);
  for (int i = 0; i < n; ++i)
    q += random_rational(rng, 40) * QSqrt::sqrt_of_rational(random_positive_rational(rng, 60));
  return q;
}

}  // namespace

TEST_SUITE("exactnum") {

TEST_CASE("halfint arithmetic and rendering") {
  const HalfInt a(2);
  const HalfInt b = HalfInt::from_twice(3);
  CHECK(a.twice() == 4);
  CHECK(b.str() == "3/2");
  CHECK((a + b).twice() == 7);
  CHECK((a - b).str() == "1/2");
  CHECK((-b).twice() == -3);
  CHECK(a.is_integer());
  CHECK_FALSE(b.is_integer());
  CHECK(abs(HalfInt::from_twice(-5)).twice() == 5);
  CHECK(dim_of(b) == 4);
  CHECK(parity(HalfInt(3)) == -1);
  CHECK(parity_twice(b) == -1);
  CHECK_THROWS_AS(parity(b), InvalidQuantumNumbersError);
  CHECK(casimir(b) == Rational(15, 4));
}

TEST_CASE("halfint parsing") {
  CHECK(HalfInt::parse("3") == HalfInt(3));
  CHECK(HalfInt::parse("-2") == HalfInt(-2));
  CHECK(HalfInt::parse("5/2") == HalfInt::from_twice(5));
  CHECK(HalfInt::parse("-7/2") == HalfInt::from_twice(-7));
  CHECK(HalfInt::parse("4/1") == HalfInt(4));
  CHECK(HalfInt::parse("1.5") == HalfInt::from_twice(3));
  CHECK(HalfInt::parse("-0.5") == HalfInt::from_twice(-1));
  CHECK(HalfInt::parse("2.0") == HalfInt(2));
  CHECK_FALSE(HalfInt::parse("").has_value());
  CHECK_FALSE(HalfInt::parse("5/3").has_value());
  CHECK_FALSE(HalfInt::parse("1.25").has_value());
  CHECK_FALSE(HalfInt::parse("x").has_value());
}

TEST_CASE("factorial helpers") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(5) == 120);
  CHECK(factorial(20) == Int("2432902008176640000"));
  CHECK(double_factorial(-1) == 1);
  CHECK(double_factorial(0) == 1);
  CHECK(double_factorial(7) == 105);
  CHECK(double_factorial(8) == 384);
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(5, 6) == 0);
  CHECK(rational_pow(Rational(2, 3), -2) == Rational(9, 4));
}

TEST_CASE("canonical form of square roots") {
  CHECK(QSqrt::sqrt_of_rational(Rational(0)).is_zero());
  CHECK(QSqrt::sqrt_of_rational(Rational(4)) == QSqrt(2));
  CHECK(QSqrt::sqrt_of_rational(Rational(8)) == QSqrt::from_parts(Rational(2), Int(2)));
  CHECK(QSqrt::sqrt_of_rational(Rational(4, 9)) == QSqrt(Rational(2, 3)));
  CHECK(QSqrt::sqrt_of_rational(Rational(1, 2)) == QSqrt::from_parts(Rational(1, 2), Int(2)));
  CHECK(QSqrt::sqrt_of_rational(Rational(45, 49)) ==
        QSqrt::from_parts(Rational(3, 7), Int(5)));
  CHECK_THROWS_AS(QSqrt::sqrt_of_rational(Rational(-1)), std::domain_error);

  // A 62-bit semiprime radicand exercises the nontrivial factor search.
  const Int p("2305843009213693951");  // 2^61 - 1, prime
  const Int n = p * 4;
  CHECK(QSqrt::sqrt_of_rational(Rational(n)) == QSqrt::from_parts(Rational(2), p));
}

TEST_CASE("sqrt of rational squares back" * doctest::timeout(60)) {
  std::mt19937_64 rng(20260816u);
  for (int i = 0; i < 1000; ++i) {
    const Rational r = random_positive_rational(rng, 1000000);
    const QSqrt s = QSqrt::sqrt_of_rational(r);
    CHECK(s * s == QSqrt(r));
  }
}

TEST_CASE("ring identities on random values") {
  std::mt19937_64 rng(977123u);
  for (int i = 0; i < 200; ++i) {
    const QSqrt a = random_qsqrt(rng);
    const QSqrt b = random_qsqrt(rng);
    const QSqrt c = random_qsqrt(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
    CHECK(a * QSqrt(1) == a);
    CHECK((a * QSqrt(0)).is_zero());
  }
}

TEST_CASE("mixed radicand products stay canonical") {
  const QSqrt s2 = QSqrt::sqrt_of_rational(Rational(2));
  const QSqrt s3 = QSqrt::sqrt_of_rational(Rational(3));
  const QSqrt s6 = QSqrt::sqrt_of_rational(Rational(6));
  CHECK(s2 * s3 == s6);
  CHECK(s2 * s2 == QSqrt(2));
  CHECK(s6 * s2 == Rational(2) * s3);
  const QSqrt sum = s2 + s3;
  CHECK(sum * sum == QSqrt(5) + Rational(2) * s6);
  CHECK(sum - s3 == s2);
}

TEST_CASE("divide by radical") {
  std::mt19937_64 rng(5150u);
  for (int i = 0; i < 200; ++i) {
    const QSqrt a = random_qsqrt(rng);
    QSqrt b;
    do {
      b = random_rational(rng, 30) * QSqrt::sqrt_of_rational(random_positive_rational(rng, 50));
    } while (b.is_zero());
    CHECK(divide_by_radical(a, b) * b == a);
  }
  const QSqrt two_terms = QSqrt(1) + QSqrt::sqrt_of_rational(Rational(2));
  CHECK_THROWS_AS(divide_by_radical(QSqrt(1), two_terms), UnsupportedDivisorError);
  CHECK_THROWS_AS(divide_by_radical(QSqrt(1), QSqrt(0)), std::domain_error);
}

TEST_CASE("float conversion across extreme magnitudes") {
  for (int e = -500; e <= 500; e += 25) {
    Rational r(7, 3);
    if (e >= 0)
      r *= Rational(Int(1) << e, 1);
    else
      r *= Rational(1, Int(1) << -e);
    const double expect = std::ldexp(7.0 / 3.0, e);
    const double got = to_double(r);
    CHECK(std::abs(got - expect) <= std::ldexp(std::abs(expect), -50));
    CHECK(to_double(-r) == -got);
  }
  CHECK(to_double(Rational(0)) == 0.0);
  const QSqrt v = QSqrt::from_parts(Rational(-3, 7), Int(10));
  CHECK(v.to_float() == doctest::Approx(-3.0 / 7.0 * std::sqrt(10.0)).epsilon(1e-14));
}

TEST_CASE("json round trip is exact") {
  std::mt19937_64 rng(31337u);
  for (int i = 0; i < 200; ++i) {
    const QSqrt q = random_qsqrt(rng);
    CHECK(qsqrt_from_json(qsqrt_to_json(q)) == q);
  }
  CHECK(qsqrt_to_json(QSqrt()).dump() == "[]");
  const QSqrt v = QSqrt::from_parts(Rational(-3, 2), Int(6)) + QSqrt(Rational(1, 4));
  CHECK(qsqrt_to_json(v).dump() == R"([{"c":"1/4","d":1},{"c":"-3/2","d":6}])");
  const CQSqrt z{QSqrt(1), QSqrt::sqrt_of_rational(Rational(3, 4))};
  CHECK(cqsqrt_from_json(cqsqrt_to_json(z)) == z);
  CHECK_THROWS(qsqrt_from_json(nlohmann::json::object()));
}

TEST_CASE("qsqrt string rendering") {
  CHECK(QSqrt().str() == "0");
  CHECK(QSqrt(Rational(-2, 3)).str() == "-2/3");
  const QSqrt v = QSqrt::from_parts(Rational(1, 2), Int(2)) + QSqrt(3);
  CHECK(v.str() == "3 + 1/2*sqrt(2)");
}

}  // TEST_SUITE exactnum
