#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "liplift/random.hpp"
#include "liplift/scalar.hpp"

using liplift::BigInt;
using liplift::Rational;
using liplift::Rng;

TEST_CASE("bigint small arithmetic matches long long") {
  Rng rng(101);
  for (int t = 0; t < 2000; ++t) {
    long long a = rng.next_int(-1000000000LL, 1000000000LL);
    long long b = rng.next_int(-1000000000LL, 1000000000LL);
    CHECK(BigInt(a) + BigInt(b) == BigInt(a + b));
    CHECK(BigInt(a) - BigInt(b) == BigInt(a - b));
    CHECK(BigInt(a) * BigInt(b) == BigInt(a * b));
    if (b != 0) {
      CHECK(BigInt(a) / BigInt(b) == BigInt(a / b));
      CHECK(BigInt(a) % BigInt(b) == BigInt(a % b));
    }
    CHECK((BigInt(a) < BigInt(b)) == (a < b));
  }
}

TEST_CASE("bigint divmod identity on wide operands") {
  Rng rng(202);
  for (int t = 0; t < 500; ++t) {
    // products of random 60-bit numbers give multi-limb dividends
    BigInt a = BigInt(rng.next_int(0, (1LL << 60) - 1)) * BigInt(rng.next_int(1, (1LL << 60) - 1));
    BigInt b = BigInt(rng.next_int(1, (1LL << 45) - 1));
    if (rng.next_int(0, 1) == 1) a = -a;
    if (rng.next_int(0, 1) == 1) b = -b;
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    CHECK(q * b + r == a);
    CHECK(r.abs() < b.abs());
    // truncated division: remainder carries the dividend's sign
    if (!r.is_zero()) CHECK(r.is_negative() == a.is_negative());
  }
}

TEST_CASE("bigint divmod stresses the add-back path") {
  // dividends just below a multiple of the divisor make qhat overshoot
  BigInt base = *BigInt::parse("1000000000");
  for (int k = 1; k <= 50; ++k) {
    BigInt b = base * base + BigInt(k);  // two-limb divisor
    BigInt a = b * b * BigInt(7) - BigInt(1);
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    CHECK(q * b + r == a);
    CHECK(r >= BigInt(0));
    CHECK(r < b);
  }
}

TEST_CASE("bigint parse and print round trip") {
  const char* cases[] = {"0", "7", "-7", "1000000000", "-123456789012345678901234567890"};
  for (const char* s : cases) {
    auto v = BigInt::parse(s);
    REQUIRE(v.has_value());
    CHECK(v->to_string() == s);
  }
  CHECK(!BigInt::parse("").has_value());
  CHECK(!BigInt::parse("12x").has_value());
  CHECK(BigInt::parse("000123")->to_string() == "123");
}

TEST_CASE("bigint gcd") {
  CHECK(BigInt::gcd(BigInt(12), BigInt(18)) == BigInt(6));
  CHECK(BigInt::gcd(BigInt(-12), BigInt(18)) == BigInt(6));
  CHECK(BigInt::gcd(BigInt(0), BigInt(5)) == BigInt(5));
  BigInt big = *BigInt::parse("123456789123456789");
  CHECK(BigInt::gcd(big * BigInt(4), big * BigInt(6)) == big * BigInt(2));
}

TEST_CASE("rational arithmetic and normalization") {
  Rational half(1, 2);
  Rational third(1, 3);
  CHECK((half + third).to_string() == "5/6");
  CHECK((half - third).to_string() == "1/6");
  CHECK((half * third).to_string() == "1/6");
  CHECK((half / third).to_string() == "3/2");
  CHECK(Rational(2, 4) == half);
  CHECK(Rational(-1, -2) == half);
  CHECK(Rational(1, -2) == -half);
  CHECK(Rational(0, 5).to_string() == "0");
  CHECK(Rational(6, 3).to_string() == "2");
}

TEST_CASE("rational ordering") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
  CHECK(Rational(2, 6) <= Rational(1, 3));
  CHECK(Rational(7, 2) > Rational(3));
}

TEST_CASE("rational parsing forms") {
  CHECK(*Rational::parse("3/4") == Rational(3, 4));
  CHECK(*Rational::parse("-3/4") == Rational(-3, 4));
  CHECK(*Rational::parse("0.25") == Rational(1, 4));
  CHECK(*Rational::parse("-0.5") == Rational(-1, 2));
  CHECK(*Rational::parse("2.5e-2") == Rational(1, 40));
  CHECK(*Rational::parse("1e3") == Rational(1000));
  CHECK(*Rational::parse("17") == Rational(17));
  CHECK(!Rational::parse("").has_value());
  CHECK(!Rational::parse("1/0").has_value());
  CHECK(!Rational::parse("1.2.3").has_value());
  CHECK(!Rational::parse("abc").has_value());
}

TEST_CASE("rational random field identities") {
  Rng rng(303);
  for (int t = 0; t < 500; ++t) {
    Rational a(rng.next_int(-50, 50), rng.next_int(1, 50));
    Rational b(rng.next_int(-50, 50), rng.next_int(1, 50));
    Rational c(rng.next_int(-50, 50), rng.next_int(1, 50));
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    if (!b.is_zero()) CHECK(a / b * b == a);
  }
}

TEST_CASE("double trait parsing accepts fraction tokens") {
  using dt = liplift::scalar_traits<double>;
  CHECK(*dt::parse("1/2") == 0.5);
  CHECK(*dt::parse("0.25") == 0.25);
  CHECK(*dt::parse("-3") == -3.0);
  CHECK(!dt::parse("nan").has_value());
  CHECK(!dt::parse("1/0").has_value());
  CHECK(!dt::parse("x").has_value());
}

TEST_CASE("double trait printing round-trips") {
  using dt = liplift::scalar_traits<double>;
  Rng rng(404);
  for (int t = 0; t < 200; ++t) {
    double v = static_cast<double>(rng.next_int(-1000000, 1000000)) / 387.0;
    CHECK(*dt::parse(dt::to_string(v)) == v);
  }
}
