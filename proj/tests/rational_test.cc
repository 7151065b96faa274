#include "symcore/rational.h"

#include <random>

#include "doctest.h"

namespace symcore {
namespace {

Rational RandomRational(std::mt19937_64& rng, bool huge) {
  std::uniform_int_distribution<std::int64_t> small(-50, 50);
  std::uniform_int_distribution<std::int64_t> wide(std::numeric_limits<std::int64_t>::min() / 2,
                                                   std::numeric_limits<std::int64_t>::max() / 2);
  std::int64_t num = huge ? wide(rng) : small(rng);
  std::int64_t den = huge ? wide(rng) : small(rng);
  if (den == 0) den = 1;
  return Rational(num, den);
}

bool Canonical(const Rational& r) {
  const mpz_class num = r.Numerator();
  const mpz_class den = r.Denominator();
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return den > 0 && (num == 0 ? den == 1 : g == 1);
}

TEST_CASE("construction canonicalizes") {
  CHECK(Rational(2, 4).ToString() == "1/2");
  CHECK(Rational(3, -6).ToString() == "-1/2");
  CHECK(Rational(0, 7).ToString() == "0");
  CHECK(Rational(0, 7).Denominator() == 1);
  CHECK_THROWS_AS(Rational(1, 0), Error);
}

TEST_CASE("dot products") {
  CHECK(Dot(RatVector{1, 2}, RatVector{3, 4}) == Rational(11));
  CHECK(Dot(RatVector{Rational(1, 2), Rational(1, 3)}, RatVector{2, 3}) == Rational(2));
  CHECK(Dot(RatVector{5, -7}, RatVector{0, 0}) == Rational(0));
  CHECK_THROWS_AS(Dot(RatVector{1, 2}, RatVector{1}), Error);
}

TEST_CASE("parse and print") {
  CHECK(Rational::Parse("5/2") == Rational(5, 2));
  CHECK(Rational::Parse(" -10/4 ") == Rational(-5, 2));
  CHECK(Rational::Parse("+7") == Rational(7));
  const Rational huge = Rational::Parse("123456789012345678901234567891/7");
  CHECK_FALSE(huge.is_small());
  CHECK(huge.ToString() == "123456789012345678901234567891/7");
  CHECK(Rational::Parse(huge.ToString()) == huge);
  CHECK_THROWS_AS(Rational::Parse("1/0"), Error);
  CHECK_THROWS_AS(Rational::Parse("abc"), Error);
  CHECK_THROWS_AS(Rational::Parse("1.5"), Error);
  CHECK_THROWS_AS(Rational::Parse(""), Error);
}

TEST_CASE("overflow promotes and results demote") {
  const Rational big(std::numeric_limits<std::int64_t>::max());
  const Rational sum = big + big;
  CHECK_FALSE(sum.is_small());
  CHECK(sum.ToString() == "18446744073709551614");
  const Rational back = sum - big;
  CHECK(back.is_small());
  CHECK(back == big);
  const Rational tiny(1, std::numeric_limits<std::int64_t>::max());
  const Rational prod = tiny * tiny;
  CHECK_FALSE(prod.is_small());
  CHECK(prod * big * big == Rational(1));
  CHECK((prod * big * big).is_small());
  CHECK(Rational(std::numeric_limits<std::int64_t>::min()).ToString() == "-9223372036854775808");
}

TEST_CASE("floor and ceiling") {
  CHECK(Rational(7, 2).FloorToInt64() == 3);
  CHECK(Rational(7, 2).CeilToInt64() == 4);
  CHECK(Rational(-7, 2).FloorToInt64() == -4);
  CHECK(Rational(-7, 2).CeilToInt64() == -3);
  CHECK(Rational(-4).FloorToInt64() == -4);
  CHECK(Rational(10, 3).FloorToInt64() == 3);
  CHECK_THROWS_AS(Rational::Parse("100000000000000000000000").FloorToInt64(), Error);
  CHECK_THROWS_AS(Rational(1, 2).ToInt64(), Error);
}

TEST_CASE("ordering across representations") {
  const Rational huge = Rational::Parse("100000000000000000000000");
  CHECK(Rational(5) < huge);
  CHECK(-huge < Rational(-5));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 3) > Rational(-1, 2));
  CHECK(Rational(2, 4) == Rational(1, 2));
}

TEST_CASE("random samples stay canonical and satisfy field axioms exactly") {
  std::mt19937_64 rng(20260101);
  for (int iter = 0; iter < 4000; ++iter) {
    const bool huge = iter % 2 == 1;
    const Rational a = RandomRational(rng, huge);
    const Rational b = RandomRational(rng, huge);
    const Rational c = RandomRational(rng, huge);
    for (const Rational& r : {a, b, c, a + b, a * b, a - c, (a + b) * c}) {
      REQUIRE(Canonical(r));
    }
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a + b == b + a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a - a == Rational(0));
    if (!b.IsZero()) CHECK((a / b) * b == a);
    // Representation-independent hashing and comparison.
    const Rational round_trip = Rational(a.ToMpq());
    CHECK(round_trip == a);
    CHECK(round_trip.Hash() == a.Hash());
    CHECK(((a < b) == (a.ToMpq() < b.ToMpq())));
  }
}

}  // namespace
}  // namespace symcore
