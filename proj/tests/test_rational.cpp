#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mg/rational.hpp"
#include "mg/rng.hpp"

using mg::BigInt;
using mg::BigRational;

TEST_CASE("canonical form: lowest terms, positive denominator") {
  const BigRational q(100, 21);
  CHECK(q.numerator() == 100);
  CHECK(q.denominator() == 21);

  CHECK(BigRational(2, -4) == BigRational(-1, 2));
  CHECK(BigRational(2, -4).denominator() == 2);
  CHECK(BigRational(-2, -4) == BigRational(1, 2));
  CHECK(BigRational(6, 3).to_string() == "2");
  CHECK(BigRational(10, 3).to_string() == "10/3");
  CHECK_THROWS_AS(BigRational(1, 0), std::invalid_argument);
}

TEST_CASE("arithmetic") {
  CHECK(BigRational(1, 3) + BigRational(1, 6) == BigRational(1, 2));
  CHECK(BigRational(1, 3) - BigRational(1, 2) == BigRational(-1, 6));
  CHECK(BigRational(2, 3) * BigRational(9, 4) == BigRational(3, 2));
  CHECK(BigRational(3, 2) / BigRational(3, 4) == BigRational(2));
  CHECK(-BigRational(1, 2) == BigRational(-1, 2));
  CHECK_THROWS_AS(BigRational(1) / BigRational(0), std::invalid_argument);
  CHECK(BigRational(100, 21).to_double() == doctest::Approx(4.761904761904762));
  CHECK(BigRational(1, 3) < BigRational(1, 2));
  CHECK(BigRational(7, 2) >= BigRational(7, 2));
}

TEST_CASE("field laws on random rationals") {
  mg::Xoshiro256 rng(20240811);
  auto random_rational = [&rng]() {
    const long num = static_cast<long>(rng.next() % 2001) - 1000;
    const long den = static_cast<long>(rng.next() % 999) + 1;
    return BigRational(num, den);
  };
  for (int iter = 0; iter < 500; ++iter) {
    const BigRational a = random_rational();
    const BigRational b = random_rational();
    CHECK((a + b) - b == a);
    CHECK(a + b == b + a);
    if (b != BigRational(0)) CHECK((a * b) / b == a);
    CHECK(a * (b + BigRational(1)) == a * b + a);
  }
}

TEST_CASE("binomial and powers of two") {
  CHECK(mg::binomial(8, 3) == 56);
  CHECK(mg::binomial(6, 0) == 1);
  CHECK(mg::binomial(6, 6) == 1);
  CHECK(mg::pow2(10) == 1024);
  // Pascal identity on a few random cells.
  mg::Xoshiro256 rng(7);
  for (int iter = 0; iter < 100; ++iter) {
    const unsigned long n = 2 + rng.next() % 60;
    const unsigned long k = 1 + rng.next() % (n - 1);
    CHECK(mg::binomial(n, k) == mg::binomial(n - 1, k - 1) + mg::binomial(n - 1, k));
  }
}
