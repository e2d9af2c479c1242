#include "doctest.h"

#include <cstdint>
#include <stdexcept>

#include "bellbound/rational.hpp"
#include "bellbound/rng.hpp"

using namespace bellbound;

TEST_CASE("bigint arithmetic basics") {
  CHECK((BigInt(7) + BigInt(-7)).is_zero());
  CHECK((BigInt(-3) * BigInt(-4)) == BigInt(12));
  CHECK((BigInt(100) / BigInt(7)) == BigInt(14));
  CHECK((BigInt(100) % BigInt(7)) == BigInt(2));
  CHECK((BigInt(-100) / BigInt(7)) == BigInt(-14));
  CHECK((BigInt(-100) % BigInt(7)) == BigInt(-2));
  CHECK(BigInt(5) < BigInt(6));
  CHECK(BigInt(-6) < BigInt(5));
  CHECK(BigInt::gcd(BigInt(12), BigInt(18)) == BigInt(6));
}

TEST_CASE("bigint survives multi-limb magnitudes") {
  // (2^64)^2 style products exercise carry chains.
  const BigInt big = BigInt::from_uint64(0xFFFFFFFFFFFFFFFFULL);
  const BigInt square = big * big;
  const BigInt back = square / big;
  CHECK(back == big);
  CHECK((square % big).is_zero());
  CHECK(big.to_string() == "18446744073709551615");
}

TEST_CASE("bigint decimal rendering") {
  CHECK(BigInt(0).to_string() == "0");
  CHECK(BigInt(-1234567890123456789LL).to_string() == "-1234567890123456789");
}

TEST_CASE("bigint arithmetic agrees with int64 on random small values") {
  TrialStream rng(99, 0);
  for (int round = 0; round < 500; ++round) {
    const auto a = static_cast<std::int32_t>(rng.next_u64());
    const auto b = static_cast<std::int32_t>(rng.next_u64());
    CHECK((BigInt(a) + BigInt(b)) ==
          BigInt(static_cast<std::int64_t>(a) + b));
    CHECK((BigInt(a) - BigInt(b)) ==
          BigInt(static_cast<std::int64_t>(a) - b));
    CHECK((BigInt(a) * BigInt(b)) ==
          BigInt(static_cast<std::int64_t>(a) * b));
    if (b != 0) {
      CHECK((BigInt(a) / BigInt(b)) ==
            BigInt(static_cast<std::int64_t>(a) / b));
      CHECK((BigInt(a) % BigInt(b)) ==
            BigInt(static_cast<std::int64_t>(a) % b));
    }
  }
}

TEST_CASE("rational canonical form and ordering") {
  const Rational half(BigInt(2), BigInt(4));
  CHECK(half == Rational(BigInt(1), BigInt(2)));
  CHECK(half.to_string() == "1/2");
  CHECK(Rational(BigInt(1), BigInt(-2)).to_string() == "-1/2");
  CHECK(Rational(3) < Rational(BigInt(7), BigInt(2)));
  CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), std::domain_error);
}

TEST_CASE("rational double conversion is exact for dyadics") {
  for (double v : {0.0, 1.0, -1.0, 0.5, -0.25, 0.375, -0.625, 1e-3, 0.1}) {
    const Rational r = Rational::from_double(v);
    CHECK(r.to_double() == v);
  }
  CHECK(Rational::from_double(-0.5) == Rational(BigInt(-1), BigInt(2)));
  CHECK_THROWS_AS(Rational::from_double(1.0 / 0.0), std::invalid_argument);
}

TEST_CASE("rational field identities on random dyadics") {
  TrialStream rng(77, 3);
  for (int round = 0; round < 200; ++round) {
    const double x =
        (static_cast<double>(rng.next_index(513)) - 256.0) / 256.0;
    const double y =
        (static_cast<double>(rng.next_index(513)) - 256.0) / 256.0;
    const Rational a = Rational::from_double(x);
    const Rational b = Rational::from_double(y);
    CHECK((a + b) - b == a);
    CHECK((a - b) + b == a);
    CHECK(a * b == b * a);
    if (!b.is_zero()) {
      CHECK((a / b) * b == a);
    }
    CHECK((a + b).to_double() == doctest::Approx(x + y).epsilon(1e-15));
  }
}
