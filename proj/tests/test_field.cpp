#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "linrem/error.hpp"
#include "linrem/field.hpp"
#include "linrem/random.hpp"
#include "oracles.hpp"

using namespace linrem;

TEST_CASE("construction checks primality") {
  CHECK(PrimeField(7).q() == 7);
  CHECK(PrimeField(181).q() == 181);
  CHECK(oracle::is_prime(181));
  try {
    PrimeField f(6);
    FAIL("composite modulus accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonPrimeModulus);
  }
  CHECK_THROWS_AS(PrimeField(1), Error);
}

TEST_CASE("small arithmetic") {
  const PrimeField f(7);
  CHECK(f.add(3, 5) == 1);
  CHECK(f.inv(3) == 5);
  CHECK(f.mul(3, 5) == 1);
  CHECK(f.neg(0) == 0);
  CHECK(f.sub(2, 5) == 4);
  CHECK(f.reduce(-1) == 6);
  CHECK_THROWS_AS(f.inv(0), Error);
}

TEST_CASE("inverses are exact for every prime below 1000") {
  for (std::uint32_t q = 2; q < 1000; ++q) {
    if (!oracle::is_prime(q)) continue;
    const PrimeField f(q);
    for (Residue a = 1; a < q; ++a) REQUIRE(f.mul(a, f.inv(a)) == 1);
  }
}

TEST_CASE("operations agree with plain integer arithmetic") {
  Rng rng(11);
  for (std::uint32_t q : {2u, 3u, 101u, 65521u, 4294967291u}) {
    const PrimeField f(q);
    for (int t = 0; t < 2000; ++t) {
      const std::int64_t a = static_cast<std::int64_t>(rng.below(q)), b = static_cast<std::int64_t>(rng.below(q));
      const auto ua = static_cast<Residue>(a), ub = static_cast<Residue>(b);
      REQUIRE(f.add(ua, ub) == static_cast<Residue>((a + b) % q));
      REQUIRE(f.sub(ua, ub) == static_cast<Residue>(oracle::mod(a - b, q)));
      REQUIRE(f.mul(ua, ub) == static_cast<Residue>(static_cast<unsigned __int128>(a) * b % q));
      REQUIRE(f.neg(ua) == static_cast<Residue>(oracle::mod(-a, q)));
    }
  }
}

TEST_CASE("next prime above") {
  CHECK(next_prime_above(180) == 181);
  CHECK(next_prime_above(1) == 2);
  CHECK(next_prime_above(4) == 5);
  CHECK(next_prime_above(0) == 2);
  for (std::uint64_t x = 1; x < 3000; ++x) {
    const std::uint64_t p = next_prime_above(x);
    REQUIRE(p > x);
    REQUIRE(oracle::is_prime(p));
    REQUIRE(p <= 2 * x);
    for (std::uint64_t y = x + 1; y < p; ++y) REQUIRE_FALSE(oracle::is_prime(y));
  }
}
