#include "linrem/field.hpp"

#include <limits>
#include <string>

#include "linrem/error.hpp"

namespace linrem {

bool is_prime(std::uint64_t x) {
  if (x < 2) return false;
  if (x % 2 == 0) return x == 2;
  for (std::uint64_t d = 3; d <= x / d; d += 2) {
    if (x % d == 0) return false;
  }
  return true;
}

std::uint64_t next_prime_above(std::uint64_t x) {
  std::uint64_t c = x + 1;
  while (!is_prime(c)) ++c;
  return c;
}

PrimeField::PrimeField(std::uint64_t q) : q_(0) {
  if (q > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorKind::InvalidArgument, "modulus " + std::to_string(q) + " exceeds 32 bits");
  }
  if (!is_prime(q)) {
    throw Error(ErrorKind::NonPrimeModulus, std::to_string(q));
  }
  q_ = static_cast<std::uint32_t>(q);
}

Residue PrimeField::inv(Residue a) const {
  if (a == 0) throw Error(ErrorKind::DivisionByZero, "inverse of 0 mod " + std::to_string(q_));
  // Extended Euclid on (a, q); q prime so gcd is 1.
  std::int64_t r0 = q_, r1 = a, t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t quot = r0 / r1;
    std::int64_t r2 = r0 - quot * r1;
    r0 = r1;
    r1 = r2;
    std::int64_t t2 = t0 - quot * t1;
    t0 = t1;
    t1 = t2;
  }
  return reduce(t0);
}

Residue PrimeField::pow(Residue a, std::uint64_t e) const noexcept {
  Residue result = q_ == 1 ? 0 : 1;
  Residue base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

}  // namespace linrem
