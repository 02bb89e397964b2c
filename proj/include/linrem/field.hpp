#pragma once

#include <cstdint>

namespace linrem {

/// Canonical residue in [0, q-1].
using Residue = std::uint32_t;

bool is_prime(std::uint64_t x);

/// Smallest prime strictly greater than x.
std::uint64_t next_prime_above(std::uint64_t x);

/// Arithmetic modulo a prime q < 2^32. Values are immutable; every operation
/// takes and returns canonical residues.
class PrimeField {
 public:
  /// Throws NonPrimeModulus when q is not prime.
  explicit PrimeField(std::uint64_t q);

  std::uint32_t q() const noexcept { return q_; }
  std::uint64_t size() const noexcept { return q_; }

  Residue reduce(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(q_);
    return static_cast<Residue>(r < 0 ? r + q_ : r);
  }

  Residue add(Residue a, Residue b) const noexcept {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<Residue>(s >= q_ ? s - q_ : s);
  }
  Residue sub(Residue a, Residue b) const noexcept {
    return a >= b ? a - b : static_cast<Residue>(std::uint64_t{a} + q_ - b);
  }
  Residue neg(Residue a) const noexcept { return a == 0 ? 0 : q_ - a; }
  Residue mul(Residue a, Residue b) const noexcept {
    return static_cast<Residue>(std::uint64_t{a} * b % q_);
  }
  /// Throws DivisionByZero on inv(0).
  Residue inv(Residue a) const;
  Residue div(Residue a, Residue b) const { return mul(a, inv(b)); }
  Residue pow(Residue a, std::uint64_t e) const noexcept;

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint32_t q_;
};

}  // namespace linrem
