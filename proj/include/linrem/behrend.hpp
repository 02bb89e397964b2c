#pragma once

#include <cstdint>
#include <vector>

namespace linrem {

struct Ap3Count {
  /// Ordered triples (x1, x2, x3) from S with x1 + x3 = 2 x2.
  std::uint64_t total = 0;
  /// Those with x1 != x3.
  std::uint64_t nontrivial = 0;
};

/// S ascending and duplicate free.
Ap3Count count_ap3(const std::vector<std::uint64_t>& S);

/// Largest 3-AP-free subset of {1..m}, lexicographically least among the
/// largest. Throws SearchBudgetExceeded for m > 30.
std::vector<std::uint64_t> max_ap3_free(std::uint64_t m);

/// Integers whose base-(2 base - 1) digits are all below `base` and whose digit
/// vector has the most popular non-zero squared norm (smallest norm on ties).
/// Adding two such numbers never carries, which makes the set 3-AP-free.
std::vector<std::uint64_t> behrend_sphere(std::uint64_t base, std::uint64_t dim);

struct LowerBoundInstance {
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::vector<std::uint64_t> X;
  std::vector<std::uint64_t> S;
  Ap3Count ap3;
  /// Every 3-AP of S lies in one residue class mod 2m.
  bool no_carry = true;
  /// ap3.total <= |S|^3 / m^2, compared as ap3.total * m^2 <= |S|^3.
  bool within_bound = true;
};

/// S = { x in [1, n] : x mod 2m in X }. Throws IndivisibleAmbient unless 2m | n
/// and InvalidArgument unless X is a subset of [1, m].
LowerBoundInstance build_lower_bound_instance(std::uint64_t n, std::uint64_t m, std::vector<std::uint64_t> X);

}  // namespace linrem
