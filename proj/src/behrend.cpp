#include "linrem/behrend.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <unordered_set>

#include "linrem/error.hpp"

namespace linrem {

Ap3Count count_ap3(const std::vector<std::uint64_t>& S) {
  Ap3Count c;
  std::unordered_set<std::uint64_t> member(S.begin(), S.end());
  for (std::uint64_t x1 : S) {
    for (std::uint64_t x2 : S) {
      if (2 * x2 < x1) continue;
      if (member.count(2 * x2 - x1)) {
        ++c.total;
        if (2 * x2 - x1 != x1) ++c.nontrivial;
      }
    }
  }
  return c;
}

namespace {

struct ApFreeSearch {
  std::uint64_t m;
  std::vector<std::uint64_t> current, best;
  std::vector<std::uint8_t> in;

  bool extends(std::uint64_t v) const {
    // v is the largest element so far, so it can only end a progression.
    for (std::uint64_t a : current) {
      const std::uint64_t mid2 = a + v;
      if (mid2 % 2 == 0 && in[mid2 / 2]) return false;
    }
    return true;
  }

  void run(std::uint64_t v) {
    if (current.size() + (m - v + 1) <= best.size()) return;
    if (v > m) {
      best = current;
      return;
    }
    if (extends(v)) {
      current.push_back(v);
      in[v] = 1;
      run(v + 1);
      in[v] = 0;
      current.pop_back();
    }
    run(v + 1);
  }
};

}  // namespace

std::vector<std::uint64_t> max_ap3_free(std::uint64_t m) {
  if (m > 30) throw Error(ErrorKind::SearchBudgetExceeded, "exhaustive 3-AP-free search is limited to m <= 30");
  ApFreeSearch s{m, {}, {}, std::vector<std::uint8_t>(m + 1, 0)};
  s.run(1);
  return s.best;
}

std::vector<std::uint64_t> behrend_sphere(std::uint64_t base, std::uint64_t dim) {
  if (base < 2 || dim < 1) throw Error(ErrorKind::InvalidArgument, "behrend_sphere needs base >= 2 and dim >= 1");
  const std::uint64_t radix = 2 * base - 1;
  std::map<std::uint64_t, std::vector<std::uint64_t>> by_norm;
  std::vector<std::uint64_t> digits(dim, 0);
  for (;;) {
    std::uint64_t norm = 0, value = 0;
    for (std::size_t i = dim; i-- > 0;) {
      norm += digits[i] * digits[i];
      value = value * radix + digits[i];
    }
    if (norm != 0) by_norm[norm].push_back(value);
    std::size_t j = 0;
    while (j < dim && ++digits[j] == base) digits[j++] = 0;
    if (j == dim) break;
  }
  const std::vector<std::uint64_t>* best = nullptr;
  for (const auto& [norm, values] : by_norm) {
    if (best == nullptr || values.size() > best->size()) best = &values;
  }
  std::vector<std::uint64_t> out = *best;
  std::sort(out.begin(), out.end());
  return out;
}

LowerBoundInstance build_lower_bound_instance(std::uint64_t n, std::uint64_t m, std::vector<std::uint64_t> X) {
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "m must be positive");
  if (n % (2 * m) != 0) {
    throw Error(ErrorKind::IndivisibleAmbient, "2m=" + std::to_string(2 * m) + " does not divide n=" + std::to_string(n));
  }
  std::sort(X.begin(), X.end());
  X.erase(std::unique(X.begin(), X.end()), X.end());
  for (std::uint64_t x : X) {
    if (x < 1 || x > m) throw Error(ErrorKind::InvalidArgument, "X must lie in [1, m]");
  }
  LowerBoundInstance inst;
  inst.n = n;
  inst.m = m;
  inst.X = X;
  for (std::uint64_t x = 1; x <= n; ++x) {
    if (std::binary_search(X.begin(), X.end(), x % (2 * m))) inst.S.push_back(x);
  }
  inst.ap3 = count_ap3(inst.S);
  std::unordered_set<std::uint64_t> member(inst.S.begin(), inst.S.end());
  for (std::uint64_t x1 : inst.S) {
    for (std::uint64_t x2 : inst.S) {
      if (2 * x2 < x1 || !member.count(2 * x2 - x1)) continue;
      const std::uint64_t x3 = 2 * x2 - x1;
      if (x1 % (2 * m) != x2 % (2 * m) || x3 % (2 * m) != x2 % (2 * m)) inst.no_carry = false;
    }
  }
  const std::uint64_t size = inst.S.size();
  inst.within_bound = inst.ap3.total * m * m <= size * size * size;
  return inst;
}

}  // namespace linrem
