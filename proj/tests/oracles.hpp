#pragma once
// Brute-force references for the unit and acceptance tests. Nothing here calls
// into the library's arithmetic: residues are plain int64 reduced with %, and
// every search is a flat enumeration.

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

namespace oracle {

using Tuple = std::vector<std::int64_t>;
using Rows = std::vector<std::vector<std::int64_t>>;

inline std::int64_t mod(std::int64_t a, std::int64_t q) { return ((a % q) + q) % q; }

inline bool is_prime(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t d = 2; d < x && d * d <= x; ++d) {
    if (x % d == 0) return false;
  }
  return true;
}

inline std::int64_t inverse(std::int64_t a, std::int64_t q) {
  for (std::int64_t x = 1; x < q; ++x) {
    if (mod(a * x, q) == 1) return x;
  }
  return -1;
}

inline bool satisfies(const Rows& M, const Tuple& b, std::int64_t q, const Tuple& x) {
  for (std::size_t i = 0; i < M.size(); ++i) {
    std::int64_t acc = 0;
    for (std::size_t j = 0; j < x.size(); ++j) acc += M[i][j] * x[j];
    if (mod(acc - b[i], q) != 0) return false;
  }
  return true;
}

/// Solutions with x_j ranging over sets[j], lexicographic.
inline std::vector<Tuple> solutions(const Rows& M, const Tuple& b, std::int64_t q,
                                    const std::vector<std::vector<std::int64_t>>& sets) {
  std::vector<Tuple> out;
  const std::size_t p = sets.size();
  for (const auto& s : sets) {
    if (s.empty()) return out;
  }
  std::vector<std::size_t> idx(p, 0);
  Tuple x(p);
  for (;;) {
    for (std::size_t j = 0; j < p; ++j) x[j] = sets[j][idx[j]];
    if (satisfies(M, b, q, x)) out.push_back(x);
    std::size_t j = p;
    while (j > 0 && ++idx[j - 1] == sets[j - 1].size()) idx[--j] = 0;
    if (j == 0) break;
  }
  return out;
}

inline std::vector<std::vector<std::int64_t>> full_sets(std::int64_t q, std::size_t p) {
  std::vector<std::int64_t> all(static_cast<std::size_t>(q));
  for (std::int64_t v = 0; v < q; ++v) all[static_cast<std::size_t>(v)] = v;
  return std::vector<std::vector<std::int64_t>>(p, all);
}

/// Leibniz expansion mod q.
inline std::int64_t determinant(const Rows& A, std::int64_t q) {
  const std::size_t n = A.size();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::int64_t det = 0;
  do {
    std::int64_t term = 1;
    for (std::size_t i = 0; i < n; ++i) term = mod(term * A[i][perm[i]], q);
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    }
    det = mod(det + (inversions % 2 ? -term : term), q);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

struct Ap3 {
  std::uint64_t total = 0, nontrivial = 0;
};

inline Ap3 count_ap3(const std::vector<std::uint64_t>& S) {
  Ap3 c;
  for (auto a : S) {
    for (auto b : S) {
      for (auto d : S) {
        if (a + d == 2 * b) {
          ++c.total;
          if (a != d) ++c.nontrivial;
        }
      }
    }
  }
  return c;
}

/// Largest 3-AP-free subset of [1, m], lexicographically least; scans all 2^m.
inline std::vector<std::uint64_t> max_ap3_free(std::uint64_t m) {
  std::vector<std::uint64_t> best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<std::uint64_t> S;
    for (std::uint64_t v = 1; v <= m; ++v) {
      if (mask >> (v - 1) & 1) S.push_back(v);
    }
    if (count_ap3(S).nontrivial != 0) continue;
    if (S.size() > best.size() || (S.size() == best.size() && S < best)) best = S;
  }
  return best;
}

struct Removal {
  std::size_t budget = 0, total = 0;
};

/// Minimum removal over all 2^{sum |S_i|} choices. per_set_max: minimizes
/// (budget, total) lexicographically; otherwise the total.
inline Removal min_removal(const std::vector<Tuple>& sols, const std::vector<std::vector<std::int64_t>>& sets,
                           bool per_set_max) {
  std::vector<std::pair<std::size_t, std::int64_t>> elems;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (auto v : sets[i]) elems.emplace_back(i, v);
  }
  Removal best{SIZE_MAX, SIZE_MAX};
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << elems.size()); ++mask) {
    std::set<std::pair<std::size_t, std::int64_t>> gone;
    std::vector<std::size_t> per(sets.size(), 0);
    for (std::size_t e = 0; e < elems.size(); ++e) {
      if (mask >> e & 1) {
        gone.insert(elems[e]);
        ++per[elems[e].first];
      }
    }
    bool free = true;
    for (const auto& s : sols) {
      bool hit = false;
      for (std::size_t i = 0; i < s.size() && !hit; ++i) hit = gone.count({i, s[i]}) != 0;
      if (!hit) {
        free = false;
        break;
      }
    }
    if (!free) continue;
    Removal r{*std::max_element(per.begin(), per.end()), gone.size()};
    const bool better = per_set_max ? std::pair(r.budget, r.total) < std::pair(best.budget, best.total)
                                    : r.total < best.total;
    if (better) best = r;
  }
  return best;
}

/// Smallest number of edges meeting every copy; tries all subsets by size.
inline std::size_t min_hitting(const std::vector<std::vector<std::uint32_t>>& copies) {
  std::vector<std::uint32_t> universe;
  for (const auto& c : copies) universe.insert(universe.end(), c.begin(), c.end());
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
  const std::size_t n = universe.size();
  for (std::size_t size = 0; size <= n; ++size) {
    std::vector<bool> pick(n, false);
    std::fill(pick.end() - static_cast<std::ptrdiff_t>(size), pick.end(), true);
    do {
      bool ok = true;
      for (const auto& c : copies) {
        bool hit = false;
        for (auto e : c) {
          const auto pos = std::lower_bound(universe.begin(), universe.end(), e) - universe.begin();
          hit = hit || pick[static_cast<std::size_t>(pos)];
        }
        if (!hit) {
          ok = false;
          break;
        }
      }
      if (ok) return size;
    } while (std::next_permutation(pick.begin(), pick.end()));
  }
  return n;
}

}  // namespace oracle
