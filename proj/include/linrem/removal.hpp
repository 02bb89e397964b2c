#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "linrem/hrep.hpp"
#include "linrem/linsys.hpp"
#include "linrem/random.hpp"
#include "linrem/set_family.hpp"
#include "linrem/solutions.hpp"

namespace linrem {

inline constexpr std::size_t kDefaultCopyGuard = 10000;

/// Exact minimum set of edges meeting every copy (branch and bound with a
/// disjoint-packing lower bound). Ascending edge ids. Throws
/// SearchBudgetExceeded when there are more than `guard` copies.
std::vector<EdgeId> min_copy_hitting_set(const std::vector<ColoredCopy>& copies,
                                         std::size_t guard = kDefaultCopyGuard);

struct Translation {
  SetFamily sets;                            // original column order
  std::vector<std::vector<Residue>> removed;  // per original column
  std::uint64_t threshold_numerator = 0;     // n^{r-1}; s goes when p * count >= this
};

/// Drops s from S_i when E holds at least n^{r-1}/p edges of color i labeled
/// s. Duplicate ids in E count once. Throws EdgeNotInHost.
Translation translate_edge_deletion(const Host& host, const NormalizedSystem& ns, std::span<const EdgeId> E,
                                    const SetFamily& sets);

struct EpsDeltaRecord {
  std::uint32_t n = 0;
  double eps = 0;
  double delta = 0;
  std::uint64_t solutions = 0;
  std::size_t budget = 0;
};

/// "n,eps,delta" with shortest round-trip decimals.
std::string to_csv(const EpsDeltaRecord& record);

using FamilyGenerator = std::function<SetFamily(Rng&)>;

/// Independent uniform subsets: each element of F_q is kept with probability
/// num/den, then sets are trimmed to at most max_size elements.
FamilyGenerator random_subfamily_generator(std::uint32_t q, std::size_t arity, std::uint64_t num,
                                           std::uint64_t den, std::size_t max_size);

/// One record per trial: eps = T / n^{p-ell}, delta = (per-set-max budget) / n.
std::vector<EpsDeltaRecord> epsdelta_scan(const LinearSystem& sys, const FamilyGenerator& generator,
                                          std::size_t trials, std::uint64_t seed,
                                          std::size_t guard = kDefaultRemovalGuard);

}  // namespace linrem
