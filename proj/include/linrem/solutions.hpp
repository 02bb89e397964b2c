#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "linrem/field.hpp"
#include "linrem/linsys.hpp"
#include "linrem/set_family.hpp"

namespace linrem {

/// A p-tuple in original coordinates with x_i in S_i and Mx = b.
using Solution = std::vector<Residue>;

// All functions below take the family in the original column order of the
// system the caller parsed; NormalizedSystem overloads permute internally.

/// Counts by enumerating the free coordinates and solving the diagonal block
/// for the rest. Free columns that are zero in every row are not enumerated;
/// they multiply the count by |S_j|.
std::uint64_t count_solutions(const NormalizedSystem& ns, const SetFamily& sets, unsigned workers = 1);
/// Same route through the identity form; accepts systems with degenerate rows.
std::uint64_t count_solutions(const LinearSystem& sys, const SetFamily& sets, unsigned workers = 1);
/// Independent check: walks all of S_1 x ... x S_p.
std::uint64_t count_solutions_naive(const LinearSystem& sys, const SetFamily& sets);
/// T of the system a reduction came from, computed from the reduced instance.
std::uint64_t count_solutions(const Reduction& reduction, unsigned workers = 1);

bool is_free(const NormalizedSystem& ns, const SetFamily& sets);
bool is_free(const LinearSystem& sys, const SetFamily& sets);

/// Every solution, sorted lexicographically (original coordinates).
std::vector<Solution> list_solutions(const NormalizedSystem& ns, const SetFamily& sets);
std::vector<Solution> list_solutions(const LinearSystem& sys, const SetFamily& sets);

enum class RemovalObjective {
  /// min max_i |removed_i|, then min total among those.
  PerSetMax,
  /// min sum_i |removed_i|.
  Total,
};

struct RemovalResult {
  std::vector<std::vector<Residue>> removed;
  std::size_t budget = 0;
  std::size_t total = 0;

  static RemovalResult from_removed(std::vector<std::vector<Residue>> removed);
};

inline constexpr std::size_t kDefaultRemovalGuard = 24;

/// Exact minimum removal making the family (M,b)-free, by branch and bound
/// over the elements of the solution tuples. Throws SearchBudgetExceeded when
/// the instance has solutions and sum |S_i| > guard.
RemovalResult removal_distance(const NormalizedSystem& ns, const SetFamily& sets,
                               RemovalObjective objective = RemovalObjective::PerSetMax,
                               std::size_t guard = kDefaultRemovalGuard);
RemovalResult removal_distance(const LinearSystem& sys, const SetFamily& sets,
                               RemovalObjective objective = RemovalObjective::PerSetMax,
                               std::size_t guard = kDefaultRemovalGuard);

struct TwoVarRemoval {
  enum class Option {
    /// Empty the smallest set of an unknown with zero coefficient.
    EmptyZeroColumn,
    /// Remove the first unknown's value of every solution pair.
    PairComponents,
  };
  Option option = Option::PairComponents;
  RemovalResult result;
};

/// Single equation a_u x_u + a_v x_v = b with every other coefficient zero.
/// Throws InvalidArgument if the system has another shape.
TwoVarRemoval two_var_removal(const LinearSystem& sys, const SetFamily& sets);

}  // namespace linrem
