#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "linrem/hrep.hpp"
#include "linrem/linsys.hpp"
#include "linrem/set_family.hpp"

namespace linrem {

enum class CopyMode {
  /// One vertex per part, edges checked as soon as their parts are fixed.
  PerPart,
  /// Injective embeddings of the template grown edge by edge from the host's
  /// edges, with no assumption about parts; image vertex sets are deduplicated.
  Naive,
};

inline constexpr std::uint64_t kNaiveGuard = 1'000'000;

struct CopyEnumeration {
  /// Vertex sets spanning a colored copy, each sorted; the list is sorted.
  std::vector<std::vector<VertexId>> copies;
  /// Naive mode: sets among `copies` that miss some part or hit one twice.
  std::uint64_t off_part = 0;
};

/// Naive mode throws SearchBudgetExceeded when n^k > guard.
CopyEnumeration enumerate_copies(const Host& host, const Template& tmpl, CopyMode mode, unsigned workers = 1,
                                 std::uint64_t guard = kNaiveGuard);

struct CheckEntry {
  std::string name;
  bool pass = true;
  std::string witness;
};

CheckEntry check_simple(const Host& host);
CheckEntry check_coefficients(const NormalizedSystem& ns, const CoefficientTables& coeffs);

/// The color-d_i edge on (x outside I_i, y_j for j in W_i, y_{m_i})
/// exists iff the recovered s_j together with some s in S_{d_i} satisfy
/// equation i, and then its label is that s. Throws SearchBudgetExceeded when
/// n^r > guard.
CheckEntry check_edge_equation(const Host& host, const NormalizedSystem& ns, const CoefficientTables& coeffs,
                               const SetFamily& sets, std::size_t i, std::uint64_t guard = kNaiveGuard);

struct VerificationOptions {
  CopyMode mode = CopyMode::PerPart;
  unsigned workers = 1;
  std::uint64_t guard = kNaiveGuard;
};

struct VerificationReport {
  std::vector<CheckEntry> checks;
  std::uint64_t edges = 0;
  std::uint64_t solutions = 0;
  std::uint64_t copies = 0;
  double seconds = 0;

  bool all_pass() const;
  const CheckEntry* find(const std::string& name) const;
  /// Timing is left out so the text is reproducible.
  std::string to_text() const;
};

/// `sets` in original column order throughout.
VerificationReport check_representation(const NormalizedSystem& ns, const CoefficientTables& coeffs,
                                        const SetFamily& sets, const VerificationOptions& options = {});
/// Same checks against a supplied host (fault injection).
VerificationReport check_representation(const Host& host, const NormalizedSystem& ns,
                                        const CoefficientTables& coeffs, const SetFamily& sets,
                                        const VerificationOptions& options = {});

}  // namespace linrem
