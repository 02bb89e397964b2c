#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "linrem/linsys.hpp"
#include "linrem/random.hpp"
#include "linrem/set_family.hpp"

namespace linrem {

/// Full-rank ell x p system over F_q; each entry is zero with probability 1/3.
LinearSystem random_system(Rng& rng, std::uint32_t q, std::size_t ell, std::size_t p);

/// Each set is empty with probability 1/8, full with probability 1/8, and
/// otherwise keeps each residue with probability 1/2.
SetFamily random_family(Rng& rng, std::uint32_t q, std::size_t p);

struct CorpusInstance {
  NormalizedSystem ns;
  SetFamily sets;  // original column order
};

struct CorpusOptions {
  std::vector<std::uint32_t> fields{5, 7, 11};
  std::size_t max_p = 5;
  std::size_t max_ell = 2;
  /// Families are redrawn while T * n^{r-1} (the copy count) exceeds this.
  std::uint64_t max_copies = 200'000;
};

/// Systems are drawn until normalize accepts them (every row of the identity
/// form has at least three non-zero entries). Deterministic in the seed.
std::vector<CorpusInstance> make_corpus(std::size_t count, std::uint64_t seed, const CorpusOptions& options = {});

}  // namespace linrem
