#include "linrem/corpus.hpp"

#include "linrem/error.hpp"
#include "linrem/hrep.hpp"
#include "linrem/solutions.hpp"

namespace linrem {

LinearSystem random_system(Rng& rng, std::uint32_t q, std::size_t ell, std::size_t p) {
  const PrimeField f(q);
  for (;;) {
    Matrix M(ell, p);
    for (std::size_t i = 0; i < ell; ++i) {
      for (std::size_t j = 0; j < p; ++j) M(i, j) = rng.chance(1, 3) ? 0 : static_cast<Residue>(rng.below(q));
    }
    if (rank(f, M) < ell) continue;
    std::vector<Residue> b(ell);
    for (auto& v : b) v = static_cast<Residue>(rng.below(q));
    return LinearSystem(f, std::move(M), std::move(b));
  }
}

SetFamily random_family(Rng& rng, std::uint32_t q, std::size_t p) {
  std::vector<std::vector<Residue>> sets(p);
  for (auto& s : sets) {
    const auto roll = rng.below(8);
    if (roll == 0) continue;
    for (Residue v = 0; v < q; ++v) {
      if (roll == 1 || rng.chance(1, 2)) s.push_back(v);
    }
  }
  return SetFamily(q, std::move(sets));
}

std::vector<CorpusInstance> make_corpus(std::size_t count, std::uint64_t seed, const CorpusOptions& options) {
  Rng rng(seed);
  std::vector<CorpusInstance> out;
  while (out.size() < count) {
    const std::uint32_t q = options.fields[rng.below(options.fields.size())];
    const std::size_t ell = 1 + rng.below(options.max_ell);
    // Each row needs two free non-zeros besides its identity column.
    const std::size_t min_p = ell + 2;
    if (min_p > options.max_p) continue;
    const std::size_t p = min_p + rng.below(options.max_p - min_p + 1);
    const LinearSystem sys = random_system(rng, q, ell, p);
    std::optional<NormalizedSystem> ns;
    try {
      ns = normalize(sys);
    } catch (const Error&) {
      continue;
    }
    const std::uint64_t per = checked_pow(q, ns->r - 1);
    for (;;) {
      SetFamily sets = random_family(rng, q, p);
      if (count_solutions(*ns, sets) * per <= options.max_copies) {
        out.push_back({std::move(*ns), std::move(sets)});
        break;
      }
    }
  }
  return out;
}

}  // namespace linrem
