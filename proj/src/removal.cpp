#include "linrem/removal.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <map>

#include "linrem/error.hpp"

namespace linrem {

namespace {

// Copies are reduced to their edge lists; edges are renumbered densely.
class CopyHitting {
 public:
  explicit CopyHitting(const std::vector<ColoredCopy>& copies) {
    std::map<EdgeId, std::size_t> dense;
    for (const auto& c : copies) {
      std::vector<std::size_t> row;
      for (EdgeId e : c.edges) {
        auto [it, fresh] = dense.try_emplace(e, ids_.size());
        if (fresh) ids_.push_back(e);
        row.push_back(it->second);
      }
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
      copies_.push_back(std::move(row));
    }
    std::sort(copies_.begin(), copies_.end());
    copies_.erase(std::unique(copies_.begin(), copies_.end()), copies_.end());
    chosen_.assign(ids_.size(), 0);
  }

  std::vector<EdgeId> solve() {
    best_ = greedy();
    best_size_ = best_.size();
    current_.clear();
    search();
    std::vector<EdgeId> out;
    for (std::size_t e : best_) out.push_back(ids_[e]);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  bool hit(const std::vector<std::size_t>& copy) const {
    return std::any_of(copy.begin(), copy.end(), [&](std::size_t e) { return chosen_[e] != 0; });
  }

  std::vector<std::size_t> greedy() {
    std::vector<std::size_t> picked;
    for (;;) {
      std::vector<std::size_t> score(ids_.size(), 0);
      bool open = false;
      for (const auto& c : copies_) {
        if (hit(c)) continue;
        open = true;
        for (std::size_t e : c) ++score[e];
      }
      if (!open) break;
      const std::size_t e = static_cast<std::size_t>(std::max_element(score.begin(), score.end()) - score.begin());
      chosen_[e] = 1;
      picked.push_back(e);
    }
    for (std::size_t e : picked) chosen_[e] = 0;
    return picked;
  }

  std::size_t packing_bound() const {
    std::vector<std::uint8_t> used(ids_.size(), 0);
    std::size_t bound = 0;
    for (const auto& c : copies_) {
      if (hit(c)) continue;
      if (std::any_of(c.begin(), c.end(), [&](std::size_t e) { return used[e] != 0; })) continue;
      for (std::size_t e : c) used[e] = 1;
      ++bound;
    }
    return bound;
  }

  void search() {
    const std::vector<std::size_t>* open = nullptr;
    for (const auto& c : copies_) {
      if (!hit(c)) {
        open = &c;
        break;
      }
    }
    if (open == nullptr) {
      if (current_.size() < best_size_) {
        best_size_ = current_.size();
        best_ = current_;
      }
      return;
    }
    if (current_.size() + packing_bound() >= best_size_) return;
    // Try edges of the open copy, most frequent among unhit copies first.
    std::vector<std::pair<std::size_t, std::size_t>> order;
    for (std::size_t e : *open) {
      std::size_t freq = 0;
      for (const auto& c : copies_) {
        if (!hit(c) && std::find(c.begin(), c.end(), e) != c.end()) ++freq;
      }
      order.emplace_back(freq, e);
    }
    std::sort(order.begin(), order.end(), [](auto a, auto b) { return a.first != b.first ? a.first > b.first : a.second < b.second; });
    for (auto [freq, e] : order) {
      chosen_[e] = 1;
      current_.push_back(e);
      search();
      current_.pop_back();
      chosen_[e] = 0;
    }
  }

  std::vector<EdgeId> ids_;
  std::vector<std::vector<std::size_t>> copies_;
  std::vector<std::uint8_t> chosen_;
  std::vector<std::size_t> current_, best_;
  std::size_t best_size_ = 0;
};

}  // namespace

std::vector<EdgeId> min_copy_hitting_set(const std::vector<ColoredCopy>& copies, std::size_t guard) {
  if (copies.size() > guard) {
    throw Error(ErrorKind::SearchBudgetExceeded,
                std::to_string(copies.size()) + " copies exceed the guard of " + std::to_string(guard));
  }
  if (copies.empty()) return {};
  return CopyHitting(copies).solve();
}

Translation translate_edge_deletion(const Host& host, const NormalizedSystem& ns, std::span<const EdgeId> E,
                                    const SetFamily& sets) {
  std::vector<EdgeId> unique(E.begin(), E.end());
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());

  std::map<std::pair<std::size_t, Residue>, std::uint64_t> tally;
  for (EdgeId id : unique) {
    if (!host.alive(id)) throw Error(ErrorKind::EdgeNotInHost, "edge " + std::to_string(id));
    const EdgeView e = host.edge(id);
    ++tally[{e.color, e.label}];
  }

  Translation out{sets, std::vector<std::vector<Residue>>(sets.arity()), 0};
  out.threshold_numerator = checked_pow(host.n(), host.uniformity() - 1);
  const std::uint64_t p = host.colors();
  for (const auto& [key, count] : tally) {
    if (p * count >= out.threshold_numerator) out.removed[ns.perm[key.first]].push_back(key.second);
  }
  out.sets = sets.without(out.removed);
  return out;
}

std::string to_csv(const EpsDeltaRecord& record) {
  auto shortest = [](double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
  };
  return std::to_string(record.n) + "," + shortest(record.eps) + "," + shortest(record.delta);
}

FamilyGenerator random_subfamily_generator(std::uint32_t q, std::size_t arity, std::uint64_t num, std::uint64_t den,
                                           std::size_t max_size) {
  return [=](Rng& rng) {
    std::vector<std::vector<Residue>> sets(arity);
    for (auto& s : sets) {
      for (Residue v = 0; v < q; ++v) {
        if (rng.chance(num, den)) s.push_back(v);
      }
      rng.shuffle(s);
      if (s.size() > max_size) s.resize(max_size);
    }
    return SetFamily(q, std::move(sets));
  };
}

std::vector<EpsDeltaRecord> epsdelta_scan(const LinearSystem& sys, const FamilyGenerator& generator,
                                          std::size_t trials, std::uint64_t seed, std::size_t guard) {
  Rng rng(seed);
  const std::uint32_t n = sys.field().q();
  const double cells = static_cast<double>(checked_pow(n, sys.p() - sys.ell()));
  std::vector<EpsDeltaRecord> out;
  for (std::size_t t = 0; t < trials; ++t) {
    const SetFamily sets = generator(rng);
    EpsDeltaRecord rec;
    rec.n = n;
    rec.solutions = count_solutions(sys, sets);
    rec.budget = removal_distance(sys, sets, RemovalObjective::PerSetMax, guard).budget;
    rec.eps = static_cast<double>(rec.solutions) / cells;
    rec.delta = static_cast<double>(rec.budget) / n;
    out.push_back(rec);
  }
  return out;
}

}  // namespace linrem
