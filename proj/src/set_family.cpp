#include "linrem/set_family.hpp"

#include <algorithm>
#include <string>

#include "linrem/error.hpp"

namespace linrem {

SetFamily::SetFamily(std::uint32_t q, std::vector<std::vector<Residue>> sets)
    : q_(q), sets_(std::move(sets)), member_(sets_.size() * std::size_t{q}, 0) {
  for (std::size_t i = 0; i < sets_.size(); ++i) {
    auto& s = sets_[i];
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
      throw Error(ErrorKind::InvalidArgument, "duplicate element in set " + std::to_string(i + 1));
    }
    for (Residue v : s) {
      if (v >= q) {
        throw Error(ErrorKind::InvalidArgument,
                    "element " + std::to_string(v) + " outside F_" + std::to_string(q));
      }
      member_[i * q + v] = 1;
    }
  }
}

SetFamily SetFamily::full(std::uint32_t q, std::size_t arity) {
  std::vector<Residue> all(q);
  for (std::uint32_t v = 0; v < q; ++v) all[v] = v;
  return SetFamily(q, std::vector<std::vector<Residue>>(arity, all));
}

std::size_t SetFamily::total_size() const noexcept {
  std::size_t total = 0;
  for (const auto& s : sets_) total += s.size();
  return total;
}

bool SetFamily::any_empty() const noexcept {
  return std::any_of(sets_.begin(), sets_.end(), [](const auto& s) { return s.empty(); });
}

SetFamily SetFamily::without(const std::vector<std::vector<Residue>>& removed) const {
  auto sets = sets_;
  for (std::size_t i = 0; i < removed.size() && i < sets.size(); ++i) {
    std::erase_if(sets[i], [&](Residue v) {
      return std::find(removed[i].begin(), removed[i].end(), v) != removed[i].end();
    });
  }
  return SetFamily(q_, std::move(sets));
}

SetFamily SetFamily::reordered(std::span<const std::size_t> order) const {
  std::vector<std::vector<Residue>> sets;
  sets.reserve(order.size());
  for (std::size_t k : order) sets.push_back(sets_.at(k));
  return SetFamily(q_, std::move(sets));
}

SetFamily SetFamily::scattered(std::span<const std::size_t> order) const {
  std::vector<std::vector<Residue>> sets(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) sets.at(order[k]) = sets_.at(k);
  return SetFamily(q_, std::move(sets));
}

}  // namespace linrem
