#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "linrem/field.hpp"

namespace linrem {

/// p subsets S_1..S_p of F_q, one per unknown. Each set is kept sorted and
/// duplicate-free with an O(1) membership table alongside.
class SetFamily {
 public:
  SetFamily() = default;
  /// Sorts each set; throws InvalidArgument on duplicates or values >= q.
  SetFamily(std::uint32_t q, std::vector<std::vector<Residue>> sets);

  static SetFamily full(std::uint32_t q, std::size_t arity);

  std::uint32_t q() const noexcept { return q_; }
  std::size_t arity() const noexcept { return sets_.size(); }
  const std::vector<Residue>& operator[](std::size_t i) const { return sets_[i]; }
  const std::vector<std::vector<Residue>>& sets() const noexcept { return sets_; }

  bool contains(std::size_t i, Residue v) const noexcept {
    return v < q_ && member_[i * q_ + v] != 0;
  }
  std::size_t size(std::size_t i) const noexcept { return sets_[i].size(); }
  std::size_t total_size() const noexcept;
  bool any_empty() const noexcept;

  /// Family with removed[i] taken out of S_i (elements not present are ignored).
  SetFamily without(const std::vector<std::vector<Residue>>& removed) const;
  /// result[k] = S_{order[k]}.
  SetFamily reordered(std::span<const std::size_t> order) const;
  /// Inverse of reordered: result[order[k]] = S_k.
  SetFamily scattered(std::span<const std::size_t> order) const;

  bool operator==(const SetFamily& other) const {
    return q_ == other.q_ && sets_ == other.sets_;
  }

 private:
  std::uint32_t q_ = 0;
  std::vector<std::vector<Residue>> sets_;
  std::vector<std::uint8_t> member_;
};

}  // namespace linrem
