#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "linrem/field.hpp"
#include "linrem/set_family.hpp"

namespace linrem {

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

/// Dense row-major matrix of residues.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Residue> data);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Residue& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Residue operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const Residue> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<Residue> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Residue> data_;
};

std::size_t rank(const PrimeField& field, Matrix m);
Residue determinant(const PrimeField& field, Matrix m);

/// Mx = b over F_q with M of shape ell x p, 1 <= ell < p and rank(M) = ell.
class LinearSystem {
 public:
  /// Throws InvalidArgument on shape errors and RankDeficient when rank(M) < ell.
  LinearSystem(PrimeField field, Matrix M, std::vector<Residue> b);

  const PrimeField& field() const noexcept { return field_; }
  std::size_t ell() const noexcept { return M_.rows(); }
  std::size_t p() const noexcept { return M_.cols(); }
  const Matrix& M() const noexcept { return M_; }
  const std::vector<Residue>& b() const noexcept { return b_; }

  /// Mx = b, by direct evaluation.
  bool satisfied_by(std::span<const Residue> x) const;
  std::size_t nonzeros_in_row(std::size_t i) const;

  bool operator==(const LinearSystem&) const = default;

 private:
  PrimeField field_;
  Matrix M_;
  std::vector<Residue> b_;
};

/// Equivalent system whose last ell columns form the identity, plus the column
/// order used. Column k of `system` is column perm[k] of the input.
struct IdentityForm {
  LinearSystem system;
  std::vector<std::size_t> perm;
};

/// Picks ell independent columns by a right-to-left greedy scan, moves them to
/// the end (relative order kept) and row-reduces them to the identity.
IdentityForm identity_form(const LinearSystem& sys);

/// Canonical form used by the hypergraph construction. All indices are 0-based:
/// free columns are 0..p-ell-1, diagonal-block columns p-ell..p-1, and I_i are
/// subsets of 0..r-2.
struct NormalizedSystem {
  LinearSystem system;
  std::vector<std::size_t> perm;
  std::vector<std::size_t> m;
  std::vector<std::vector<std::size_t>> W;
  std::vector<std::size_t> d;
  std::vector<std::vector<std::size_t>> I;
  std::size_t r = 0;
  std::size_t k = 0;

  std::size_t ell() const noexcept { return system.ell(); }
  std::size_t p() const noexcept { return system.p(); }
  std::size_t free_count() const noexcept { return system.p() - system.ell(); }
  const PrimeField& field() const noexcept { return system.field(); }

  /// y[k] = x[perm[k]].
  std::vector<Residue> to_normalized(std::span<const Residue> x) const;
  std::vector<Residue> to_original(std::span<const Residue> y) const;
  SetFamily to_normalized(const SetFamily& sets) const { return sets.reordered(perm); }
  SetFamily to_original(const SetFamily& sets) const { return sets.scattered(perm); }
};

/// Throws NoFreeColumns / EmptyW (1-based row in the message) when the
/// identity form has a row with fewer than three non-zero entries.
NormalizedSystem normalize(const LinearSystem& sys);

enum class ReductionStatus { Reduced, TwoVarResidual, EmptyInstance, NoRows };
std::string_view to_string(ReductionStatus status);

enum class ReductionPolicy {
  /// A lone equation with two non-zero unknowns is kept (TwoVarResidual).
  StopAtTwoVarEquation,
  /// Such an equation is eliminated as well, leaving zero rows.
  EliminateAll,
};

/// One elimination. Column indices refer to the original system.
struct ReductionStep {
  enum class Kind {
    /// Row x_j = constant: x_j removed, requires constant in S_j.
    Pin,
    /// Row x_target = constant - coefficient * x_j: x_j removed and
    /// S_target <- S_target ∩ {constant - coefficient * s : s in S_j}.
    Substitute,
  };
  Kind kind = Kind::Pin;
  std::size_t row = 0;
  std::size_t removed_column = 0;
  std::size_t target_column = npos;
  Residue constant = 0;
  Residue coefficient = 0;
};

struct ReductionTrace {
  std::size_t original_arity = 0;
  std::vector<ReductionStep> steps;

  /// Extends a solution over `columns` (original indices) to all original
  /// unknowns by replaying the eliminations backwards.
  std::vector<Residue> lift(const PrimeField& field, std::span<const std::size_t> columns,
                            std::span<const Residue> reduced_solution) const;
};

struct Reduction {
  ReductionStatus status = ReductionStatus::Reduced;
  /// Present for Reduced and TwoVarResidual.
  std::optional<LinearSystem> system;
  /// One set per remaining column.
  SetFamily sets;
  /// Original index of each remaining column, ascending.
  std::vector<std::size_t> columns;
  ReductionTrace trace;
};

/// Eliminates rows with at most two non-zero entries (in identity form):
/// single-unknown rows before two-unknown rows, lowest row first within each
/// kind, re-deriving the identity form after every elimination.
Reduction reduce_degenerate(const LinearSystem& sys, const SetFamily& sets,
                            ReductionPolicy policy = ReductionPolicy::StopAtTwoVarEquation);

struct Instance {
  LinearSystem system;
  SetFamily sets;
};

/// Parses the line-oriented system file format. Throws SyntaxError (with the
/// 1-based line number) and RankDeficient.
Instance parse_instance(std::string_view text);
std::string format_instance(const LinearSystem& sys, const SetFamily& sets);

/// Integer system with entries bounded by c = max |M_ij|, |b_i|, moved into F_q
/// with q the smallest prime above c * p^2 * n.
struct Embedding {
  std::uint64_t c = 0;
  std::uint64_t q = 0;
  LinearSystem system;
};
Embedding embed_integer_system(const std::vector<std::vector<std::int64_t>>& M,
                               const std::vector<std::int64_t>& b, std::uint64_t n);

}  // namespace linrem
