#include "linrem/linsys.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "linrem/error.hpp"

namespace linrem {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Residue> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw Error(ErrorKind::InvalidArgument, "matrix data size does not match shape");
  }
}

namespace {

// Forward elimination in place; returns the rank and flips `sign` on swaps.
std::size_t eliminate(const PrimeField& f, Matrix& m, bool& sign_flipped) {
  std::size_t rank = 0;
  sign_flipped = false;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.rows() && m(pivot, c) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != rank) {
      std::swap_ranges(m.row(pivot).begin(), m.row(pivot).end(), m.row(rank).begin());
      sign_flipped = !sign_flipped;
    }
    Residue inv = f.inv(m(rank, c));
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      if (m(r, c) == 0) continue;
      Residue factor = f.mul(m(r, c), inv);
      for (std::size_t j = c; j < m.cols(); ++j) {
        m(r, j) = f.sub(m(r, j), f.mul(factor, m(rank, j)));
      }
    }
    ++rank;
  }
  return rank;
}

Matrix select_columns(const Matrix& m, std::span<const std::size_t> cols) {
  Matrix out(m.rows(), cols.size());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t k = 0; k < cols.size(); ++k) out(r, k) = m(r, cols[k]);
  }
  return out;
}

}  // namespace

std::size_t rank(const PrimeField& field, Matrix m) {
  bool flipped = false;
  return eliminate(field, m, flipped);
}

Residue determinant(const PrimeField& field, Matrix m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::InvalidArgument, "determinant of non-square matrix");
  bool flipped = false;
  if (eliminate(field, m, flipped) < m.rows()) return 0;
  Residue det = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) det = field.mul(det, m(i, i));
  return flipped ? field.neg(det) : det;
}

LinearSystem::LinearSystem(PrimeField field, Matrix M, std::vector<Residue> b)
    : field_(field), M_(std::move(M)), b_(std::move(b)) {
  if (M_.rows() < 1 || M_.rows() >= M_.cols()) {
    throw Error(ErrorKind::InvalidArgument, "need 1 <= ell < p, got ell=" + std::to_string(M_.rows()) +
                                                " p=" + std::to_string(M_.cols()));
  }
  if (b_.size() != M_.rows()) throw Error(ErrorKind::InvalidArgument, "rhs length differs from ell");
  for (std::size_t i = 0; i < M_.rows(); ++i) {
    for (Residue v : M_.row(i)) {
      if (v >= field_.q()) throw Error(ErrorKind::InvalidArgument, "matrix entry not a canonical residue");
    }
    if (b_[i] >= field_.q()) throw Error(ErrorKind::InvalidArgument, "rhs entry not a canonical residue");
  }
  std::size_t rk = rank(field_, M_);
  if (rk < M_.rows()) {
    throw Error(ErrorKind::RankDeficient,
                "rank " + std::to_string(rk) + " < ell=" + std::to_string(M_.rows()));
  }
}

bool LinearSystem::satisfied_by(std::span<const Residue> x) const {
  for (std::size_t i = 0; i < ell(); ++i) {
    Residue acc = 0;
    for (std::size_t j = 0; j < p(); ++j) acc = field_.add(acc, field_.mul(M_(i, j), x[j]));
    if (acc != b_[i]) return false;
  }
  return true;
}

std::size_t LinearSystem::nonzeros_in_row(std::size_t i) const {
  auto row = M_.row(i);
  return static_cast<std::size_t>(std::count_if(row.begin(), row.end(), [](Residue v) { return v != 0; }));
}

IdentityForm identity_form(const LinearSystem& sys) {
  const auto& f = sys.field();
  const std::size_t ell = sys.ell(), p = sys.p();

  std::vector<std::size_t> chosen;
  for (std::size_t j = p; j-- > 0 && chosen.size() < ell;) {
    chosen.push_back(j);
    if (rank(f, select_columns(sys.M(), chosen)) < chosen.size()) chosen.pop_back();
  }
  std::sort(chosen.begin(), chosen.end());

  std::vector<std::size_t> perm;
  perm.reserve(p);
  for (std::size_t j = 0; j < p; ++j) {
    if (!std::binary_search(chosen.begin(), chosen.end(), j)) perm.push_back(j);
  }
  perm.insert(perm.end(), chosen.begin(), chosen.end());

  Matrix m = select_columns(sys.M(), perm);
  std::vector<Residue> b = sys.b();
  for (std::size_t c = 0; c < ell; ++c) {
    const std::size_t col = p - ell + c;
    std::size_t pivot = c;
    while (m(pivot, col) == 0) ++pivot;  // block is invertible, so a pivot exists
    if (pivot != c) {
      std::swap_ranges(m.row(pivot).begin(), m.row(pivot).end(), m.row(c).begin());
      std::swap(b[pivot], b[c]);
    }
    Residue inv = f.inv(m(c, col));
    for (auto& v : m.row(c)) v = f.mul(v, inv);
    b[c] = f.mul(b[c], inv);
    for (std::size_t r = 0; r < ell; ++r) {
      if (r == c || m(r, col) == 0) continue;
      Residue factor = m(r, col);
      for (std::size_t j = 0; j < p; ++j) m(r, j) = f.sub(m(r, j), f.mul(factor, m(c, j)));
      b[r] = f.sub(b[r], f.mul(factor, b[c]));
    }
  }
  return IdentityForm{LinearSystem(f, std::move(m), std::move(b)), std::move(perm)};
}

std::vector<Residue> NormalizedSystem::to_normalized(std::span<const Residue> x) const {
  std::vector<Residue> y(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) y[k] = x[perm[k]];
  return y;
}

std::vector<Residue> NormalizedSystem::to_original(std::span<const Residue> y) const {
  std::vector<Residue> x(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) x[perm[k]] = y[k];
  return x;
}

NormalizedSystem normalize(const LinearSystem& sys) {
  IdentityForm form = identity_form(sys);
  const auto& f = sys.field();
  const std::size_t ell = sys.ell(), p = sys.p(), free = p - ell;

  Matrix m = form.system.M();
  std::vector<Residue> b = form.system.b();
  std::vector<std::size_t> pivots(ell), diag(ell);
  std::vector<std::vector<std::size_t>> W(ell);

  for (std::size_t i = 0; i < ell; ++i) {
    std::size_t mi = npos;
    for (std::size_t j = free; j-- > 0;) {
      if (m(i, j) != 0) {
        mi = j;
        break;
      }
    }
    if (mi == npos) throw Error(ErrorKind::NoFreeColumns, "row " + std::to_string(i + 1));
    Residue scale = f.inv(m(i, mi));
    for (auto& v : m.row(i)) v = f.mul(v, scale);
    b[i] = f.mul(b[i], scale);
    for (std::size_t j = 0; j < mi; ++j) {
      if (m(i, j) != 0) W[i].push_back(j);
    }
    if (W[i].empty()) throw Error(ErrorKind::EmptyW, "row " + std::to_string(i + 1));
    pivots[i] = mi;
    for (std::size_t j = free; j < p; ++j) {
      if (m(i, j) != 0) diag[i] = j;
    }
  }

  std::vector<std::vector<std::size_t>> I(ell);
  std::size_t next = 0;
  for (std::size_t i = 0; i < ell; ++i) {
    for (std::size_t g = 0; g < W[i].size(); ++g) I[i].push_back(next++);
  }
  const std::size_t r = 1 + next;
  if (r > p * p) throw Error(ErrorKind::InvariantViolation, "uniformity exceeds p^2");

  return NormalizedSystem{LinearSystem(f, std::move(m), std::move(b)),
                          std::move(form.perm),
                          std::move(pivots),
                          std::move(W),
                          std::move(diag),
                          std::move(I),
                          r,
                          r - 1 + free};
}

std::string_view to_string(ReductionStatus status) {
  switch (status) {
    case ReductionStatus::Reduced: return "Reduced";
    case ReductionStatus::TwoVarResidual: return "TwoVarResidual";
    case ReductionStatus::EmptyInstance: return "EmptyInstance";
    case ReductionStatus::NoRows: return "NoRows";
  }
  return "Unknown";
}

std::vector<Residue> ReductionTrace::lift(const PrimeField& field, std::span<const std::size_t> columns,
                                          std::span<const Residue> reduced_solution) const {
  std::vector<Residue> x(original_arity, 0);
  for (std::size_t k = 0; k < columns.size(); ++k) x[columns[k]] = reduced_solution[k];
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    if (it->kind == ReductionStep::Kind::Pin) {
      x[it->removed_column] = it->constant;
    } else {
      x[it->removed_column] = field.div(field.sub(it->constant, x[it->target_column]), it->coefficient);
    }
  }
  return x;
}

Reduction reduce_degenerate(const LinearSystem& sys, const SetFamily& sets, ReductionPolicy policy) {
  const auto& f = sys.field();
  Reduction out;
  out.trace.original_arity = sys.p();
  out.columns.resize(sys.p());
  for (std::size_t j = 0; j < sys.p(); ++j) out.columns[j] = j;
  std::vector<std::vector<Residue>> cur_sets = sets.sets();
  LinearSystem cur = sys;

  auto finish = [&](ReductionStatus status, std::optional<LinearSystem> system) {
    out.status = status;
    out.system = std::move(system);
    out.sets = SetFamily(sets.q(), cur_sets);
    return out;
  };

  for (;;) {
    IdentityForm form = identity_form(cur);
    const std::size_t ell = cur.ell(), p = cur.p(), free = p - ell;
    const Matrix& m = form.system.M();

    // Single-unknown rows go first, then the lowest two-unknown row.
    std::size_t row = npos;
    for (std::size_t want = 1; want <= 2 && row == npos; ++want) {
      for (std::size_t i = 0; i < ell; ++i) {
        if (form.system.nonzeros_in_row(i) == want) {
          row = i;
          break;
        }
      }
    }
    if (row == npos) return finish(ReductionStatus::Reduced, cur);

    const std::size_t nz = form.system.nonzeros_in_row(row);
    if (nz == 2 && ell == 1 && policy == ReductionPolicy::StopAtTwoVarEquation) {
      return finish(ReductionStatus::TwoVarResidual, cur);
    }

    // Each identity-form row has its 1 in block column free + row.
    const std::size_t removed = form.perm[free + row];
    const Residue rhs = form.system.b()[row];
    ReductionStep step;
    step.row = row;
    step.removed_column = out.columns[removed];

    if (nz == 1) {
      step.kind = ReductionStep::Kind::Pin;
      step.constant = rhs;
      out.trace.steps.push_back(step);
      if (!std::binary_search(cur_sets[removed].begin(), cur_sets[removed].end(), rhs)) {
        return finish(ReductionStatus::EmptyInstance, std::nullopt);
      }
    } else {
      std::size_t fk = 0;
      while (m(row, fk) == 0) ++fk;
      const std::size_t target = form.perm[fk];
      // alpha * x_target + x_removed = rhs  <=>  x_target = rhs/alpha - (1/alpha) * x_removed
      const Residue a = f.inv(m(row, fk));
      const Residue c = f.mul(a, rhs);
      step.kind = ReductionStep::Kind::Substitute;
      step.target_column = out.columns[target];
      step.constant = c;
      step.coefficient = a;
      out.trace.steps.push_back(step);

      std::vector<Residue> image;
      image.reserve(cur_sets[removed].size());
      for (Residue s : cur_sets[removed]) image.push_back(f.sub(c, f.mul(a, s)));
      std::sort(image.begin(), image.end());
      std::erase_if(cur_sets[target],
                    [&](Residue v) { return !std::binary_search(image.begin(), image.end(), v); });
    }

    out.columns.erase(out.columns.begin() + static_cast<std::ptrdiff_t>(removed));
    cur_sets.erase(cur_sets.begin() + static_cast<std::ptrdiff_t>(removed));
    if (ell == 1) return finish(ReductionStatus::NoRows, std::nullopt);

    // Drop the row, then map the columns back to current (unpermuted) order.
    std::vector<std::size_t> position(p);
    for (std::size_t k = 0; k < p; ++k) position[form.perm[k]] = k;
    Matrix next(ell - 1, p - 1);
    std::vector<Residue> next_b;
    for (std::size_t i = 0, ni = 0; i < ell; ++i) {
      if (i == row) continue;
      for (std::size_t j = 0, nj = 0; j < p; ++j) {
        if (j == removed) continue;
        next(ni, nj++) = m(i, position[j]);
      }
      next_b.push_back(form.system.b()[i]);
      ++ni;
    }
    cur = LinearSystem(f, std::move(next), std::move(next_b));
  }
}

Embedding embed_integer_system(const std::vector<std::vector<std::int64_t>>& M,
                               const std::vector<std::int64_t>& b, std::uint64_t n) {
  if (M.empty() || M.front().empty()) throw Error(ErrorKind::InvalidArgument, "empty integer system");
  const std::size_t ell = M.size(), p = M.front().size();
  std::uint64_t c = 0;
  auto bump = [&](std::int64_t v) { c = std::max<std::uint64_t>(c, v < 0 ? -static_cast<std::uint64_t>(v) : v); };
  for (const auto& row : M) {
    if (row.size() != p) throw Error(ErrorKind::InvalidArgument, "ragged integer matrix");
    for (auto v : row) bump(v);
  }
  for (auto v : b) bump(v);
  const std::uint64_t q = next_prime_above(c * p * p * n);
  PrimeField f(q);
  Matrix m(ell, p);
  for (std::size_t i = 0; i < ell; ++i) {
    for (std::size_t j = 0; j < p; ++j) m(i, j) = f.reduce(M[i][j]);
  }
  std::vector<Residue> rhs;
  for (auto v : b) rhs.push_back(f.reduce(v));
  return Embedding{c, q, LinearSystem(f, std::move(m), std::move(rhs))};
}

}  // namespace linrem
