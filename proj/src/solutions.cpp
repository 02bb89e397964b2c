#include "linrem/solutions.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "linrem/error.hpp"
#include "linrem/parallel.hpp"

namespace linrem {
namespace {

// A system whose last ell columns are diagonal with non-zero entries, in its
// own column order, plus the family reordered to match.
struct DiagonalView {
  const LinearSystem& sys;
  const std::vector<std::size_t>& perm;
  SetFamily sets;
  std::size_t ell, p, free;
  std::vector<Residue> diag_inv;
  std::vector<std::size_t> active;
  std::vector<std::size_t> idle;

  DiagonalView(const LinearSystem& s, const std::vector<std::size_t>& order, const SetFamily& original)
      : sys(s), perm(order), sets(original.reordered(order)), ell(s.ell()), p(s.p()), free(s.p() - s.ell()) {
    if (original.arity() != p) throw Error(ErrorKind::InvalidArgument, "family arity differs from p");
    if (original.q() != s.field().q()) throw Error(ErrorKind::InvalidArgument, "family over a different field");
    for (std::size_t i = 0; i < ell; ++i) diag_inv.push_back(s.field().inv(s.M()(i, free + i)));
    for (std::size_t j = 0; j < free; ++j) {
      bool used = false;
      for (std::size_t i = 0; i < ell; ++i) used = used || s.M()(i, j) != 0;
      (used ? active : idle).push_back(j);
    }
  }

  // Enumerates active free coordinates from `depth`, solving the block at the
  // leaves. `x` is in this view's column order.
  template <class Visit>
  void walk(std::size_t depth, std::vector<Residue>& acc, std::vector<Residue>& x, Visit& visit) const {
    const auto& f = sys.field();
    if (depth == active.size()) {
      for (std::size_t i = 0; i < ell; ++i) {
        Residue v = f.mul(f.sub(sys.b()[i], acc[i]), diag_inv[i]);
        if (!sets.contains(free + i, v)) return;
        x[free + i] = v;
      }
      visit(x);
      return;
    }
    const std::size_t col = active[depth];
    std::vector<Residue> saved = acc;
    for (Residue v : sets[col]) {
      x[col] = v;
      for (std::size_t i = 0; i < ell; ++i) acc[i] = f.add(saved[i], f.mul(sys.M()(i, col), v));
      walk(depth + 1, acc, x, visit);
    }
    acc = saved;
  }

  std::uint64_t idle_product() const {
    std::uint64_t prod = 1;
    for (std::size_t j : idle) prod *= sets.size(j);
    return prod;
  }

  std::uint64_t count(unsigned workers) const {
    const std::uint64_t idle_factor = idle_product();
    if (idle_factor == 0) return 0;
    auto run_from = [&](std::size_t depth, std::vector<Residue> acc, std::vector<Residue> x) {
      std::uint64_t n = 0;
      auto visit = [&](const std::vector<Residue>&) { ++n; };
      walk(depth, acc, x, visit);
      return n;
    };
    if (active.empty()) return idle_factor * run_from(0, std::vector<Residue>(ell, 0), std::vector<Residue>(p, 0));
    const std::size_t first = active.front();
    const auto& values = sets[first];
    const auto& f = sys.field();
    std::uint64_t base = parallel_sum(values.size(), workers, [&](std::size_t t) {
      std::vector<Residue> acc(ell, 0), x(p, 0);
      x[first] = values[t];
      for (std::size_t i = 0; i < ell; ++i) acc[i] = f.mul(sys.M()(i, first), values[t]);
      return run_from(1, std::move(acc), std::move(x));
    });
    return base * idle_factor;
  }

  std::vector<Solution> list() const {
    std::vector<Solution> out;
    std::vector<Residue> acc(ell, 0), x(p, 0);
    auto visit = [&](const std::vector<Residue>& leaf) {
      // Expand the idle columns, then map back to original order.
      std::vector<Residue> y = leaf;
      auto expand = [&](auto& self, std::size_t k) -> void {
        if (k == idle.size()) {
          Solution s(p);
          for (std::size_t c = 0; c < p; ++c) s[perm[c]] = y[c];
          out.push_back(std::move(s));
          return;
        }
        for (Residue v : sets[idle[k]]) {
          y[idle[k]] = v;
          self(self, k + 1);
        }
      };
      expand(expand, 0);
    };
    walk(0, acc, x, visit);
    std::sort(out.begin(), out.end());
    return out;
  }
};

// Branch and bound for a minimum set of (coordinate, value) pairs meeting
// every solution tuple.
class HittingSearch {
 public:
  HittingSearch(const std::vector<Solution>& sols, std::size_t p, std::uint32_t q)
      : sols_(sols), p_(p), q_(q), removed_(p * q, 0), per_set_(p, 0) {}

  // Best total under the per-set cap, or nullopt-like empty when infeasible.
  bool run(std::size_t cap) {
    cap_ = cap;
    best_total_ = std::numeric_limits<std::size_t>::max();
    found_ = false;
    search(0);
    return found_;
  }

  std::vector<std::vector<Residue>> best() const { return best_; }

 private:
  bool hit(const Solution& s) const {
    for (std::size_t i = 0; i < p_; ++i) {
      if (removed_[i * q_ + s[i]]) return true;
    }
    return false;
  }

  // Greedy count of pairwise element-disjoint unhit tuples: each needs its own removal.
  std::size_t packing_bound() {
    std::vector<std::uint8_t> used(p_ * q_, 0);
    std::size_t bound = 0;
    for (const auto& s : sols_) {
      if (hit(s)) continue;
      bool clash = false;
      for (std::size_t i = 0; i < p_ && !clash; ++i) clash = used[i * q_ + s[i]] != 0;
      if (clash) continue;
      for (std::size_t i = 0; i < p_; ++i) used[i * q_ + s[i]] = 1;
      ++bound;
    }
    return bound;
  }

  void search(std::size_t total) {
    const Solution* open = nullptr;
    for (const auto& s : sols_) {
      if (!hit(s)) {
        open = &s;
        break;
      }
    }
    if (open == nullptr) {
      if (total < best_total_) {
        best_total_ = total;
        found_ = true;
        best_.assign(p_, {});
        for (std::size_t i = 0; i < p_; ++i) {
          for (std::uint32_t v = 0; v < q_; ++v) {
            if (removed_[i * q_ + v]) best_[i].push_back(v);
          }
        }
      }
      return;
    }
    if (total + packing_bound() >= best_total_) return;
    const Solution s = *open;
    for (std::size_t i = 0; i < p_; ++i) {
      if (per_set_[i] >= cap_) continue;
      removed_[i * q_ + s[i]] = 1;
      ++per_set_[i];
      search(total + 1);
      --per_set_[i];
      removed_[i * q_ + s[i]] = 0;
    }
  }

  const std::vector<Solution>& sols_;
  std::size_t p_;
  std::uint32_t q_;
  std::vector<std::uint8_t> removed_;
  std::vector<std::size_t> per_set_;
  std::size_t cap_ = 0;
  std::size_t best_total_ = 0;
  bool found_ = false;
  std::vector<std::vector<Residue>> best_;
};

RemovalResult minimum_removal(const std::vector<Solution>& sols, const SetFamily& sets,
                              RemovalObjective objective, std::size_t guard) {
  const std::size_t p = sets.arity();
  if (sols.empty()) return RemovalResult::from_removed(std::vector<std::vector<Residue>>(p));
  if (sets.total_size() > guard) {
    throw Error(ErrorKind::SearchBudgetExceeded, "sum |S_i| = " + std::to_string(sets.total_size()) +
                                                     " exceeds guard " + std::to_string(guard));
  }
  HittingSearch search(sols, p, sets.q());
  if (objective == RemovalObjective::Total) {
    search.run(std::numeric_limits<std::size_t>::max());
    return RemovalResult::from_removed(search.best());
  }
  for (std::size_t cap = 1;; ++cap) {
    if (search.run(cap)) return RemovalResult::from_removed(search.best());
  }
}

}  // namespace

RemovalResult RemovalResult::from_removed(std::vector<std::vector<Residue>> removed) {
  RemovalResult r;
  for (auto& s : removed) {
    std::sort(s.begin(), s.end());
    r.budget = std::max(r.budget, s.size());
    r.total += s.size();
  }
  r.removed = std::move(removed);
  return r;
}

std::uint64_t count_solutions(const NormalizedSystem& ns, const SetFamily& sets, unsigned workers) {
  return DiagonalView(ns.system, ns.perm, sets).count(workers);
}

std::uint64_t count_solutions(const LinearSystem& sys, const SetFamily& sets, unsigned workers) {
  IdentityForm form = identity_form(sys);
  return DiagonalView(form.system, form.perm, sets).count(workers);
}

std::uint64_t count_solutions_naive(const LinearSystem& sys, const SetFamily& sets) {
  const std::size_t p = sys.p();
  if (sets.any_empty()) return 0;
  std::vector<std::size_t> idx(p, 0);
  std::vector<Residue> x(p);
  std::uint64_t count = 0;
  for (;;) {
    for (std::size_t j = 0; j < p; ++j) x[j] = sets[j][idx[j]];
    if (sys.satisfied_by(x)) ++count;
    std::size_t j = 0;
    while (j < p && ++idx[j] == sets.size(j)) idx[j++] = 0;
    if (j == p) break;
  }
  return count;
}

std::uint64_t count_solutions(const Reduction& reduction, unsigned workers) {
  switch (reduction.status) {
    case ReductionStatus::EmptyInstance: return 0;
    case ReductionStatus::NoRows: {
      std::uint64_t prod = 1;
      for (std::size_t j = 0; j < reduction.sets.arity(); ++j) prod *= reduction.sets.size(j);
      return prod;
    }
    case ReductionStatus::Reduced:
    case ReductionStatus::TwoVarResidual: return count_solutions(*reduction.system, reduction.sets, workers);
  }
  return 0;
}

bool is_free(const NormalizedSystem& ns, const SetFamily& sets) { return count_solutions(ns, sets) == 0; }
bool is_free(const LinearSystem& sys, const SetFamily& sets) { return count_solutions(sys, sets) == 0; }

std::vector<Solution> list_solutions(const NormalizedSystem& ns, const SetFamily& sets) {
  return DiagonalView(ns.system, ns.perm, sets).list();
}

std::vector<Solution> list_solutions(const LinearSystem& sys, const SetFamily& sets) {
  IdentityForm form = identity_form(sys);
  return DiagonalView(form.system, form.perm, sets).list();
}

RemovalResult removal_distance(const NormalizedSystem& ns, const SetFamily& sets, RemovalObjective objective,
                               std::size_t guard) {
  return minimum_removal(list_solutions(ns, sets), sets, objective, guard);
}

RemovalResult removal_distance(const LinearSystem& sys, const SetFamily& sets, RemovalObjective objective,
                               std::size_t guard) {
  return minimum_removal(list_solutions(sys, sets), sets, objective, guard);
}

TwoVarRemoval two_var_removal(const LinearSystem& sys, const SetFamily& sets) {
  if (sys.ell() != 1 || sys.nonzeros_in_row(0) != 2) {
    throw Error(ErrorKind::InvalidArgument, "expected one equation with exactly two non-zero coefficients");
  }
  const auto& f = sys.field();
  const std::size_t p = sys.p();
  std::vector<std::size_t> nonzero, zero;
  for (std::size_t j = 0; j < p; ++j) (sys.M()(0, j) != 0 ? nonzero : zero).push_back(j);
  const std::size_t u = nonzero[0], v = nonzero[1];
  const Residue au = sys.M()(0, u), inv_av = f.inv(sys.M()(0, v));

  std::vector<std::vector<Residue>> pairs_removal(p);
  for (Residue su : sets[u]) {
    Residue sv = f.mul(f.sub(sys.b()[0], f.mul(au, su)), inv_av);
    if (sets.contains(v, sv)) pairs_removal[u].push_back(su);
  }
  TwoVarRemoval out;
  out.option = TwoVarRemoval::Option::PairComponents;
  out.result = RemovalResult::from_removed(std::move(pairs_removal));

  if (!zero.empty()) {
    std::size_t smallest = zero.front();
    for (std::size_t j : zero) {
      if (sets.size(j) < sets.size(smallest)) smallest = j;
    }
    if (sets.size(smallest) < out.result.budget) {
      std::vector<std::vector<Residue>> removed(p);
      removed[smallest] = sets[smallest];
      out.option = TwoVarRemoval::Option::EmptyZeroColumn;
      out.result = RemovalResult::from_removed(std::move(removed));
    }
  }
  return out;
}

}  // namespace linrem
