#pragma once
// Conversions between library values and the plain vectors the oracles use.

#include <cstdint>
#include <vector>

#include "linrem/linsys.hpp"
#include "linrem/set_family.hpp"
#include "oracles.hpp"

inline oracle::Rows rows_of(const linrem::Matrix& M) {
  oracle::Rows out(M.rows(), std::vector<std::int64_t>(M.cols()));
  for (std::size_t i = 0; i < M.rows(); ++i) {
    for (std::size_t j = 0; j < M.cols(); ++j) out[i][j] = M(i, j);
  }
  return out;
}

inline oracle::Tuple tuple_of(const std::vector<linrem::Residue>& v) { return {v.begin(), v.end()}; }

inline std::vector<std::vector<std::int64_t>> sets_of(const linrem::SetFamily& f) {
  std::vector<std::vector<std::int64_t>> out;
  for (std::size_t i = 0; i < f.arity(); ++i) out.emplace_back(f[i].begin(), f[i].end());
  return out;
}

inline std::vector<oracle::Tuple> oracle_solutions(const linrem::LinearSystem& sys, const linrem::SetFamily& sets) {
  return oracle::solutions(rows_of(sys.M()), tuple_of(sys.b()), sys.field().q(), sets_of(sets));
}

inline linrem::LinearSystem make_system(std::uint32_t q, std::vector<std::vector<std::int64_t>> rows,
                                        std::vector<std::int64_t> b) {
  const linrem::PrimeField f(q);
  linrem::Matrix M(rows.size(), rows.at(0).size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) M(i, j) = f.reduce(rows[i][j]);
  }
  std::vector<linrem::Residue> bb;
  for (auto v : b) bb.push_back(f.reduce(v));
  return linrem::LinearSystem(f, std::move(M), std::move(bb));
}

inline linrem::SetFamily uniform_family(std::uint32_t q, std::size_t p, std::vector<linrem::Residue> s) {
  return linrem::SetFamily(q, std::vector<std::vector<linrem::Residue>>(p, s));
}
