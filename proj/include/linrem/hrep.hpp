#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "linrem/field.hpp"
#include "linrem/linsys.hpp"
#include "linrem/set_family.hpp"

namespace linrem {

/// Rows a^1..a^{p-ell} of A, the ell matrices B_i, and for every row i the
/// vertex coefficients a^{m_i}_t + sum_{j in W_i} a^j_t M_{i,j} used by the
/// color-d_i edges (entries for t in I_i vanish and are stored as 0).
struct CoefficientTables {
  Matrix A;
  std::vector<Matrix> B;
  std::vector<std::vector<Residue>> keycoef;
};

/// Throws InvariantViolation if a B_i is singular or the column identity
/// sum_{j in W_i} a^j_t M_{i,j} = -a^{m_i}_t fails for some t in I_i.
CoefficientTables build_coefficients(const NormalizedSystem& ns);

/// Part indices: 0..r-2 are V_1..V_{r-1}, r-1..k-1 are U_1..U_{p-ell}. The
/// template has exactly one vertex per part, so template vertices are named by
/// their part.
struct TemplateEdge {
  std::size_t color = 0;
  std::vector<std::size_t> parts;
};

struct Template {
  std::size_t r = 0;
  std::size_t k = 0;
  std::vector<TemplateEdge> edges;  // edges[c].color == c

  std::size_t v_parts() const noexcept { return r - 1; }
  std::string part_name(std::size_t part) const;
};

Template build_template(const NormalizedSystem& ns);

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

struct EdgeView {
  std::size_t color;
  Residue label;
  std::span<const VertexId> vertices;  // ascending
};

/// r-uniform, p-colored, labeled hypergraph on k parts of n vertices each.
/// Vertex value v of part P has id P * n + v. Edges are indexed by their
/// sorted vertex list.
class Host {
 public:
  Host(std::size_t parts, std::uint32_t n, std::size_t uniformity, std::size_t colors);

  std::size_t parts() const noexcept { return parts_; }
  std::uint32_t n() const noexcept { return n_; }
  std::size_t uniformity() const noexcept { return r_; }
  std::size_t colors() const noexcept { return colors_; }

  VertexId vertex(std::size_t part, Residue value) const noexcept {
    return static_cast<VertexId>(part * n_ + value);
  }
  std::size_t part_of(VertexId v) const noexcept { return v / n_; }
  Residue value_of(VertexId v) const noexcept { return v % n_; }

  /// With require_simple, a second edge on an existing vertex set throws
  /// SimplicityViolation; otherwise it is stored but not indexed.
  EdgeId add_edge(std::size_t color, Residue label, std::span<const VertexId> vertices, bool require_simple = true);
  void erase_edge(EdgeId id);

  std::optional<EdgeId> find(std::span<const VertexId> vertices) const;
  std::optional<EdgeId> find_colored(std::span<const VertexId> vertices, std::size_t color) const;

  bool alive(EdgeId id) const { return id < alive_.size() && alive_[id]; }
  EdgeView edge(EdgeId id) const;
  std::size_t slot_count() const noexcept { return colors_of_.size(); }
  std::size_t edge_count() const noexcept { return live_; }

  /// Canonical key of a vertex set (order independent).
  std::uint64_t key(std::span<const VertexId> vertices) const;

  /// One line per edge, "color label part:value ...", lines sorted.
  std::string dump(const Template& tmpl) const;

 private:
  std::size_t parts_, r_, colors_;
  std::uint32_t n_;
  std::vector<std::uint32_t> colors_of_;
  std::vector<Residue> labels_;
  std::vector<VertexId> pool_;
  std::vector<std::uint8_t> alive_;
  std::size_t live_ = 0;
  std::unordered_map<std::uint64_t, EdgeId> index_;
};

/// Materializes every edge: n^{r-1} per (color, label). `sets` is in original
/// column order. Simplicity is asserted while inserting.
Host build_host(const NormalizedSystem& ns, const CoefficientTables& coeffs, const SetFamily& sets,
                const Template& tmpl, unsigned workers = 1);

/// One vertex per part (x in the V parts, y in the U parts) and the edge of
/// each color it spans.
struct ColoredCopy {
  std::vector<Residue> x;
  std::vector<Residue> y;
  std::vector<EdgeId> edges;
  std::vector<Residue> labels;
};

/// y_j = s_j + sum_t a^j_t x_t.
std::vector<Residue> copy_vertices(const NormalizedSystem& ns, const CoefficientTables& coeffs,
                                   std::span<const Residue> normalized_solution, std::span<const Residue> x);

/// Looks up the template's edges on the given per-part values; nullopt if
/// some colored edge is missing.
std::optional<ColoredCopy> copy_at(const Host& host, const Template& tmpl, std::span<const Residue> part_values);

/// The n^{r-1} copies K_x of one solution (normalized coordinates), x in
/// lexicographic order. Throws MissingEdge if one is not spanned.
std::vector<ColoredCopy> copies_for_solution(const Host& host, const Template& tmpl, const NormalizedSystem& ns,
                                             const CoefficientTables& coeffs,
                                             std::span<const Residue> normalized_solution);

/// Calls fn(x) for every x in F_n^len, lexicographically.
template <class Fn>
void for_each_tuple(std::uint32_t n, std::size_t len, Fn&& fn) {
  std::vector<Residue> x(len, 0);
  for (;;) {
    fn(std::as_const(x));
    std::size_t j = len;
    while (j > 0) {
      if (++x[j - 1] < n) break;
      x[--j] = 0;
    }
    if (j == 0) return;
  }
}

std::uint64_t checked_pow(std::uint64_t base, std::size_t exp);

}  // namespace linrem
