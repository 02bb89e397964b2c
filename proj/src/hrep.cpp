#include "linrem/hrep.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <sstream>
#include <string>

#include "linrem/error.hpp"
#include "linrem/parallel.hpp"

namespace linrem {

std::uint64_t checked_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && out > std::numeric_limits<std::uint64_t>::max() / base) {
      throw Error(ErrorKind::InvalidArgument, "integer overflow in power");
    }
    out *= base;
  }
  return out;
}

CoefficientTables build_coefficients(const NormalizedSystem& ns) {
  const auto& f = ns.field();
  const auto& M = ns.system.M();
  const std::size_t ell = ns.ell(), free = ns.free_count(), cols = ns.r - 1;

  CoefficientTables out;
  out.A = Matrix(free, cols);
  for (std::size_t i = 0; i < ell; ++i) {
    for (std::size_t g = 0; g < ns.W[i].size(); ++g) {
      const std::size_t t = ns.I[i][g], jg = ns.W[i][g];
      out.A(jg, t) = 1;
      out.A(ns.m[i], t) = f.neg(M(i, jg));
    }
  }

  for (std::size_t i = 0; i < ell; ++i) {
    const auto& Ii = ns.I[i];
    Matrix B(cols, cols);
    for (std::size_t j = 0; j < cols; ++j) {
      if (std::find(Ii.begin(), Ii.end(), j) == Ii.end()) B(j, j) = 1;
    }
    for (std::size_t g = 0; g < Ii.size(); ++g) {
      for (std::size_t t = 0; t < cols; ++t) B(Ii[g], t) = out.A(ns.W[i][g], t);
    }
    if (determinant(f, B) == 0) {
      throw Error(ErrorKind::InvariantViolation, "B_" + std::to_string(i + 1) + " is singular");
    }
    out.B.push_back(std::move(B));

    std::vector<Residue> key(cols, 0);
    for (std::size_t t = 0; t < cols; ++t) {
      Residue acc = out.A(ns.m[i], t);
      for (std::size_t j : ns.W[i]) acc = f.add(acc, f.mul(out.A(j, t), M(i, j)));
      const bool in_block = std::find(Ii.begin(), Ii.end(), t) != Ii.end();
      if (in_block && acc != 0) {
        throw Error(ErrorKind::InvariantViolation,
                    "column identity fails at i=" + std::to_string(i + 1) + " t=" + std::to_string(t + 1));
      }
      key[t] = acc;
    }
    out.keycoef.push_back(std::move(key));
  }
  return out;
}

std::string Template::part_name(std::size_t part) const {
  return part < r - 1 ? "V" + std::to_string(part + 1) : "U" + std::to_string(part - (r - 1) + 1);
}

Template build_template(const NormalizedSystem& ns) {
  Template t;
  t.r = ns.r;
  t.k = ns.k;
  const std::size_t vcount = ns.r - 1;
  for (std::size_t c = 0; c < ns.free_count(); ++c) {
    TemplateEdge e{c, {}};
    for (std::size_t v = 0; v < vcount; ++v) e.parts.push_back(v);
    e.parts.push_back(vcount + c);
    t.edges.push_back(std::move(e));
  }
  for (std::size_t i = 0; i < ns.ell(); ++i) {
    TemplateEdge e{ns.d[i], {}};
    for (std::size_t v = 0; v < vcount; ++v) {
      if (std::find(ns.I[i].begin(), ns.I[i].end(), v) == ns.I[i].end()) e.parts.push_back(v);
    }
    for (std::size_t j : ns.W[i]) e.parts.push_back(vcount + j);
    e.parts.push_back(vcount + ns.m[i]);
    std::sort(e.parts.begin(), e.parts.end());
    t.edges.push_back(std::move(e));
  }
  std::sort(t.edges.begin(), t.edges.end(), [](const auto& a, const auto& b) { return a.color < b.color; });
  return t;
}

Host::Host(std::size_t parts, std::uint32_t n, std::size_t uniformity, std::size_t colors)
    : parts_(parts), r_(uniformity), colors_(colors), n_(n) {
  if (uniformity == 0 || uniformity > parts) throw Error(ErrorKind::InvalidArgument, "bad uniformity");
  // Keys pack r sorted ids in base parts*n.
  (void)checked_pow(std::uint64_t{parts} * n, uniformity);
}

std::uint64_t Host::key(std::span<const VertexId> vertices) const {
  std::array<VertexId, 64> sorted{};
  std::copy(vertices.begin(), vertices.end(), sorted.begin());
  std::sort(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(vertices.size()));
  const std::uint64_t base = std::uint64_t{parts_} * n_;
  std::uint64_t k = 0;
  for (std::size_t i = 0; i < vertices.size(); ++i) k = k * base + sorted[i];
  return k;
}

EdgeId Host::add_edge(std::size_t color, Residue label, std::span<const VertexId> vertices, bool require_simple) {
  if (vertices.size() != r_) throw Error(ErrorKind::InvalidArgument, "edge size differs from uniformity");
  if (color >= colors_) throw Error(ErrorKind::InvalidArgument, "edge color out of range");
  const EdgeId id = static_cast<EdgeId>(colors_of_.size());
  const std::uint64_t k = key(vertices);
  auto [it, inserted] = index_.try_emplace(k, id);
  if (!inserted && require_simple) {
    throw Error(ErrorKind::SimplicityViolation,
                "edges " + std::to_string(it->second) + " and " + std::to_string(id) + " share a vertex set");
  }
  colors_of_.push_back(static_cast<std::uint32_t>(color));
  labels_.push_back(label);
  const std::size_t start = pool_.size();
  pool_.insert(pool_.end(), vertices.begin(), vertices.end());
  std::sort(pool_.begin() + static_cast<std::ptrdiff_t>(start), pool_.end());
  alive_.push_back(1);
  ++live_;
  return id;
}

void Host::erase_edge(EdgeId id) {
  if (!alive(id)) throw Error(ErrorKind::EdgeNotInHost, "edge " + std::to_string(id));
  alive_[id] = 0;
  --live_;
  auto it = index_.find(key(edge(id).vertices));
  if (it != index_.end() && it->second == id) index_.erase(it);
}

std::optional<EdgeId> Host::find(std::span<const VertexId> vertices) const {
  if (vertices.size() != r_) return std::nullopt;
  auto it = index_.find(key(vertices));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeId> Host::find_colored(std::span<const VertexId> vertices, std::size_t color) const {
  auto id = find(vertices);
  if (id && colors_of_[*id] == color) return id;
  return std::nullopt;
}

EdgeView Host::edge(EdgeId id) const {
  return EdgeView{colors_of_[id], labels_[id], std::span<const VertexId>(pool_.data() + std::size_t{id} * r_, r_)};
}

std::string Host::dump(const Template& tmpl) const {
  std::vector<std::string> lines;
  lines.reserve(live_);
  for (EdgeId id = 0; id < slot_count(); ++id) {
    if (!alive(id)) continue;
    const EdgeView e = edge(id);
    std::ostringstream line;
    line << e.color + 1 << " " << e.label;
    for (VertexId v : e.vertices) line << " " << tmpl.part_name(part_of(v)) << ":" << value_of(v);
    lines.push_back(line.str());
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

Host build_host(const NormalizedSystem& ns, const CoefficientTables& coeffs, const SetFamily& sets,
                const Template& tmpl, unsigned workers) {
  const auto& f = ns.field();
  const auto& M = ns.system.M();
  const std::uint32_t n = f.q();
  const std::size_t free = ns.free_count(), vcount = ns.r - 1;
  const SetFamily local = ns.to_normalized(sets);
  Host host(ns.k, n, ns.r, ns.p());

  struct Group {
    std::size_t color;
    Residue label;
  };
  std::vector<Group> groups;
  for (std::size_t c = 0; c < ns.p(); ++c) {
    for (Residue s : local[c]) groups.push_back({c, s});
  }

  auto generate = [&](std::size_t g) {
    const auto [color, s] = groups[g];
    std::vector<VertexId> out;
    if (color < free) {
      for_each_tuple(n, vcount, [&](const std::vector<Residue>& x) {
        Residue y = s;
        for (std::size_t t = 0; t < vcount; ++t) y = f.add(y, f.mul(coeffs.A(color, t), x[t]));
        for (std::size_t t = 0; t < vcount; ++t) out.push_back(host.vertex(t, x[t]));
        out.push_back(host.vertex(vcount + color, y));
      });
      return out;
    }
    const std::size_t i = color - free;
    const auto& Ii = ns.I[i];
    std::vector<std::size_t> outside;
    for (std::size_t t = 0; t < vcount; ++t) {
      if (std::find(Ii.begin(), Ii.end(), t) == Ii.end()) outside.push_back(t);
    }
    const Residue base = f.sub(ns.system.b()[i], f.mul(M(i, ns.d[i]), s));
    for_each_tuple(n, outside.size() + ns.W[i].size(), [&](const std::vector<Residue>& params) {
      Residue y = base;
      for (std::size_t a = 0; a < outside.size(); ++a) {
        y = f.add(y, f.mul(params[a], coeffs.keycoef[i][outside[a]]));
        out.push_back(host.vertex(outside[a], params[a]));
      }
      for (std::size_t g2 = 0; g2 < ns.W[i].size(); ++g2) {
        const Residue yj = params[outside.size() + g2];
        y = f.sub(y, f.mul(M(i, ns.W[i][g2]), yj));
        out.push_back(host.vertex(vcount + ns.W[i][g2], yj));
      }
      out.push_back(host.vertex(vcount + ns.m[i], y));
    });
    return out;
  };

  auto chunks = parallel_map<std::vector<VertexId>>(groups.size(), workers, generate);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto& flat = chunks[g];
    for (std::size_t off = 0; off < flat.size(); off += ns.r) {
      host.add_edge(groups[g].color, groups[g].label, std::span<const VertexId>(flat.data() + off, ns.r));
    }
  }
  (void)tmpl;
  return host;
}

std::vector<Residue> copy_vertices(const NormalizedSystem& ns, const CoefficientTables& coeffs,
                                   std::span<const Residue> normalized_solution, std::span<const Residue> x) {
  const auto& f = ns.field();
  std::vector<Residue> y(ns.free_count());
  for (std::size_t j = 0; j < y.size(); ++j) {
    Residue acc = normalized_solution[j];
    for (std::size_t t = 0; t < x.size(); ++t) acc = f.add(acc, f.mul(coeffs.A(j, t), x[t]));
    y[j] = acc;
  }
  return y;
}

std::optional<ColoredCopy> copy_at(const Host& host, const Template& tmpl, std::span<const Residue> part_values) {
  ColoredCopy copy;
  copy.x.assign(part_values.begin(), part_values.begin() + static_cast<std::ptrdiff_t>(tmpl.v_parts()));
  copy.y.assign(part_values.begin() + static_cast<std::ptrdiff_t>(tmpl.v_parts()), part_values.end());
  std::vector<VertexId> verts;
  for (const auto& te : tmpl.edges) {
    verts.clear();
    for (std::size_t part : te.parts) verts.push_back(host.vertex(part, part_values[part]));
    auto id = host.find_colored(verts, te.color);
    if (!id) return std::nullopt;
    copy.edges.push_back(*id);
    copy.labels.push_back(host.edge(*id).label);
  }
  return copy;
}

std::vector<ColoredCopy> copies_for_solution(const Host& host, const Template& tmpl, const NormalizedSystem& ns,
                                             const CoefficientTables& coeffs,
                                             std::span<const Residue> normalized_solution) {
  std::vector<ColoredCopy> out;
  std::vector<Residue> values;
  for_each_tuple(host.n(), ns.r - 1, [&](const std::vector<Residue>& x) {
    auto y = copy_vertices(ns, coeffs, normalized_solution, x);
    values.assign(x.begin(), x.end());
    values.insert(values.end(), y.begin(), y.end());
    auto copy = copy_at(host, tmpl, values);
    if (!copy) {
      std::string where;
      for (Residue v : x) where += (where.empty() ? "" : ",") + std::to_string(v);
      throw Error(ErrorKind::MissingEdge, "copy at x=(" + where + ") is not spanned");
    }
    out.push_back(std::move(*copy));
  });
  return out;
}

}  // namespace linrem
