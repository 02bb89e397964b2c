#include "linrem/verify.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "linrem/error.hpp"
#include "linrem/parallel.hpp"
#include "linrem/solutions.hpp"

namespace linrem {

namespace {

constexpr VertexId kUnset = ~VertexId{0};

std::string join(std::span<const Residue> v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + ")";
}

std::string vertex_list(const Host& host, const Template& tmpl, std::span<const VertexId> vs) {
  std::string out;
  for (VertexId v : vs) {
    out += (out.empty() ? "" : " ") + tmpl.part_name(host.part_of(v)) + ":" + std::to_string(host.value_of(v));
  }
  return out;
}

bool within(std::uint64_t base, std::size_t exp, std::uint64_t guard) {
  try {
    return checked_pow(base, exp) <= guard;
  } catch (const Error&) {
    return false;
  }
}

std::vector<std::vector<VertexId>> per_part_copies(const Host& host, const Template& tmpl, unsigned workers) {
  const std::size_t k = tmpl.k;
  std::vector<std::vector<std::size_t>> closing(k);
  for (std::size_t e = 0; e < tmpl.edges.size(); ++e) closing[tmpl.edges[e].parts.back()].push_back(e);

  auto task = [&](std::size_t first) {
    std::vector<std::vector<VertexId>> found;
    std::vector<Residue> vals(k, 0);
    std::vector<VertexId> verts;
    auto closes = [&](std::size_t part) {
      for (std::size_t e : closing[part]) {
        const auto& te = tmpl.edges[e];
        verts.clear();
        for (std::size_t q : te.parts) verts.push_back(host.vertex(q, vals[q]));
        if (!host.find_colored(verts, te.color)) return false;
      }
      return true;
    };
    auto dfs = [&](auto&& self, std::size_t part) -> void {
      if (part == k) {
        std::vector<VertexId> set(k);
        for (std::size_t q = 0; q < k; ++q) set[q] = host.vertex(q, vals[q]);
        found.push_back(std::move(set));
        return;
      }
      for (Residue v = 0; v < host.n(); ++v) {
        vals[part] = v;
        if (closes(part)) self(self, part + 1);
      }
    };
    vals[0] = static_cast<Residue>(first);
    if (closes(0)) dfs(dfs, 1);
    return found;
  };

  std::vector<std::vector<VertexId>> out;
  for (auto& chunk : parallel_map<std::vector<std::vector<VertexId>>>(host.n(), workers, task)) {
    for (auto& c : chunk) out.push_back(std::move(c));
  }
  return out;
}

class NaiveEmbedder {
 public:
  NaiveEmbedder(const Host& host, const Template& tmpl) : host_(host), tmpl_(tmpl), by_color_(host.colors()) {
    const std::size_t r = host.uniformity();
    std::vector<VertexId> rest;
    for (EdgeId id = 0; id < host.slot_count(); ++id) {
      if (!host.alive(id)) continue;
      const EdgeView e = host.edge(id);
      by_color_[e.color].push_back(id);
      for (std::size_t skip = 0; skip < r; ++skip) {
        rest.clear();
        for (std::size_t a = 0; a < r; ++a) {
          if (a != skip) rest.push_back(e.vertices[a]);
        }
        completions_[partial_key(rest, e.color)].push_back(e.vertices[skip]);
      }
    }
  }

  std::vector<std::vector<VertexId>> run(unsigned workers) const {
    if (tmpl_.edges.empty()) return {};
    const auto& seeds = by_color_[tmpl_.edges[0].color];
    auto task = [&](std::size_t idx) {
      std::vector<std::vector<VertexId>> found;
      std::vector<VertexId> phi(tmpl_.k, kUnset);
      std::vector<VertexId> order(host_.edge(seeds[idx]).vertices.begin(), host_.edge(seeds[idx]).vertices.end());
      const auto& parts = tmpl_.edges[0].parts;
      do {
        for (std::size_t a = 0; a < parts.size(); ++a) phi[parts[a]] = order[a];
        extend(1, phi, found);
      } while (std::next_permutation(order.begin(), order.end()));
      return found;
    };
    std::vector<std::vector<VertexId>> out;
    for (auto& chunk : parallel_map<std::vector<std::vector<VertexId>>>(seeds.size(), workers, task)) {
      for (auto& c : chunk) out.push_back(std::move(c));
    }
    return out;
  }

 private:
  std::uint64_t partial_key(std::vector<VertexId> vs, std::size_t color) const {
    std::sort(vs.begin(), vs.end());
    const std::uint64_t base = std::uint64_t{host_.parts()} * host_.n();
    std::uint64_t key = 0;
    for (VertexId v : vs) key = key * base + v;
    return key * host_.colors() + color;
  }

  static bool used(const std::vector<VertexId>& phi, VertexId v) {
    return std::find(phi.begin(), phi.end(), v) != phi.end();
  }

  void extend(std::size_t ei, std::vector<VertexId>& phi, std::vector<std::vector<VertexId>>& found) const {
    if (ei == tmpl_.edges.size()) {
      std::vector<VertexId> image = phi;
      std::sort(image.begin(), image.end());
      found.push_back(std::move(image));
      return;
    }
    const auto& te = tmpl_.edges[ei];
    std::vector<VertexId> mapped;
    std::vector<std::size_t> open;
    for (std::size_t t : te.parts) {
      if (phi[t] == kUnset) {
        open.push_back(t);
      } else {
        mapped.push_back(phi[t]);
      }
    }
    if (open.empty()) {
      if (host_.find_colored(mapped, te.color)) extend(ei + 1, phi, found);
      return;
    }
    if (open.size() == 1) {
      auto it = completions_.find(partial_key(mapped, te.color));
      if (it == completions_.end()) return;
      for (VertexId v : it->second) {
        if (used(phi, v)) continue;
        phi[open[0]] = v;
        extend(ei + 1, phi, found);
        phi[open[0]] = kUnset;
      }
      return;
    }
    // Several unmapped template vertices: try every edge of this color.
    for (EdgeId id : by_color_[te.color]) {
      const EdgeView e = host_.edge(id);
      std::vector<VertexId> rest;
      bool contains = true;
      for (VertexId m : mapped) contains = contains && std::find(e.vertices.begin(), e.vertices.end(), m) != e.vertices.end();
      if (!contains) continue;
      for (VertexId v : e.vertices) {
        if (std::find(mapped.begin(), mapped.end(), v) == mapped.end()) rest.push_back(v);
      }
      if (std::any_of(rest.begin(), rest.end(), [&](VertexId v) { return used(phi, v); })) continue;
      std::sort(rest.begin(), rest.end());
      do {
        for (std::size_t a = 0; a < open.size(); ++a) phi[open[a]] = rest[a];
        extend(ei + 1, phi, found);
      } while (std::next_permutation(rest.begin(), rest.end()));
      for (std::size_t t : open) phi[t] = kUnset;
    }
  }

  const Host& host_;
  const Template& tmpl_;
  std::vector<std::vector<EdgeId>> by_color_;
  std::unordered_map<std::uint64_t, std::vector<VertexId>> completions_;
};

CheckEntry fail(std::string name, std::string witness) { return CheckEntry{std::move(name), false, std::move(witness)}; }

}  // namespace

CopyEnumeration enumerate_copies(const Host& host, const Template& tmpl, CopyMode mode, unsigned workers,
                                 std::uint64_t guard) {
  CopyEnumeration out;
  if (mode == CopyMode::PerPart) {
    out.copies = per_part_copies(host, tmpl, workers);
    return out;
  }
  if (!within(host.n(), tmpl.k, guard)) {
    throw Error(ErrorKind::SearchBudgetExceeded, "n^k exceeds the naive guard of " + std::to_string(guard));
  }
  out.copies = NaiveEmbedder(host, tmpl).run(workers);
  std::sort(out.copies.begin(), out.copies.end());
  out.copies.erase(std::unique(out.copies.begin(), out.copies.end()), out.copies.end());
  for (const auto& c : out.copies) {
    std::vector<std::size_t> hits(host.parts(), 0);
    for (VertexId v : c) ++hits[host.part_of(v)];
    if (std::any_of(hits.begin(), hits.end(), [](std::size_t h) { return h != 1; })) ++out.off_part;
  }
  return out;
}

CheckEntry check_simple(const Host& host) {
  std::unordered_map<std::uint64_t, EdgeId> seen;
  for (EdgeId id = 0; id < host.slot_count(); ++id) {
    if (!host.alive(id)) continue;
    auto [it, fresh] = seen.try_emplace(host.key(host.edge(id).vertices), id);
    if (!fresh) return fail("simple", "edges=" + std::to_string(it->second) + "," + std::to_string(id));
  }
  return {"simple", true, {}};
}

CheckEntry check_coefficients(const NormalizedSystem& ns, const CoefficientTables& coeffs) {
  const auto& f = ns.field();
  const auto& M = ns.system.M();
  for (std::size_t i = 0; i < ns.ell(); ++i) {
    for (std::size_t g = 0; g < ns.I[i].size(); ++g) {
      const std::size_t t = ns.I[i][g];
      Residue sum = coeffs.A(ns.m[i], t);
      for (std::size_t j : ns.W[i]) sum = f.add(sum, f.mul(coeffs.A(j, t), M(i, j)));
      if (sum != 0) return fail("coefficients", "nicesum i=" + std::to_string(i + 1) + " t=" + std::to_string(t + 1));
      for (std::size_t h = 0; h < ns.W[i].size(); ++h) {
        if (coeffs.A(ns.W[i][h], t) != (h == g ? 1u : 0u)) {
          return fail("coefficients", "identity block i=" + std::to_string(i + 1));
        }
      }
    }
    if (determinant(f, coeffs.B[i]) == 0) return fail("coefficients", "singular B_" + std::to_string(i + 1));
  }
  return {"coefficients", true, {}};
}

CheckEntry check_edge_equation(const Host& host, const NormalizedSystem& ns, const CoefficientTables& coeffs,
                               const SetFamily& sets, std::size_t i, std::uint64_t guard) {
  const std::string name = "edge_equation_" + std::to_string(i + 1);
  if (!within(host.n(), ns.r, guard)) {
    throw Error(ErrorKind::SearchBudgetExceeded, name + ": n^r exceeds the guard of " + std::to_string(guard));
  }
  const auto& f = ns.field();
  const auto& M = ns.system.M();
  const SetFamily local = ns.to_normalized(sets);
  const std::size_t vcount = ns.r - 1;
  const auto& Ii = ns.I[i];
  std::vector<std::size_t> outside;
  for (std::size_t t = 0; t < vcount; ++t) {
    if (std::find(Ii.begin(), Ii.end(), t) == Ii.end()) outside.push_back(t);
  }
  std::vector<std::size_t> ujs = ns.W[i];
  ujs.push_back(ns.m[i]);

  std::optional<CheckEntry> bad;
  std::vector<Residue> x(vcount, 0);
  std::vector<VertexId> verts;
  for_each_tuple(host.n(), outside.size() + ujs.size(), [&](const std::vector<Residue>& tup) {
    if (bad) return;
    for (std::size_t a = 0; a < outside.size(); ++a) x[outside[a]] = tup[a];
    // s_j = y_j - sum_t a^j_t x_t; x_t for t in I_i do not matter and stay 0.
    Residue lhs = 0;
    verts.clear();
    for (std::size_t a = 0; a < outside.size(); ++a) verts.push_back(host.vertex(outside[a], tup[a]));
    for (std::size_t g = 0; g < ujs.size(); ++g) {
      const std::size_t j = ujs[g];
      const Residue y = tup[outside.size() + g];
      verts.push_back(host.vertex(vcount + j, y));
      Residue s = y;
      for (std::size_t t = 0; t < vcount; ++t) s = f.sub(s, f.mul(coeffs.A(j, t), x[t]));
      lhs = f.add(lhs, f.mul(M(i, j), s));
    }
    const Residue s_d = f.div(f.sub(ns.system.b()[i], lhs), M(i, ns.d[i]));
    const bool expected = local.contains(ns.d[i], s_d);
    const auto edge = host.find_colored(verts, ns.d[i]);
    if (edge.has_value() != expected || (edge && host.edge(*edge).label != s_d)) {
      bad = fail(name, "parameters=" + join(tup) + (edge ? " edge present" : " edge absent") +
                           " s=" + std::to_string(s_d));
    }
  });
  return bad ? *bad : CheckEntry{name, true, {}};
}

bool VerificationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckEntry& c) { return c.pass; });
}

const CheckEntry* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string VerificationReport::to_text() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << "CHECK " << c.name << (c.pass ? " PASS" : " FAIL");
    if (!c.witness.empty()) out << " " << c.witness;
    out << "\n";
  }
  out << "COUNTS edges=" << edges << " T=" << solutions << " copies=" << copies << "\n";
  return out.str();
}

VerificationReport check_representation(const NormalizedSystem& ns, const CoefficientTables& coeffs,
                                        const SetFamily& sets, const VerificationOptions& options) {
  const Template tmpl = build_template(ns);
  const Host host = build_host(ns, coeffs, sets, tmpl, options.workers);
  return check_representation(host, ns, coeffs, sets, options);
}

VerificationReport check_representation(const Host& host, const NormalizedSystem& ns,
                                        const CoefficientTables& coeffs, const SetFamily& sets,
                                        const VerificationOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const auto& f = ns.field();
  const Template tmpl = build_template(ns);
  const SetFamily local = ns.to_normalized(sets);
  const std::uint64_t per = checked_pow(host.n(), ns.r - 1);

  VerificationReport report;
  report.edges = host.edge_count();
  report.checks.push_back(check_simple(host));
  report.checks.push_back(check_coefficients(ns, coeffs));

  {
    std::map<std::pair<std::size_t, Residue>, std::uint64_t> tally;
    for (EdgeId id = 0; id < host.slot_count(); ++id) {
      if (host.alive(id)) ++tally[{host.edge(id).color, host.edge(id).label}];
    }
    CheckEntry entry{"edge_counts", true, {}};
    auto witness = [](std::size_t c, Residue s, std::uint64_t got, std::uint64_t want) {
      return "color=" + std::to_string(c + 1) + " label=" + std::to_string(s) + " edges=" + std::to_string(got) +
             " expected=" + std::to_string(want);
    };
    for (std::size_t c = 0; c < ns.p() && entry.pass; ++c) {
      for (Residue s : local[c]) {
        auto it = tally.find({c, s});
        const std::uint64_t got = it == tally.end() ? 0 : it->second;
        if (got != per) {
          entry = fail("edge_counts", witness(c, s, got, per));
          break;
        }
      }
    }
    for (const auto& [key, got] : tally) {
      if (entry.pass && !local.contains(key.first, key.second)) entry = fail("edge_counts", witness(key.first, key.second, got, 0));
    }
    report.checks.push_back(entry);
  }

  for (std::size_t i = 0; i < ns.ell(); ++i) {
    if (within(host.n(), ns.r, options.guard)) {
      report.checks.push_back(check_edge_equation(host, ns, coeffs, sets, i, options.guard));
    }
  }

  report.solutions = count_solutions(ns, sets, options.workers);
  const CopyEnumeration copies = enumerate_copies(host, tmpl, options.mode, options.workers, options.guard);
  report.copies = copies.copies.size();
  {
    const std::uint64_t want = report.solutions * per;
    if (report.copies == want && copies.off_part == 0) {
      report.checks.push_back({"copy_count", true, {}});
    } else {
      report.checks.push_back(fail("copy_count", "expected=" + std::to_string(want) + " found=" +
                                                     std::to_string(report.copies) +
                                                     " off_part=" + std::to_string(copies.off_part)));
    }
  }

  {
    CheckEntry entry{"per_solution", true, {}};
    for (const Solution& sol : list_solutions(ns, sets)) {
      const std::vector<Residue> s = ns.to_normalized(sol);
      std::vector<ColoredCopy> ks;
      try {
        ks = copies_for_solution(host, tmpl, ns, coeffs, s);
      } catch (const Error& e) {
        entry = fail("per_solution", "solution=" + join(sol) + " " + e.what());
        break;
      }
      if (ks.size() != per) {
        entry = fail("per_solution", "solution=" + join(sol) + " copies=" + std::to_string(ks.size()));
        break;
      }
      std::vector<std::pair<EdgeId, std::size_t>> owners;
      for (std::size_t c = 0; c < ks.size() && entry.pass; ++c) {
        for (std::size_t e = 0; e < tmpl.edges.size(); ++e) {
          if (ks[c].labels[e] != s[tmpl.edges[e].color]) {
            entry = fail("per_solution", "solution=" + join(sol) + " x=" + join(ks[c].x) + " label mismatch on color " +
                                             std::to_string(tmpl.edges[e].color + 1));
            break;
          }
          owners.emplace_back(ks[c].edges[e], c);
        }
      }
      if (!entry.pass) break;
      std::sort(owners.begin(), owners.end());
      for (std::size_t a = 1; a < owners.size(); ++a) {
        if (owners[a].first == owners[a - 1].first) {
          entry = fail("per_solution", "solution=" + join(sol) + " x=" + join(ks[owners[a - 1].second].x) +
                                           " and x=" + join(ks[owners[a].second].x) + " share edge " +
                                           std::to_string(owners[a].first));
          break;
        }
      }
      if (!entry.pass) break;
    }
    report.checks.push_back(entry);
  }

  {
    CheckEntry entry{"copy_structure", true, {}};
    const std::size_t vcount = ns.r - 1;
    for (const auto& set : copies.copies) {
      std::vector<Residue> vals(ns.k, 0);
      std::vector<std::size_t> hits(ns.k, 0);
      for (VertexId v : set) {
        vals[host.part_of(v)] = host.value_of(v);
        ++hits[host.part_of(v)];
      }
      const std::string where = "vertices=" + vertex_list(host, tmpl, set);
      if (std::any_of(hits.begin(), hits.end(), [](std::size_t h) { return h != 1; })) {
        entry = fail("copy_structure", where + " not one vertex per part");
        break;
      }
      const auto copy = copy_at(host, tmpl, vals);
      if (!copy) {
        entry = fail("copy_structure", where + " edges missing");
        break;
      }
      // Recover s_1..s_{p-ell} from the U vertices, then s_{d_i} from the labels.
      std::vector<Residue> s(ns.p(), 0);
      const std::span<const Residue> x(vals.data(), vcount);
      for (std::size_t j = 0; j < ns.free_count(); ++j) {
        Residue v = vals[vcount + j];
        for (std::size_t t = 0; t < vcount; ++t) v = f.sub(v, f.mul(coeffs.A(j, t), x[t]));
        s[j] = v;
      }
      for (std::size_t e = 0; e < tmpl.edges.size(); ++e) {
        const std::size_t color = tmpl.edges[e].color;
        if (color >= ns.free_count()) s[color] = copy->labels[e];
      }
      bool ok = ns.system.satisfied_by(s);
      for (std::size_t c = 0; c < ns.p() && ok; ++c) ok = local.contains(c, s[c]);
      for (std::size_t e = 0; e < tmpl.edges.size() && ok; ++e) ok = copy->labels[e] == s[tmpl.edges[e].color];
      if (!ok) {
        entry = fail("copy_structure", where + " recovered s=" + join(ns.to_original(s)));
        break;
      }
    }
    report.checks.push_back(entry);
  }

  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace linrem
