#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "linrem/corpus.hpp"
#include "linrem/error.hpp"
#include "linrem/hrep.hpp"
#include "linrem/solutions.hpp"
#include "support.hpp"

using namespace linrem;

namespace {

struct Built {
  NormalizedSystem ns;
  CoefficientTables coeffs;
  Template tmpl;
  Host host;
};

Built build(const LinearSystem& sys, const SetFamily& sets, unsigned workers = 1) {
  NormalizedSystem ns = normalize(sys);
  CoefficientTables coeffs = build_coefficients(ns);
  Template tmpl = build_template(ns);
  Host host = build_host(ns, coeffs, sets, tmpl, workers);
  return {std::move(ns), std::move(coeffs), std::move(tmpl), std::move(host)};
}

std::vector<std::size_t> parts_of(const Template& t, std::size_t color) {
  for (const auto& e : t.edges) {
    if (e.color == color) return e.parts;
  }
  return {};
}

}  // namespace

TEST_CASE("triangle tables and template") {
  const auto ns = normalize(make_system(7, {{1, 1, -1}}, {0}));
  const auto c = build_coefficients(ns);
  CHECK(c.A == Matrix(2, 1, {1, 6}));
  REQUIRE(c.B.size() == 1);
  CHECK(c.B[0] == Matrix(1, 1, {1}));
  CHECK(oracle::mod(c.A(0, 0) * 1 + c.A(1, 0), 7) == 0);

  const Template t = build_template(ns);
  CHECK(t.r == 2);
  CHECK(t.k == 3);
  CHECK(parts_of(t, 0) == std::vector<std::size_t>{0, 1});
  CHECK(parts_of(t, 1) == std::vector<std::size_t>{0, 2});
  CHECK(parts_of(t, 2) == std::vector<std::size_t>{1, 2});
  CHECK(t.part_name(0) == "V1");
  CHECK(t.part_name(2) == "U2");
}

TEST_CASE("four-term progression tables and template") {
  const auto ns = normalize(make_system(5, {{1, -2, 1, 0}, {0, 1, -2, 1}}, {0, 0}));
  const auto c = build_coefficients(ns);
  CHECK(c.A == Matrix(2, 2, {1, 1, 3, 4}));
  for (std::size_t i = 0; i < 2; ++i) {
    const std::size_t t = ns.I[i][0];
    CHECK(oracle::mod(std::int64_t{c.A(0, t)} * ns.system.M()(i, 0) + c.A(1, t), 5) == 0);
    CHECK(oracle::determinant(rows_of(c.B[i]), 5) != 0);
  }
  const Template t = build_template(ns);
  CHECK(t.r == 3);
  CHECK(t.k == 4);
  // f_3 = {V2, U1, U2}, f_4 = {V1, U1, U2}
  CHECK(parts_of(t, 2) == std::vector<std::size_t>{1, 2, 3});
  CHECK(parts_of(t, 3) == std::vector<std::size_t>{0, 2, 3});
}

TEST_CASE("a single equation with p non-zero unknowns is (p-1)-uniform") {
  for (std::size_t p = 3; p <= 6; ++p) {
    std::vector<std::int64_t> row(p);
    for (std::size_t j = 0; j < p; ++j) row[j] = static_cast<std::int64_t>(j % 4) + 1;
    const auto ns = normalize(make_system(11, {row}, {3}));
    CHECK(ns.r == p - 1);
    CHECK(build_template(ns).edges.size() == p);
  }
}

TEST_CASE("triangle host over F_5") {
  const auto b = build(make_system(5, {{1, 1, -1}}, {0}), uniform_family(5, 3, {1, 2}));
  CHECK(b.host.edge_count() == 30);
  // Color 1: {x, s + x}; color 2: {x, s - x}; color 3: {y1, s - y1}.
  for (Residue s : {1u, 2u}) {
    for (Residue x = 0; x < 5; ++x) {
      const std::vector<VertexId> e1{b.host.vertex(0, x), b.host.vertex(1, (s + x) % 5)};
      const std::vector<VertexId> e2{b.host.vertex(0, x), b.host.vertex(2, (s + 5 - x) % 5)};
      const std::vector<VertexId> e3{b.host.vertex(1, x), b.host.vertex(2, (s + 5 - x) % 5)};
      CHECK(b.host.find_colored(e1, 0));
      CHECK(b.host.find_colored(e2, 1));
      CHECK(b.host.find_colored(e3, 2));
      CHECK(b.host.edge(*b.host.find(e3)).label == s);
    }
  }
}

TEST_CASE("empty sets give an empty host") {
  const auto b = build(make_system(5, {{1, 1, -1}}, {0}), SetFamily(5, {{}, {}, {}}));
  CHECK(b.host.edge_count() == 0);
}

TEST_CASE("copies of the solution (1,1,2)") {
  const auto b = build(make_system(5, {{1, 1, -1}}, {0}), uniform_family(5, 3, {1, 2}));
  const std::vector<Residue> s{1, 1, 2};
  const auto copies = copies_for_solution(b.host, b.tmpl, b.ns, b.coeffs, s);
  REQUIRE(copies.size() == 5);
  for (Residue x = 0; x < 5; ++x) {
    CHECK(copies[x].x == std::vector<Residue>{x});
    CHECK(copies[x].y == std::vector<Residue>{(1 + x) % 5, (1 + 5 - x) % 5});
    CHECK(copies[x].labels == s);
  }
  std::set<EdgeId> seen;
  for (const auto& c : copies) {
    for (EdgeId e : c.edges) CHECK(seen.insert(e).second);
  }
  CHECK(seen.size() == 15);
  CHECK_THROWS_AS(copies_for_solution(b.host, b.tmpl, b.ns, b.coeffs, std::vector<Residue>{3, 3, 1}), Error);
}

TEST_CASE("corpus: tables, per-(color,label) counts and B_i x + c") {
  for (const auto& inst : make_corpus(40, 31)) {
    const auto& ns = inst.ns;
    const auto& f = ns.field();
    const auto coeffs = build_coefficients(ns);
    const auto tmpl = build_template(ns);
    const Host host = build_host(ns, coeffs, inst.sets, tmpl);
    const std::uint64_t per = checked_pow(f.q(), ns.r - 1);
    CHECK(host.edge_count() == per * inst.sets.total_size());
    for (const auto& e : tmpl.edges) CHECK(e.parts.size() == ns.r);
    for (std::size_t i = 0; i < ns.ell(); ++i) CHECK(oracle::determinant(rows_of(coeffs.B[i]), f.q()) != 0);

    const auto sols = list_solutions(ns, inst.sets);
    for (std::size_t n = 0; n < std::min<std::size_t>(sols.size(), 3); ++n) {
      const auto s = ns.to_normalized(sols[n]);
      for (const auto& copy : copies_for_solution(host, tmpl, ns, coeffs, s)) {
        for (std::size_t i = 0; i < ns.ell(); ++i) {
          // z: the copy's values on V_j (j outside I_i) and U_{j_g} (at position I_i[g]).
          std::vector<Residue> z = copy.x;
          for (std::size_t g = 0; g < ns.I[i].size(); ++g) z[ns.I[i][g]] = copy.y[ns.W[i][g]];
          for (std::size_t j = 0; j < ns.r - 1; ++j) {
            Residue v = 0;
            for (std::size_t t = 0; t < ns.r - 1; ++t) v = f.add(v, f.mul(coeffs.B[i](j, t), copy.x[t]));
            const auto pos = std::find(ns.I[i].begin(), ns.I[i].end(), j);
            if (pos != ns.I[i].end()) v = f.add(v, s[ns.W[i][static_cast<std::size_t>(pos - ns.I[i].begin())]]);
            CHECK(z[j] == v);
          }
        }
      }
    }
  }
}

TEST_CASE("parallel build gives the same host") {
  const auto sys = make_system(7, {{1, -2, 1, 0}, {0, 1, -2, 1}}, {0, 0});
  const SetFamily sets(7, {{0, 1, 3}, {2, 5}, {0, 1, 2, 3, 4, 5, 6}, {6}});
  const auto one = build(sys, sets, 1);
  const auto four = build(sys, sets, 4);
  CHECK(one.host.dump(one.tmpl) == four.host.dump(four.tmpl));
}

TEST_CASE("dump format") {
  const auto b = build(make_system(5, {{1, 1, -1}}, {0}), SetFamily(5, {{1}, {}, {}}));
  CHECK(b.host.dump(b.tmpl) == "1 1 V1:0 U1:1\n1 1 V1:1 U1:2\n1 1 V1:2 U1:3\n1 1 V1:3 U1:4\n1 1 V1:4 U1:0\n");
}

TEST_CASE("simplicity is enforced on insertion") {
  Host h(3, 5, 2, 3);
  const std::vector<VertexId> e{h.vertex(0, 1), h.vertex(1, 2)};
  h.add_edge(0, 1, e);
  try {
    h.add_edge(2, 1, std::vector<VertexId>{e[1], e[0]});
    FAIL("parallel edge accepted");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::SimplicityViolation);
  }
  h.add_edge(2, 1, e, false);
  CHECK(h.edge_count() == 2);
  CHECK(h.find_colored(e, 0));
  h.erase_edge(0);
  CHECK_FALSE(h.find(e));
  CHECK_THROWS_AS(h.erase_edge(0), Error);
}
