#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "linrem/corpus.hpp"
#include "linrem/error.hpp"
#include "linrem/solutions.hpp"
#include "support.hpp"

using namespace linrem;

namespace {

// Applies a removal and checks nothing survives.
bool leaves_free(const LinearSystem& sys, const SetFamily& sets, const RemovalResult& r) {
  return oracle_solutions(sys, sets.without(r.removed)).empty();
}

}  // namespace

TEST_CASE("counting on the triangle") {
  const auto sys = make_system(5, {{1, 1, 4}}, {0});
  const auto ns = normalize(sys);
  CHECK(count_solutions(ns, uniform_family(5, 3, {1, 2})) == 1);
  CHECK(oracle_solutions(sys, uniform_family(5, 3, {1, 2})).size() == 1);
  CHECK(count_solutions(ns, SetFamily::full(5, 3)) == 25);
  CHECK(count_solutions(ns, SetFamily(5, {{1, 2}, {}, {1, 2}})) == 0);
  CHECK(count_solutions_naive(sys, SetFamily(5, {{1, 2}, {}, {1, 2}})) == 0);
}

TEST_CASE("freeness") {
  const auto ns = normalize(make_system(5, {{1, 1, 4}}, {0}));
  CHECK_FALSE(is_free(ns, uniform_family(5, 3, {1, 2})));
  CHECK(is_free(ns, uniform_family(5, 3, {1})));
  CHECK(is_free(ns, SetFamily(5, {{}, {1, 2}, {1, 2}})));
}

TEST_CASE("structured, naive and oracle counts agree") {
  Rng rng(5);
  for (int t = 0; t < 300; ++t) {
    const std::uint32_t q = std::vector<std::uint32_t>{5, 7, 11}[rng.below(3)];
    const std::size_t ell = 1 + rng.below(2), p = ell + 1 + rng.below(3);
    const LinearSystem sys = random_system(rng, q, ell, p);
    const SetFamily sets = random_family(rng, q, p);
    const auto expected = oracle_solutions(sys, sets);
    REQUIRE(count_solutions(sys, sets) == expected.size());
    REQUIRE(count_solutions(sys, sets, 3) == expected.size());
    REQUIRE(count_solutions_naive(sys, sets) == expected.size());
    std::vector<oracle::Tuple> listed;
    for (const auto& s : list_solutions(sys, sets)) listed.push_back(tuple_of(s));
    REQUIRE(listed == expected);
  }
}

TEST_CASE("unknowns absent from every equation multiply the count") {
  // x1 + x2 + x3 = 0 with x4 unconstrained.
  const auto sys = make_system(7, {{1, 1, 1, 0}}, {0});
  const SetFamily sets(7, {{1, 2, 3}, {0, 4}, {0, 1, 2, 3, 4, 5, 6}, {2, 5, 6}});
  CHECK(count_solutions(sys, sets) == oracle_solutions(sys, sets).size());
  CHECK(count_solutions(sys, sets) % 3 == 0);
}

TEST_CASE("removal distance examples") {
  const auto sys7 = make_system(7, {{1, 1, -1}}, {0});
  const SetFamily s123 = uniform_family(7, 3, {1, 2, 3});
  const RemovalResult r = removal_distance(sys7, s123);
  CHECK(r.budget == 1);
  CHECK(leaves_free(sys7, s123, r));

  const auto sys5 = make_system(5, {{1, 1, 4}}, {0});
  const RemovalResult one = removal_distance(sys5, uniform_family(5, 3, {1, 2}));
  CHECK(one.budget == 1);
  CHECK(one.total == 1);
  CHECK(one.removed == std::vector<std::vector<Residue>>{{1}, {}, {}});

  const RemovalResult none = removal_distance(sys5, uniform_family(5, 3, {1}));
  CHECK(none.budget == 0);
  CHECK(none.total == 0);
}

TEST_CASE("removal distance matches exhaustive search") {
  Rng rng(99);
  for (int t = 0; t < 60; ++t) {
    const std::uint32_t q = rng.chance(1, 2) ? 5 : 7;
    const std::size_t p = 3 + rng.below(2);
    const LinearSystem sys = random_system(rng, q, 1, p);
    std::vector<std::vector<Residue>> raw(p);
    for (auto& s : raw) {
      for (Residue v = 0; v < q; ++v) {
        if (rng.chance(1, 3)) s.push_back(v);
      }
      if (s.size() > 3) s.resize(3);
    }
    const SetFamily sets(q, raw);
    const auto sols = oracle_solutions(sys, sets);
    for (bool per_set : {true, false}) {
      const auto objective = per_set ? RemovalObjective::PerSetMax : RemovalObjective::Total;
      const RemovalResult got = removal_distance(sys, sets, objective);
      const oracle::Removal want = oracle::min_removal(sols, sets_of(sets), per_set);
      REQUIRE(leaves_free(sys, sets, got));
      if (per_set) {
        REQUIRE(got.budget == want.budget);
        REQUIRE(got.total == want.total);
      } else {
        REQUIRE(got.total == want.total);
      }
    }
  }
}

TEST_CASE("removal guard") {
  const auto sys = make_system(11, {{1, 1, -1}}, {0});
  CHECK_THROWS_AS(removal_distance(sys, SetFamily::full(11, 3)), Error);
  // No solutions: nothing to search, so no guard.
  CHECK(removal_distance(sys, SetFamily(11, {{}, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10}}))
            .total == 0);
  const auto sys5 = make_system(5, {{1, 1, -1}}, {0});
  CHECK_THROWS_AS(removal_distance(sys5, SetFamily::full(5, 3), RemovalObjective::PerSetMax, 14), Error);
  CHECK(removal_distance(sys5, SetFamily::full(5, 3), RemovalObjective::PerSetMax, 15).budget > 0);
}

TEST_CASE("two-unknown equations") {
  const auto sys = make_system(7, {{1, 1, 0}}, {4});
  const SetFamily sets(7, {{1, 2}, {2, 3}, {0, 1, 2, 3, 4, 5, 6}});
  const TwoVarRemoval tv = two_var_removal(sys, sets);
  CHECK(tv.option == TwoVarRemoval::Option::PairComponents);
  CHECK(tv.result.removed == std::vector<std::vector<Residue>>{{1, 2}, {}, {}});
  CHECK(leaves_free(sys, sets, tv.result));

  const SetFamily empty3(7, {{1, 2}, {2, 3}, {}});
  const TwoVarRemoval tv2 = two_var_removal(sys, empty3);
  CHECK(tv2.option == TwoVarRemoval::Option::EmptyZeroColumn);
  CHECK(tv2.result.total == 0);

  const SetFamily apart(7, {{1}, {1}, {0}});
  CHECK(two_var_removal(sys, apart).result.total == 0);

  CHECK_THROWS_AS(two_var_removal(make_system(7, {{1, 1, 1}}, {4}), sets), Error);
}
