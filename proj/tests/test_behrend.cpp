#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "linrem/behrend.hpp"
#include "linrem/error.hpp"
#include "oracles.hpp"

using namespace linrem;

using Set = std::vector<std::uint64_t>;

TEST_CASE("3-AP counts") {
  CHECK(count_ap3({1, 2, 3}).total == 5);
  CHECK(count_ap3({1, 2, 3}).nontrivial == 2);
  CHECK(count_ap3({}).total == 0);
  const Set s{1, 2, 4, 8, 9};
  CHECK(count_ap3(s).total == oracle::count_ap3(s).total);
  CHECK(count_ap3(s).nontrivial == oracle::count_ap3(s).nontrivial);
  for (std::uint64_t mask = 0; mask < 4096; mask += 7) {
    Set S;
    for (std::uint64_t v = 0; v < 12; ++v) {
      if (mask >> v & 1) S.push_back(3 * v + 1);
    }
    REQUIRE(count_ap3(S).total == oracle::count_ap3(S).total);
    REQUIRE(count_ap3(S).nontrivial == oracle::count_ap3(S).nontrivial);
  }
}

TEST_CASE("largest 3-AP-free subsets") {
  CHECK(max_ap3_free(1) == Set{1});
  CHECK(max_ap3_free(2) == Set{1, 2});
  CHECK(max_ap3_free(4) == Set{1, 2, 4});
  for (std::uint64_t m = 0; m <= 14; ++m) REQUIRE(max_ap3_free(m) == oracle::max_ap3_free(m));
  CHECK(max_ap3_free(30).size() == 12);
  CHECK_THROWS_AS(max_ap3_free(31), Error);
}

TEST_CASE("digit spheres") {
  CHECK(behrend_sphere(2, 2) == Set{1, 3});
  CHECK(behrend_sphere(2, 1) == Set{1});
  for (std::uint64_t base = 2; base <= 4; ++base) {
    for (std::uint64_t dim = 1; dim <= 4; ++dim) CHECK(oracle::count_ap3(behrend_sphere(base, dim)).nontrivial == 0);
  }
}

TEST_CASE("lower-bound instances") {
  const auto inst = build_lower_bound_instance(16, 2, {1, 2});
  CHECK(inst.S == Set{1, 2, 5, 6, 9, 10, 13, 14});
  CHECK(inst.no_carry);
  CHECK(inst.within_bound);
  CHECK(inst.ap3.total == oracle::count_ap3(inst.S).total);

  const auto empty = build_lower_bound_instance(16, 2, {});
  CHECK(empty.S.empty());
  CHECK(empty.ap3.total == 0);

  const auto one = build_lower_bound_instance(16, 2, {1});
  CHECK(one.S == Set{1, 5, 9, 13});
  CHECK(one.ap3.nontrivial == oracle::count_ap3(one.S).nontrivial);
  CHECK(one.no_carry);

  try {
    build_lower_bound_instance(15, 2, {1});
    FAIL("indivisible n accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IndivisibleAmbient);
  }
}

TEST_CASE("the cube bound holds once n is large against m") {
  // Small n can break |S|^3/m^2: n = 4, m = 2, X = {1} gives S = {1}, one trivial AP.
  CHECK_FALSE(build_lower_bound_instance(4, 2, {1}).within_bound);
  for (std::uint64_t m = 1; m <= 6; ++m) {
    const Set X = max_ap3_free(m);
    for (std::uint64_t n = 2 * m * m * m; n <= 2 * m * m * m + 8 * m; n += 2 * m) {
      const auto inst = build_lower_bound_instance(n, m, X);
      CHECK(inst.no_carry);
      CHECK(inst.within_bound);
    }
  }
}
