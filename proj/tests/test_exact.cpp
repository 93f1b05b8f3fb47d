#include "doctest.h"

#include "rainbow/exact.hpp"
#include "rainbow/generators.hpp"
#include "test_util.hpp"

using namespace rainbow;
using namespace rainbow::testutil;

TEST_SUITE_BEGIN("exact");

TEST_CASE("max_rainbow trivial and reference cases") {
  const Instance single = bipartite(2, 2, 2, {{{0, 0}, {1, 1}}});
  CHECK(max_rainbow(single).size == 1);

  const SolveResult drisko3 = max_rainbow(drisko_instance(3));
  CHECK(drisko3.size == 2);
  CHECK(drisko3.optimal);

  const SolveResult remark2 = max_rainbow(remark_general_instance(2));
  CHECK(remark2.size == 1);
  CHECK(remark2.optimal);
}

TEST_CASE("witness is always a valid rainbow matching of the right size") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const Instance inst = random_instance({4, 6, 5, 5, derive_seed(21, seed)});
    const SolveResult res = max_rainbow(inst);
    CHECK(is_rainbow_matching(inst, res.witness));
    CHECK(res.witness.size() == res.size);
  }
}

TEST_CASE("brute force reference cases") {
  const Instance conflict = bipartite(1, 1, 1, {{{0, 0}}, {{0, 0}}});
  CHECK(brute_force_max_rainbow(conflict) == 1);

  CHECK(brute_force_max_rainbow(drisko_instance(2)) == 1);

  const Instance disjoint = bipartite(1, 3, 3, {{{0, 0}}, {{1, 1}}, {{2, 2}}});
  CHECK(brute_force_max_rainbow(disjoint) == 3);
}

TEST_CASE("brute force guard") {
  // 24 classes of 3 edges: 4^24 select combinations, far past the guard
  const Instance big = drisko_instance(13);
  CHECK_THROWS_AS(brute_force_max_rainbow(big), TooLargeError);
}

TEST_CASE("solver agrees with brute force on random instances") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    std::mt19937_64 rng(derive_seed(31, seed));
    const int n = 1 + static_cast<int>(bounded_random(rng, 3));
    const int classes = 1 + static_cast<int>(bounded_random(rng, 5));
    const int sa = n + static_cast<int>(bounded_random(rng, 3));
    const int sb = n + static_cast<int>(bounded_random(rng, 3));
    const Instance inst = random_instance({n, classes, sa, sb, derive_seed(32, seed)});

    const int reference = brute_force_max_rainbow(inst);
    SolverConfig with_bound, without_bound;
    without_bound.use_matching_bound = false;
    CHECK(max_rainbow(inst, with_bound).size == reference);
    CHECK(max_rainbow(inst, without_bound).size == reference);
  }
}

TEST_CASE("adding a class never shrinks the maximum") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Instance inst = random_instance({3, 4, 4, 4, derive_seed(41, seed)});
    const int before = max_rainbow(inst).size;
    inst.matchings.push_back(inst.matchings[0]);
    CHECK(max_rainbow(inst).size >= before);
  }
}

TEST_CASE("has_rainbow_of_size") {
  const Instance d4 = drisko_instance(4);
  CHECK(has_rainbow_of_size(d4, 0));
  CHECK(has_rainbow_of_size(d4, 3));
  CHECK_FALSE(has_rainbow_of_size(d4, 4));
  CHECK_THROWS_AS(has_rainbow_of_size(d4, -1), std::invalid_argument);
  CHECK_THROWS_AS(has_rainbow_of_size(d4, 5), std::invalid_argument);
}

TEST_CASE("node budget reports non-optimal") {
  SolverConfig cfg;
  cfg.node_budget = 3;
  const SolveResult res = max_rainbow(drisko_instance(5), cfg);
  CHECK_FALSE(res.optimal);
  CHECK(res.nodes_explored <= 4);
  CHECK(is_rainbow_matching(drisko_instance(5), res.witness));
}

TEST_CASE("node counts are reproducible") {
  const Instance inst = drisko_instance(4);
  const SolveResult a = max_rainbow(inst);
  const SolveResult b = max_rainbow(inst);
  CHECK(a.nodes_explored == b.nodes_explored);
  CHECK(a.witness == b.witness);
}

TEST_CASE("matching bound stride still yields exact sizes") {
  SolverConfig strided;
  strided.matching_bound_stride = 3;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Instance inst = random_instance({3, 5, 3, 3, derive_seed(51, seed)});
    CHECK(max_rainbow(inst, strided).size == brute_force_max_rainbow(inst));
  }
}

TEST_CASE("solver rejects invalid instances") {
  const Instance bad = bipartite(2, 2, 2, {{{0, 0}, {0, 1}}});
  CHECK_THROWS_AS(max_rainbow(bad), std::invalid_argument);
  CHECK_THROWS_AS(brute_force_max_rainbow(bad), std::invalid_argument);
}

TEST_CASE("solver rejects non-positive budgets") {
  const Instance inst = drisko_instance(2);
  SolverConfig cfg;
  cfg.node_budget = 0;
  CHECK_THROWS_AS(max_rainbow(inst, cfg), std::invalid_argument);
  cfg.node_budget.reset();
  cfg.time_budget_ms = -5;
  CHECK_THROWS_AS(max_rainbow(inst, cfg), std::invalid_argument);
  cfg.time_budget_ms.reset();
  cfg.matching_bound_stride = 0;
  CHECK_THROWS_AS(has_rainbow_of_size(inst, 1, cfg), std::invalid_argument);
}

TEST_CASE("blossom matcher agrees with brute force") {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    std::mt19937_64 rng(derive_seed(61, seed));
    const int vcount = 2 + static_cast<int>(bounded_random(rng, 9));
    std::vector<Edge> edges;
    for (int u = 0; u < vcount; ++u)
      for (int v = u + 1; v < vcount; ++v)
        if (bounded_random(rng, 3) == 0) edges.push_back({u, v});
    CHECK(max_matching_size(vcount, edges) == brute_max_matching(vcount, edges));
  }
  // odd cycle needs a blossom contraction
  const std::vector<Edge> c5 = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}};
  CHECK(max_matching_size(5, c5) == 2);
}

TEST_SUITE_END();
