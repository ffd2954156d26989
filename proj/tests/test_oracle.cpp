#include <catch2/catch_amalgamated.hpp>

#include <chrono>

#include "qk/digraph.hpp"
#include "qk/errors.hpp"
#include "qk/generate.hpp"
#include "qk/oracle.hpp"
#include "qk/solver.hpp"

using namespace qk;

TEST_CASE("four-cycle optimum") {
  VertexSet q = smallest_quasi_kernel(directed_cycle(4));
  CHECK(q == VertexSet{0, 2});
  CHECK(quasi_kernel_number(directed_cycle(4)) == 2);
}

TEST_CASE("triangle optimum is a single vertex") {
  VertexSet q = smallest_quasi_kernel(directed_cycle(3));
  CHECK(q == VertexSet{0});  // lexicographically first among the singletons
}

TEST_CASE("tournament optimum") {
  VertexSet q = smallest_quasi_kernel(paley_tournament(7));
  CHECK(q == VertexSet{0});
}

TEST_CASE("disjoint four-cycles need two vertices each") {
  CHECK(smallest_quasi_kernel(disjoint_c4s(2)) == VertexSet{0, 2, 4, 6});
  CHECK(quasi_kernel_number(disjoint_c4s(3)) == 6);
}

TEST_CASE("results are always verified quasi-kernels") {
  for (uint64_t seed = 1; seed <= 25; ++seed) {
    Digraph g = random_sourceless(4 + static_cast<int>(seed % 9), 2, seed,
                                  seed % 2 == 0);
    VertexSet q = smallest_quasi_kernel(g);
    CHECK(is_quasi_kernel(g, q));
  }
}

TEST_CASE("optimum never beats itself under relabeling of strategies") {
  for (uint64_t seed = 1; seed <= 15; ++seed) {
    Digraph g = random_sourceless(12, 3, seed, false);
    auto exact = smallest_quasi_kernel(g);
    auto greedy = solve(g, Strategy::tratio(Rational(1)));
    CHECK(exact.size() <= greedy.q.size());
  }
}

TEST_CASE("kernel search") {
  CHECK_FALSE(smallest_kernel(directed_cycle(3)).has_value());
  auto k4 = smallest_kernel(directed_cycle(4));
  REQUIRE(k4.has_value());
  CHECK(*k4 == VertexSet{0, 2});
  auto kd = smallest_kernel(Digraph::build(2, {{0, 1}, {1, 0}}));
  REQUIRE(kd.has_value());
  CHECK(*kd == VertexSet{0});
}

TEST_CASE("order budget") {
  OracleBudget tight;
  tight.max_n = 7;
  CHECK_THROWS_AS(smallest_quasi_kernel(disjoint_c4s(2), tight), BudgetExceededError);
  CHECK(smallest_quasi_kernel(paley_tournament(7), tight) == VertexSet{0});
  CHECK_THROWS_AS(smallest_quasi_kernel(Digraph::build(0, {})), Error);
}

TEST_CASE("node budget") {
  OracleBudget tiny;
  tiny.max_subsets = 3;
  CHECK_THROWS_AS(smallest_quasi_kernel(disjoint_c4s(3), tiny), BudgetExceededError);
}

TEST_CASE("time budget") {
  OracleBudget rushed;
  rushed.time_limit = std::chrono::milliseconds(0);
  CHECK_THROWS_AS(smallest_quasi_kernel(disjoint_c4s(6), rushed), BudgetExceededError);
}
