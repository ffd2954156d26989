#include <catch2/catch_amalgamated.hpp>

#include "qk/digraph.hpp"
#include "qk/errors.hpp"

using namespace qk;

namespace {

Digraph c4() { return Digraph::build(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}); }

Digraph two_c4s() {
  return Digraph::build(
      8, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 5}, {5, 6}, {6, 7}, {7, 4}});
}

}  // namespace

TEST_CASE("build validates input") {
  CHECK_THROWS_AS(Digraph::build(2, {{0, 2}}), VertexOutOfRangeError);
  CHECK_THROWS_AS(Digraph::build(2, {{-1, 0}}), VertexOutOfRangeError);
  CHECK_THROWS_AS(Digraph::build(2, {{1, 1}}), LoopEdgeError);
  try {
    Digraph::build(3, {{0, 1}, {2, 2}});
    FAIL("expected a loop error");
  } catch (const LoopEdgeError& e) {
    CHECK(e.v == 2);
  }
}

TEST_CASE("duplicate edges collapse") {
  Digraph g = Digraph::build(2, {{0, 1}, {0, 1}, {0, 1}});
  CHECK(g.edge_count() == 1);
  CHECK(g.out_degree(0) == 1);
}

TEST_CASE("adjacency is sorted and queryable") {
  Digraph g = Digraph::build(4, {{2, 1}, {2, 3}, {2, 0}, {1, 2}});
  CHECK(g.out(2) == VertexSet{0, 1, 3});
  CHECK(g.in(2) == VertexSet{1});
  CHECK(g.out_degree(2) == 3);
  CHECK(g.in_degree(2) == 1);
  CHECK(g.max_out_degree() == 3);
  CHECK(g.has_edge(2, 0));
  CHECK_FALSE(g.has_edge(0, 2));
  CHECK_THROWS_AS(g.require_vertex(4), VertexOutOfRangeError);
}

TEST_CASE("edge listing is lexicographic") {
  Digraph g = c4();
  std::vector<std::pair<int, int>> want{{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  CHECK(g.edges() == want);
  CHECK(g.order() == 4);
  CHECK(g.edge_count() == 4);
}

TEST_CASE("source and sink detection") {
  Digraph path = Digraph::build(3, {{0, 1}, {1, 2}});
  CHECK(sources(path) == VertexSet{0});
  CHECK(sinks(path) == VertexSet{2});
  CHECK(find_source(path) == 0);
  CHECK_FALSE(is_sourceless(path));

  Digraph g = c4();
  CHECK(sources(g).empty());
  CHECK(is_sourceless(g));
  CHECK_FALSE(find_source(g).has_value());
}

TEST_CASE("closed out-neighborhood") {
  CHECK(closed_out_neighborhood(c4(), {0}) == VertexSet{0, 1});
  CHECK(closed_out_neighborhood(c4(), {0, 2}) == VertexSet{0, 1, 2, 3});
}

TEST_CASE("progress set on the four-cycle") {
  Digraph g = c4();
  CHECK(s_of(g, 0) == VertexSet{2});
  CHECK(t_of(g, 0).empty());
}

TEST_CASE("progress set ignores untouched components") {
  Digraph g = two_c4s();
  CHECK(s_of(g, 0) == VertexSet{2});
}

TEST_CASE("isolated members of the progress set") {
  // 3 hangs off the triangle; removing N+[0] = {0,1} leaves both 2 and 3
  // with no remaining neighbors at all.
  Digraph g = Digraph::build(4, {{0, 1}, {1, 2}, {2, 0}, {1, 3}});
  CHECK(s_of(g, 0) == VertexSet{2, 3});
  CHECK(t_of(g, 0) == VertexSet{2, 3});
}

TEST_CASE("progress set distinguishes non-isolated members") {
  // 2 in S(0) keeps an out-edge to 3, so it is not in T(0).
  Digraph g = Digraph::build(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {2, 0}});
  CHECK(s_of(g, 0) == VertexSet{2});
  CHECK(t_of(g, 0).empty());
}

TEST_CASE("distances") {
  Digraph g = c4();
  CHECK(dist(g, 0, 0) == Distance::finite(0));
  CHECK(dist(g, 0, 1) == Distance::finite(1));
  CHECK(dist(g, 0, 3) == Distance::finite(3));
  CHECK(dist(g, 0, 3).hops() == 3);

  Digraph two = Digraph::build(4, {{0, 1}, {2, 3}});
  CHECK(dist(two, 0, 3).is_infinite());
  CHECK_THROWS_AS(dist(two, 0, 3).hops(), Error);
  CHECK(Distance::finite(2) < Distance::infinite());
  CHECK(Distance::finite(2) < Distance::finite(3));
}

TEST_CASE("two-step ball") {
  CHECK(ball2(c4(), 0) == VertexSet{0, 1, 2});
  CHECK(ball2(two_c4s(), 4) == VertexSet{4, 5, 6});
}

TEST_CASE("independence") {
  Digraph g = c4();
  CHECK(is_independent(g, {0, 2}));
  CHECK_FALSE(is_independent(g, {0, 1}));
  CHECK(is_independent(g, {}));
  CHECK(is_independent(g, {3}));
}

TEST_CASE("quasi-kernel recognition") {
  Digraph g = c4();
  CHECK(is_quasi_kernel(g, {0, 2}));
  CHECK(is_quasi_kernel(g, {1, 3}));
  CHECK_FALSE(is_quasi_kernel(g, {0}));      // 3 is two steps away from nobody
  CHECK_FALSE(is_quasi_kernel(g, {0, 1}));   // not independent
  CHECK_FALSE(is_quasi_kernel(g, {}));
}

TEST_CASE("kernel recognition") {
  Digraph g = c4();
  CHECK(is_kernel(g, {0, 2}));
  CHECK_FALSE(is_kernel(g, {0}));
  Digraph tri = Digraph::build(3, {{0, 1}, {1, 2}, {2, 0}});
  CHECK_FALSE(is_kernel(tri, {0}));
  CHECK_FALSE(is_kernel(tri, {1}));
  CHECK_FALSE(is_kernel(tri, {2}));
  Digraph digon = Digraph::build(2, {{0, 1}, {1, 0}});
  CHECK(is_kernel(digon, {0}));
  CHECK(is_kernel(digon, {1}));
}

TEST_CASE("induced deletion relabels downward") {
  InducedSubgraph sub = induced_delete(c4(), {1});
  CHECK(sub.graph.order() == 3);
  CHECK(sub.to_parent == std::vector<int>{0, 2, 3});
  CHECK(sub.from_parent == std::vector<int>{0, -1, 1, 2});
  std::vector<std::pair<int, int>> want{{1, 2}, {2, 0}};
  CHECK(sub.graph.edges() == want);

  InducedSubgraph none = induced_delete(c4(), {});
  CHECK(none.graph == c4());
  InducedSubgraph all = induced_delete(c4(), {0, 1, 2, 3});
  CHECK(all.graph.order() == 0);
}

TEST_CASE("set helpers") {
  VertexSet s = set_normalize({3, 1, 3, 2, 1});
  CHECK(s == VertexSet{1, 2, 3});
  CHECK(set_contains(s, 2));
  CHECK_FALSE(set_contains(s, 4));
  CHECK(set_union_of({1, 3}, {2, 3}) == VertexSet{1, 2, 3});
}

TEST_CASE("digraph equality") {
  CHECK(c4() == c4());
  CHECK_FALSE(c4() == Digraph::build(4, {{0, 1}, {1, 2}, {2, 3}}));
}
