#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "test_support.hpp"
#include "valnet/graph.hpp"
#include "valnet/rng.hpp"

using namespace valnet;

TEST_CASE("build_valued_graph: empty entry list gives the empty graph") {
  const ValuedGraph g = build_valued_graph(3, {});
  CHECK(g.size() == 3);
  CHECK(g.weights().isZero(0.0));
  CHECK(graph_stats(g).density == 0.0);
}

TEST_CASE("build_valued_graph: unit triangle") {
  const ValuedGraph g = build_valued_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
  CHECK(g.weight(0, 1) == 1.0);
  CHECK(g.weight(1, 0) == 1.0);
  CHECK(g.upper_triangle_entries().size() == 3);
  CHECK(graph_stats(g).density == 1.0);
}

TEST_CASE("build_valued_graph: rejections") {
  CHECK_THROWS_AS(build_valued_graph(2, {{0, 1, -1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(build_valued_graph(2, {{0, 0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(build_valued_graph(2, {{0, 2, 1.0}}), std::out_of_range);
  CHECK_THROWS_AS(build_valued_graph(3, {{0, 1, 1.0}, {1, 0, 2.0}}),
                  std::invalid_argument);
}

TEST_CASE("ValuedGraph constructor validates invariants") {
  Eigen::MatrixXd asym = Eigen::MatrixXd::Zero(2, 2);
  asym(0, 1) = 1.0;
  CHECK_THROWS_AS(ValuedGraph(2, asym), std::invalid_argument);

  Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(2, 2);
  diag(0, 0) = 1.0;
  CHECK_THROWS_AS(ValuedGraph(2, diag), std::invalid_argument);
}

TEST_CASE("symmetrize_or: single arc, mutual arcs, empty") {
  Eigen::MatrixXi arcs = Eigen::MatrixXi::Zero(3, 3);
  arcs(0, 1) = 1;
  const UndirectedBinaryGraph one = symmetrize_or(DirectedBinaryGraph(3, arcs));
  CHECK(one.edge(0, 1));
  CHECK(one.edge(1, 0));
  CHECK(one.edge_count() == 1);

  arcs(1, 0) = 1;
  const UndirectedBinaryGraph mutual = symmetrize_or(DirectedBinaryGraph(3, arcs));
  CHECK(mutual.edge_count() == 1);

  const UndirectedBinaryGraph empty =
      symmetrize_or(DirectedBinaryGraph(3, Eigen::MatrixXi::Zero(3, 3)));
  CHECK(empty.edge_count() == 0);
}

TEST_CASE("symmetrize_or: edge count bounds and idempotence over random arcs") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(8));
    Eigen::MatrixXi arcs = Eigen::MatrixXi::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i != j && rng.uniform() < 0.3) arcs(i, j) = 1;
      }
    }
    const DirectedBinaryGraph g(n, arcs);
    const UndirectedBinaryGraph sym = symmetrize_or(g);
    const long arc_count = g.arc_count();
    CHECK(sym.edge_count() <= arc_count);
    CHECK(2 * sym.edge_count() >= arc_count);  // edges >= ceil(arcs / 2)

    // applying the symmetrized edge matrix as arcs is a fixed point
    const DirectedBinaryGraph as_arcs(n, sym.edges());
    const UndirectedBinaryGraph again = symmetrize_or(as_arcs);
    CHECK(again.edges() == sym.edges());
  }
}

TEST_CASE("build_valued_graph round-trips through upper-triangle entries") {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(10));
    const ValuedGraph g = test::random_graph(n, 0.4, rng);
    const ValuedGraph rebuilt = build_valued_graph(n, g.upper_triangle_entries());
    CHECK(rebuilt.weights() == g.weights());
  }
}

TEST_CASE("graph_stats: density, degree and isolates") {
  const ValuedGraph k3 = build_valued_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
  CHECK(graph_stats(k3).density == doctest::Approx(1.0));

  const ValuedGraph empty4 = build_valued_graph(4, {});
  CHECK(graph_stats(empty4).density == 0.0);
  CHECK(graph_stats(empty4).isolates == 4);

  const ValuedGraph path = build_valued_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  CHECK(graph_stats(path).density == doctest::Approx(2.0 / 3.0));
  CHECK(graph_stats(path).isolates == 0);

  CHECK_THROWS_AS(graph_stats(build_valued_graph(1, {})), std::invalid_argument);
}

TEST_CASE("graph_stats: directed density uses ordered pairs") {
  Eigen::MatrixXi arcs = Eigen::MatrixXi::Zero(3, 3);
  arcs(0, 1) = 1;
  arcs(1, 0) = 1;
  arcs(2, 0) = 1;
  const GraphStats s = graph_stats(DirectedBinaryGraph(3, arcs));
  CHECK(s.density == doctest::Approx(3.0 / 6.0));
  CHECK(s.mean_degree == doctest::Approx(1.0));
  CHECK(s.isolates == 0);
}
