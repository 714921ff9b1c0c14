#include "common.hpp"

using testsupport::complete;
using testsupport::complete_bipartite;
using testsupport::cycle;
using testsupport::path;
using testsupport::star;

TEST(EulerTour, Examples) {
  auto t = dt::euler_tour(3, {{0, 1}, {1, 2}, {2, 0}});
  EXPECT_EQ(t.size(), 3u);
  EXPECT_EQ(dt::euler_tour(2, {{0, 1}, {0, 1}}), dt::vertex_tour({0, 1}));
  auto bow = dt::euler_tour(5, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}});
  EXPECT_EQ(bow.size(), 6u);
  EXPECT_ERROR(dt::euler_tour(3, {{0, 1}, {1, 2}}), OddDegree);
  EXPECT_ERROR(dt::euler_tour(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}}), Disconnected);
}

TEST(MinVertexCover, Examples) {
  EXPECT_EQ(dt::min_vertex_cover_bf(path(2)).size(), 1u);
  EXPECT_EQ(dt::min_vertex_cover_bf(complete(4)), (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(dt::min_vertex_cover_bf(star(5)), (std::vector<int>{0}));
  EXPECT_ERROR(dt::min_vertex_cover_bf(path(21)), TooLarge);
}

TEST(MinDominatingSet, Examples) {
  EXPECT_EQ(dt::min_dominating_set_bf(complete(4)).size(), 1u);
  EXPECT_EQ(dt::min_dominating_set_bf(path(3)), (std::vector<int>{1}));
  EXPECT_EQ(dt::min_dominating_set_bf(cycle(6)).size(), 2u);
}

TEST(MinCycleSubpartition, Examples) {
  auto p = dt::tour_cycle_params(R(1, 4));
  auto k4 = dt::min_cycle_subpartition_bf(complete(4), p);
  EXPECT_EQ(k4.weight(4), R(6));
  ASSERT_EQ(k4.cycles.size(), 1u);
  EXPECT_EQ(k4.cycles[0].size(), 4u);
  auto tree = dt::min_cycle_subpartition_bf(star(3), p);
  EXPECT_TRUE(tree.cycles.empty());
  EXPECT_EQ(tree.weight(4), R(4) + R(3, 2) * R(4) - R(1));
  auto k33 = dt::min_cycle_subpartition_bf(complete_bipartite(3, 3), p);
  EXPECT_EQ(k33.weight(6), R(9));
  ASSERT_EQ(k33.cycles.size(), 1u);
  EXPECT_EQ(k33.cycles[0].size(), 6u);
}

TEST(ValidateCycles, RejectsOverlap) {
  dt::CycleSubpartition c;
  c.cycles = {{0, 1, 2}, {0, 2, 3}};
  EXPECT_ERROR(dt::validate_cycles(complete(4), c), NotDisjointCycles);
}

TEST(TspShortest, Examples) {
  EXPECT_EQ(dt::tsp_shortest_bf(complete(3)), R(3));
  EXPECT_EQ(dt::tsp_shortest_bf(complete_bipartite(3, 3)), R(6));
  EXPECT_EQ(dt::tsp_shortest_bf(star(3)), R(6));
  EXPECT_EQ(dt::tsp_shortest_bf(testsupport::cube3()), R(8));
}

TEST(SplitPartition, Examples) {
  auto p = dt::split_partition(path(4));
  EXPECT_EQ(p.clique.size() + p.independent.size(), 4u);
  EXPECT_THROW(dt::split_partition(cycle(4)), dt::Error);
  EXPECT_ERROR(dt::split_partition(cycle(5)), NotSplit);
  auto k4 = dt::split_partition(complete(4));
  EXPECT_GE(k4.clique.size(), 3u);
  std::mt19937 rng(9);
  for (int it = 0; it < 30; ++it) {
    auto g = testsupport::random_split(rng, 2 + it % 4, 1 + it % 5);
    auto sp = dt::split_partition(g);
    EXPECT_FALSE(sp.clique.empty());
    for (auto a : sp.clique)
      for (auto b : sp.clique)
        if (a != b) EXPECT_TRUE(g.adjacent(a, b));
    for (auto a : sp.independent)
      for (auto b : sp.independent) EXPECT_FALSE(g.adjacent(a, b));
  }
}

TEST(NeglectedVertices, Basic) {
  auto p = path(5);
  // vertex 3 sits at distance exactly 1 from the stop at 2
  auto n = dt::neglected_vertices(p, dt::vertex_tour({0, 1, 2, 1}));
  EXPECT_EQ(n, (std::vector<int>{3, 4}));
}
