#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "starsample/error.hpp"
#include "starsample/graph.hpp"

using namespace starsample;

namespace {

Graph path4() {
  const std::vector<Edge> e{{0, 1}, {1, 2}, {2, 3}};
  return build_graph(e, 4);
}

// Newman's edge-list form of degree assortativity.
double newman_assortativity(const Graph& g) {
  double m = 0, jk = 0, half_sum = 0, half_sq = 0;
  for (const auto& [u, v] : g.edges()) {
    const double j = static_cast<double>(g.degree(u));
    const double k = static_cast<double>(g.degree(v));
    m += 1;
    jk += j * k;
    half_sum += 0.5 * (j + k);
    half_sq += 0.5 * (j * j + k * k);
  }
  const double mean = half_sum / m;
  return (jk / m - mean * mean) / (half_sq / m - mean * mean);
}

}  // namespace

TEST(Graph, BuildDropsLoopsAndDuplicates) {
  const std::vector<Edge> e{{0, 1}, {1, 0}, {2, 2}, {1, 2}, {1, 2}};
  const Graph g = build_graph(e, 4);
  EXPECT_EQ(g.order(), 4u);
  EXPECT_EQ(g.size(), 2u);
  EXPECT_TRUE(g.has_edge(1, 0));
  EXPECT_TRUE(g.has_edge(2, 1));
  EXPECT_FALSE(g.has_edge(2, 2));
  EXPECT_EQ(g.degree(3), 0u);
  EXPECT_EQ(g.ext_degree(1), 3u);
}

TEST(Graph, OutOfRangeIdThrows) {
  const std::vector<Edge> e{{0, 5}};
  EXPECT_THROW(build_graph(e, 5), InputError);
}

TEST(Graph, NeighborListsSortedAndSymmetric) {
  std::mt19937_64 rng(3);
  const auto sg = oracle::random_small_graph(rng, 12, 0.4);
  const Graph g = oracle::to_graph(sg);
  for (Vertex v = 0; v < g.order(); ++v) {
    const auto nb = g.neighbors(v);
    EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
    for (Vertex u : nb) EXPECT_TRUE(g.has_edge(u, v));
    EXPECT_EQ(nb.size(), static_cast<std::size_t>(std::popcount(sg.adj[v])));
  }
}

TEST(Graph, Density) {
  EXPECT_DOUBLE_EQ(path4().density(), 3.0 / 6.0);
  EXPECT_DOUBLE_EQ(Graph::from_unique_edges(1, {}).density(), 0.0);
}

TEST(Graph, EdgesRoundTrip) {
  const Graph g = path4();
  const auto e = g.edges();
  ASSERT_EQ(e.size(), 3u);
  for (const auto& [u, v] : e) EXPECT_LT(u, v);
  const Graph h = build_graph(e, 4);
  EXPECT_EQ(h.edges(), e);
}

TEST(DegreeStats, PathHasKnownAssortativity) {
  const auto ds = degree_stats(path4());
  ASSERT_TRUE(ds.assortativity.has_value());
  EXPECT_NEAR(*ds.assortativity, -0.5, 1e-12);
  EXPECT_EQ(ds.d_max, 2u);
  EXPECT_DOUBLE_EQ(ds.d_avg, 1.5);
  EXPECT_EQ(ds.degree_counts.at(1), 2u);
  EXPECT_DOUBLE_EQ(ds.w.at(2), 0.5);
}

TEST(DegreeStats, StarIsPerfectlyDisassortative) {
  const std::vector<Edge> e{{0, 1}, {0, 2}, {0, 3}};
  const auto ds = degree_stats(build_graph(e, 4));
  ASSERT_TRUE(ds.assortativity.has_value());
  EXPECT_NEAR(*ds.assortativity, -1.0, 1e-12);
}

TEST(DegreeStats, RegularGraphHasNoAssortativity) {
  const std::vector<Edge> cycle{{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  EXPECT_FALSE(degree_stats(build_graph(cycle, 4)).assortativity.has_value());
  EXPECT_FALSE(degree_stats(Graph::from_unique_edges(3, {})).assortativity.has_value());
}

TEST(DegreeStats, MatchesNewmanFormulaOnRandomGraphs) {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const Graph g = oracle::to_graph(oracle::random_small_graph(rng, 14, 0.3));
    const auto ds = degree_stats(g);
    if (!ds.assortativity) continue;
    EXPECT_NEAR(*ds.assortativity, newman_assortativity(g), 1e-10);
  }
}

TEST(TargetSet, SortsAndDeduplicates) {
  const TargetSet t({3, 1, 3}, 5);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t.members()[0], 1u);
  EXPECT_TRUE(t.contains(3));
  EXPECT_FALSE(t.contains(2));
}

TEST(TargetSet, RejectsEmptyAndOutOfRange) {
  EXPECT_THROW(TargetSet({}, 5), InputError);
  EXPECT_THROW(TargetSet({5}, 5), InputError);
}

TEST(ExtendedNeighborhood, PathExample) {
  const auto ext = extended_neighborhood(path4(), TargetSet({0}, 4));
  EXPECT_EQ(ext.n_e_star, 2u);
  EXPECT_EQ(ext.vertices, (std::vector<Vertex>{0, 1}));
  EXPECT_DOUBLE_EQ(ext.d_in, 1.5);
  ASSERT_TRUE(ext.d_out.has_value());
  EXPECT_DOUBLE_EQ(*ext.d_out, 1.5);
}

TEST(ExtendedNeighborhood, CoversWholeGraph) {
  const auto ext = extended_neighborhood(path4(), TargetSet({1, 2}, 4));
  EXPECT_EQ(ext.n_e_star, 4u);
  EXPECT_FALSE(ext.d_out.has_value());
}

TEST(ExtendedNeighborhood, MatchesBitmaskCount) {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 30; ++rep) {
    const auto sg = oracle::random_small_graph(rng, 8, 0.3);
    const Graph g = oracle::to_graph(sg);
    for (std::uint32_t mask : oracle::small_targets(8, 2)) {
      const auto ext = extended_neighborhood(g, TargetSet(oracle::members(mask), 8));
      EXPECT_EQ(static_cast<int>(ext.n_e_star), oracle::ext_target_order(sg, mask));
    }
  }
}
