#include <algorithm>
#include <numeric>
#include <sstream>

#include <gtest/gtest.h>

#include "irrigation/geometry.hpp"
#include "irrigation/graph_analysis.hpp"
#include "irrigation/irrigation_graph.hpp"
#include "irrigation/random.hpp"
#include "irrigation/rgg.hpp"
#include "oracles.hpp"

namespace irr {
namespace {

IrrigationGraph graph_from(std::vector<std::vector<VertexId>> lists, int budget) {
  std::vector<std::size_t> offsets{0};
  std::vector<VertexId> flat;
  for (const auto& l : lists) {
    flat.insert(flat.end(), l.begin(), l.end());
    offsets.push_back(flat.size());
  }
  return IrrigationGraph(std::move(offsets), std::move(flat), {budget}, 1.0, 0);
}

TEST(DisjointSets, UniteAndCount) {
  DisjointSets s(5);
  EXPECT_EQ(s.set_count(), 5u);
  EXPECT_TRUE(s.unite(0, 1));
  EXPECT_FALSE(s.unite(1, 0));
  EXPECT_TRUE(s.unite(3, 4));
  EXPECT_TRUE(s.unite(1, 4));
  EXPECT_EQ(s.set_count(), 2u);
  EXPECT_EQ(s.set_size(3), 4u);
  EXPECT_EQ(s.find(0), s.find(4));
  EXPECT_NE(s.find(2), s.find(0));
}

TEST(Components, NoEdgesGivesSingletons) {
  const auto g = graph_from({{}, {}, {}, {}}, 1);
  const auto lab = components(full_view(g));
  EXPECT_EQ(lab.count, 4u);
  EXPECT_EQ(lab.labels, (std::vector<std::uint32_t>{0, 1, 2, 3}));
  EXPECT_FALSE(lab.connected());
  EXPECT_FALSE(is_connected(full_view(g)));
}

TEST(Components, PathIsConnected) {
  const auto g = graph_from({{1}, {2}, {3}, {4}, {}}, 1);
  EXPECT_TRUE(is_connected(full_view(g)));
  EXPECT_EQ(components(full_view(g)).sizes, (std::vector<std::size_t>{5}));
  EXPECT_FALSE(is_connected(StageView(g, 0)));
}

TEST(Components, SingleVertexIsConnected) {
  const auto g = graph_from({{}}, 1);
  EXPECT_TRUE(is_connected(full_view(g)));
}

TEST(Components, LabelsFollowSmallestMember) {
  const auto g = graph_from({{3}, {2}, {1}, {0}, {}}, 1);
  const auto lab = components(full_view(g));
  EXPECT_EQ(lab.labels, (std::vector<std::uint32_t>{0, 1, 1, 0, 2}));
  EXPECT_EQ(lab.sizes, (std::vector<std::size_t>{2, 2, 1}));
}

TEST(Components, AgreeWithBreadthFirstOracle) {
  SplitMix64 rng(77);
  for (int instance = 0; instance < 200; ++instance) {
    const int d = 1 + instance % 3;
    const std::size_t n = 5 + rng.below(300);
    const double r = 0.02 + 0.3 * rng.uniform01();
    const int c = 1 + static_cast<int>(rng.below(3));
    const auto index = build_index(sample_points(n, d, rng()), r);
    const int budget[] = {c};
    const auto g = sample_irrigation(index, budget, rng());
    const auto view = full_view(g);
    const auto lab = components(view);
    ASSERT_EQ(lab.labels, oracle::bfs_labels(oracle::undirected_adjacency(view))) << "instance " << instance;
    ASSERT_EQ(is_connected(view), lab.count == 1);
    ASSERT_EQ(std::accumulate(lab.sizes.begin(), lab.sizes.end(), std::size_t{0}), n);
  }
}

TEST(Components, GeometricGraphAgreesWithOracle) {
  SplitMix64 rng(78);
  for (int instance = 0; instance < 100; ++instance) {
    const int d = 1 + instance % 3;
    const std::size_t n = 5 + rng.below(200);
    const double r = 0.02 + 0.2 * rng.uniform01();
    const auto pts = sample_points(n, d, rng());
    const auto lab = rgg_components(build_index(pts, r));
    ASSERT_EQ(lab.labels, oracle::bfs_labels(oracle::all_pairs_neighbors(pts, r)));
  }
}

TEST(Components, Idempotent) {
  const auto index = build_index(sample_points(500, 2, 3), 0.06);
  const int budget[] = {2};
  const auto g = sample_irrigation(index, budget, 4);
  const auto a = components(full_view(g));
  const auto b = components(full_view(g));
  EXPECT_EQ(a.labels, b.labels);
  EXPECT_EQ(a.sizes, b.sizes);
}

TEST(Components, MonotoneAcrossStages) {
  const auto index = build_index(sample_points(600, 2, 5), 0.05);
  const int budgets[] = {1, 1, 1};
  const auto g = sample_irrigation(index, budgets, 6);
  std::size_t previous = 601;
  for (std::size_t s = 0; s <= 3; ++s) {
    const auto count = components(StageView(g, s)).count;
    EXPECT_LE(count, previous);
    previous = count;
  }
}

TEST(IsolatedCliques, CraftedTriangle) {
  // 0-1-2 form a triangle with c = 2; 3-4 is an edge; 5 is isolated.
  const auto g = graph_from({{1, 2}, {2, 0}, {0, 1}, {4}, {3}, {}}, 2);
  const auto report = find_isolated_cliques(full_view(g), 2);
  ASSERT_EQ(report.cliques.size(), 1u);
  EXPECT_EQ(report.cliques[0], (std::vector<VertexId>{0, 1, 2}));
  EXPECT_FALSE(is_connected(full_view(g)));
}

TEST(IsolatedCliques, ComponentOfRightSizeButNotComplete) {
  // Path of three vertices with c = 2 is not a clique.
  const auto g = graph_from({{1}, {2}, {}}, 2);
  EXPECT_TRUE(find_isolated_cliques(full_view(g), 2).cliques.empty());
}

TEST(IsolatedCliques, MatchBruteForce) {
  SplitMix64 rng(31);
  for (int instance = 0; instance < 60; ++instance) {
    const int c = 1 + instance % 3;
    const auto index = build_index(sample_points(150, 2, rng()), 0.04 + 0.04 * rng.uniform01());
    const int budget[] = {c};
    const auto g = sample_irrigation(index, budget, rng());
    const auto view = full_view(g);
    const auto report = find_isolated_cliques(view, c);
    ASSERT_EQ(report.cliques, oracle::brute_isolated_cliques(view, c));
    if (!report.cliques.empty()) ASSERT_FALSE(is_connected(view));
  }
}

TEST(Histogram, CountsComponentSizes) {
  const auto g = graph_from({{1}, {0}, {3}, {4}, {2}, {}}, 1);
  const auto lab = components(full_view(g));
  EXPECT_EQ(component_size_histogram(lab),
            (std::vector<std::pair<std::size_t, std::size_t>>{{1, 1}, {2, 1}, {3, 1}}));
  std::ostringstream out;
  write_component_histogram_csv(out, lab);
  EXPECT_EQ(out.str(), "size,count\n1,1\n2,1\n3,1\n");
}

}  // namespace
}  // namespace irr
