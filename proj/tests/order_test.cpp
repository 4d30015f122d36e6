#include <gtest/gtest.h>

#include <functional>
#include <set>

#include "ordervc/error.hpp"
#include "test_util.hpp"
#include "ordervc/order.hpp"

namespace ordervc {
namespace {

using testing::code_of;

OrderRelation order(int n, std::initializer_list<Edge> edges) {
  return transitive_closure(DirectedGraph::from_edge_list(n, edges));
}

OrderRelation total(std::vector<int> seq) { return TotalOrder::from_sequence(std::move(seq)).relation(); }

TEST(DirectedGraph, FromEdgeList) {
  EXPECT_EQ(DirectedGraph::from_edge_list(3, {{1, 2}, {2, 3}}).edge_count(), 2u);
  EXPECT_EQ(DirectedGraph::from_edge_list(3, {{1, 2}, {1, 2}}).edge_count(), 1u);
  EXPECT_EQ(code_of([] { DirectedGraph::from_edge_list(2, {{1, 1}}); }), ErrorCode::kSelfLoop);
  EXPECT_EQ(code_of([] { DirectedGraph::from_edge_list(2, {{1, 3}}); }), ErrorCode::kOutOfRange);
  EXPECT_EQ(code_of([] { DirectedGraph::from_edge_list(2, {{0, 1}}); }), ErrorCode::kOutOfRange);
}

TEST(DirectedGraph, EdgesAreSortedAndDuplicateFree) {
  const auto g = DirectedGraph::from_edge_list(4, {{3, 1}, {1, 4}, {3, 1}, {1, 2}});
  const std::vector<Edge> expected = {{1, 2}, {1, 4}, {3, 1}};
  EXPECT_EQ(g.edges(), expected);
}

TEST(IsAcyclic, Examples) {
  EXPECT_TRUE(is_acyclic(DirectedGraph::from_edge_list(3, {{1, 2}, {2, 3}, {1, 3}})));
  EXPECT_FALSE(is_acyclic(DirectedGraph::from_edge_list(2, {{1, 2}, {2, 1}})));
  EXPECT_FALSE(is_acyclic(DirectedGraph::from_edge_list(3, {{1, 2}, {2, 3}, {3, 1}})));
  EXPECT_TRUE(is_acyclic(DirectedGraph(5)));
}

TEST(TransitiveClosure, AddsForcedPair) {
  const auto r = order(3, {{1, 2}, {2, 3}});
  EXPECT_TRUE(r.less(1, 2));
  EXPECT_TRUE(r.less(2, 3));
  EXPECT_TRUE(r.less(1, 3));
  EXPECT_EQ(r.relation_count(), 3u);
  EXPECT_TRUE(r.is_total());
}

TEST(TransitiveClosure, EmptyAndCyclic) {
  const auto r = transitive_closure(DirectedGraph(4));
  EXPECT_EQ(r, OrderRelation(4));
  EXPECT_EQ(r.relation_count(), 0u);
  EXPECT_EQ(code_of([] { transitive_closure(DirectedGraph::from_edge_list(2, {{1, 2}, {2, 1}})); }),
            ErrorCode::kCyclicInput);
}

TEST(OrderRelation, FromClosedRowsValidates) {
  // rows are 0-based bit sets
  EXPECT_NO_THROW(OrderRelation::from_closed_rows(3, {0b110, 0b100, 0}));
  EXPECT_EQ(code_of([] { OrderRelation::from_closed_rows(3, {0b010, 0b100, 0}); }),
            ErrorCode::kInvariantViolation);  // 1<2<3 without 1<3
  EXPECT_EQ(code_of([] { OrderRelation::from_closed_rows(2, {0b10, 0b01}); }),
            ErrorCode::kInvariantViolation);
  EXPECT_EQ(code_of([] { OrderRelation::from_closed_rows(2, {0b01, 0}); }),
            ErrorCode::kInvariantViolation);
}

TEST(OrderRelation, CoverEdges) {
  const auto r = order(4, {{1, 2}, {2, 3}, {1, 3}, {3, 4}});
  const std::vector<Edge> expected = {{1, 2}, {2, 3}, {3, 4}};
  EXPECT_EQ(r.cover_edges(), expected);
}

TEST(RelationUnion, Examples) {
  const auto a = order(3, {{1, 2}});
  const auto b = order(3, {{2, 3}});
  EXPECT_EQ(relation_union(a, b), DirectedGraph::from_edge_list(3, {{1, 2}, {2, 3}}));
  EXPECT_EQ(relation_union(a, a), a.as_graph());
  const auto back = order(3, {{2, 1}});
  EXPECT_EQ(relation_union(a, back), DirectedGraph::from_edge_list(3, {{1, 2}, {2, 1}}));
  EXPECT_EQ(code_of([&] { relation_union(a, OrderRelation(4)); }), ErrorCode::kSizeMismatch);
}

TEST(Compatible, Examples) {
  EXPECT_TRUE(compatible(OrderRelation(3), total({3, 1, 2})));
  EXPECT_FALSE(compatible(total({1, 2, 3}), total({3, 2, 1})));
  EXPECT_TRUE(compatible(order(3, {{1, 2}}), order(3, {{2, 3}})));
  EXPECT_EQ(code_of([] { compatible(OrderRelation(2), OrderRelation(3)); }), ErrorCode::kSizeMismatch);
}

TEST(Compatible, PartialPairsNeedLongCycles) {
  // 1<2, 3<4 against 2<3, 4<1: union has the 4-cycle 1 2 3 4.
  const auto a = order(4, {{1, 2}, {3, 4}});
  const auto b = order(4, {{2, 3}, {4, 1}});
  EXPECT_FALSE(compatible(a, b));
  EXPECT_TRUE(compatible(a, order(4, {{2, 3}})));
}

TEST(Compatible, TotalOrdersAreRigid) {
  EXPECT_TRUE(compatible(total({2, 1, 3}), total({2, 1, 3})));
  EXPECT_FALSE(compatible(total({2, 1, 3}), total({2, 3, 1})));
}

TEST(TopologicalSort, SmallestLabelFirst) {
  const auto g = DirectedGraph::from_edge_list(4, {{3, 1}, {1, 4}, {2, 3}, {2, 4}});
  EXPECT_EQ(topological_sort(g).sequence(), (std::vector<int>{2, 3, 1, 4}));
  EXPECT_EQ(topological_sort(DirectedGraph(3)).sequence(), (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(topological_sort(DirectedGraph::from_edge_list(2, {{2, 1}})).sequence(),
            (std::vector<int>{2, 1}));
  EXPECT_EQ(code_of([] { topological_sort(DirectedGraph::from_edge_list(2, {{1, 2}, {2, 1}})); }),
            ErrorCode::kCyclicInput);
}

TEST(TopologicalSort, RandomTieBreakCoversAllExtensions) {
  // The antichain on 3 elements has all 6 permutations as linear extensions.
  std::mt19937_64 rng(7);
  std::set<std::vector<int>> seen;
  for (int i = 0; i < 200; ++i) seen.insert(topological_sort(DirectedGraph(3), rng).sequence());
  EXPECT_EQ(seen.size(), 6u);
}

TEST(TotalOrder, Construction) {
  const auto t = TotalOrder::from_sequence({2, 1, 3});
  EXPECT_EQ(t.position(2), 0);
  EXPECT_TRUE(t.relation().less(2, 1));
  EXPECT_TRUE(t.relation().is_total());
  EXPECT_EQ(TotalOrder::from_relation(t.relation()), t);
  EXPECT_EQ(code_of([] { TotalOrder::from_sequence({1, 1, 3}); }), ErrorCode::kInvariantViolation);
  EXPECT_EQ(code_of([] { TotalOrder::from_sequence({1, 4, 3}); }), ErrorCode::kOutOfRange);
  EXPECT_EQ(code_of([] { TotalOrder::from_relation(OrderRelation(3)); }), ErrorCode::kInvariantViolation);
}

TEST(Contradicts, Examples) {
  const auto t = TotalOrder::from_sequence({1, 2, 3});
  EXPECT_TRUE(contradicts(t, {3, 1}));
  EXPECT_FALSE(contradicts(t, {1, 3}));
  EXPECT_TRUE(contradicts(TotalOrder::from_sequence({2, 1, 3}), {1, 2}));
  EXPECT_EQ(code_of([&] { contradicts(t, {1, 4}); }), ErrorCode::kOutOfRange);
  EXPECT_EQ(code_of([&] { contradicts(t, {2, 2}); }), ErrorCode::kSelfLoop);
}

TEST(OrderRelation, WideVertexSets) {
  std::vector<Edge> chain;
  for (int v = 1; v < 64; ++v) chain.push_back({v, v + 1});
  const auto r = transitive_closure(DirectedGraph::from_edge_list(64, chain));
  EXPECT_TRUE(r.is_total());
  EXPECT_TRUE(r.less(1, 64));
  EXPECT_EQ(topological_sort(r.as_graph()).sequence().front(), 1);
}

}  // namespace
}  // namespace ordervc
