#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <unordered_set>

#include "ordervc/enumeration.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace ordervc {
namespace {

using testing::code_of;

TEST(AllTotalOrders, CountsAndOrder) {
  EXPECT_EQ(all_total_orders(1).size(), 1u);
  const auto three = all_total_orders(3);
  ASSERT_EQ(three.size(), 6u);
  EXPECT_EQ(three.front().sequence(), (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(three.back().sequence(), (std::vector<int>{3, 2, 1}));
  EXPECT_EQ(all_total_orders(4).size(), 24u);
  EXPECT_EQ(all_total_orders(8).size(), 40320u);
  EXPECT_EQ(code_of([] { all_total_orders(9); }), ErrorCode::kCapExceeded);
}

TEST(AllTotalOrders, Lexicographic) {
  const auto orders = all_total_orders(5);
  for (std::size_t i = 1; i < orders.size(); ++i) {
    EXPECT_TRUE(std::lexicographical_compare(orders[i - 1].sequence().begin(), orders[i - 1].sequence().end(),
                                             orders[i].sequence().begin(), orders[i].sequence().end()));
  }
}

TEST(AllPartialOrders, SmallCases) {
  const auto one = all_partial_orders(1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0], OrderRelation(1));

  const auto two = all_partial_orders(2);
  ASSERT_EQ(two.size(), 3u);
  EXPECT_EQ(two[0], OrderRelation(2));
  EXPECT_TRUE(two[1].less(1, 2));
  EXPECT_TRUE(two[2].less(2, 1));
  EXPECT_EQ(code_of([] { all_partial_orders(7); }), ErrorCode::kCapExceeded);
}

TEST(AllPartialOrders, SortedByRelationCountThenCells) {
  const auto orders = all_partial_orders(4);
  for (std::size_t i = 1; i < orders.size(); ++i) {
    const auto prev = std::make_pair(orders[i - 1].relation_count(), orders[i - 1].cell_key());
    const auto cur = std::make_pair(orders[i].relation_count(), orders[i].cell_key());
    EXPECT_LT(prev, cur);
  }
}

TEST(AllPartialOrders, MatchesNaiveFilterAsSets) {
  for (int n = 1; n <= 4; ++n) {
    std::set<std::vector<Row>> expected;
    for (const auto& rows : testing::naive_partial_order_rows(n)) expected.insert(rows);
    std::set<std::vector<Row>> actual;
    for (const auto& r : all_partial_orders(n)) actual.emplace(r.rows().begin(), r.rows().end());
    EXPECT_EQ(actual, expected) << "n = " << n;
  }
}

TEST(AllPartialOrders, CountsAgainstOracle) {
  // Frozen from the naive filter (19, 219, 4231 computed here; 130023 from the
  // 3^15 run in the acceptance suite).
  EXPECT_EQ(all_partial_orders(3).size(), 19u);
  EXPECT_EQ(all_partial_orders(4).size(), 219u);
  EXPECT_EQ(testing::naive_partial_order_count(5), 4231u);
  EXPECT_EQ(all_partial_orders(5).size(), 4231u);
  EXPECT_EQ(all_partial_orders(6).size(), 130023u);
}

TEST(AllPartialOrders, Distinct) {
  const auto orders = all_partial_orders(5);
  std::unordered_set<OrderRelation, OrderRelationHash> seen(orders.begin(), orders.end());
  EXPECT_EQ(seen.size(), orders.size());
}

TEST(Family, IndexOf) {
  const auto totals = Family::all_total(3);
  EXPECT_EQ(totals.index_of(TotalOrder::from_sequence({1, 2, 3})), 0u);
  EXPECT_EQ(totals.index_of(TotalOrder::from_sequence({3, 2, 1})), 5u);
  EXPECT_EQ(code_of([&] { totals.index_of(OrderRelation(3)); }), ErrorCode::kNotAMember);

  const auto partial = Family::all_partial(2);
  const auto idx = partial.index_of(OrderRelation(2));
  EXPECT_EQ(partial.member_at(idx), OrderRelation(2));
  EXPECT_EQ(code_of([&] { partial.member_at(3); }), ErrorCode::kOutOfRange);
}

TEST(Family, RoundTrip) {
  for (const auto& family : {Family::all_partial(4), Family::all_total(4)}) {
    for (std::size_t i = 0; i < family.size(); ++i) {
      EXPECT_EQ(family.index_of(family.member_at(i)), i);
    }
  }
}

TEST(Family, ExplicitMembers) {
  const auto a = TotalOrder::from_sequence({1, 2}).relation();
  const auto b = TotalOrder::from_sequence({2, 1}).relation();
  const auto family = Family::from_members(2, {b, a});
  EXPECT_EQ(family.kind(), FamilyKind::kExplicit);
  EXPECT_EQ(family.index_of(a), 1u);
  EXPECT_EQ(code_of([&] { Family::from_members(2, {a, a}); }), ErrorCode::kInvariantViolation);
  EXPECT_EQ(code_of([&] { Family::from_members(3, {a}); }), ErrorCode::kSizeMismatch);
}

}  // namespace
}  // namespace ordervc
