#include <gtest/gtest.h>

#include <cmath>

#include "ordervc/enumeration.hpp"
#include "ordervc/shattering.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace ordervc {
namespace {

using testing::code_of;

OrderRelation total(std::vector<int> seq) { return TotalOrder::from_sequence(std::move(seq)).relation(); }

std::vector<OrderRelation> cyclic_triple() { return {total({1, 2, 3}), total({2, 3, 1}), total({3, 1, 2})}; }

TEST(Trace, Examples) {
  const std::vector<OrderRelation> ground = {total({1, 2, 3}), total({3, 2, 1}), total({2, 1, 3})};
  EXPECT_EQ(trace(OrderRelation(3), ground), 0b111u);
  EXPECT_EQ(trace(ground[0], ground), 0b001u);
  const std::vector<OrderRelation> two = {total({1, 2, 3}), total({3, 2, 1})};
  EXPECT_EQ(trace(total({1, 2, 3}), two), 0b01u);
  EXPECT_EQ(code_of([&] { trace(OrderRelation(4), two); }), ErrorCode::kSizeMismatch);
}

TEST(IsShattered, CyclicTripleByPartialOrders) {
  const auto cert = is_shattered(cyclic_triple(), Family::all_partial(3));
  ASSERT_TRUE(cert.has_value());
  EXPECT_EQ(cert->witnesses.size(), 8u);
  EXPECT_EQ(cert->witnesses.at(0b111), OrderRelation(3));
  EXPECT_TRUE(verify_certificate(*cert));
}

TEST(IsShattered, TwoTotalsByTotals) {
  const std::vector<OrderRelation> ground = {total({1, 2, 3}), total({2, 1, 3})};
  EXPECT_FALSE(is_shattered(ground, Family::all_total(3)).has_value());
}

TEST(IsShattered, EmptyGround) {
  const auto cert = is_shattered({}, Family::all_total(2));
  ASSERT_TRUE(cert.has_value());
  ASSERT_EQ(cert->witnesses.size(), 1u);
  EXPECT_EQ(cert->witnesses.at(0), total({1, 2}));
}

TEST(IsShattered, WitnessesAreFirstInEnumeration) {
  const Family witnesses = Family::all_partial(3);
  const auto ground = cyclic_triple();
  const auto cert = is_shattered(ground, witnesses);
  ASSERT_TRUE(cert.has_value());
  for (const auto& [mask, w] : cert->witnesses) {
    for (std::size_t i = 0; i < witnesses.index_of(w); ++i) {
      EXPECT_NE(trace(witnesses.member_at(i), ground), mask);
    }
  }
}

TEST(IsShattered, Cap) {
  std::vector<OrderRelation> ground(26, OrderRelation(3));
  EXPECT_EQ(code_of([&] { is_shattered(ground, Family::all_total(3)); }), ErrorCode::kCapExceeded);
}

TEST(VerifyCertificate, RejectsTampering) {
  auto cert = *is_shattered(cyclic_triple(), Family::all_partial(3));
  auto swapped = cert;
  swapped.witnesses.at(0b011) = OrderRelation(3);
  const auto check = verify_certificate(swapped);
  EXPECT_FALSE(check);
  EXPECT_NE(check.detail.find("mask 3"), std::string::npos);

  auto missing = cert;
  missing.witnesses.erase(0b101);
  EXPECT_FALSE(verify_certificate(missing));

  auto wrong_n = cert;
  wrong_n.witnesses.at(0b111) = OrderRelation(4);
  EXPECT_FALSE(verify_certificate(wrong_n));
}

TEST(VerifyCertificate, HandBuiltCyclicTriple) {
  // Witness for each mask: the empty order for all three, pair edges that
  // reverse exactly the excluded orders otherwise.
  ShatterCertificate cert;
  cert.n = 3;
  cert.ground = cyclic_triple();
  auto rel = [](std::initializer_list<Edge> e) { return transitive_closure(DirectedGraph::from_edge_list(3, e)); };
  // 123 contains 1<2,1<3,2<3; 231 contains 2<3,2<1,3<1; 312 contains 3<1,3<2,1<2.
  cert.witnesses.emplace(0b111, OrderRelation(3));
  cert.witnesses.emplace(0b101, rel({{1, 2}}));  // breaks 231
  cert.witnesses.emplace(0b011, rel({{2, 3}}));  // breaks 312
  cert.witnesses.emplace(0b110, rel({{3, 1}}));  // breaks 123
  cert.witnesses.emplace(0b001, rel({{1, 2}, {2, 3}}));
  cert.witnesses.emplace(0b010, rel({{2, 3}, {3, 1}}));
  cert.witnesses.emplace(0b100, rel({{3, 1}, {1, 2}}));
  cert.witnesses.emplace(0b000, rel({{2, 1}, {3, 2}}));
  EXPECT_TRUE(verify_certificate(cert)) << verify_certificate(cert).detail;
}

struct Case {
  bool ground_total;
  bool witness_total;
  int n;
  std::size_t dimension;
};

Family family(bool total, int n) { return total ? Family::all_total(n) : Family::all_partial(n); }

TEST(VcDimension, KnownValues) {
  // Partial ground against total witnesses frozen from an independent level-wise
  // search; the others are the closed-form values.
  const Case cases[] = {
      {true, false, 1, 0}, {true, false, 2, 1}, {true, false, 3, 3}, {true, false, 4, 4},
      {true, true, 4, 1},  {false, true, 3, 2}, {false, true, 4, 3},
  };
  for (const auto& c : cases) {
    const auto report = vc_dimension(family(c.ground_total, c.n), family(c.witness_total, c.n));
    EXPECT_EQ(report.dimension, c.dimension) << c.ground_total << c.witness_total << " n=" << c.n;
    EXPECT_TRUE(report.exhaustion.search_complete);
    EXPECT_EQ(report.certificate.ground.size(), report.dimension);
    EXPECT_TRUE(verify_certificate(report.certificate));
  }
}

TEST(VcDimension, LevelCountsMatchIndependentSearch) {
  const auto totals = vc_dimension(Family::all_total(4), Family::all_partial(4));
  const std::vector<std::pair<std::uint64_t, std::uint64_t>> expected_totals = {
      {1, 1}, {24, 24}, {276, 276}, {2024, 776}, {714, 24}, {0, 0}};
  ASSERT_EQ(totals.exhaustion.levels.size(), expected_totals.size());
  for (std::size_t k = 0; k < expected_totals.size(); ++k) {
    EXPECT_EQ(totals.exhaustion.levels[k].candidates, expected_totals[k].first) << k;
    EXPECT_EQ(totals.exhaustion.levels[k].shattered, expected_totals[k].second) << k;
  }

  const auto partial = vc_dimension(Family::all_partial(4), Family::all_total(4));
  const std::vector<std::pair<std::uint64_t, std::uint64_t>> expected_partial = {
      {1, 1}, {219, 218}, {23653, 5862}, {48308, 4784}, {336, 0}};
  ASSERT_EQ(partial.exhaustion.levels.size(), expected_partial.size());
  for (std::size_t k = 0; k < expected_partial.size(); ++k) {
    EXPECT_EQ(partial.exhaustion.levels[k].candidates, expected_partial[k].first) << k;
    EXPECT_EQ(partial.exhaustion.levels[k].shattered, expected_partial[k].second) << k;
  }
  EXPECT_FALSE(partial.exhaustion.information_bound);
}

TEST(VcDimension, CertificateIsLexSmallest) {
  const auto report = vc_dimension(Family::all_total(4), Family::all_partial(4));
  EXPECT_EQ(report.ground_indices, (std::vector<std::size_t>{0, 5, 7, 18}));
}

TEST(VcDimension, MatchesNaiveOracleForSmallN) {
  for (int n = 1; n <= 3; ++n) {
    for (bool g : {false, true}) {
      for (bool w : {false, true}) {
        const auto ground = family(g, n);
        const auto witnesses = family(w, n);
        EXPECT_EQ(vc_dimension(ground, witnesses).dimension, testing::naive_vc_dimension(ground, witnesses))
            << "n=" << n << " ground_total=" << g << " witness_total=" << w;
      }
    }
  }
}

TEST(VcDimension, InformationBound) {
  for (int n = 1; n <= 4; ++n) {
    for (bool g : {false, true}) {
      for (bool w : {false, true}) {
        const auto witnesses = family(w, n);
        const auto report = vc_dimension(family(g, n), witnesses);
        EXPECT_LE(static_cast<double>(report.dimension), std::log2(static_cast<double>(witnesses.size())));
      }
    }
  }
  // A single witness cannot split anything.
  const auto one = vc_dimension(Family::all_total(1), Family::all_total(1));
  EXPECT_EQ(one.dimension, 0u);
  EXPECT_TRUE(one.exhaustion.information_bound);
}

TEST(VcDimension, NodeBudgetGivesFlaggedLowerBound) {
  SearchOptions options;
  options.node_budget = 100;
  const auto report = vc_dimension(Family::all_total(4), Family::all_partial(4), options);
  EXPECT_FALSE(report.exhaustion.search_complete);
  EXPECT_GE(report.dimension, 1u);
  EXPECT_LE(report.dimension, 4u);
  EXPECT_TRUE(verify_certificate(report.certificate));
  EXPECT_FALSE(report.exhaustion.levels.back().complete);
}

TEST(VcDimension, ThreadCountDoesNotChangeTheReport) {
  SearchOptions parallel;
  parallel.threads = 4;
  for (bool g : {false, true}) {
    const auto a = vc_dimension(family(g, 4), family(!g, 4));
    const auto b = vc_dimension(family(g, 4), family(!g, 4), parallel);
    EXPECT_EQ(a.dimension, b.dimension);
    EXPECT_EQ(a.ground_indices, b.ground_indices);
    ASSERT_EQ(a.exhaustion.levels.size(), b.exhaustion.levels.size());
    for (std::size_t k = 0; k < a.exhaustion.levels.size(); ++k) {
      EXPECT_EQ(a.exhaustion.levels[k].candidates, b.exhaustion.levels[k].candidates);
      EXPECT_EQ(a.exhaustion.levels[k].shattered, b.exhaustion.levels[k].shattered);
    }
  }
}

TEST(VcDimension, SizeMismatch) {
  EXPECT_EQ(code_of([] { vc_dimension(Family::all_total(3), Family::all_total(4)); }), ErrorCode::kSizeMismatch);
}

}  // namespace
}  // namespace ordervc
