#include <gtest/gtest.h>

#include "support.hpp"
#include "wpogap/gap_oracle.hpp"

namespace wpogap {
namespace {

using testing::antichain2;
using testing::chain2;

TEST(Multiset, LeqExamples) {
  const PosetRef c = chain2();
  const PosetRef a = antichain2();
  EXPECT_TRUE(ms_leq(*c, {}, {0, 1}));
  EXPECT_TRUE(ms_leq(*c, {0, 0}, {0, 1}));
  EXPECT_FALSE(ms_leq(*a, {0, 0}, {0, 1}));
  EXPECT_FALSE(ms_leq(*c, {1}, {0}));
}

TEST(Multiset, MapAndSupport) {
  const PosetRef c = chain2();
  EXPECT_EQ(ms_map(identity_map(c), {0, 0}), (ElemMultiset{0, 0}));
  EXPECT_EQ(ms_map(identity_map(c), {}), ElemMultiset{});
  const OrderMap inc = testing::x_into_chain();
  EXPECT_EQ(ms_map(inc, {0}), ElemMultiset{0});
  EXPECT_TRUE(ms_supp(c, {}).members.empty());
  EXPECT_EQ(ms_supp(c, {0, 0}).members, std::vector<ElemId>{0});
  EXPECT_EQ(ms_supp(c, {0, 1}).members, (std::vector<ElemId>{0, 1}));
}

TEST(Multiset, Enumerate) {
  EXPECT_EQ(ms_enumerate(*chain2(), 0), std::vector<ElemMultiset>{ElemMultiset{}});
  EXPECT_EQ(ms_enumerate(*testing::point(), 2),
            (std::vector<ElemMultiset>{{}, {0}, {0, 0}}));
  EXPECT_EQ(ms_enumerate(*antichain2(), 1), (std::vector<ElemMultiset>{{}, {0}, {1}}));
}

TEST(Multiset, TextRoundTrip) {
  const PosetRef c = chain2();
  const ElemMultiset m = parse_multiset(*c, "[y, x,y]");
  EXPECT_EQ(m, (ElemMultiset{0, 1, 1}));
  EXPECT_EQ(format_multiset(*c, m), "[x,y,y]");
  EXPECT_THROW(parse_multiset(*c, "[z]"), InputError);
}

// Oracle: try every injection.
TEST(Multiset, MatchingAgreesWithInjectionOracle) {
  for (const PosetRef& p : {chain2(), antichain2(), share(Poset::vee()),
                            share(Poset::chain({"a", "b", "c"}))}) {
    const auto all = ms_enumerate(*p, 3);
    for (const auto& s : all) {
      for (const auto& t : all) {
        ASSERT_EQ(ms_leq(*p, s, t), ms_leq_oracle(*p, s, t))
            << format_multiset(*p, s) << " vs " << format_multiset(*p, t);
      }
    }
  }
}

TEST(Multiset, OracleRefusesLargeInputs) {
  const PosetRef p = testing::point();
  const ElemMultiset big(std::vector<ElemId>(kOracleMultisetLimit + 1, 0));
  EXPECT_THROW(ms_leq_oracle(*p, big, big), BudgetError);
}

TEST(Multiset, MatcherBeyondSixtyFourEntries) {
  // All entries comparable: the left side fits iff it is not longer.
  std::vector<int> lhs(70, 1);
  std::vector<int> rhs(70, 2);
  auto le = [](int a, int b) { return a <= b; };
  EXPECT_TRUE(multiset_leq(std::span<const int>(lhs), std::span<const int>(rhs), le));
  rhs[69] = 0;
  EXPECT_FALSE(multiset_leq(std::span<const int>(lhs), std::span<const int>(rhs), le));
}

}  // namespace
}  // namespace wpogap
