#include <gtest/gtest.h>

#include "support.hpp"
#include "wpogap/harness.hpp"

namespace wpogap {
namespace {

using testing::tree;

TEST(Catalog, NamesResolve) {
  for (const std::string& name : catalog_names()) EXPECT_TRUE(validate_poset(*catalog_poset(name)).ok());
  EXPECT_EQ(catalog_poset("vee")->size(), 3U);
  EXPECT_THROW(catalog_poset("nope"), InputError);
}

TEST(Catalog, Embeddings) {
  EXPECT_EQ(embeddings_between(catalog_poset("point"), catalog_poset("vee")).size(), 3U);
  EXPECT_EQ(embeddings_between(catalog_poset("chain2"), catalog_poset("vee")).size(), 2U);
  EXPECT_EQ(embeddings_between(catalog_poset("antichain2"), catalog_poset("vee")).size(), 2U);
  EXPECT_EQ(embeddings_between(catalog_poset("empty"), catalog_poset("chain2")).size(), 1U);
  for (const OrderMap& f : embeddings_between(catalog_poset("chain2"), catalog_poset("chain3"))) {
    EXPECT_TRUE(validate_map(f).ok());
  }
}

TEST(Budgets, Named) {
  EXPECT_TRUE(Budget::named("default"));
  EXPECT_TRUE(Budget::named("zero"));
  EXPECT_TRUE(Budget::named("smoke"));
  EXPECT_FALSE(Budget::named("huge"));
}

TEST(SuitePartialOrder, PassesOnGapTrees) {
  const GapParams p{2, testing::empty()};
  const OrderTable table = gap_tabulate(p, enumerate_gap_trees(p, 3));
  const SuiteReport r = suite_partial_order("T2", table, [](Shape s) { return format_gap_tree(Poset::empty(), s); });
  EXPECT_TRUE(r.ok());
  EXPECT_GT(r.checked, 0U);
}

TEST(SuitePartialOrder, FlippedPairIsReported) {
  const GapParams p{1, testing::empty()};
  const auto trees = enumerate_gap_trees(p, 3);
  const OrderTable good = gap_tabulate(p, trees);
  // make the single node and the 2-chain equivalent
  OrderTable bad(trees);
  for (std::size_t i = 0; i < trees.size(); ++i) {
    for (std::size_t j = 0; j < trees.size(); ++j) {
      if (good.leq(i, j)) bad.set(i, j);
    }
  }
  const std::size_t lo = *good.index_of(tree(1, p.x, "0()"));
  const std::size_t hi = *good.index_of(tree(1, p.x, "0(0())"));
  ASSERT_FALSE(good.leq(hi, lo));
  bad.set(hi, lo);
  const SuiteReport r = suite_partial_order("corrupt", bad, [](Shape s) { return format_gap_tree(Poset::empty(), s); });
  ASSERT_FALSE(r.ok());
  EXPECT_NE(std::find(r.violations.begin(), r.violations.end(), "order antisymmetry: 0() ~ 0(0())"),
            r.violations.end());
}

TEST(GoodPair, Examples) {
  const GapParams one{1, testing::empty()};
  const Shape t = tree(1, one.x, "0(0())");
  const std::vector<Shape> twice{t, t};
  EXPECT_EQ(good_pair(one, twice), (std::pair<std::size_t, std::size_t>{0, 1}));
  const std::vector<Shape> seq{tree(1, one.x, "0(0(),0())"), tree(1, one.x, "0(0())"),
                               tree(1, one.x, "0(0(0()))")};
  EXPECT_EQ(good_pair(one, seq), (std::pair<std::size_t, std::size_t>{1, 2}));

  const GapParams two{2, testing::empty()};
  const std::vector<Shape> anti{tree(2, two.x, "1()"), tree(2, two.x, "0(1())")};
  EXPECT_FALSE(good_pair(two, anti));
  EXPECT_FALSE(good_pair(one, {}));
}

TEST(Suites, ZeroBudgetIsVacuous) {
  const auto reports = suite_all(Budget::zero());
  std::set<int> criteria;
  for (const SuiteReport& r : reports) {
    EXPECT_TRUE(r.ok()) << r.suite;
    EXPECT_TRUE(r.vacuous()) << r.suite;
    criteria.insert(r.criterion);
  }
  EXPECT_EQ(criteria.size(), 9U);
}

TEST(Suites, SmokeBudgetPasses) {
  for (const SuiteReport& r : suite_all(Budget::smoke())) {
    EXPECT_TRUE(r.ok()) << r.suite << ": " << (r.violations.empty() ? "" : r.violations.front());
    EXPECT_FALSE(r.vacuous()) << r.suite;
  }
}

TEST(Suites, Deterministic) {
  Budget b = Budget::zero();
  b.catalog = {"empty", "chain2"};
  b.tower = {0};
  b.pi_nodes_empty = 3;
  b.pi_nodes = 2;
  const auto first = suites_pi(b);
  const auto second = suites_pi(b);
  ASSERT_EQ(first.size(), second.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    EXPECT_EQ(first[i].suite, second[i].suite);
    EXPECT_EQ(first[i].checked, second[i].checked);
    EXPECT_EQ(first[i].notes, second[i].notes);
  }
}

TEST(Pipeline, FoldsAreBijectiveAtThreeVertices) {
  const PipelineFragment f = pipeline_fragment(0, catalog_poset("empty"), 3);
  EXPECT_EQ(f.terms.size(), enumerate_gap_minus_trees(GapParams{1, catalog_poset("empty")}, 3).size());
  std::set<Shape> images(f.trees.begin(), f.trees.end());
  EXPECT_EQ(images.size(), f.trees.size());
}

}  // namespace
}  // namespace wpogap
