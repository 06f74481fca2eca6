#include <gtest/gtest.h>

#include "support.hpp"
#include "wpogap/gap_oracle.hpp"
#include "wpogap/terms.hpp"

namespace wpogap {
namespace {

const PosetRef kEmpty = testing::empty();

NodeTree nt(std::size_t n, std::string_view text) { return nodetree_of_gaptree(testing::tree(n, kEmpty, text)); }

TEST(TreeEmbeddings, Counts) {
  EXPECT_EQ(tree_embeddings(nt(1, "0()"), nt(1, "0()")).size(), 1U);
  EXPECT_EQ(tree_embeddings(nt(1, "0()"), nt(1, "0(0())")).size(), 2U);
  // a root with two children has no meet-preserving image in a chain
  EXPECT_TRUE(tree_embeddings(nt(1, "0(0(),0())"), nt(1, "0(0())")).empty());
  EXPECT_TRUE(tree_embeddings(nt(1, "0(0(),0())"), nt(1, "0(0(0()))")).empty());
}

TEST(TreeEmbeddings, PrunedSearchEqualsFilteredInjections) {
  const auto trees = enumerate_gap_trees(GapParams{1, kEmpty}, 5);
  for (Shape s : trees) {
    for (Shape t : trees) {
      const NodeTree a = nodetree_of_gaptree(s);
      const NodeTree b = nodetree_of_gaptree(t);
      ASSERT_EQ(tree_embeddings(a, b), tree_embeddings(a, b, /*raw=*/true));
    }
  }
}

TEST(GapEmbed, Examples) {
  const NodeTree t = nt(2, "0(1(),0(1()))");
  const auto self = gap_embed(t, t);
  ASSERT_TRUE(self);
  for (std::size_t v = 0; v < t.size(); ++v) EXPECT_EQ((*self)[v], v);
  EXPECT_FALSE(gap_embed(nt(2, "1()"), nt(2, "0(1())")));
  const auto onto_root = gap_embed(nt(2, "1()"), nt(2, "1(0())"));
  ASSERT_TRUE(onto_root);
  EXPECT_EQ(format_tree_map(*onto_root), "0 -> 0");
}

TEST(GapEmbed, ConditionsSeparately) {
  const NodeTree s = nt(2, "1(1())");
  // (ii): the intermediate node labelled 0 is below the child's label 1
  EXPECT_FALSE(gap_embed(s, nt(2, "1(0(1()))")));
  EXPECT_TRUE(gap_embed(s, nt(2, "1(1(1()))")));
  // (i): labels must match
  EXPECT_FALSE(gap_embed(nt(2, "0()"), nt(2, "1()")));
}

TEST(GapEmbed, RejectsXLeaves) {
  EXPECT_THROW(nodetree_of_gaptree(gap_node(0, {gap_leaf(0)})), InputError);
}

// The recursive order and the oracle must agree on every pair.
TEST(GapEmbed, AgreesWithGapLeq) {
  for (auto [n, k] : {std::pair{1, 5}, std::pair{2, 4}, std::pair{3, 3}}) {
    const GapParams p{static_cast<std::size_t>(n), kEmpty};
    const auto trees = enumerate_gap_trees(p, static_cast<std::size_t>(k));
    for (Shape s : trees) {
      for (Shape t : trees) {
        const NodeTree a = nodetree_of_gaptree(s);
        const NodeTree b = nodetree_of_gaptree(t);
        ASSERT_EQ(gap_leq(p, s, t), gap_embed(a, b).has_value())
            << format_gap_tree(*kEmpty, s) << " vs " << format_gap_tree(*kEmpty, t);
      }
    }
  }
}

TEST(MultisetOracle, Examples) {
  const PosetRef a = testing::antichain2();
  EXPECT_TRUE(ms_leq_oracle(*a, {}, {0, 1}));
  EXPECT_TRUE(ms_leq_oracle(*a, {0}, {0}));
  EXPECT_FALSE(ms_leq_oracle(*a, {0, 0}, {0, 1}));
}

TEST(Translation, TermsToTrees) {
  EXPECT_EQ(nt(1, "0()").size(), 1U);
  EXPECT_EQ(nt(1, "0()").label[0], 0U);
  TermSystem s(kEmpty, multiset_dilator());
  const Shape node0 = s.kappa(s.fragment({}), to_shape(ElemMultiset{}));
  const Shape chain = s.kappa(s.fragment({node0}), to_shape(ElemMultiset{0}));
  EXPECT_EQ(gaptree_of_term(chain), testing::tree(1, kEmpty, "0(0())"));
  for (Shape t : enumerate_terms(s, 2, 3)) {
    EXPECT_EQ(nodetree_of_gaptree(gaptree_of_term(t)).size(), gap_nodes(gaptree_of_term(t)));
  }
  EXPECT_THROW(gaptree_of_term(Shape::elem(0)), InputError);
}

}  // namespace
}  // namespace wpogap
