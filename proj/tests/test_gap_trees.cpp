#include <gtest/gtest.h>

#include "support.hpp"
#include "wpogap/gap_oracle.hpp"

namespace wpogap {
namespace {

using testing::tree;

const PosetRef kEmpty = testing::empty();
const PosetRef kChain = testing::chain2();

TEST(GapLeq, Examples) {
  const GapParams one{1, kEmpty};
  const GapParams two{2, kEmpty};
  EXPECT_TRUE(gap_leq(one, tree(1, kEmpty, "0()"), tree(1, kEmpty, "0(0())")));
  EXPECT_FALSE(gap_leq(two, tree(2, kEmpty, "1()"), tree(2, kEmpty, "0(1())")));
  EXPECT_TRUE(gap_leq(two, tree(2, kEmpty, "0(1())"), tree(2, kEmpty, "0(0(1()))")));
  EXPECT_TRUE(gap_leq(two, tree(2, kEmpty, "1()"), tree(2, kEmpty, "1(0())")));
}

TEST(GapLeq, LeavesFollowX) {
  const GapParams p{1, kChain};
  EXPECT_TRUE(gap_leq(p, tree(1, kChain, "@x"), tree(1, kChain, "@y")));
  EXPECT_FALSE(gap_leq(p, tree(1, kChain, "@y"), tree(1, kChain, "@x")));
  EXPECT_TRUE(gap_leq(p, tree(1, kChain, "@x"), tree(1, kChain, "0(@y)")));
  EXPECT_FALSE(gap_leq(p, tree(1, kChain, "0()"), tree(1, kChain, "@y")));
}

TEST(GapLeq, RejectsForeignTrees) {
  EXPECT_THROW(gap_leq(GapParams{1, kEmpty}, gap_node(1, {}), gap_node(0, {})), InputError);
  EXPECT_THROW(gap_node(kBagTag, {}), InputError);
}

TEST(GapTrees, HeightSupportMap) {
  EXPECT_EQ(gap_height(gap_leaf(0)), 0U);
  EXPECT_EQ(gap_height(tree(1, kEmpty, "0()")), 0U);
  EXPECT_EQ(gap_height(tree(2, kEmpty, "0(1())")), 1U);

  const GapParams p{1, kChain};
  EXPECT_EQ(gap_supp(p, gap_leaf(0)).members, std::vector<ElemId>{0});
  EXPECT_TRUE(gap_supp(GapParams{2, kChain}, tree(2, kChain, "1()")).members.empty());
  EXPECT_EQ(gap_supp(p, tree(1, kChain, "0(@x,0(@y))")).members, (std::vector<ElemId>{0, 1}));

  const Shape t = tree(1, kChain, "0(@x,0(@y))");
  EXPECT_EQ(gap_map(identity_map(kChain), t), t);
  const OrderMap inc = testing::x_into_chain();
  EXPECT_EQ(gap_map(inc, gap_node(0, {})), gap_node(0, {}));
  EXPECT_EQ(gap_map(inc, gap_node(0, {gap_leaf(0)})), gap_node(0, {gap_leaf(0)}));
}

TEST(GapTrees, Enumeration) {
  EXPECT_EQ(enumerate_gap_trees(GapParams{1, kEmpty}, 1), std::vector<Shape>{gap_node(0, {})});
  EXPECT_EQ(enumerate_gap_trees(GapParams{2, kEmpty}, 2).size(), 6U);
  // point, 2-chain, 3-chain and the cherry
  EXPECT_EQ(enumerate_gap_trees(GapParams{1, kEmpty}, 3).size(), 4U);
  for (Shape t : enumerate_gap_minus_trees(GapParams{2, kEmpty}, 3)) EXPECT_EQ(t.tag(), 0U);
}

// Oracle: count unordered labelled trees directly by vertex count.
std::size_t count_forests(std::size_t nodes, std::size_t labels, std::size_t leaves);

std::size_t count_trees(std::size_t nodes, std::size_t labels, std::size_t leaves) {
  if (nodes == 0) return 0;
  std::size_t total = nodes == 1 ? leaves : 0;
  return total + labels * count_forests(nodes - 1, labels, leaves);
}

// Multisets of trees with `nodes` vertices in total, by the Euler transform.
std::size_t count_forests(std::size_t nodes, std::size_t labels, std::size_t leaves) {
  std::vector<std::size_t> f(nodes + 1, 0);
  f[0] = 1;
  for (std::size_t k = 1; k <= nodes; ++k) {
    const std::size_t kinds = count_trees(k, labels, leaves);
    for (std::size_t copies = 0; copies < kinds; ++copies) {
      for (std::size_t m = k; m <= nodes; ++m) f[m] += f[m - k];
    }
  }
  return f[nodes];
}

TEST(GapTrees, EnumerationCountsMatchADirectCount) {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t leaves = 0; leaves <= 2; ++leaves) {
      const PosetRef named = leaves == 2 ? testing::antichain2() : (leaves == 1 ? testing::point() : kEmpty);
      std::size_t expected = 0;
      for (std::size_t k = 1; k <= 4; ++k) expected += count_trees(k, n, leaves);
      EXPECT_EQ(enumerate_gap_trees(GapParams{n, named}, 4).size(), expected) << n << " " << leaves;
    }
  }
}

TEST(GapDilator, T0IsTheIdentity) {
  const Dilator t0 = gap_dilator(0);
  const Dilator id = identity_dilator();
  for (const PosetRef& x : {kChain, share(Poset::vee())}) {
    const auto values = t0.enumerate(x, EnumBudget{3, 0});
    EXPECT_EQ(values, id.enumerate(x, EnumBudget{1, 0}));
    for (Shape s : values) {
      EXPECT_EQ(t0.supp_ids(x, s), id.supp_ids(x, s));
      for (Shape t : values) EXPECT_EQ(t0.leq(*x, s, t), id.leq(*x, s, t));
    }
  }
}

TEST(GapDilator, T1OverEmptyIsTreeEmbedding) {
  const GapParams p{1, kEmpty};
  const auto trees = enumerate_gap_trees(p, 5);
  std::vector<NodeTree> nodes;
  for (Shape t : trees) nodes.push_back(nodetree_of_gaptree(t));
  for (std::size_t i = 0; i < trees.size(); ++i) {
    for (std::size_t j = 0; j < trees.size(); ++j) {
      ASSERT_EQ(gap_dilator(1).leq(*kEmpty, trees[i], trees[j]), !tree_embeddings(nodes[i], nodes[j]).empty());
    }
  }
}

TEST(GapDilator, MinusNeedsALabel) { EXPECT_THROW(gap_minus_dilator(0), PreconditionError); }

TEST(GapTabulate, AgreesWithRecursiveLeq) {
  for (const PosetRef& x : {kEmpty, kChain, share(Poset::vee())}) {
    for (std::size_t n = 1; n <= 3; ++n) {
      const GapParams p{n, x};
      const auto trees = enumerate_gap_trees(p, x->size() ? 3 : 4);
      const OrderTable table = gap_tabulate(p, trees);
      for (std::size_t i = 0; i < trees.size(); ++i) {
        for (std::size_t j = 0; j < trees.size(); ++j) {
          ASSERT_EQ(table.leq(i, j), gap_leq(p, trees[i], trees[j]))
              << format_gap_tree(*x, trees[i]) << " vs " << format_gap_tree(*x, trees[j]);
        }
      }
    }
  }
}

TEST(Pi, Examples) {
  const Shape empty0 = gap_node(0, {});
  EXPECT_EQ(pi(0, *kEmpty, box(empty0)), empty0);
  const Shape composite = gap_node(0, {box(empty0)});
  EXPECT_EQ(pi(1, *kEmpty, composite), tree(2, kEmpty, "1(0())"));
  EXPECT_EQ(pi_inv(1, *kEmpty, tree(2, kEmpty, "1(0())")), composite);
  EXPECT_THROW(pi_inv(1, *kEmpty, gap_node(2, {})), InputError);
}

TEST(Pi, InvertsOnEnumeratedTrees) {
  for (std::size_t n = 0; n <= 2; ++n) {
    for (Shape t : enumerate_gap_trees(GapParams{n + 1, kChain}, 3)) {
      const Shape s = pi_inv(n, *kChain, t);
      EXPECT_TRUE(composite_valid(n, *kChain, s));
      EXPECT_EQ(pi(n, *kChain, s), t);
      EXPECT_EQ(boxed_of_pair(pair_of_boxed(s)), s);
    }
  }
}

TEST(KappaN, Examples) {
  EXPECT_EQ(kappa_n(0, *kChain, {}), gap_node(0, {}));
  const std::vector<Shape> one{box(gap_leaf(0))};
  EXPECT_EQ(kappa_n(0, *kChain, one), tree(1, kChain, "0(@x)"));
  EXPECT_EQ(iota_n(1), gap_leaf(1));
}

// iota(x) <= kappa(tau) iff x is below some pi(t) in tau.
TEST(KappaN, IotaBelowKappa) {
  const std::size_t n = 1;
  const GapParams p{n + 1, kChain};
  const Dilator comp = compose(gap_dilator(n), gap_minus_dilator(n + 1));
  std::vector<Shape> composites;
  for (Shape pair : comp.enumerate(kChain, EnumBudget{3, 0})) composites.push_back(boxed_of_pair(pair));
  for (std::size_t i = 0; i < composites.size(); ++i) {
    for (std::size_t j = i; j < composites.size(); ++j) {
      const std::vector<Shape> tau{composites[i], composites[j]};
      const Shape k = kappa_n(n, *kChain, tau);
      for (ElemId x = 0; x < 2; ++x) {
        const bool below_some = gap_leq(p, gap_leaf(x), pi(n, *kChain, tau[0])) ||
                                gap_leq(p, gap_leaf(x), pi(n, *kChain, tau[1]));
        EXPECT_EQ(gap_leq(p, iota_n(x), k), below_some);
      }
    }
  }
}

TEST(Text, RoundTripAndErrors) {
  const GapParams p{2, kChain};
  const Shape t = parse_gap_tree(p, "0(1(),0(@x))");
  EXPECT_EQ(parse_gap_tree(p, "0(0(@x),1())"), t);
  EXPECT_EQ(parse_gap_tree(p, format_gap_tree(*kChain, t)), t);
  EXPECT_THROW(parse_gap_tree(p, "2()"), InputError);
  EXPECT_THROW(parse_gap_tree(p, "0(@z)"), InputError);
  EXPECT_THROW(parse_gap_tree(p, "0("), InputError);
  EXPECT_THROW(parse_gap_tree(p, "0() "), InputError);
}

}  // namespace
}  // namespace wpogap
