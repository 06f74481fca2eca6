#include <gtest/gtest.h>

#include "support.hpp"
#include "wpogap/terms.hpp"

namespace wpogap {
namespace {

using testing::has_law;

Shape bag(std::initializer_list<ElemId> ids) { return to_shape(ElemMultiset(ids)); }

struct EmptyBase : ::testing::Test {
  TermSystem s{testing::empty(), multiset_dilator()};
  Shape node0 = s.kappa(s.fragment({}), bag({}));
  Shape chain2 = s.kappa(s.fragment({node0}), bag({0}));
};

TEST_F(EmptyBase, Order) {
  EXPECT_TRUE(s.leq(node0, chain2));
  EXPECT_FALSE(s.leq(chain2, node0));
  EXPECT_TRUE(s.leq(node0, node0));
}

TEST_F(EmptyBase, LengthAndHeight) {
  EXPECT_EQ(term_length(node0), 1U);
  EXPECT_EQ(term_height(node0), 0U);
  EXPECT_EQ(term_length(chain2), 3U);
  EXPECT_EQ(term_height(chain2), 1U);
}

TEST_F(EmptyBase, KappaErasesMultiplicityInTheChildSet) {
  const Shape rr = s.kappa(s.fragment({node0}), bag({0, 0}));
  const NormalPair parts = term_parts(rr);
  EXPECT_EQ(parts.carrier, std::vector<Shape>{node0});
  EXPECT_EQ(parts.reduced, bag({0, 0}));
}

TEST_F(EmptyBase, Validation) {
  EXPECT_TRUE(s.validate(node0).ok());
  const std::vector<Shape> kids{node0};
  const Shape unsupported = pack_pair(kTermTag, bag({}), kids);
  EXPECT_FALSE(s.validate(unsupported).ok());
}

TEST_F(EmptyBase, Enumeration) {
  EXPECT_EQ(enumerate_terms(s, 0, 0), std::vector<Shape>{node0});
  // node(), node[node()], node[node(),node()]
  EXPECT_EQ(enumerate_terms(s, 1, 2).size(), 3U);
}

TEST_F(EmptyBase, TextRoundTrip) {
  EXPECT_EQ(s.format(chain2), "node[node[]]");
  EXPECT_EQ(s.parse("node[node[]]"), chain2);
  EXPECT_THROW(s.parse("node[leaf:0]"), InputError);
}

TEST_F(EmptyBase, FoldOntoOneLabelTrees) {
  const KruskalTarget t = multiset_tree_target(testing::empty());
  EXPECT_EQ(fold_initial(s, t, chain2), gap_node(0, {gap_node(0, {})}));
  const GapParams p{1, testing::empty()};
  const auto terms = enumerate_terms(s, 2, 2);
  for (Shape a : terms) {
    for (Shape b : terms) {
      ASSERT_EQ(s.leq(a, b), gap_leq(p, fold_initial(s, t, a), fold_initial(s, t, b)))
          << s.format(a) << " vs " << s.format(b);
    }
  }
}

TEST_F(EmptyBase, FixedPointAxioms) {
  const auto z = enumerate_terms(s, 1, 3);
  EXPECT_TRUE(check_fixed_point_axioms(multiset_dilator(), *s.base(), s.as_target(), z, EnumBudget{3, 0}).ok());
}

TEST(Terms, SingletonBase) {
  TermSystem s(testing::point(), multiset_dilator());
  const auto level0 = enumerate_terms(s, 0, 0);
  ASSERT_EQ(level0.size(), 2U);
  EXPECT_TRUE(is_leaf_term(level0[0]) || is_leaf_term(level0[1]));
  const Shape leaf = s.leaf(0);
  const Shape above = s.kappa(s.fragment({leaf}), bag({0}));
  EXPECT_TRUE(s.leq(leaf, above));
  EXPECT_FALSE(s.leq(above, leaf));
  EXPECT_EQ(s.parse("node[leaf:x]"), above);
  EXPECT_EQ(s.parse("node[leaf:0]"), above);
}

TEST(Terms, FoldOntoItselfIsTheIdentity) {
  TermSystem s(testing::chain2(), multiset_dilator());
  const KruskalTarget self = s.as_target();
  for (Shape t : enumerate_terms(s, 2, 2)) EXPECT_EQ(fold_initial(s, self, t), t) << s.format(t);
}

TEST(Terms, TabulateAgreesWithLeq) {
  TermSystem s(share(Poset::vee()), multiset_dilator());
  const auto terms = enumerate_terms(s, 1, 2);
  const OrderTable table = s.tabulate(terms);
  TermSystem fresh(share(Poset::vee()), multiset_dilator());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = 0; j < terms.size(); ++j) {
      ASSERT_EQ(table.leq(i, j), fresh.leq(terms[i], terms[j]));
    }
  }
}

TEST(Derivative, SupportAndMap) {
  const Dilator d = derivative(multiset_dilator());
  const OrderMap inc = testing::x_into_chain();
  TermSystem s(inc.target, multiset_dilator());
  const Shape node0 = s.kappa(s.fragment({}), bag({}));
  EXPECT_TRUE(d.supp_ids(inc.target, node0).empty());
  const Shape over_x = s.kappa(s.fragment({s.leaf(0)}), bag({0}));
  EXPECT_EQ(d.supp_ids(inc.target, over_x), std::vector<ElemId>{0});
  EXPECT_EQ(d.map(inc, s.leaf(0)), s.leaf(0));
}

TEST(FixedPoint, GapTreesForMOverT0) {
  const PosetRef x = testing::chain2();
  const Dilator w = compose(multiset_dilator(), gap_dilator(0));
  const auto z = enumerate_gap_minus_trees(GapParams{1, x}, 3);
  EXPECT_TRUE(check_fixed_point_axioms(w, *x, gap_minus_target(0, x), z, EnumBudget{2, 0}).ok());

  TermSystem s(x, w);
  EXPECT_EQ(fold_initial(s, gap_minus_target(0, x), s.kappa(s.fragment({}), pack_pair(kComposeTag, bag({}), {}))),
            gap_node(0, {}));
}

TEST(FixedPoint, NonInjectiveKappaIsCaught) {
  TermSystem s(testing::empty(), multiset_dilator());
  KruskalTarget broken = s.as_target();
  const Shape node0 = s.kappa(s.fragment({}), bag({}));
  broken.kappa = [node0](const Fragment&, Shape) { return node0; };
  broken.tabulate = nullptr;
  const auto z = enumerate_terms(s, 1, 2);
  const Report r = check_fixed_point_axioms(multiset_dilator(), *s.base(), broken, z, EnumBudget{2, 0});
  EXPECT_TRUE(has_law(r, "kappa-injective"));
}

struct NotNormal : testing::MultisetWrapper {
  bool normal() const override { return false; }
};

TEST(Terms, RequireANormalDilator) {
  EXPECT_THROW(TermSystem(testing::empty(), Dilator(std::make_shared<NotNormal>())), PreconditionError);
}

}  // namespace

}  // namespace wpogap
