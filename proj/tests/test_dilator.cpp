#include <gtest/gtest.h>

#include "support.hpp"
#include "wpogap/terms.hpp"

namespace wpogap {
namespace {

using testing::antichain2;
using testing::chain2;
using testing::has_law;

Shape bag(std::initializer_list<ElemId> ids) { return to_shape(ElemMultiset(ids)); }

TEST(NormalForm, MultisetExamples) {
  const NormalForm yy = normal_form(DValue{multiset_dilator(), chain2(), bag({1, 1})});
  EXPECT_EQ(yy.support.members, std::vector<ElemId>{1});
  EXPECT_EQ(yy.reduced.carrier->size(), 1U);
  EXPECT_EQ(yy.reduced.payload, bag({0, 0}));

  const NormalForm none = normal_form(DValue{multiset_dilator(), chain2(), bag({})});
  EXPECT_TRUE(none.support.members.empty());
  EXPECT_EQ(none.reduced.payload, bag({}));

  const NormalForm uv = normal_form(DValue{multiset_dilator(), antichain2(), bag({0, 1})});
  EXPECT_EQ(uv.support.members, (std::vector<ElemId>{0, 1}));
  EXPECT_EQ(uv.reduced.payload, bag({0, 1}));
}

TEST(Identity, Examples) {
  const Dilator id = identity_dilator();
  const PosetRef c = chain2();
  EXPECT_TRUE(id.leq(*c, Shape::elem(0), Shape::elem(1)));
  EXPECT_FALSE(id.leq(*c, Shape::elem(1), Shape::elem(0)));
  EXPECT_EQ(id.supp_ids(c, Shape::elem(0)), std::vector<ElemId>{0});
  EXPECT_EQ(id.map(testing::x_into_chain(), Shape::elem(0)), Shape::elem(0));
}

TEST(Compose, IdentityIsNeutralOnTheLeft) {
  const Dilator m = multiset_dilator();
  const Dilator im = compose(identity_dilator(), m);
  const PosetRef c = chain2();
  const auto values = m.enumerate(c, EnumBudget{3, 0});
  auto wrap = [](Shape v) { return pack_pair(kComposeTag, Shape::elem(0), std::span<const Shape>(&v, 1)); };
  EXPECT_EQ(im.enumerate(c, EnumBudget{3, 0}).size(), values.size());
  const OrderMap inc = testing::x_into_chain();
  for (Shape s : values) {
    EXPECT_EQ(im.supp_ids(c, wrap(s)), m.supp_ids(c, s));
    for (Shape t : values) EXPECT_EQ(im.leq(*c, wrap(s), wrap(t)), m.leq(*c, s, t));
  }
  for (Shape s : m.enumerate(inc.source, EnumBudget{3, 0})) {
    EXPECT_EQ(im.map(inc, wrap(s)), wrap(m.map(inc, s)));
  }
}

TEST(Compose, SupportOfMOverT0IsTheUnion) {
  const Dilator mt0 = compose(multiset_dilator(), gap_dilator(0));
  const std::vector<Shape> carrier{Shape::elem(0), Shape::elem(1)};
  const Shape xy = pack_pair(kComposeTag, bag({0, 1}), carrier);
  ASSERT_TRUE(mt0.valid(chain2(), xy));
  EXPECT_EQ(mt0.supp_ids(chain2(), xy), (std::vector<ElemId>{0, 1}));
}

TEST(Compose, NestedMultisets) {
  const Dilator mm = compose(multiset_dilator(), multiset_dilator());
  const PosetRef p = testing::point();
  const std::vector<Shape> inner{bag({0})};
  const Shape one = pack_pair(kComposeTag, bag({0}), inner);
  const Shape two = pack_pair(kComposeTag, bag({0, 0}), inner);
  EXPECT_TRUE(mm.leq(*p, one, two));
  EXPECT_FALSE(mm.leq(*p, two, one));
}

// Bulk comparison has to agree with the pairwise one everywhere.
TEST(Tabulate, AgreesWithLeq) {
  const std::vector<Dilator> ds{multiset_dilator(), compose(multiset_dilator(), gap_dilator(1)),
                                compose(gap_dilator(1), gap_minus_dilator(2)),
                                compose(multiset_dilator(), multiset_dilator()),
                                derivative(multiset_dilator())};
  for (const Dilator& d : ds) {
    for (const PosetRef& x : {testing::empty(), chain2(), share(Poset::vee())}) {
      const auto values = d.enumerate(x, EnumBudget{2, 1});
      const OrderTable table = d.tabulate(x, values);
      for (std::size_t i = 0; i < values.size(); ++i) {
        for (std::size_t j = 0; j < values.size(); ++j) {
          ASSERT_EQ(table.leq(i, j), d.leq(*x, values[i], values[j]))
              << d.name() << " over " << x->name() << ": " << d.format(*x, values[i]) << " vs "
              << d.format(*x, values[j]);
        }
      }
    }
  }
}

TEST(Compose, AssociativeUpToOrderIsomorphism) {
  // (M o M) o M and M o (M o M) encode values differently; compare the
  // order types of both enumerations over a point by their comparability counts.
  const PosetRef p = testing::point();
  const Dilator left = compose(compose(multiset_dilator(), multiset_dilator()), multiset_dilator());
  const Dilator right = compose(multiset_dilator(), compose(multiset_dilator(), multiset_dilator()));
  for (const Dilator& d : {left, right}) {
    EXPECT_TRUE(check_normality(d, p, EnumBudget{2, 0}).ok()) << d.name();
    EXPECT_TRUE(check_normal_forms(d, p, EnumBudget{2, 0}).ok()) << d.name();
  }
  EXPECT_EQ(left.enumerate(p, EnumBudget{1, 0}).size(), right.enumerate(p, EnumBudget{1, 0}).size());
}

TEST(Laws, MultisetAndIdentityPass) {
  const OrderMap inc = testing::x_into_chain();
  EXPECT_TRUE(check_support_condition(multiset_dilator(), inc, EnumBudget{2, 0}).ok());
  EXPECT_TRUE(check_support_condition(identity_dilator(), inc, EnumBudget{1, 0}).ok());
  EXPECT_TRUE(check_normality(multiset_dilator(), chain2(), EnumBudget{3, 0}).ok());
  EXPECT_TRUE(check_normality(identity_dilator(), share(Poset::vee()), EnumBudget{1, 0}).ok());
  EXPECT_TRUE(check_naturality_supp(multiset_dilator(), inc, EnumBudget{3, 0}).ok());
  EXPECT_TRUE(check_naturality_supp(identity_dilator(), inc, EnumBudget{1, 0}).ok());
}

TEST(Laws, EmptyMultisetHasEmptySupportOnBothSides) {
  const OrderMap inc = testing::x_into_chain();
  const Dilator m = multiset_dilator();
  EXPECT_TRUE(m.supp_ids(inc.target, m.map(inc, bag({}))).empty());
  EXPECT_TRUE(m.supp_ids(inc.source, bag({})).empty());
}

class EmptySupport : public testing::MultisetWrapper {
 public:
  std::vector<ElemId> supp(const PosetRef&, Shape) const override { return {}; }
};

class SizeOnlyOrder : public testing::MultisetWrapper {
 public:
  bool leq(const Poset&, Shape s, Shape t) const override { return s.kids().size() <= t.kids().size(); }
};

TEST(Laws, EmptySupportBreaksTheSupportCondition) {
  const Dilator broken(std::make_shared<EmptySupport>());
  const PosetRef a3 = share(Poset::antichain({"u", "v", "w"}));
  const OrderMap f = inclusion(FinSubset(a3, {0, 1}));
  const Report r = check_support_condition(broken, f, EnumBudget{2, 0});
  EXPECT_TRUE(has_law(r, "support-condition"));
}

TEST(Laws, OrderIgnoringEntriesBreaksNormality) {
  const Dilator broken(std::make_shared<SizeOnlyOrder>());
  EXPECT_TRUE(has_law(check_normality(broken, chain2(), EnumBudget{2, 0}), "normality"));
}

TEST(Laws, FunctorialityOnCompositeMaps) {
  const PosetRef c3 = share(Poset::chain({"a", "b", "c"}));
  const OrderMap f = testing::x_into_chain();
  const OrderMap g{f.target, c3, {0, 2}, MapKind::Embedding};
  for (const Dilator& d : {multiset_dilator(), gap_dilator(2), compose(multiset_dilator(), gap_dilator(1)),
                           derivative(multiset_dilator())}) {
    EXPECT_TRUE(check_functoriality(d, f, g, EnumBudget{2, 1}).ok()) << d.name();
    EXPECT_TRUE(check_map_order(d, g, EnumBudget{2, 1}).ok()) << d.name();
  }
}

TEST(Fragment, SubFragmentsReuseTheParentOrder) {
  const PosetRef c = chain2();
  const Dilator m = multiset_dilator();
  const Fragment all = make_fragment(m.enumerate(c, EnumBudget{2, 0}),
                                     [&](Shape s, Shape t) { return m.leq(*c, s, t); });
  const std::vector<ElemId> members{0, 2};
  const Fragment sub = sub_fragment(all, members);
  ASSERT_EQ(sub.values.size(), 2U);
  EXPECT_EQ(sub.poset->leq(0, 1), all.poset->leq(0, 2));
  EXPECT_EQ(all.index_of(sub.values[1]), 2U);
  EXPECT_THROW(sub.index_of(all.values[1]), InputError);
}

}  // namespace
}  // namespace wpogap
