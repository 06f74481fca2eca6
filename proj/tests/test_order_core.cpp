#include <gtest/gtest.h>

#include <sstream>

#include "support.hpp"

namespace wpogap {
namespace {

using testing::chain2;
using testing::antichain2;
using testing::has_law;

TEST(Poset, ChainIsValid) { EXPECT_TRUE(validate_poset(*chain2()).ok()); }

TEST(Poset, AntisymmetryViolationNamesThePair) {
  const Poset p = Poset::from_relation("bad", {"a", "b"}, [](ElemId, ElemId) { return true; });
  const Report r = validate_poset(p);
  ASSERT_EQ(r.violations.size(), 1U);
  EXPECT_EQ(r.violations[0].law, "antisymmetry");
  EXPECT_EQ(r.violations[0].witness, "(a,b)");
}

TEST(Poset, TransitivityViolationNamesTheTriple) {
  const Poset p = Poset::from_relation("bad", {"a", "b", "c"}, [](ElemId i, ElemId j) {
    return i == j || (i == 0 && j == 1) || (i == 1 && j == 2);
  });
  const Report r = validate_poset(p);
  ASSERT_TRUE(has_law(r, "transitivity"));
  EXPECT_EQ(r.violations[0].witness, "(a,b,c)");
}

TEST(LeqFin, Examples) {
  const PosetRef c = chain2();
  const PosetRef a = antichain2();
  EXPECT_TRUE(leq_fin(*a, FinSubset(a, {}), FinSubset(a, {1})));
  EXPECT_TRUE(leq_fin(*c, FinSubset(c, {0}), FinSubset(c, {1})));
  EXPECT_FALSE(leq_fin(*a, FinSubset(a, {0, 1}), FinSubset(a, {1})));
  EXPECT_FALSE(leq_fin(*c, FinSubset(c, {1}), FinSubset(c, {0})));
}

TEST(OrderMap, IdentityAndInclusionAreEmbeddings) {
  EXPECT_TRUE(validate_map(identity_map(chain2())).ok());
  EXPECT_TRUE(validate_map(testing::x_into_chain()).ok());
}

TEST(OrderMap, ConstantMapOnAntichainIsNoQuasiEmbedding) {
  const OrderMap f{antichain2(), share(Poset::chain({"p"})), {0, 0}, MapKind::QuasiEmbedding};
  const Report r = validate_map(f);
  ASSERT_TRUE(has_law(r, "quasi-embedding"));
  const bool names_pair = std::any_of(r.violations.begin(), r.violations.end(), [](const Violation& v) {
    return v.witness == "(u,v)";
  });
  EXPECT_TRUE(names_pair);
}

TEST(OrderMap, ImageFin) {
  const PosetRef c = chain2();
  const OrderMap id = identity_map(c);
  EXPECT_TRUE(image_fin(id, FinSubset(c, {})).members.empty());
  EXPECT_EQ(image_fin(id, FinSubset(c, {0, 1})).members, (std::vector<ElemId>{0, 1}));
  const OrderMap inc = testing::x_into_chain();
  EXPECT_EQ(image_fin(inc, FinSubset(inc.source, {0})).members, std::vector<ElemId>{0});
}

TEST(OrderMap, Inclusions) {
  const PosetRef c = chain2();
  const OrderMap full = inclusion(FinSubset(c, {0, 1}));
  EXPECT_EQ(full.assign, (std::vector<ElemId>{0, 1}));
  EXPECT_EQ(full.kind, MapKind::Embedding);
  EXPECT_EQ(inclusion(FinSubset(c, {1})).assign, std::vector<ElemId>{1});
  const OrderMap u = inclusion(FinSubset(antichain2(), {0}));
  EXPECT_EQ(u.source->size(), 1U);
  EXPECT_EQ(u.assign, std::vector<ElemId>{0});
}

TEST(PosetFile, RoundTrip) {
  std::istringstream in("poset v\nelem b\nelem l\nelem r\nle b l\nle b r\n");
  const Poset p = parse_poset(in);
  EXPECT_TRUE(validate_poset(p).ok());
  EXPECT_TRUE(p.leq(0, 1));
  EXPECT_FALSE(p.leq(1, 2));
  std::istringstream again(format_poset(p));
  EXPECT_EQ(parse_poset(again).fingerprint(), p.fingerprint());
}

TEST(PosetFile, CycleIsRejected) {
  std::istringstream in("poset c\nelem a\nelem b\nle a b\nle b a\n");
  EXPECT_THROW(parse_poset(in), InputError);
}

}  // namespace
}  // namespace wpogap
