#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "wpogap/dilator.hpp"
#include "wpogap/gap_trees.hpp"
#include "wpogap/multiset.hpp"

namespace wpogap::testing {

inline PosetRef chain2() { return share(Poset::chain({"x", "y"})); }
inline PosetRef antichain2() { return share(Poset::antichain({"u", "v"})); }
inline PosetRef point() { return share(Poset::chain({"x"})); }
inline PosetRef empty() { return share(Poset::empty()); }

/// The inclusion of {x} into the chain x <= y.
inline OrderMap x_into_chain() {
  const PosetRef c = chain2();
  return inclusion(FinSubset(c, {0}));
}

inline bool has_law(const Report& r, const std::string& law) {
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [&](const Violation& v) { return v.law == law; });
}

inline Shape tree(std::size_t n, const PosetRef& x, std::string_view text) {
  return parse_gap_tree(GapParams{n, x}, text);
}

/// Forwards to M, except where a subclass says otherwise.
class MultisetWrapper : public DilatorImpl {
 public:
  std::string name() const override { return "broken"; }
  bool normal() const override { return true; }
  bool leq(const Poset& x, Shape s, Shape t) const override { return m_.leq(x, s, t); }
  Shape map(const OrderMap& f, Shape s) const override { return m_.map(f, s); }
  std::vector<ElemId> supp(const PosetRef& x, Shape s) const override { return m_.supp_ids(x, s); }
  std::vector<Shape> enumerate(const PosetRef& x, EnumBudget b) const override {
    return m_.enumerate(x, b);
  }
  std::optional<Shape> pullback(const OrderMap& f, Shape s) const override {
    return m_.pullback(f, s);
  }
  bool valid(const PosetRef& x, Shape s) const override { return m_.valid(x, s); }

 protected:
  Dilator m_ = multiset_dilator();
};

}  // namespace wpogap::testing
