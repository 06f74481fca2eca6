#include "wpogap/dilator.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_set>

#include "wpogap/multiset.hpp"

namespace wpogap {

std::string DilatorImpl::format(const Poset& x, Shape s) const { return format_shape(x, s); }

bool DilatorImpl::leq_mapped(RelationRef z, const PosetRef& sa, std::span<const ElemId> f,
                             Shape s, const PosetRef& sb, std::span<const ElemId> g,
                             Shape t) const {
  std::vector<ElemId> joint(f.begin(), f.end());
  joint.insert(joint.end(), g.begin(), g.end());
  std::sort(joint.begin(), joint.end());
  joint.erase(std::unique(joint.begin(), joint.end()), joint.end());
  Poset c("image", joint.size());
  for (ElemId i = 0; i < joint.size(); ++i) {
    for (ElemId j = 0; j < joint.size(); ++j) {
      if (z.leq(joint[i], joint[j])) c.set_leq(i, j, true);
    }
  }
  auto into_c = [&](std::span<const ElemId> h) {
    std::vector<ElemId> out;
    for (ElemId y : h) {
      out.push_back(static_cast<ElemId>(std::lower_bound(joint.begin(), joint.end(), y) -
                                        joint.begin()));
    }
    return out;
  };
  const PosetRef target = share(std::move(c));
  const OrderMap fa{sa, target, into_c(f), MapKind::Embedding};
  const OrderMap gb{sb, target, into_c(g), MapKind::Embedding};
  return leq(*target, map(fa, s), map(gb, t));
}

OrderTable DilatorImpl::tabulate(const PosetRef& x, std::vector<Shape> values) const {
  return wpogap::tabulate(std::move(values), [&](Shape s, Shape t) { return leq(*x, s, t); });
}

// ---- fragments and normal-form pairs ---------------------------------------

std::optional<ElemId> Fragment::find(Shape v) const {
  auto it = std::lower_bound(values.begin(), values.end(), v);
  if (it == values.end() || *it != v) return std::nullopt;
  return static_cast<ElemId>(it - values.begin());
}

ElemId Fragment::index_of(Shape v) const {
  if (auto i = find(v)) return *i;
  throw InputError("value is not in the fragment: " + debug_string(v));
}

Fragment make_fragment(std::vector<Shape> values, const ValueLeq& leq, std::string name) {
  canonicalize(values);
  Poset p(std::move(name), values.size());
  for (ElemId i = 0; i < values.size(); ++i) {
    for (ElemId j = 0; j < values.size(); ++j) {
      if (i == j || leq(values[i], values[j])) p.set_leq(i, j, true);
    }
  }
  return Fragment{share(std::move(p)), std::move(values)};
}

Fragment sub_fragment(const Fragment& f, std::span<const ElemId> members) {
  std::vector<Shape> values;
  values.reserve(members.size());
  for (ElemId m : members) values.push_back(f.values.at(m));
  return Fragment{share(f.poset->induced(members)), std::move(values)};
}

Fragment sub_fragment_of_values(const Fragment& parent, std::span<const Shape> values) {
  std::vector<ElemId> ids;
  ids.reserve(values.size());
  for (Shape v : values) ids.push_back(parent.index_of(v));
  return sub_fragment(parent, ids);
}

namespace {

OrderMap fragment_inclusion(const Fragment& sub, const Fragment& sup) {
  std::vector<ElemId> assign;
  assign.reserve(sub.values.size());
  for (Shape v : sub.values) assign.push_back(sup.index_of(v));
  return OrderMap{sub.poset, sup.poset, std::move(assign), MapKind::Embedding};
}

std::vector<Shape> merge_sorted(std::span<const Shape> a, std::span<const Shape> b) {
  std::vector<Shape> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<ElemId> iota(std::size_t n) {
  std::vector<ElemId> out(n);
  for (ElemId i = 0; i < n; ++i) out[i] = i;
  return out;
}

}  // namespace

Shape pack_pair(std::uint32_t tag, Shape reduced, std::span<const Shape> carrier) {
  std::vector<Shape> kids;
  kids.reserve(carrier.size() + 1);
  kids.push_back(reduced);
  kids.insert(kids.end(), carrier.begin(), carrier.end());
  return Shape::tuple(tag, std::move(kids));
}

bool is_pair(Shape s, std::uint32_t tag) {
  return s.kind() == ShapeKind::Tuple && s.tag() == tag && !s.kids().empty();
}

NormalPair unpack_pair(Shape s, std::uint32_t tag) {
  if (!is_pair(s, tag)) throw InputError("not a normal-form pair: " + debug_string(s));
  auto kids = s.kids();
  return NormalPair{kids.front(), std::vector<Shape>(kids.begin() + 1, kids.end())};
}

namespace {
void render_named(const Poset& x, Shape s, std::string& out) {
  if (s.is_elem()) {
    out += x.contains(s.id()) ? x.element_name(s.id()) : "#" + std::to_string(s.id());
    return;
  }
  const bool tuple = s.kind() == ShapeKind::Tuple;
  out += (tuple ? "T" : "N") + std::to_string(s.tag()) + (tuple ? "<" : "(");
  bool first = true;
  for (Shape k : s.kids()) {
    if (!first) out += ',';
    first = false;
    render_named(x, k, out);
  }
  out += tuple ? '>' : ')';
}
}  // namespace

std::string format_shape(const Poset& x, Shape s) {
  std::string out;
  render_named(x, s, out);
  return out;
}

// ---- identity -------------------------------------------------------------

namespace {

std::optional<ElemId> preimage(const OrderMap& f, ElemId y) {
  for (ElemId x = 0; x < f.assign.size(); ++x) {
    if (f.assign[x] == y) return x;
  }
  return std::nullopt;
}

/// Relabels every Elem leaf through the partial inverse of f.
std::optional<Shape> pull_leaves(const OrderMap& f, Shape s) {
  bool ok = true;
  Shape out = substitute(s, [&](ElemId y) {
    auto x = preimage(f, y);
    if (!x) {
      ok = false;
      return Shape::elem(0);
    }
    return Shape::elem(*x);
  });
  if (!ok) return std::nullopt;
  return out;
}

class IdentityImpl final : public DilatorImpl {
 public:
  std::string name() const override { return "id"; }
  bool normal() const override { return true; }
  bool leq(const Poset& x, Shape s, Shape t) const override {
    require(x, s);
    require(x, t);
    return x.leq(s.id(), t.id());
  }
  Shape map(const OrderMap& f, Shape s) const override {
    require(*f.source, s);
    return Shape::elem(f(s.id()));
  }
  std::vector<ElemId> supp(const PosetRef& x, Shape s) const override {
    require(*x, s);
    return {s.id()};
  }
  std::vector<Shape> enumerate(const PosetRef& x, EnumBudget) const override {
    std::vector<Shape> out;
    for (ElemId i = 0; i < x->size(); ++i) out.push_back(Shape::elem(i));
    return out;
  }
  std::optional<Shape> pullback(const OrderMap& f, Shape s) const override {
    return pull_leaves(f, s);
  }
  bool valid(const PosetRef& x, Shape s) const override { return valid_over(*x, s); }

 private:
  static bool valid_over(const Poset& x, Shape s) { return s.is_elem() && x.contains(s.id()); }
  void require(const Poset& x, Shape s) const {
    if (!valid_over(x, s)) throw InputError("not an element of the carrier: " + debug_string(s));
  }
};

// ---- multisets ------------------------------------------------------------

class MultisetImpl final : public DilatorImpl {
 public:
  std::string name() const override { return "M"; }
  bool normal() const override { return true; }
  bool leq(const Poset& x, Shape s, Shape t) const override {
    return ms_leq(x, decode(x, s), decode(x, t));
  }
  bool leq_mapped(RelationRef z, const PosetRef& sa, std::span<const ElemId> f, Shape s,
                  const PosetRef& sb, std::span<const ElemId> g, Shape t) const override {
    if (!valid_over(*sa, s) || !valid_over(*sb, t) || f.size() != sa->size() ||
        g.size() != sb->size()) {
      throw InputError("not a multiset over the carrier");
    }
    // Entries are Elem leaves, so compare the kids directly.
    return multiset_leq(s.kids(), t.kids(),
                        [&](Shape x, Shape y) { return z.leq(f[x.id()], g[y.id()]); });
  }
  OrderTable tabulate(const PosetRef& x, std::vector<Shape> values) const override {
    for (Shape v : values) decode(*x, v);
    OrderTable out(values);
    for (std::size_t i = 0; i < values.size(); ++i) {
      for (std::size_t j = 0; j < values.size(); ++j) {
        if (multiset_leq(values[i].kids(), values[j].kids(),
                         [&](Shape a, Shape b) { return x->leq(a.id(), b.id()); })) {
          out.set(i, j);
        }
      }
    }
    return out;
  }
  Shape map(const OrderMap& f, Shape s) const override {
    return to_shape(ms_map(f, decode(*f.source, s)));
  }
  std::vector<ElemId> supp(const PosetRef& x, Shape s) const override {
    return decode(*x, s).support();
  }
  std::vector<Shape> enumerate(const PosetRef& x, EnumBudget budget) const override {
    std::vector<Shape> out;
    for (const auto& m : ms_enumerate(*x, budget.size)) out.push_back(to_shape(m));
    return out;
  }
  std::optional<Shape> pullback(const OrderMap& f, Shape s) const override {
    decode(*f.target, s);
    return pull_leaves(f, s);
  }
  bool valid(const PosetRef& x, Shape s) const override { return valid_over(*x, s); }
  std::string format(const Poset& x, Shape s) const override {
    std::string out = "[";
    bool first = true;
    for (Shape k : s.kids()) {
      if (!first) out += ',';
      first = false;
      out += format_shape(x, k);
    }
    return out + "]";
  }

 private:
  static bool valid_over(const Poset& x, Shape s) {
    if (s.kind() != ShapeKind::Node || s.tag() != kBagTag) return false;
    return std::all_of(s.kids().begin(), s.kids().end(),
                       [&](Shape k) { return k.is_elem() && x.contains(k.id()); });
  }
  static ElemMultiset decode(const Poset& x, Shape s) {
    if (!valid_over(x, s)) throw InputError("not a multiset over the carrier: " + debug_string(s));
    return multiset_of_shape(s);
  }
};

// ---- composition ----------------------------------------------------------

class ComposeImpl final : public DilatorImpl {
 public:
  ComposeImpl(Dilator outer, Dilator inner) : outer_(std::move(outer)), inner_(std::move(inner)) {}

  std::string name() const override {
    return "compose(" + outer_.name() + "," + inner_.name() + ")";
  }
  bool normal() const override { return outer_.normal() && inner_.normal(); }

  bool leq(const Poset& x, Shape s, Shape t) const override {
    const NormalPair a = unpack_pair(s, kComposeTag);
    const NormalPair b = unpack_pair(t, kComposeTag);
    const Fragment joint = local(x, merge_sorted(a.carrier, b.carrier));
    const OrderMap ia = fragment_inclusion(sub_fragment_of_values(joint, a.carrier), joint);
    const OrderMap ib = fragment_inclusion(sub_fragment_of_values(joint, b.carrier), joint);
    return outer_.leq(*joint.poset, outer_.map(ia, a.reduced), outer_.map(ib, b.reduced));
  }

  OrderTable tabulate(const PosetRef& x, std::vector<Shape> values) const override {
    // The inner order is tabulated once over every carrier value.
    std::vector<NormalPair> parts;
    std::vector<Shape> inner_values;
    for (Shape v : values) {
      parts.push_back(unpack_pair(v, kComposeTag));
      inner_values.insert(inner_values.end(), parts.back().carrier.begin(),
                          parts.back().carrier.end());
    }
    canonicalize(inner_values);
    const OrderTable inner = inner_.tabulate(x, inner_values);
    std::vector<PosetRef> locals;
    std::vector<std::vector<ElemId>> positions;
    for (const NormalPair& p : parts) {
      std::vector<ElemId> pos;
      for (Shape c : p.carrier) pos.push_back(static_cast<ElemId>(*inner.index_of(c)));
      Poset local_order("local", pos.size());
      for (ElemId i = 0; i < pos.size(); ++i) {
        for (ElemId j = 0; j < pos.size(); ++j) local_order.set_leq(i, j, inner.leq(pos[i], pos[j]));
      }
      locals.push_back(share(std::move(local_order)));
      positions.push_back(std::move(pos));
    }
    OrderTable out(values);
    for (std::size_t i = 0; i < values.size(); ++i) {
      for (std::size_t j = 0; j < values.size(); ++j) {
        if (outer_.leq_mapped(inner, locals[i], positions[i], parts[i].reduced, locals[j],
                              positions[j], parts[j].reduced)) {
          out.set(i, j);
        }
      }
    }
    return out;
  }

  Shape map(const OrderMap& f, Shape s) const override {
    const NormalPair a = unpack_pair(s, kComposeTag);
    std::vector<Shape> images;
    images.reserve(a.carrier.size());
    for (Shape w : a.carrier) images.push_back(inner_.map(f, w));
    const Fragment source = local(*f.source, a.carrier);
    const Fragment target = local(*f.target, images);
    std::vector<ElemId> assign;
    assign.reserve(images.size());
    for (Shape w : images) assign.push_back(target.index_of(w));
    const OrderMap g{source.poset, target.poset, std::move(assign), f.kind};
    return pack_pair(kComposeTag, outer_.map(g, a.reduced), target.values);
  }

  std::vector<ElemId> supp(const PosetRef& x, Shape s) const override {
    const NormalPair a = unpack_pair(s, kComposeTag);
    const Fragment source = local(*x, a.carrier);
    std::vector<ElemId> out;
    for (ElemId i : outer_.supp_ids(source.poset, a.reduced)) {
      auto part = inner_.supp_ids(x, a.carrier.at(i));
      out.insert(out.end(), part.begin(), part.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::vector<Shape> enumerate(const PosetRef& x, EnumBudget budget) const override {
    return compose_values(outer_, inner_, x, inner_.enumerate(x, budget), budget);
  }

  std::optional<Shape> pullback(const OrderMap& f, Shape s) const override {
    const NormalPair a = unpack_pair(s, kComposeTag);
    std::vector<Shape> pulled;
    pulled.reserve(a.carrier.size());
    for (Shape w : a.carrier) {
      auto p = inner_.pullback(f, w);
      if (!p) return std::nullopt;
      pulled.push_back(*p);
    }
    const Fragment source = local(*f.target, a.carrier);
    const Fragment target = local(*f.source, pulled);
    std::vector<ElemId> assign;
    for (Shape w : pulled) assign.push_back(target.index_of(w));
    const OrderMap g{source.poset, target.poset, std::move(assign), MapKind::Embedding};
    return pack_pair(kComposeTag, outer_.map(g, a.reduced), target.values);
  }

  bool valid(const PosetRef& x, Shape s) const override {
    if (!is_pair(s, kComposeTag)) return false;
    const NormalPair a = unpack_pair(s, kComposeTag);
    if (!std::is_sorted(a.carrier.begin(), a.carrier.end()) ||
        std::adjacent_find(a.carrier.begin(), a.carrier.end()) != a.carrier.end()) {
      return false;
    }
    for (Shape w : a.carrier) {
      if (!inner_.valid(x, w)) return false;
    }
    const Fragment source = local(*x, a.carrier);
    if (!outer_.valid(source.poset, a.reduced)) return false;
    return outer_.supp_ids(source.poset, a.reduced) == iota(a.carrier.size());
  }

  std::string format(const Poset& x, Shape s) const override {
    const NormalPair a = unpack_pair(s, kComposeTag);
    std::vector<std::string> names;
    for (Shape w : a.carrier) names.push_back(inner_.format(x, w));
    return outer_.format(Poset("local", std::move(names)), a.reduced);
  }

 private:
  Fragment local(const Poset& x, std::vector<Shape> values) const {
    return make_fragment(std::move(values),
                         [&](Shape p, Shape q) { return inner_.leq(x, p, q); });
  }

  Dilator outer_;
  Dilator inner_;
};

}  // namespace

std::vector<Shape> compose_values(const Dilator& outer, const Dilator& inner, const PosetRef& x,
                                  std::vector<Shape> inner_values, EnumBudget outer_budget) {
  const Fragment local = make_fragment(std::move(inner_values),
                                       [&](Shape p, Shape q) { return inner.leq(*x, p, q); });
  std::vector<Shape> out;
  for (Shape v : outer.enumerate(local.poset, outer_budget)) {
    const Fragment sub = sub_fragment(local, outer.supp_ids(local.poset, v));
    auto reduced = outer.pullback(fragment_inclusion(sub, local), v);
    if (!reduced) {
      throw DilatorLawError(outer.name() + " value cannot be pulled back to its support: " +
                            debug_string(v));
    }
    out.push_back(pack_pair(kComposeTag, *reduced, sub.values));
  }
  return out;
}

Dilator identity_dilator() {
  static const Dilator d(std::make_shared<IdentityImpl>());
  return d;
}

Dilator multiset_dilator() {
  static const Dilator d(std::make_shared<MultisetImpl>());
  return d;
}

Dilator compose(Dilator outer, Dilator inner) {
  return Dilator(std::make_shared<ComposeImpl>(std::move(outer), std::move(inner)));
}

// ---- normal forms -----------------------------------------------------------

NormalForm normal_form(const DValue& sigma) {
  const Dilator& w = sigma.dilator;
  FinSubset support(sigma.carrier, w.supp_ids(sigma.carrier, sigma.payload));
  const OrderMap iota_a = inclusion(support);
  auto reduced = w.pullback(iota_a, sigma.payload);
  if (!reduced) {
    throw DilatorLawError(w.name() + ": value has no preimage over its support " +
                          format_ids(*sigma.carrier, support.members));
  }
  if (w.map(iota_a, *reduced) != sigma.payload) {
    throw DilatorLawError(w.name() + ": pullback does not map back to the value");
  }
  if (w.supp_ids(iota_a.source, *reduced) != iota(support.members.size())) {
    throw DilatorLawError(w.name() + ": reduced value does not have full support");
  }
  return NormalForm{std::move(support), DValue{w, iota_a.source, *reduced}};
}

// ---- law checkers -------------------------------------------------------------

Report check_support_condition(const Dilator& w, const OrderMap& f, EnumBudget budget) {
  Report r;
  std::unordered_set<Shape> images;
  for (Shape sigma : w.enumerate(f.source, budget)) images.insert(w.map(f, sigma));
  std::vector<char> in_range(f.target->size(), 0);
  for (ElemId y : f.assign) in_range[y] = 1;
  for (Shape tau : w.enumerate(f.target, budget)) {
    ++r.checked;
    const auto ids = w.supp_ids(f.target, tau);
    const bool supported = std::all_of(ids.begin(), ids.end(), [&](ElemId y) { return in_range[y]; });
    const bool has_preimage = images.contains(tau);
    if (supported != has_preimage) {
      r.add("support-condition", w.name() + " tau=" + w.format(*f.target, tau) +
                                     (supported ? " supported in rng(f) but no preimage"
                                                : " has a preimage but support leaves rng(f)"));
    }
  }
  return r;
}

Report check_normality(const Dilator& w, const PosetRef& p, EnumBudget budget) {
  Report r;
  const auto values = w.enumerate(p, budget);
  const OrderTable order = w.tabulate(p, values);
  std::vector<std::vector<ElemId>> supports;
  supports.reserve(values.size());
  for (Shape v : values) supports.push_back(w.supp_ids(p, v));
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = 0; j < values.size(); ++j) {
      ++r.checked;
      if (order.leq(i, j) && !leq_fin(*p, supports[i], supports[j])) {
        r.add("normality", w.name() + " " + w.format(*p, values[i]) + " <= " +
                               w.format(*p, values[j]) + " but supports are not <=fin");
      }
    }
  }
  return r;
}

Report check_naturality_supp(const Dilator& w, const OrderMap& f, EnumBudget budget) {
  Report r;
  for (Shape sigma : w.enumerate(f.source, budget)) {
    ++r.checked;
    const auto lhs = w.supp_ids(f.target, w.map(f, sigma));
    std::vector<ElemId> rhs;
    for (ElemId x : w.supp_ids(f.source, sigma)) rhs.push_back(f(x));
    std::sort(rhs.begin(), rhs.end());
    rhs.erase(std::unique(rhs.begin(), rhs.end()), rhs.end());
    if (lhs != rhs) {
      r.add("supp-naturality", w.name() + " sigma=" + w.format(*f.source, sigma) + ": " +
                                   format_ids(*f.target, lhs) + " != " +
                                   format_ids(*f.target, rhs));
    }
  }
  return r;
}

Report check_functoriality(const Dilator& w, const OrderMap& f, const OrderMap& g,
                           EnumBudget budget) {
  Report r;
  const OrderMap gf = compose_maps(g, f);
  const OrderMap id = identity_map(f.source);
  for (Shape sigma : w.enumerate(f.source, budget)) {
    r.checked += 2;
    if (w.map(gf, sigma) != w.map(g, w.map(f, sigma))) {
      r.add("functor-composition", w.name() + " sigma=" + w.format(*f.source, sigma));
    }
    if (w.map(id, sigma) != sigma) {
      r.add("functor-identity", w.name() + " sigma=" + w.format(*f.source, sigma));
    }
  }
  return r;
}

Report check_map_order(const Dilator& w, const OrderMap& f, EnumBudget budget) {
  Report r;
  const auto values = w.enumerate(f.source, budget);
  std::vector<Shape> images;
  images.reserve(values.size());
  for (Shape v : values) images.push_back(w.map(f, v));
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = 0; j < values.size(); ++j) {
      ++r.checked;
      const bool before = w.leq(*f.source, values[i], values[j]);
      const bool after = w.leq(*f.target, images[i], images[j]);
      const std::string pair =
          w.format(*f.source, values[i]) + " vs " + w.format(*f.source, values[j]);
      if (after && !before) r.add("map-quasi-embedding", w.name() + " " + pair);
      if (f.kind == MapKind::Embedding && before && !after) {
        r.add("map-embedding", w.name() + " " + pair);
      }
    }
  }
  return r;
}

Report check_normal_forms(const Dilator& w, const PosetRef& p, EnumBudget budget) {
  Report r;
  for (Shape sigma : w.enumerate(p, budget)) {
    ++r.checked;
    try {
      const NormalForm nf = normal_form(DValue{w, p, sigma});
      const NormalForm again = normal_form(nf.reduced);
      if (again.reduced.payload != nf.reduced.payload ||
          again.support.members.size() != nf.support.members.size()) {
        r.add("normal-form-idempotent", w.name() + " sigma=" + w.format(*p, sigma));
      }
    } catch (const DilatorLawError& e) {
      r.add("normal-form", w.name() + " sigma=" + w.format(*p, sigma) + ": " + e.what());
    }
  }
  return r;
}

Report check_partial_order(std::span<const Shape> values, const ValueLeq& leq,
                           const std::function<std::string(Shape)>& describe,
                           std::size_t max_witnesses) {
  return check_partial_order(tabulate(std::vector<Shape>(values.begin(), values.end()), leq),
                             describe, max_witnesses);
}

}  // namespace wpogap
