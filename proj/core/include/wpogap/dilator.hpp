#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wpogap/order_table.hpp"
#include "wpogap/poset.hpp"
#include "wpogap/report.hpp"
#include "wpogap/shape.hpp"

namespace wpogap {

/// Structural bound for enumerating W(X), which is usually infinite even for
/// finite X. Each dilator says what `size` and `height` mean for its payloads.
struct EnumBudget {
  std::size_t size = 0;
  std::size_t height = 0;
};

/// Operations of a PO-dilator W on finite carriers. Payloads are Shapes whose
/// Elem leaves (at W's own level) refer to the carrier passed alongside.
class DilatorImpl {
 public:
  virtual ~DilatorImpl() = default;

  virtual std::string name() const = 0;
  /// Claimed normality; `check_normality` tests the claim.
  virtual bool normal() const = 0;

  virtual bool leq(const Poset& x, Shape s, Shape t) const = 0;
  /// W(f)(s) <= W(g)(t) in W(c), where c is the suborder of z on the images
  /// of f and g, s lives over sa, t over sb, and f, g are embeddings given by
  /// their assignments. The default materializes c and both images; dilators
  /// can decide it without doing so.
  virtual bool leq_mapped(RelationRef z, const PosetRef& sa, std::span<const ElemId> f, Shape s,
                          const PosetRef& sb, std::span<const ElemId> g, Shape t) const;
  /// leq on every pair of `values` (kept in the given order). The default
  /// asks leq pair by pair.
  virtual OrderTable tabulate(const PosetRef& x, std::vector<Shape> values) const;
  virtual Shape map(const OrderMap& f, Shape s) const = 0;
  /// Sorted, duplicate-free.
  virtual std::vector<ElemId> supp(const PosetRef& x, Shape s) const = 0;
  /// Deterministic and duplicate-free.
  virtual std::vector<Shape> enumerate(const PosetRef& x, EnumBudget budget) const = 0;
  /// The unique s0 with map(f, s0) == s for an embedding f, if there is one.
  virtual std::optional<Shape> pullback(const OrderMap& f, Shape s) const = 0;
  /// Whether `s` is a well-formed payload over x.
  virtual bool valid(const PosetRef& x, Shape s) const = 0;
  virtual std::string format(const Poset& x, Shape s) const;
};

/// Shared handle to an immutable dilator descriptor.
class Dilator {
 public:
  Dilator() = default;
  explicit Dilator(std::shared_ptr<const DilatorImpl> impl) : impl_(std::move(impl)) {}

  std::string name() const { return impl_->name(); }
  bool normal() const { return impl_->normal(); }
  bool leq(const Poset& x, Shape s, Shape t) const { return impl_->leq(x, s, t); }
  bool leq_mapped(RelationRef z, const PosetRef& sa, std::span<const ElemId> f, Shape s,
                  const PosetRef& sb, std::span<const ElemId> g, Shape t) const {
    return impl_->leq_mapped(z, sa, f, s, sb, g, t);
  }
  OrderTable tabulate(const PosetRef& x, std::vector<Shape> values) const {
    return impl_->tabulate(x, std::move(values));
  }
  Shape map(const OrderMap& f, Shape s) const { return impl_->map(f, s); }
  std::vector<ElemId> supp_ids(const PosetRef& x, Shape s) const { return impl_->supp(x, s); }
  FinSubset supp(const PosetRef& x, Shape s) const { return FinSubset(x, impl_->supp(x, s)); }
  std::vector<Shape> enumerate(const PosetRef& x, EnumBudget b) const {
    return impl_->enumerate(x, b);
  }
  std::optional<Shape> pullback(const OrderMap& f, Shape s) const {
    return impl_->pullback(f, s);
  }
  bool valid(const PosetRef& x, Shape s) const { return impl_->valid(x, s); }
  std::string format(const Poset& x, Shape s) const { return impl_->format(x, s); }

  const DilatorImpl& impl() const { return *impl_; }
  explicit operator bool() const { return impl_ != nullptr; }

 private:
  std::shared_ptr<const DilatorImpl> impl_;
};

/// An element of W(X).
struct DValue {
  Dilator dilator;
  PosetRef carrier;
  Shape payload;
};

/// sigma =NF W(iota_a)(reduced) with support(reduced) = a.
struct NormalForm {
  FinSubset support;
  DValue reduced;  // carrier is the suborder on `support`
};

/// Throws DilatorLawError when the value cannot be pulled back along its support.
NormalForm normal_form(const DValue& sigma);

/// A finite suborder of some (typically infinite) order on values, materialized
/// as a Poset whose element i is values[i]. Values are sorted structurally.
struct Fragment {
  PosetRef poset;
  std::vector<Shape> values;

  std::optional<ElemId> find(Shape v) const;
  ElemId index_of(Shape v) const;  // throws InputError if absent
};

using ValueLeq = std::function<bool(Shape, Shape)>;

/// Sorts and dedups `values`, then tabulates `leq` on them.
Fragment make_fragment(std::vector<Shape> values, const ValueLeq& leq,
                       std::string name = "fragment");
/// Restriction to the given members (sorted ids), reusing the parent's table.
Fragment sub_fragment(const Fragment& f, std::span<const ElemId> members);
/// Fragment on sorted `values` that must all occur in `parent`.
Fragment sub_fragment_of_values(const Fragment& parent, std::span<const Shape> values);

/// Normal-form pair used by composite values and by terms:
/// Tuple(tag, [reduced, carrier_0, ..., carrier_{k-1}]) with the carrier sorted
/// and `reduced` a payload over the local poset {0..k-1}.
struct NormalPair {
  Shape reduced;
  std::vector<Shape> carrier;
};
Shape pack_pair(std::uint32_t tag, Shape reduced, std::span<const Shape> carrier);
bool is_pair(Shape s, std::uint32_t tag);
NormalPair unpack_pair(Shape s, std::uint32_t tag);

/// Renders Elem leaves by element name (or #id when out of range).
std::string format_shape(const Poset& x, Shape s);

Dilator identity_dilator();
Dilator multiset_dilator();
/// V after W: (V o W)(X) = V(W(X)). Values over X are normal-form pairs
/// (v0 over the local suborder a of W(X), a). Operations materialize only the
/// fragment of W(X) that the arguments mention.
Dilator compose(Dilator outer, Dilator inner);
inline constexpr std::uint32_t kComposeTag = 0xC0000000U;
/// The values of compose(outer, inner) over x whose carrier lies in
/// `inner_values`, with outer payloads enumerated under `outer_budget`.
/// compose(...).enumerate(x, b) is this with inner.enumerate(x, b) and b.
std::vector<Shape> compose_values(const Dilator& outer, const Dilator& inner, const PosetRef& x,
                                  std::vector<Shape> inner_values, EnumBudget outer_budget);

// ---- law checkers over finite instances -----------------------------------

/// For every tau in W(f.target): supp(tau) within rng(f) iff tau = W(f)(sigma)
/// for some enumerated sigma in W(f.source).
Report check_support_condition(const Dilator& w, const OrderMap& f, EnumBudget budget);
/// sigma <= tau implies supp(sigma) <=fin supp(tau).
Report check_normality(const Dilator& w, const PosetRef& p, EnumBudget budget);
/// supp(W(f)(sigma)) == [f](supp(sigma)).
Report check_naturality_supp(const Dilator& w, const OrderMap& f, EnumBudget budget);
/// W(g o f) == W(g) o W(f) and W(id) == id on enumerated values.
Report check_functoriality(const Dilator& w, const OrderMap& f, const OrderMap& g,
                           EnumBudget budget);
/// W(f) reflects the order (and preserves it when f is an embedding).
Report check_map_order(const Dilator& w, const OrderMap& f, EnumBudget budget);
/// normal_form is defined, reconstructs sigma, and is idempotent.
Report check_normal_forms(const Dilator& w, const PosetRef& p, EnumBudget budget);

/// Reflexivity, antisymmetry and transitivity of `leq` on `values`.
Report check_partial_order(std::span<const Shape> values, const ValueLeq& leq,
                           const std::function<std::string(Shape)>& describe,
                           std::size_t max_witnesses = 20);

}  // namespace wpogap
