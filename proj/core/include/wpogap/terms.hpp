#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "wpogap/dilator.hpp"

namespace wpogap {

/// Terms over X for a normal dilator W:
///   Leaf(x)      is Shape::elem(x)
///   Node(a, s0)  is pack_pair(kTermTag, s0, a) with a sorted and s0 in W(a),
///                a ordered by the term order itself.
inline constexpr std::uint32_t kTermTag = 0xD0000000U;

bool is_leaf_term(Shape s);
bool is_node_term(Shape s);
/// Children and payload of a node term; InputError for leaves.
NormalPair term_parts(Shape s);

/// l(Leaf) = 0, l(Node(a, s)) = 1 + sum of 2 l(r) over r in a. Saturates.
std::uint64_t term_length(Shape s);
/// h(Leaf) = 0, h(Node(a, s)) = max of h(r) + 1 over r in a (0 when a is empty).
std::size_t term_height(Shape s);
/// Leaf ids below s (the support in the derivative).
std::vector<ElemId> term_supp(Shape s);

/// An order Z' with iota': X -> Z' and kappa': W(Z') -> Z'. kappa' receives
/// its argument as a payload over a fragment of Z'.
struct KruskalTarget {
  std::string name;
  ValueLeq leq;
  std::function<Shape(ElemId)> iota;
  std::function<Shape(const Fragment&, Shape)> kappa;
  std::function<std::string(Shape)> describe;  // for witnesses; debug_string if unset
  /// Optional bulk form of `leq`, used by the checkers when set.
  std::function<OrderTable(std::vector<Shape>)> tabulate;
};

/// The term order over a fixed base X. Comparison results are memoized; all
/// members are safe to call concurrently.
class TermSystem {
 public:
  /// PreconditionError if W does not claim normality.
  TermSystem(PosetRef base, Dilator w);

  const PosetRef& base() const { return base_; }
  const Dilator& dilator() const { return w_; }

  bool leq(Shape s, Shape t) const;
  /// The order on `values` (kept in the given order), decided by the same
  /// clauses as `leq` but over the subterm closure with a dense table as memo.
  OrderTable tabulate(std::vector<Shape> values) const;

  Shape leaf(ElemId x) const;
  /// kappa(sigma) = Node(a, s0) for the normal form sigma = W(iota_a)(s0).
  /// `z` must be a fragment of terms ordered by `leq`.
  Shape kappa(const Fragment& z, Shape sigma) const;
  /// Terms ordered by `leq`, as a fragment.
  Fragment fragment(std::vector<Shape> terms) const;
  /// The children of a node term, ordered by `leq`.
  PosetRef local_order(Shape node) const;

  /// Recursive well-formedness: leaves lie in X, children sorted and ordered
  /// partially, payload valid over the children with full support.
  Report validate(Shape s) const;

  KruskalTarget as_target() const;

  /// `leaf:<id>` and `node[t1;t2;...]` when W is M; otherwise the payload is
  /// rendered by W inside `node{...}`.
  std::string format(Shape s) const;
  /// Reads the multiset grammar; only available when W is M.
  Shape parse(std::string_view text) const;

 private:
  struct Memo;

  bool node_leq(Shape s, Shape t) const;

  PosetRef base_;
  Dilator w_;
  std::shared_ptr<Memo> memo_;
};

/// Leaves and kappa over the empty fragment form height 0; level h adds
/// kappa(sigma) for sigma in W(terms of height < h) within `payload`.
/// Deterministic, duplicate-free, ordered by height then structurally.
std::vector<Shape> enumerate_terms(const TermSystem& s, std::size_t max_height,
                                   EnumBudget payload);
std::vector<Shape> enumerate_terms(const TermSystem& s, std::size_t max_height,
                                   std::size_t max_payload);

/// The structure-preserving map into `target`: Leaf(x) goes to iota'(x) and
/// Node(a, s0) to kappa'(W(f restricted to a)(s0)).
Shape fold_initial(const TermSystem& s, const KruskalTarget& target, Shape term);

/// The Kruskal derivative of a normal dilator: values over X are terms, map
/// is the fold onto (terms over Y, leaf after f, kappa) and supp collects leaves.
/// Enumeration uses budget.height as term height and the whole budget for payloads.
Dilator derivative(Dilator w);

/// The clauses of a Kruskal fixed point of W over X, checked on the given
/// elements of Z and on every payload W enumerates over them:
/// disjoint ranges, iota reflects the order, iota(x) <= kappa(t) iff
/// iota(x) <=fin supp(t), kappa(s) not below iota(y), kappa(s) <= kappa(t) iff
/// s <= t or kappa(s) <=fin supp(t), and kappa injective.
Report check_fixed_point_axioms(const Dilator& w, const Poset& x, const KruskalTarget& z,
                                std::span<const Shape> z_values, EnumBudget budget);

/// Height witness for initiality: height(r) < height(kappa(sigma)) for every
/// r in supp(sigma), over payloads enumerated on z_values.
Report check_height_witness(const Dilator& w, const KruskalTarget& z,
                            std::span<const Shape> z_values, EnumBudget budget,
                            const std::function<std::size_t(Shape)>& height);

}  // namespace wpogap
