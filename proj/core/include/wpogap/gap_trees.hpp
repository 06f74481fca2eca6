#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wpogap/dilator.hpp"
#include "wpogap/terms.hpp"

namespace wpogap {

/// Trees with labels below n and leaves from X.
///   XLeaf(x)          is Shape::elem(x)
///   i * [t0, ..., tk]  is Shape::node(i, kids)   (children form a multiset)
struct GapParams {
  std::size_t n = 0;
  PosetRef x;
};

Shape gap_leaf(ElemId x);
Shape gap_node(std::uint32_t label, std::vector<Shape> kids);
bool is_gap_leaf(Shape t);

/// Labels below n and leaves inside X.
bool gap_valid(const GapParams& p, Shape t);
/// gap_valid and the root is an X-leaf or labelled 0 (needs n > 0).
bool gap_minus_valid(const GapParams& p, Shape t);

/// The gap order. InputError for trees that are not valid for p.
bool gap_leq(const GapParams& p, Shape s, Shape t);
/// gap_leq on every pair of `values` (kept in the given order), decided over
/// the subtree closure with a dense table. InputError for invalid trees.
OrderTable gap_tabulate(const GapParams& p, std::vector<Shape> values);
std::size_t gap_height(Shape t);
/// Vertices, X-leaves included.
std::size_t gap_nodes(Shape t);
Shape gap_map(const OrderMap& f, Shape t);
FinSubset gap_supp(const GapParams& p, Shape t);

/// Every tree with at most max_nodes vertices, ordered by vertex count and
/// then structurally.
std::vector<Shape> enumerate_gap_trees(const GapParams& p, std::size_t max_nodes);
std::vector<Shape> enumerate_gap_minus_trees(const GapParams& p, std::size_t max_nodes);

/// T_n and T_m^- as dilators; budget.size bounds the vertex count.
Dilator gap_dilator(std::size_t n);
Dilator gap_minus_dilator(std::size_t m);  // PreconditionError for m = 0

// ---- T_n o T_{n+1}^- and pi ---------------------------------------------------

/// A composite value is a tree with labels below n whose leaves are boxes
/// holding elements of T_{n+1}^-(X).
inline constexpr std::uint32_t kBoxTag = 0xE0000000U;
Shape box(Shape t);
bool is_box(Shape s);
bool composite_valid(std::size_t n, const Poset& x, Shape s);

/// Unboxes the leaves and shifts every outer label up by one.
Shape pi(std::size_t n, const Poset& x, Shape s);
/// Two-sided inverse of pi on T_{n+1}(X).
Shape pi_inv(std::size_t n, const Poset& x, Shape t);

/// Conversions between boxed composites and the normal-form pairs used by
/// compose(gap_dilator(n), gap_minus_dilator(n + 1)).
Shape boxed_of_pair(Shape pair);
Shape pair_of_boxed(Shape boxed);

Shape iota_n(ElemId x);
/// kappa_n([s0, ..., sk]) = 0 * [pi(s0), ..., pi(sk)] for a bag of boxed composites.
Shape kappa_n(std::size_t n, const Poset& x, std::span<const Shape> composites);

/// (T_{n+1}^-(X), iota_n, kappa_n) as a Kruskal target for compose(M, gap_dilator(n)).
KruskalTarget gap_minus_target(std::size_t n, PosetRef x);
/// (T_1^-(X), XLeaf, [t...] -> 0 * [t...]) as a Kruskal target for M itself.
KruskalTarget multiset_tree_target(PosetRef x);

// ---- text ---------------------------------------------------------------------

/// `label(child,child)` with children in canonical order, `@name` for X-leaves
/// and `{tree}` for boxes.
std::string format_gap_tree(const Poset& x, Shape t);
/// tree := label '(' [tree (',' tree)*] ')' | '@' ident. Labels must be below p.n.
Shape parse_gap_tree(const GapParams& p, std::string_view text);

}  // namespace wpogap
