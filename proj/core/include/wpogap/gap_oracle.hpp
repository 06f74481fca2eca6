#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wpogap/gap_trees.hpp"
#include "wpogap/multiset.hpp"

// Deliberately naive decision procedures, kept independent of the recursive
// orders they are compared against.

namespace wpogap {

/// A finite rooted tree with node labels. Nodes are numbered in preorder, so
/// node 0 is the root and parent[v] < v for every other node.
struct NodeTree {
  std::vector<std::size_t> parent;  // parent[0] is unused
  std::vector<std::uint32_t> label;

  std::size_t size() const { return label.size(); }
  /// u lies on the path from the root to v (u == v included).
  bool below_eq(std::size_t u, std::size_t v) const;
  std::size_t meet(std::size_t u, std::size_t v) const;
  std::vector<std::size_t> children(std::size_t v) const;
};

/// Preorder numbering with children in canonical order. X-leaves are
/// rejected: the oracle only handles X = empty.
NodeTree nodetree_of_gaptree(Shape t);
/// Node(a, [t0, ...]) -> 0 * [images]; only for terms over W = M and X = empty.
Shape gaptree_of_term(Shape term);

using TreeMap = std::vector<std::size_t>;  // node of S -> node of T

/// Injective maps with f(u meet v) = f(u) meet f(v), in lexicographic order.
/// `raw` enumerates every injection and filters, for small trees only.
std::vector<TreeMap> tree_embeddings(const NodeTree& s, const NodeTree& t, bool raw = false);

/// Conditions (i)-(iii): labels preserved; along the path from f(r) to f(u)
/// for an immediate successor u of r every strictly intermediate node has
/// label >= label(u); every node strictly below f(root) has label >= label(root).
bool satisfies_gap_condition(const NodeTree& s, const NodeTree& t, const TreeMap& f);

/// The first embedding satisfying the gap condition, if any.
std::optional<TreeMap> gap_embed(const NodeTree& s, const NodeTree& t);

/// `0 -> 0, 1 -> 2` style rendering.
std::string format_tree_map(const TreeMap& f);

/// Injection order on multisets by trying every injection. BudgetError beyond
/// kOracleMultisetLimit entries on either side.
inline constexpr std::size_t kOracleMultisetLimit = 6;
bool ms_leq_oracle(const Poset& p, const ElemMultiset& a, const ElemMultiset& b);

}  // namespace wpogap
