#include "wpogap/gap_oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "wpogap/terms.hpp"

namespace wpogap {

bool NodeTree::below_eq(std::size_t u, std::size_t v) const {
  while (v != u && v != 0) v = parent[v];
  return v == u;
}

std::size_t NodeTree::meet(std::size_t u, std::size_t v) const {
  while (!below_eq(u, v)) u = parent[u];
  return u;
}

std::vector<std::size_t> NodeTree::children(std::size_t v) const {
  std::vector<std::size_t> out;
  for (std::size_t w = 1; w < size(); ++w) {
    if (parent[w] == v) out.push_back(w);
  }
  return out;
}

namespace {

void add_nodes(Shape t, std::size_t parent, NodeTree& out) {
  if (is_gap_leaf(t)) throw InputError("the tree oracle does not take X-leaves");
  const std::size_t self = out.size();
  out.parent.push_back(parent);
  out.label.push_back(t.tag());
  for (Shape k : t.kids()) add_nodes(k, self, out);
}

}  // namespace

NodeTree nodetree_of_gaptree(Shape t) {
  NodeTree out;
  add_nodes(t, 0, out);
  return out;
}

Shape gaptree_of_term(Shape term) {
  if (!is_node_term(term)) throw InputError("expected a node term over the empty order");
  const NormalPair parts = term_parts(term);
  const ElemMultiset bag = multiset_of_shape(parts.reduced);
  std::vector<Shape> kids;
  for (ElemId i : bag.entries()) kids.push_back(gaptree_of_term(parts.carrier.at(i)));
  return gap_node(0, std::move(kids));
}

namespace {

bool meets_ok(const NodeTree& s, const NodeTree& t, const TreeMap& f, std::size_t v) {
  for (std::size_t u = 0; u < v; ++u) {
    if (f[s.meet(u, v)] != t.meet(f[u], f[v])) return false;
  }
  return true;
}

}  // namespace

std::vector<TreeMap> tree_embeddings(const NodeTree& s, const NodeTree& t, bool raw) {
  std::vector<TreeMap> out;
  if (s.size() == 0) return out;
  TreeMap f(s.size());
  std::vector<char> used(t.size(), 0);
  // Nodes of S are assigned in preorder, so the meet of v with any earlier
  // node is already assigned when v is. Raw mode defers every check.
  std::function<void(std::size_t)> assign = [&](std::size_t v) {
    if (v == s.size()) {
      if (raw) {
        for (std::size_t w = 1; w < s.size(); ++w) {
          if (!meets_ok(s, t, f, w)) return;
        }
      }
      out.push_back(f);
      return;
    }
    for (std::size_t y = 0; y < t.size(); ++y) {
      if (used[y]) continue;
      f[v] = y;
      if (!raw && !meets_ok(s, t, f, v)) continue;
      used[y] = 1;
      assign(v + 1);
      used[y] = 0;
    }
  };
  assign(0);
  return out;
}

bool satisfies_gap_condition(const NodeTree& s, const NodeTree& t, const TreeMap& f) {
  for (std::size_t v = 0; v < s.size(); ++v) {
    if (t.label[f[v]] != s.label[v]) return false;  // (i)
  }
  for (std::size_t v = 1; v < s.size(); ++v) {  // (ii): v is an immediate successor of parent[v]
    const std::size_t top = f[s.parent[v]];
    for (std::size_t w = f[v]; w != top;) {
      if (w == 0) return false;  // not below f(parent), so not an embedding
      w = t.parent[w];
      if (w != top && t.label[w] < s.label[v]) return false;
    }
  }
  for (std::size_t w = f[0]; w != 0;) {  // (iii)
    w = t.parent[w];
    if (t.label[w] < s.label[0]) return false;
  }
  return true;
}

std::optional<TreeMap> gap_embed(const NodeTree& s, const NodeTree& t) {
  for (TreeMap& f : tree_embeddings(s, t)) {
    if (satisfies_gap_condition(s, t, f)) return std::move(f);
  }
  return std::nullopt;
}

std::string format_tree_map(const TreeMap& f) {
  std::string out;
  for (std::size_t v = 0; v < f.size(); ++v) {
    if (v) out += ", ";
    out += std::to_string(v) + " -> " + std::to_string(f[v]);
  }
  return out;
}

bool ms_leq_oracle(const Poset& p, const ElemMultiset& a, const ElemMultiset& b) {
  if (a.size() > kOracleMultisetLimit || b.size() > kOracleMultisetLimit) {
    throw BudgetError("multiset oracle is limited to " + std::to_string(kOracleMultisetLimit) +
                      " entries");
  }
  const auto lhs = a.entries();
  const auto rhs = b.entries();
  std::vector<char> used(rhs.size(), 0);
  std::function<bool(std::size_t)> place = [&](std::size_t i) {
    if (i == lhs.size()) return true;
    for (std::size_t j = 0; j < rhs.size(); ++j) {
      if (used[j] || !p.leq(lhs[i], rhs[j])) continue;
      used[j] = 1;
      if (place(i + 1)) return true;
      used[j] = 0;
    }
    return false;
  };
  return place(0);
}

}  // namespace wpogap
