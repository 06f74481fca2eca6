#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace wpogap {

/// Dense index of an element inside one poset.
using ElemId = std::uint32_t;

enum class ShapeKind : std::uint8_t {
  Elem = 0,   // reference to an element of the ambient carrier
  Node = 1,   // tagged node with unordered children (multiset semantics)
  Tuple = 2,  // tagged node with positional children
};

namespace detail {
struct ShapeNode;
}

/// Immutable, hash-consed finite tree. Every payload handled by the library
/// (multisets, gap trees, terms, composite values) is a Shape whose `Elem`
/// leaves refer to a carrier poset supplied alongside it.
///
/// Two shapes are equal iff they are the same interned node, so equality is a
/// pointer comparison. `operator<=>` is a structural total order used only for
/// canonicalization (sorting unordered children, dedup); it is never an order
/// of any dilator.
class Shape {
 public:
  Shape();  // Node(tag 0, no children); mainly for containers

  static Shape elem(ElemId id);
  /// Children are sorted structurally, so construction order is irrelevant.
  static Shape node(std::uint32_t tag, std::vector<Shape> kids);
  static Shape tuple(std::uint32_t tag, std::vector<Shape> kids);

  ShapeKind kind() const;
  bool is_elem() const { return kind() == ShapeKind::Elem; }
  std::uint32_t tag() const;
  ElemId id() const;
  std::span<const Shape> kids() const;
  /// Number of vertices (every Elem leaf and every node counts once).
  std::uint32_t size() const;
  std::size_t hash() const;

  const void* identity() const { return node_; }

  friend bool operator==(Shape a, Shape b) { return a.node_ == b.node_; }
  friend std::strong_ordering operator<=>(Shape a, Shape b);

 private:
  explicit Shape(const detail::ShapeNode* n) : node_(n) {}
  static Shape intern(ShapeKind kind, std::uint32_t tag, ElemId id, std::vector<Shape> kids);

  const detail::ShapeNode* node_;
};

/// Rebuilds `s` with every Elem leaf replaced by `leaf(id)`; unordered nodes
/// are re-sorted.
Shape substitute(Shape s, const std::function<Shape(ElemId)>& leaf);

/// Sorted, duplicate-free list of the ids occurring at Elem leaves of `s`.
std::vector<ElemId> elem_ids(Shape s);

/// Generic debug rendering, e.g. `N1(#0,#2)` or `T7<...>`.
std::string debug_string(Shape s);

/// Sorts and removes duplicates.
void canonicalize(std::vector<Shape>& values);

namespace detail {
struct ShapeNode {
  ShapeKind kind;
  std::uint32_t tag;
  ElemId id;
  std::uint32_t size;
  std::size_t hash;
  std::vector<Shape> kids;
};
}  // namespace detail

inline ShapeKind Shape::kind() const { return node_->kind; }
inline std::uint32_t Shape::tag() const { return node_->tag; }
inline ElemId Shape::id() const { return node_->id; }
inline std::span<const Shape> Shape::kids() const { return node_->kids; }
inline std::uint32_t Shape::size() const { return node_->size; }
inline std::size_t Shape::hash() const { return node_->hash; }

}  // namespace wpogap

template <>
struct std::hash<wpogap::Shape> {
  std::size_t operator()(wpogap::Shape s) const noexcept { return s.hash(); }
};
