#include "wpogap/shape.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <sstream>
#include <unordered_set>

namespace wpogap {
namespace detail {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

struct NodeHash {
  std::size_t operator()(const ShapeNode* n) const { return n->hash; }
};

struct NodeEq {
  bool operator()(const ShapeNode* a, const ShapeNode* b) const {
    return a->kind == b->kind && a->tag == b->tag && a->id == b->id && a->kids == b->kids;
  }
};

class InternTable {
 public:
  const ShapeNode* intern(ShapeNode&& probe) {
    std::lock_guard lock(mutex_);
    if (auto it = set_.find(&probe); it != set_.end()) return *it;
    storage_.push_back(std::make_unique<ShapeNode>(std::move(probe)));
    const ShapeNode* stored = storage_.back().get();
    set_.insert(stored);
    return stored;
  }

 private:
  std::mutex mutex_;
  std::unordered_set<const ShapeNode*, NodeHash, NodeEq> set_;
  std::vector<std::unique_ptr<ShapeNode>> storage_;
};

InternTable& table() {
  static InternTable* t = new InternTable();  // lives for the whole process
  return *t;
}

}  // namespace
}  // namespace detail

Shape Shape::intern(ShapeKind kind, std::uint32_t tag, ElemId id, std::vector<Shape> kids) {
  detail::ShapeNode probe{kind, tag, id, 1, 0, std::move(kids)};
  std::size_t h = detail::mix(static_cast<std::size_t>(kind), tag);
  h = detail::mix(h, id);
  for (Shape k : probe.kids) {
    h = detail::mix(h, k.hash());
    probe.size += k.size();
  }
  probe.hash = h;
  return Shape(detail::table().intern(std::move(probe)));
}

Shape::Shape() : Shape(intern(ShapeKind::Node, 0, 0, {})) {}

Shape Shape::elem(ElemId id) { return intern(ShapeKind::Elem, 0, id, {}); }

Shape Shape::node(std::uint32_t tag, std::vector<Shape> kids) {
  std::sort(kids.begin(), kids.end());
  return intern(ShapeKind::Node, tag, 0, std::move(kids));
}

Shape Shape::tuple(std::uint32_t tag, std::vector<Shape> kids) {
  return intern(ShapeKind::Tuple, tag, 0, std::move(kids));
}


std::strong_ordering operator<=>(Shape a, Shape b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const auto* x = a.node_;
  const auto* y = b.node_;
  if (auto c = x->kind <=> y->kind; c != 0) return c;
  if (auto c = x->tag <=> y->tag; c != 0) return c;
  if (auto c = x->id <=> y->id; c != 0) return c;
  if (auto c = x->size <=> y->size; c != 0) return c;
  if (auto c = x->kids.size() <=> y->kids.size(); c != 0) return c;
  for (std::size_t i = 0; i < x->kids.size(); ++i) {
    if (auto c = x->kids[i] <=> y->kids[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;  // unreachable for interned nodes
}

Shape substitute(Shape s, const std::function<Shape(ElemId)>& leaf) {
  switch (s.kind()) {
    case ShapeKind::Elem:
      return leaf(s.id());
    case ShapeKind::Node:
    case ShapeKind::Tuple: {
      std::vector<Shape> kids;
      kids.reserve(s.kids().size());
      for (Shape k : s.kids()) kids.push_back(substitute(k, leaf));
      return s.kind() == ShapeKind::Node ? Shape::node(s.tag(), std::move(kids))
                                         : Shape::tuple(s.tag(), std::move(kids));
    }
  }
  return s;
}

namespace {
void collect_ids(Shape s, std::vector<ElemId>& out) {
  if (s.is_elem()) {
    out.push_back(s.id());
    return;
  }
  for (Shape k : s.kids()) collect_ids(k, out);
}

void render(Shape s, std::ostringstream& os) {
  if (s.is_elem()) {
    os << '#' << s.id();
    return;
  }
  const bool tuple = s.kind() == ShapeKind::Tuple;
  os << (tuple ? 'T' : 'N') << s.tag() << (tuple ? '<' : '(');
  bool first = true;
  for (Shape k : s.kids()) {
    if (!first) os << ',';
    first = false;
    render(k, os);
  }
  os << (tuple ? '>' : ')');
}
}  // namespace

std::vector<ElemId> elem_ids(Shape s) {
  std::vector<ElemId> out;
  collect_ids(s, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string debug_string(Shape s) {
  std::ostringstream os;
  render(s, os);
  return os.str();
}

void canonicalize(std::vector<Shape>& values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
}

}  // namespace wpogap
