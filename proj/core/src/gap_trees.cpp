#include "wpogap/gap_trees.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <unordered_set>

#include "wpogap/multiset.hpp"

namespace wpogap {

Shape gap_leaf(ElemId x) { return Shape::elem(x); }

Shape gap_node(std::uint32_t label, std::vector<Shape> kids) {
  if (label >= kBagTag) throw InputError("label " + std::to_string(label) + " is too large");
  return Shape::node(label, std::move(kids));
}

bool is_gap_leaf(Shape t) { return t.is_elem(); }

namespace {

bool is_gap_node(Shape t) { return t.kind() == ShapeKind::Node && t.tag() < kBagTag; }

bool valid_rec(std::size_t n, const Poset& x, Shape t) {
  if (is_gap_leaf(t)) return x.contains(t.id());
  if (!is_gap_node(t) || t.tag() >= n) return false;
  return std::all_of(t.kids().begin(), t.kids().end(),
                     [&](Shape k) { return valid_rec(n, x, k); });
}

bool minus_valid_rec(std::size_t n, const Poset& x, Shape t) {
  return n > 0 && valid_rec(n, x, t) && (is_gap_leaf(t) || t.tag() == 0);
}

}  // namespace

bool gap_valid(const GapParams& p, Shape t) { return valid_rec(p.n, *p.x, t); }

bool gap_minus_valid(const GapParams& p, Shape t) { return minus_valid_rec(p.n, *p.x, t); }

namespace {

bool leq_rec(const Poset& x, Shape s, Shape t) {
  if (is_gap_leaf(s)) {
    if (is_gap_leaf(t)) return x.leq(s.id(), t.id());
    return std::any_of(t.kids().begin(), t.kids().end(),
                       [&](Shape c) { return leq_rec(x, s, c); });
  }
  if (is_gap_leaf(t)) return false;
  if (s.tag() == t.tag() &&
      multiset_leq(s.kids(), t.kids(), [&](Shape a, Shape b) { return leq_rec(x, a, b); })) {
    return true;
  }
  // descend only below roots whose label is at least the label of s
  if (t.tag() >= s.tag()) {
    return std::any_of(t.kids().begin(), t.kids().end(),
                       [&](Shape c) { return leq_rec(x, s, c); });
  }
  return false;
}

void require_valid(const GapParams& p, Shape t) {
  if (!gap_valid(p, t)) {
    throw InputError("not a tree with labels below " + std::to_string(p.n) + " over " +
                     p.x->name() + ": " + format_gap_tree(*p.x, t));
  }
}

}  // namespace

bool gap_leq(const GapParams& p, Shape s, Shape t) {
  require_valid(p, s);
  require_valid(p, t);
  return leq_rec(*p.x, s, t);
}

OrderTable gap_tabulate(const GapParams& p, std::vector<Shape> values) {
  for (Shape v : values) require_valid(p, v);
  // Subtree closure, children before parents.
  std::vector<Shape> closure;
  std::unordered_set<Shape> seen;
  std::function<void(Shape)> visit = [&](Shape t) {
    if (!seen.insert(t).second) return;
    for (Shape k : t.kids()) visit(k);
    closure.push_back(t);
  };
  for (Shape v : values) visit(v);
  std::stable_sort(closure.begin(), closure.end(),
                   [](Shape a, Shape b) { return gap_nodes(a) < gap_nodes(b); });
  OrderTable all(closure);
  std::vector<std::vector<std::uint32_t>> kids(closure.size());
  for (std::size_t i = 0; i < closure.size(); ++i) {
    for (Shape k : closure[i].kids()) kids[i].push_back(static_cast<std::uint32_t>(*all.index_of(k)));
  }
  const Poset& x = *p.x;
  // (s, t) needs (s, child of t) and (child of s, child of t): all from earlier columns.
  for (std::size_t t = 0; t < closure.size(); ++t) {
    const Shape tt = closure[t];
    for (std::size_t s = 0; s < closure.size(); ++s) {
      const Shape ss = closure[s];
      bool le = false;
      if (is_gap_leaf(ss) && is_gap_leaf(tt)) {
        le = x.leq(ss.id(), tt.id());
      } else if (!is_gap_leaf(tt)) {
        if (!is_gap_leaf(ss) && ss.tag() == tt.tag()) {
          le = multiset_leq(std::span<const std::uint32_t>(kids[s]),
                            std::span<const std::uint32_t>(kids[t]),
                            [&](std::uint32_t a, std::uint32_t b) { return all.leq(a, b); });
        }
        if (!le && (is_gap_leaf(ss) || tt.tag() >= ss.tag())) {
          le = std::any_of(kids[t].begin(), kids[t].end(),
                           [&](std::uint32_t c) { return all.leq(s, c); });
        }
      }
      if (le) all.set(s, t);
    }
  }
  OrderTable out(values);
  std::vector<std::size_t> at;
  for (Shape v : values) at.push_back(*all.index_of(v));
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (all.leq(at[i], at[j])) out.set(i, j);
    }
  }
  return out;
}

std::size_t gap_height(Shape t) {
  std::size_t h = 0;
  for (Shape k : t.kids()) h = std::max(h, gap_height(k) + 1);
  return h;
}

std::size_t gap_nodes(Shape t) {
  if (is_box(t)) return gap_nodes(t.kids().front());
  std::size_t n = 1;
  for (Shape k : t.kids()) n += gap_nodes(k);
  return n;
}

Shape gap_map(const OrderMap& f, Shape t) {
  return substitute(t, [&](ElemId x) { return Shape::elem(f(x)); });
}

FinSubset gap_supp(const GapParams& p, Shape t) {
  require_valid(p, t);
  return FinSubset(p.x, elem_ids(t));
}

std::vector<Shape> enumerate_gap_trees(const GapParams& p, std::size_t max_nodes) {
  // by_size[k] holds the trees with exactly k vertices
  std::vector<std::vector<Shape>> by_size(max_nodes + 1);
  if (max_nodes >= 1) {
    for (ElemId x = 0; x < p.x->size(); ++x) by_size[1].push_back(gap_leaf(x));
    for (std::uint32_t i = 0; i < p.n; ++i) by_size[1].push_back(gap_node(i, {}));
    canonicalize(by_size[1]);
  }
  for (std::size_t k = 2; k <= max_nodes; ++k) {
    // Children multisets of total size k - 1: nondecreasing in (size, index).
    std::vector<std::vector<Shape>> child_sets;
    std::vector<Shape> current;
    std::function<void(std::size_t, std::size_t, std::size_t)> extend =
        [&](std::size_t remaining, std::size_t min_size, std::size_t min_index) {
          if (remaining == 0) {
            child_sets.push_back(current);
            return;
          }
          for (std::size_t sz = min_size; sz <= remaining; ++sz) {
            for (std::size_t i = (sz == min_size ? min_index : 0); i < by_size[sz].size(); ++i) {
              current.push_back(by_size[sz][i]);
              extend(remaining - sz, sz, i);
              current.pop_back();
            }
          }
        };
    extend(k - 1, 1, 0);
    for (std::uint32_t i = 0; i < p.n; ++i) {
      for (const auto& kids : child_sets) by_size[k].push_back(gap_node(i, kids));
    }
    canonicalize(by_size[k]);
  }
  std::vector<Shape> out;
  for (const auto& level : by_size) out.insert(out.end(), level.begin(), level.end());
  return out;
}

std::vector<Shape> enumerate_gap_minus_trees(const GapParams& p, std::size_t max_nodes) {
  if (p.n == 0) throw PreconditionError("T_n^- needs n > 0");
  std::vector<Shape> out;
  for (Shape t : enumerate_gap_trees(p, max_nodes)) {
    if (is_gap_leaf(t) || t.tag() == 0) out.push_back(t);
  }
  return out;
}

namespace {

class GapImpl final : public DilatorImpl {
 public:
  GapImpl(std::size_t n, bool minus) : n_(n), minus_(minus) {}

  std::string name() const override {
    return "T" + std::to_string(n_) + (minus_ ? "-" : "");
  }
  bool normal() const override { return true; }

  bool leq(const Poset& x, Shape s, Shape t) const override {
    require(x, s);
    require(x, t);
    return leq_rec(x, s, t);
  }
  OrderTable tabulate(const PosetRef& x, std::vector<Shape> values) const override {
    for (Shape v : values) require(*x, v);
    return gap_tabulate(GapParams{n_, x}, std::move(values));
  }
  Shape map(const OrderMap& f, Shape s) const override {
    require(*f.source, s);
    return gap_map(f, s);
  }
  std::vector<ElemId> supp(const PosetRef& x, Shape s) const override {
    require(*x, s);
    return elem_ids(s);
  }
  std::vector<Shape> enumerate(const PosetRef& x, EnumBudget budget) const override {
    const GapParams p{n_, x};
    return minus_ ? enumerate_gap_minus_trees(p, budget.size) : enumerate_gap_trees(p, budget.size);
  }
  std::optional<Shape> pullback(const OrderMap& f, Shape s) const override {
    require(*f.target, s);
    bool ok = true;
    Shape out = substitute(s, [&](ElemId y) {
      for (ElemId x = 0; x < f.assign.size(); ++x) {
        if (f.assign[x] == y) return Shape::elem(x);
      }
      ok = false;
      return Shape::elem(0);
    });
    if (!ok) return std::nullopt;
    return out;
  }
  bool valid(const PosetRef& x, Shape s) const override { return valid_over(*x, s); }
  std::string format(const Poset& x, Shape s) const override { return format_gap_tree(x, s); }

 private:
  bool valid_over(const Poset& x, Shape s) const {
    return minus_ ? minus_valid_rec(n_, x, s) : valid_rec(n_, x, s);
  }
  void require(const Poset& x, Shape s) const {
    if (!valid_over(x, s)) {
      throw InputError("not an element of " + name() + "(" + x.name() + "): " +
                       format_gap_tree(x, s));
    }
  }

  std::size_t n_;
  bool minus_;
};

}  // namespace

Dilator gap_dilator(std::size_t n) { return Dilator(std::make_shared<GapImpl>(n, false)); }

Dilator gap_minus_dilator(std::size_t m) {
  if (m == 0) throw PreconditionError("T_m^- needs m > 0");
  return Dilator(std::make_shared<GapImpl>(m, true));
}

// ---- composites and pi ----------------------------------------------------------

Shape box(Shape t) { return Shape::tuple(kBoxTag, {t}); }

bool is_box(Shape s) {
  return s.kind() == ShapeKind::Tuple && s.tag() == kBoxTag && s.kids().size() == 1;
}

bool composite_valid(std::size_t n, const Poset& x, Shape s) {
  if (is_box(s)) {
    return minus_valid_rec(n + 1, x, s.kids().front());
  }
  if (!is_gap_node(s) || s.tag() >= n) return false;
  return std::all_of(s.kids().begin(), s.kids().end(),
                     [&](Shape k) { return composite_valid(n, x, k); });
}

namespace {

Shape pi_rec(Shape s) {
  if (is_box(s)) return s.kids().front();
  std::vector<Shape> kids;
  kids.reserve(s.kids().size());
  for (Shape k : s.kids()) kids.push_back(pi_rec(k));
  return gap_node(s.tag() + 1, std::move(kids));
}

Shape pi_inv_rec(Shape t) {
  if (is_gap_leaf(t) || t.tag() == 0) return box(t);
  std::vector<Shape> kids;
  kids.reserve(t.kids().size());
  for (Shape k : t.kids()) kids.push_back(pi_inv_rec(k));
  return gap_node(t.tag() - 1, std::move(kids));
}

}  // namespace

Shape pi(std::size_t n, const Poset& x, Shape s) {
  if (!composite_valid(n, x, s)) {
    throw InputError("not an element of T" + std::to_string(n) + " o T" + std::to_string(n + 1) +
                     "-: " + format_gap_tree(x, s));
  }
  return pi_rec(s);
}

Shape pi_inv(std::size_t n, const Poset& x, Shape t) {
  if (!valid_rec(n + 1, x, t)) {
    throw InputError("not an element of T" + std::to_string(n + 1) + ": " + format_gap_tree(x, t));
  }
  return pi_inv_rec(t);
}

namespace {

void collect_boxes(Shape s, std::vector<Shape>& out) {
  if (is_box(s)) {
    out.push_back(s.kids().front());
    return;
  }
  for (Shape k : s.kids()) collect_boxes(k, out);
}

Shape unbox_to_ids(Shape s, const std::vector<Shape>& carrier) {
  if (is_box(s)) {
    const auto it = std::lower_bound(carrier.begin(), carrier.end(), s.kids().front());
    return Shape::elem(static_cast<ElemId>(it - carrier.begin()));
  }
  std::vector<Shape> kids;
  for (Shape k : s.kids()) kids.push_back(unbox_to_ids(k, carrier));
  return Shape::node(s.tag(), std::move(kids));
}

}  // namespace

Shape boxed_of_pair(Shape pair) {
  const NormalPair p = unpack_pair(pair, kComposeTag);
  return substitute(p.reduced, [&](ElemId i) { return box(p.carrier.at(i)); });
}

Shape pair_of_boxed(Shape boxed) {
  std::vector<Shape> carrier;
  collect_boxes(boxed, carrier);
  canonicalize(carrier);
  return pack_pair(kComposeTag, unbox_to_ids(boxed, carrier), carrier);
}

Shape iota_n(ElemId x) { return gap_leaf(x); }

Shape kappa_n(std::size_t n, const Poset& x, std::span<const Shape> composites) {
  std::vector<Shape> kids;
  kids.reserve(composites.size());
  for (Shape s : composites) kids.push_back(pi(n, x, s));
  return gap_node(0, std::move(kids));
}

KruskalTarget gap_minus_target(std::size_t n, PosetRef x) {
  const GapParams p{n + 1, x};
  KruskalTarget t;
  t.name = "T" + std::to_string(n + 1) + "-";
  t.leq = [p](Shape a, Shape b) { return gap_leq(p, a, b); };
  t.iota = [](ElemId e) { return iota_n(e); };
  t.kappa = [n, x](const Fragment& z, Shape sigma) {
    // sigma is an M o T_n payload over z: a bag of indices into T_n trees over z.
    const NormalPair pair = unpack_pair(sigma, kComposeTag);
    std::vector<Shape> composites;
    const ElemMultiset bag = multiset_of_shape(pair.reduced);
    for (ElemId i : bag.entries()) {
      const Shape tree = pair.carrier.at(i);
      composites.push_back(substitute(tree, [&](ElemId k) { return box(z.values.at(k)); }));
    }
    return kappa_n(n, *x, composites);
  };
  t.describe = [x](Shape s) { return format_gap_tree(*x, s); };
  t.tabulate = [p](std::vector<Shape> values) { return gap_tabulate(p, std::move(values)); };
  return t;
}

KruskalTarget multiset_tree_target(PosetRef x) {
  const GapParams p{1, x};
  KruskalTarget t;
  t.name = "T1-";
  t.leq = [p](Shape a, Shape b) { return gap_leq(p, a, b); };
  t.iota = [](ElemId e) { return gap_leaf(e); };
  t.kappa = [](const Fragment& z, Shape sigma) {
    std::vector<Shape> kids;
    const ElemMultiset bag = multiset_of_shape(sigma);
    for (ElemId i : bag.entries()) kids.push_back(z.values.at(i));
    return gap_node(0, std::move(kids));
  };
  t.describe = [x](Shape s) { return format_gap_tree(*x, s); };
  t.tabulate = [p](std::vector<Shape> values) { return gap_tabulate(p, std::move(values)); };
  return t;
}

// ---- text -----------------------------------------------------------------------

namespace {

void render(const Poset& x, Shape t, std::string& out) {
  if (is_box(t)) {
    out += '{';
    render(x, t.kids().front(), out);
    out += '}';
    return;
  }
  if (t.is_elem()) {
    out += '@';
    out += x.contains(t.id()) ? x.element_name(t.id()) : "#" + std::to_string(t.id());
    return;
  }
  out += std::to_string(t.tag());
  out += '(';
  bool first = true;
  for (Shape k : t.kids()) {
    if (!first) out += ',';
    first = false;
    render(x, k, out);
  }
  out += ')';
}

class TreeParser {
 public:
  TreeParser(const GapParams& p, std::string_view text) : p_(p), text_(text) {}

  Shape parse_all() {
    Shape t = tree();
    if (pos_ != text_.size()) fail("trailing input");
    return t;
  }

 private:
  Shape tree() {
    if (pos_ < text_.size() && text_[pos_] == '@') {
      ++pos_;
      const std::size_t start = pos_;
      while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ')') ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      if (name.empty()) fail("empty element name");
      auto id = p_.x->find(name);
      if (!id) fail("unknown element '" + name + "'");
      return gap_leaf(*id);
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected a label or '@'");
    if (pos_ - start > 9) fail("label too large");
    const auto label = static_cast<std::uint32_t>(std::stoul(std::string(text_.substr(start, pos_ - start))));
    if (label >= p_.n) fail("label " + std::to_string(label) + " is not below n=" + std::to_string(p_.n));
    expect('(');
    std::vector<Shape> kids;
    if (peek() != ')') {
      kids.push_back(tree());
      while (peek() == ',') {
        ++pos_;
        kids.push_back(tree());
      }
    }
    expect(')');
    return gap_node(label, std::move(kids));
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("tree literal, offset " + std::to_string(pos_) + ": " + what);
  }

  const GapParams& p_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string format_gap_tree(const Poset& x, Shape t) {
  std::string out;
  render(x, t, out);
  return out;
}

Shape parse_gap_tree(const GapParams& p, std::string_view text) {
  return TreeParser(p, text).parse_all();
}

}  // namespace wpogap
