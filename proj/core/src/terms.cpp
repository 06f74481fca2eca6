#include "wpogap/terms.hpp"

#include <absl/container/flat_hash_map.h>

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

#include "wpogap/multiset.hpp"

namespace wpogap {

bool is_leaf_term(Shape s) { return s.is_elem(); }
bool is_node_term(Shape s) { return is_pair(s, kTermTag); }

NormalPair term_parts(Shape s) {
  if (!is_node_term(s)) throw InputError("not a node term: " + debug_string(s));
  return unpack_pair(s, kTermTag);
}

namespace {

std::span<const Shape> children(Shape node) { return node.kids().subspan(1); }
Shape payload(Shape node) { return node.kids().front(); }

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max()
                                                           : a + b;
}

void collect_leaves(Shape s, std::vector<ElemId>& out) {
  if (is_leaf_term(s)) {
    out.push_back(s.id());
    return;
  }
  for (Shape r : children(s)) collect_leaves(r, out);
}

}  // namespace

std::uint64_t term_length(Shape s) {
  if (is_leaf_term(s)) return 0;
  std::uint64_t total = 1;
  for (Shape r : children(s)) {
    const std::uint64_t l = term_length(r);
    total = saturating_add(total, saturating_add(l, l));
  }
  return total;
}

std::size_t term_height(Shape s) {
  if (is_leaf_term(s)) return 0;
  std::size_t h = 0;
  for (Shape r : children(s)) h = std::max(h, term_height(r) + 1);
  return h;
}

std::vector<ElemId> term_supp(Shape s) {
  std::vector<ElemId> out;
  collect_leaves(s, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---- TermSystem -------------------------------------------------------------

struct TermSystem::Memo {
  static constexpr std::size_t kMaxEntries = std::size_t{1} << 22;

  std::mutex mu;
  absl::flat_hash_map<std::pair<const void*, const void*>, bool> leq;
  absl::flat_hash_map<const void*, PosetRef> local;
};

TermSystem::TermSystem(PosetRef base, Dilator w)
    : base_(std::move(base)), w_(std::move(w)), memo_(std::make_shared<Memo>()) {
  if (!w_.normal()) throw PreconditionError("term systems need a normal dilator, got " + w_.name());
}

bool TermSystem::leq(Shape s, Shape t) const {
  const bool s_leaf = is_leaf_term(s);
  const bool t_leaf = is_leaf_term(t);
  if (s_leaf && t_leaf) {
    if (!base_->contains(s.id()) || !base_->contains(t.id())) {
      throw InputError("leaf outside the base order");
    }
    return base_->leq(s.id(), t.id());
  }
  if (t_leaf) return false;
  if (!is_node_term(t) || !(s_leaf || is_node_term(s))) {
    throw InputError("not a term: " + debug_string(is_node_term(t) ? s : t));
  }
  const auto key = std::make_pair(s.identity(), t.identity());
  {
    std::lock_guard lock(memo_->mu);
    if (auto it = memo_->leq.find(key); it != memo_->leq.end()) return it->second;
  }
  const bool result = node_leq(s, t);
  std::lock_guard lock(memo_->mu);
  if (memo_->leq.size() >= Memo::kMaxEntries) memo_->leq.clear();
  memo_->leq.emplace(key, result);
  return result;
}

bool TermSystem::node_leq(Shape s, Shape t) const {
  // s <= t' for a child t' of t
  for (Shape r : children(t)) {
    if (leq(s, r)) return true;
  }
  if (is_leaf_term(s)) return false;
  // W-comparison over the suborder on the union of both child sets
  const auto a = children(s);
  const auto b = children(t);
  std::vector<Shape> joint;
  joint.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(joint));
  Poset order("union", joint.size());
  for (ElemId i = 0; i < joint.size(); ++i) {
    for (ElemId j = 0; j < joint.size(); ++j) {
      if (leq(joint[i], joint[j])) order.set_leq(i, j, true);
    }
  }
  if (!validate_poset(order).ok()) return false;
  auto positions = [&](std::span<const Shape> part) {
    std::vector<ElemId> assign;
    assign.reserve(part.size());
    for (Shape r : part) {
      assign.push_back(static_cast<ElemId>(std::lower_bound(joint.begin(), joint.end(), r) -
                                           joint.begin()));
    }
    return assign;
  };
  return w_.leq_mapped(order, local_order(s), positions(a), payload(s), local_order(t),
                       positions(b), payload(t));
}

namespace {

/// Whether the relation restricted to indices [0, n) is a partial order.
bool prefix_is_partial_order(const OrderTable& t, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (!t.leq(i, i)) return false;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (t.leq(i, j) && t.leq(j, i)) return false;
    }
  }
  const std::size_t full = n / 64;
  const std::uint64_t tail = (n % 64) ? (std::uint64_t{1} << (n % 64)) - 1 : 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto ri = t.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (!t.leq(i, j)) continue;
      const auto rj = t.row(j);
      for (std::size_t w = 0; w < full; ++w) {
        if (rj[w] & ~ri[w]) return false;
      }
      if (tail && (rj[full] & ~ri[full] & tail)) return false;
    }
  }
  return true;
}

void collect_subterms(Shape s, std::unordered_set<Shape>& out) {
  if (!out.insert(s).second || is_leaf_term(s)) return;
  for (Shape r : children(s)) collect_subterms(r, out);
}

}  // namespace

OrderTable TermSystem::tabulate(std::vector<Shape> values) const {
  std::unordered_set<Shape> closure_set;
  for (Shape v : values) collect_subterms(v, closure_set);
  struct Entry {
    std::size_t height;
    Shape term;
  };
  std::vector<Entry> entries;
  entries.reserve(closure_set.size());
  for (Shape s : closure_set) entries.push_back({term_height(s), s});
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.height != b.height ? a.height < b.height : a.term < b.term;
  });
  std::vector<Shape> closed;
  closed.reserve(entries.size());
  for (const Entry& e : entries) closed.push_back(e.term);
  OrderTable t(closed);
  const std::size_t n = closed.size();

  // Children as table indices, in the order used by the payload.
  std::vector<std::vector<ElemId>> kids(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (is_leaf_term(closed[i])) continue;
    for (Shape r : children(closed[i])) kids[i].push_back(static_cast<ElemId>(*t.index_of(r)));
  }
  std::vector<PosetRef> local(n);
  std::vector<ElemId> joint;
  Poset order;

  auto cell = [&](std::size_t s, std::size_t u, bool lower_ok) {
    const Shape a = closed[s];
    const Shape b = closed[u];
    if (is_leaf_term(a) && is_leaf_term(b)) return base_->leq(a.id(), b.id());
    if (is_leaf_term(b)) return false;
    for (ElemId r : kids[u]) {
      if (t.leq(s, r)) return true;
    }
    if (is_leaf_term(a)) return false;
    if (!lower_ok) {
      joint.clear();
      joint.insert(joint.end(), kids[s].begin(), kids[s].end());
      joint.insert(joint.end(), kids[u].begin(), kids[u].end());
      std::sort(joint.begin(), joint.end());
      joint.erase(std::unique(joint.begin(), joint.end()), joint.end());
      order.reset(joint.size());
      for (ElemId i = 0; i < joint.size(); ++i) {
        for (ElemId j = 0; j < joint.size(); ++j) {
          if (t.leq(joint[i], joint[j])) order.set_leq(i, j, true);
        }
      }
      if (!validate_poset(order).ok()) return false;
    }
    // leq_mapped only consults the suborder on the images of both child sets.
    return w_.leq_mapped(t, local[s], kids[s], payload(a), local[u], kids[u], payload(b));
  };

  // Pass h settles every pair whose larger height is h. Children have smaller
  // height, so each clause only reads cells from earlier passes or from
  // earlier columns of this pass.
  std::size_t begin = 0;
  bool lower_ok = true;
  while (begin < n) {
    const std::size_t h = entries[begin].height;
    std::size_t end = begin;
    while (end < n && entries[end].height == h) ++end;
    for (std::size_t i = begin; i < end; ++i) {
      if (is_leaf_term(closed[i])) continue;
      Poset order("children", kids[i].size());
      for (ElemId p = 0; p < kids[i].size(); ++p) {
        for (ElemId q = 0; q < kids[i].size(); ++q) {
          if (t.leq(kids[i][p], kids[i][q])) order.set_leq(p, q, true);
        }
      }
      local[i] = share(std::move(order));
    }
    for (std::size_t u = 0; u < end; ++u) {
      const bool new_column = u >= begin;
      for (std::size_t s = new_column ? 0 : begin; s < end; ++s) {
        if (cell(s, u, lower_ok)) t.set(s, u);
      }
    }
    begin = end;
    // Clause (iii) needs the children's order to be partial; verified once per
    // prefix instead of once per pair.
    if (begin < n) lower_ok = prefix_is_partial_order(t, begin);
  }

  OrderTable out(values);
  std::vector<std::size_t> at(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) at[i] = *t.index_of(values[i]);
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (t.leq(at[i], at[j])) out.set(i, j);
    }
  }
  return out;
}

PosetRef TermSystem::local_order(Shape node) const {
  const auto kids = term_parts(node).carrier;
  {
    std::lock_guard lock(memo_->mu);
    if (auto it = memo_->local.find(node.identity()); it != memo_->local.end()) return it->second;
  }
  Poset order("children", kids.size());
  for (ElemId i = 0; i < kids.size(); ++i) {
    for (ElemId j = 0; j < kids.size(); ++j) {
      if (leq(kids[i], kids[j])) order.set_leq(i, j, true);
    }
  }
  PosetRef shared = share(std::move(order));
  std::lock_guard lock(memo_->mu);
  if (memo_->local.size() >= Memo::kMaxEntries) memo_->local.clear();
  memo_->local.emplace(node.identity(), shared);
  return shared;
}

Shape TermSystem::leaf(ElemId x) const {
  if (!base_->contains(x)) throw InputError("element id " + std::to_string(x) + " not in the base");
  return Shape::elem(x);
}

Fragment TermSystem::fragment(std::vector<Shape> terms) const {
  return make_fragment(std::move(terms), [this](Shape s, Shape t) { return leq(s, t); }, "terms");
}

Shape TermSystem::kappa(const Fragment& z, Shape sigma) const {
  const Fragment a = sub_fragment(z, w_.supp_ids(z.poset, sigma));
  std::vector<ElemId> assign;
  for (Shape r : a.values) assign.push_back(z.index_of(r));
  const OrderMap iota_a{a.poset, z.poset, std::move(assign), MapKind::Embedding};
  auto reduced = w_.pullback(iota_a, sigma);
  if (!reduced) {
    throw DilatorLawError(w_.name() + " payload has no normal form: " + debug_string(sigma));
  }
  return pack_pair(kTermTag, *reduced, a.values);
}

Report TermSystem::validate(Shape s) const {
  Report r;
  ++r.checked;
  if (is_leaf_term(s)) {
    if (!base_->contains(s.id())) r.add("term-leaf", "leaf " + std::to_string(s.id()) + " not in X");
    return r;
  }
  if (!is_node_term(s)) {
    r.add("term-shape", debug_string(s));
    return r;
  }
  const auto kids = children(s);
  for (Shape k : kids) r.merge(validate(k));
  if (!r.ok()) return r;
  if (!std::is_sorted(kids.begin(), kids.end()) ||
      std::adjacent_find(kids.begin(), kids.end()) != kids.end()) {
    r.add("term-children", format(s) + ": children not canonical");
    return r;
  }
  const PosetRef order = local_order(s);
  if (!validate_poset(*order).ok()) {
    r.add("term-order", format(s) + ": children not partially ordered");
    return r;
  }
  if (!w_.valid(order, payload(s))) {
    r.add("term-payload", format(s) + ": payload not in W(a)");
    return r;
  }
  if (w_.supp_ids(order, payload(s)).size() != kids.size()) {
    r.add("term-support", format(s) + ": supp of payload differs from a");
  }
  return r;
}

KruskalTarget TermSystem::as_target() const {
  return KruskalTarget{
      "T" + w_.name(),
      [this](Shape s, Shape t) { return leq(s, t); },
      [this](ElemId x) { return leaf(x); },
      [this](const Fragment& z, Shape sigma) { return kappa(z, sigma); },
      [this](Shape s) { return format(s); },
      [this](std::vector<Shape> values) { return tabulate(std::move(values)); },
  };
}

std::string TermSystem::format(Shape s) const {
  if (is_leaf_term(s)) {
    return "leaf:" + (base_->contains(s.id()) ? base_->element_name(s.id())
                                               : "#" + std::to_string(s.id()));
  }
  const auto kids = children(s);
  if (w_.name() == "M") {
    std::string out = "node[";
    bool first = true;
    for (Shape entry : payload(s).kids()) {
      if (!first) out += ';';
      first = false;
      out += entry.is_elem() && entry.id() < kids.size() ? format(kids[entry.id()]) : "?";
    }
    return out + "]";
  }
  std::vector<std::string> names;
  for (Shape k : kids) names.push_back(format(k));
  return "node{" + w_.format(Poset("children", std::move(names)), payload(s)) + "}";
}

namespace {

class TermParser {
 public:
  TermParser(const TermSystem& sys, std::string_view text) : sys_(sys), text_(text) {}

  Shape parse_all() {
    Shape t = term();
    if (pos_ != text_.size()) fail("trailing input");
    return t;
  }

 private:
  Shape term() {
    if (text_.substr(pos_, 5) == "leaf:") {
      pos_ += 5;
      const std::size_t start = pos_;
      while (pos_ < text_.size() && text_[pos_] != ';' && text_[pos_] != ']') ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      // element names first; a bare number is an id
      auto id = sys_.base()->find(name);
      if (!id && !name.empty() && name.find_first_not_of("0123456789") == std::string::npos &&
          name.size() < 10 && std::stoul(name) < sys_.base()->size()) {
        id = static_cast<ElemId>(std::stoul(name));
      }
      if (!id) fail("unknown element '" + name + "'");
      return sys_.leaf(*id);
    }
    if (text_.substr(pos_, 5) == "node[") {
      pos_ += 5;
      std::vector<Shape> entries;
      if (pos_ < text_.size() && text_[pos_] == ']') {
        ++pos_;
      } else {
        while (true) {
          entries.push_back(term());
          if (pos_ >= text_.size()) fail("unterminated node");
          if (text_[pos_] == ']') {
            ++pos_;
            break;
          }
          if (text_[pos_] != ';') fail("expected ';' or ']'");
          ++pos_;
        }
      }
      const Fragment z = sys_.fragment(entries);
      if (!validate_poset(*z.poset).ok()) fail("listed terms are not partially ordered");
      std::vector<ElemId> ids;
      for (Shape e : entries) ids.push_back(z.index_of(e));
      return sys_.kappa(z, to_shape(ElemMultiset(std::move(ids))));
    }
    fail("expected 'leaf:' or 'node['");
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("term literal, offset " + std::to_string(pos_) + ": " + what);
  }

  const TermSystem& sys_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Shape TermSystem::parse(std::string_view text) const {
  if (w_.name() != "M") throw InputError("term literals are only defined for W = M");
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  }
  return TermParser(*this, compact).parse_all();
}

// ---- enumeration and folding ----------------------------------------------

std::vector<Shape> enumerate_terms(const TermSystem& s, std::size_t max_height,
                                   EnumBudget payload) {
  std::vector<Shape> out;
  std::unordered_set<Shape> seen;
  auto add_level = [&](std::vector<Shape> level) {
    canonicalize(level);
    for (Shape t : level) {
      if (seen.insert(t).second) out.push_back(t);
    }
  };
  std::vector<Shape> level;
  for (ElemId x = 0; x < s.base()->size(); ++x) level.push_back(s.leaf(x));
  const Fragment nothing = s.fragment({});
  for (Shape sigma : s.dilator().enumerate(nothing.poset, payload)) {
    level.push_back(s.kappa(nothing, sigma));
  }
  add_level(std::move(level));
  for (std::size_t h = 1; h <= max_height; ++h) {
    const Fragment below = s.fragment(out);
    level.clear();
    for (Shape sigma : s.dilator().enumerate(below.poset, payload)) {
      level.push_back(s.kappa(below, sigma));
    }
    add_level(std::move(level));
  }
  return out;
}

std::vector<Shape> enumerate_terms(const TermSystem& s, std::size_t max_height,
                                   std::size_t max_payload) {
  return enumerate_terms(s, max_height, EnumBudget{max_payload, max_payload});
}

namespace {

Shape fold_rec(const TermSystem& s, const KruskalTarget& target, Shape term,
               std::unordered_map<Shape, Shape>& done) {
  if (auto it = done.find(term); it != done.end()) return it->second;
  Shape result;
  if (is_leaf_term(term)) {
    result = target.iota(term.id());
  } else {
    const auto kids = children(term);
    std::vector<Shape> images;
    images.reserve(kids.size());
    for (Shape k : kids) images.push_back(fold_rec(s, target, k, done));
    const Fragment z = make_fragment(images, target.leq, target.name);
    std::vector<ElemId> assign;
    assign.reserve(images.size());
    for (Shape v : images) assign.push_back(z.index_of(v));
    const OrderMap f{s.local_order(term), z.poset, std::move(assign), MapKind::QuasiEmbedding};
    result = target.kappa(z, s.dilator().map(f, payload(term)));
  }
  done.emplace(term, result);
  return result;
}

}  // namespace

Shape fold_initial(const TermSystem& s, const KruskalTarget& target, Shape term) {
  std::unordered_map<Shape, Shape> done;
  return fold_rec(s, target, term, done);
}

// ---- the derivative dilator -----------------------------------------------

namespace {

class DerivativeImpl final : public DilatorImpl {
 public:
  explicit DerivativeImpl(Dilator w) : w_(std::move(w)) {
    if (!w_.normal()) throw PreconditionError("derivative needs a normal dilator, got " + w_.name());
  }

  std::string name() const override { return "T(" + w_.name() + ")"; }
  bool normal() const override { return true; }

  bool leq(const Poset& x, Shape s, Shape t) const override { return system(x)->leq(s, t); }
  OrderTable tabulate(const PosetRef& x, std::vector<Shape> values) const override {
    return system(*x)->tabulate(std::move(values));
  }

  Shape map(const OrderMap& f, Shape s) const override {
    const auto source = system(*f.source);
    const auto target = system(*f.target);
    KruskalTarget onto = target->as_target();
    onto.iota = [&](ElemId x) { return target->leaf(f(x)); };
    return fold_initial(*source, onto, s);
  }

  std::vector<ElemId> supp(const PosetRef&, Shape s) const override { return term_supp(s); }

  std::vector<Shape> enumerate(const PosetRef& x, EnumBudget budget) const override {
    return enumerate_terms(*system(*x), budget.height, budget);
  }

  std::optional<Shape> pullback(const OrderMap& f, Shape s) const override {
    const auto source = system(*f.source);
    const auto target = system(*f.target);
    std::unordered_map<Shape, std::optional<Shape>> done;
    return pull(*source, *target, f, s, done);
  }

  bool valid(const PosetRef& x, Shape s) const override { return system(*x)->validate(s).ok(); }

  std::string format(const Poset& x, Shape s) const override { return system(x)->format(s); }

 private:
  std::optional<Shape> pull(const TermSystem& source, const TermSystem& target, const OrderMap& f,
                            Shape s, std::unordered_map<Shape, std::optional<Shape>>& done) const {
    if (auto it = done.find(s); it != done.end()) return it->second;
    std::optional<Shape> result;
    if (is_leaf_term(s)) {
      for (ElemId x = 0; x < f.assign.size(); ++x) {
        if (f.assign[x] == s.id()) result = source.leaf(x);
      }
    } else {
      const auto kids = children(s);
      std::vector<Shape> pulled;
      bool ok = true;
      for (Shape k : kids) {
        auto p = pull(source, target, f, k, done);
        if (!p) {
          ok = false;
          break;
        }
        pulled.push_back(*p);
      }
      if (ok) {
        // Relabelling leaves may reorder the children, so permute the payload.
        const Fragment z = source.fragment(pulled);
        std::vector<ElemId> assign;
        for (Shape p : pulled) assign.push_back(z.index_of(p));
        const OrderMap g{target.local_order(s), z.poset, std::move(assign), MapKind::Embedding};
        result = pack_pair(kTermTag, w_.map(g, payload(s)), z.values);
      }
    }
    done.emplace(s, result);
    return result;
  }

  std::shared_ptr<const TermSystem> system(const Poset& x) const {
    std::lock_guard lock(mu_);
    auto it = systems_.find(x.fingerprint());
    if (it != systems_.end()) return it->second;
    if (systems_.size() >= 4096) systems_.clear();
    auto s = std::make_shared<const TermSystem>(share(x), w_);
    systems_.emplace(x.fingerprint(), s);
    return s;
  }

  Dilator w_;
  mutable std::mutex mu_;
  mutable std::map<std::string, std::shared_ptr<const TermSystem>> systems_;
};

}  // namespace

Dilator derivative(Dilator w) { return Dilator(std::make_shared<DerivativeImpl>(std::move(w))); }

// ---- fixed-point checks -----------------------------------------------------

Report check_fixed_point_axioms(const Dilator& w, const Poset& x, const KruskalTarget& z,
                                std::span<const Shape> z_values, EnumBudget budget) {
  Report r;
  auto show = [&](Shape s) { return z.describe ? z.describe(s) : debug_string(s); };
  const Fragment zf = make_fragment(std::vector<Shape>(z_values.begin(), z_values.end()), z.leq,
                                    z.name);
  const auto payloads = w.enumerate(zf.poset, budget);
  const OrderTable payload_order = w.tabulate(zf.poset, payloads);
  std::vector<Shape> kappas;
  std::vector<std::vector<ElemId>> supports;
  for (Shape sigma : payloads) {
    kappas.push_back(z.kappa(zf, sigma));
    supports.push_back(w.supp_ids(zf.poset, sigma));
  }
  std::vector<Shape> iotas;
  for (ElemId e = 0; e < x.size(); ++e) iotas.push_back(z.iota(e));

  // One table over everything compared below.
  std::vector<Shape> universe(zf.values.begin(), zf.values.end());
  universe.insert(universe.end(), iotas.begin(), iotas.end());
  universe.insert(universe.end(), kappas.begin(), kappas.end());
  canonicalize(universe);
  const OrderTable table = z.tabulate ? z.tabulate(universe) : tabulate(universe, z.leq);
  auto index = [&](Shape s) { return *table.index_of(s); };
  std::vector<std::size_t> zi, ii, ki;
  for (Shape s : zf.values) zi.push_back(index(s));
  for (Shape s : iotas) ii.push_back(index(s));
  for (Shape s : kappas) ki.push_back(index(s));
  auto below_some = [&](std::size_t s, const std::vector<ElemId>& ids) {
    return std::any_of(ids.begin(), ids.end(), [&](ElemId i) { return table.leq(s, zi[i]); });
  };

  std::unordered_set<Shape> iota_range(iotas.begin(), iotas.end());
  std::unordered_map<Shape, std::size_t> first_kappa;
  for (std::size_t i = 0; i < kappas.size(); ++i) {
    ++r.checked;
    if (iota_range.contains(kappas[i])) r.add("ranges-disjoint", show(kappas[i]));
    auto [it, fresh] = first_kappa.emplace(kappas[i], i);
    if (!fresh) {
      r.add("kappa-injective", w.format(*zf.poset, payloads[it->second]) + " and " +
                                   w.format(*zf.poset, payloads[i]) + " both give " +
                                   show(kappas[i]));
    }
  }
  for (ElemId a = 0; a < x.size(); ++a) {
    for (ElemId b = 0; b < x.size(); ++b) {
      ++r.checked;
      if (table.leq(ii[a], ii[b]) && !x.leq(a, b)) {
        r.add("iota-reflects", x.element_name(a) + " " + x.element_name(b));
      }
    }
  }
  for (ElemId a = 0; a < x.size(); ++a) {
    for (std::size_t t = 0; t < kappas.size(); ++t) {
      r.checked += 2;
      if (table.leq(ii[a], ki[t]) != below_some(ii[a], supports[t])) {
        r.add("iota-below-kappa", show(iotas[a]) + " vs " + show(kappas[t]));
      }
      if (table.leq(ki[t], ii[a])) {
        r.add("kappa-not-below-iota", show(kappas[t]) + " <= " + show(iotas[a]));
      }
    }
  }
  for (std::size_t s = 0; s < kappas.size(); ++s) {
    for (std::size_t t = 0; t < kappas.size(); ++t) {
      ++r.checked;
      const bool lhs = table.leq(ki[s], ki[t]);
      const bool rhs = payload_order.leq(s, t) || below_some(ki[s], supports[t]);
      if (lhs != rhs) {
        r.add("kappa-below-kappa", show(kappas[s]) + " vs " + show(kappas[t]) +
                                       (lhs ? " (order holds, clause fails)"
                                            : " (clause holds, order fails)"));
      }
    }
  }
  return r;
}

Report check_height_witness(const Dilator& w, const KruskalTarget& z,
                            std::span<const Shape> z_values, EnumBudget budget,
                            const std::function<std::size_t(Shape)>& height) {
  Report r;
  auto show = [&](Shape s) { return z.describe ? z.describe(s) : debug_string(s); };
  const Fragment zf = make_fragment(std::vector<Shape>(z_values.begin(), z_values.end()), z.leq,
                                    z.name);
  for (Shape sigma : w.enumerate(zf.poset, budget)) {
    const Shape k = z.kappa(zf, sigma);
    const std::size_t hk = height(k);
    for (ElemId i : w.supp_ids(zf.poset, sigma)) {
      ++r.checked;
      if (height(zf.values[i]) >= hk) {
        r.add("height-witness", show(zf.values[i]) + " in supp but not lower than " + show(k));
      }
    }
  }
  return r;
}

}  // namespace wpogap
