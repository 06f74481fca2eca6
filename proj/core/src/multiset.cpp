#include "wpogap/multiset.hpp"

#include <cctype>
#include <string>

namespace wpogap {

namespace {

bool augment(std::size_t u, std::size_t right,
             const std::function<bool(std::size_t, std::size_t)>& compatible,
             std::vector<char>& visited, std::vector<std::ptrdiff_t>& match_right) {
  for (std::size_t v = 0; v < right; ++v) {
    if (visited[v] || !compatible(u, v)) continue;
    visited[v] = 1;
    if (match_right[v] < 0 ||
        augment(static_cast<std::size_t>(match_right[v]), right, compatible, visited,
                match_right)) {
      match_right[v] = static_cast<std::ptrdiff_t>(u);
      return true;
    }
  }
  return false;
}

void check_entries(const Poset& p, const ElemMultiset& m) {
  for (ElemId x : m.entries()) {
    if (!p.contains(x)) throw InputError("foreign element id " + std::to_string(x));
  }
}

}  // namespace

bool has_left_saturating_matching(std::size_t left, std::size_t right,
                                  const std::function<bool(std::size_t, std::size_t)>& compatible) {
  if (left > right) return false;
  std::vector<std::ptrdiff_t> match_right(right, -1);
  std::vector<char> visited(right);
  for (std::size_t u = 0; u < left; ++u) {
    std::fill(visited.begin(), visited.end(), 0);
    if (!augment(u, right, compatible, visited, match_right)) return false;
  }
  return true;
}

namespace {

bool augment_small(std::size_t u, std::span<const std::uint64_t> adj, std::uint64_t& visited,
                   std::int8_t* match_right) {
  std::uint64_t candidates = adj[u] & ~visited;
  while (candidates) {
    const int v = __builtin_ctzll(candidates);
    candidates &= candidates - 1;
    visited |= std::uint64_t{1} << v;
    if (match_right[v] < 0 || augment_small(static_cast<std::size_t>(match_right[v]), adj, visited,
                                            match_right)) {
      match_right[v] = static_cast<std::int8_t>(u);
      return true;
    }
  }
  return false;
}

}  // namespace

bool has_left_saturating_matching(std::size_t left, std::span<const std::uint64_t> adj) {
  if (left > 64) return false;
  std::int8_t match_right[64];
  std::fill(std::begin(match_right), std::end(match_right), std::int8_t{-1});
  for (std::size_t u = 0; u < left; ++u) {
    std::uint64_t visited = 0;
    if (!augment_small(u, adj, visited, match_right)) return false;
  }
  return true;
}

bool ms_leq(const Poset& p, const ElemMultiset& sigma, const ElemMultiset& tau) {
  check_entries(p, sigma);
  check_entries(p, tau);
  return multiset_leq(sigma.entries(), tau.entries(),
                      [&](ElemId x, ElemId y) { return p.leq(x, y); });
}

ElemMultiset ms_map(const OrderMap& f, const ElemMultiset& sigma) {
  check_entries(*f.source, sigma);
  return sigma.map([&](ElemId x) { return f.assign[x]; });
}

FinSubset ms_supp(const PosetRef& p, const ElemMultiset& sigma) {
  return FinSubset(p, sigma.support());
}

std::vector<ElemMultiset> ms_enumerate(const Poset& p, std::size_t max_size) {
  std::vector<ElemMultiset> out;
  const auto n = static_cast<ElemId>(p.size());
  std::vector<ElemId> current;
  // Non-decreasing sequences of each length are exactly the sorted multisets.
  std::function<void(std::size_t, ElemId)> extend = [&](std::size_t remaining, ElemId from) {
    if (remaining == 0) {
      out.emplace_back(current);
      return;
    }
    for (ElemId x = from; x < n; ++x) {
      current.push_back(x);
      extend(remaining - 1, x);
      current.pop_back();
    }
  };
  for (std::size_t len = 0; len <= max_size; ++len) {
    if (len > 0 && n == 0) break;
    extend(len, 0);
  }
  return out;
}

Shape to_shape(const ElemMultiset& m) {
  std::vector<Shape> kids;
  kids.reserve(m.size());
  for (ElemId x : m.entries()) kids.push_back(Shape::elem(x));
  return Shape::node(kBagTag, std::move(kids));
}

ElemMultiset multiset_of_shape(Shape s) {
  if (s.kind() != ShapeKind::Node || s.tag() != kBagTag) {
    throw InputError("not a multiset payload: " + debug_string(s));
  }
  std::vector<ElemId> ids;
  ids.reserve(s.kids().size());
  for (Shape k : s.kids()) {
    if (!k.is_elem()) throw InputError("multiset entry is not an element: " + debug_string(s));
    ids.push_back(k.id());
  }
  return ElemMultiset(std::move(ids));
}

std::string format_multiset(const Poset& p, const ElemMultiset& m) {
  std::string out = "[";
  bool first = true;
  for (ElemId x : m.entries()) {
    if (!first) out += ',';
    first = false;
    out += p.contains(x) ? p.element_name(x) : "#" + std::to_string(x);
  }
  return out + "]";
}

ElemMultiset parse_multiset(const Poset& p, std::string_view text) {
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  }
  if (compact.size() < 2 || compact.front() != '[' || compact.back() != ']') {
    throw InputError("multiset literal must look like [e1,e2,...]: " + std::string(text));
  }
  const std::string body = compact.substr(1, compact.size() - 2);
  std::vector<ElemId> ids;
  if (!body.empty()) {
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = body.find(',', start);
      const std::string name = body.substr(start, comma - start);
      auto id = p.find(name);
      if (!id) throw InputError("unknown element '" + name + "' in multiset literal");
      ids.push_back(*id);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  return ElemMultiset(std::move(ids));
}

}  // namespace wpogap
