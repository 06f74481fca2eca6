#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

#include "wpogap/poset.hpp"
#include "wpogap/shape.hpp"

namespace wpogap {

/// Finite multiset stored as a sorted sequence, so equality does not depend
/// on construction order.
template <class T, class Compare = std::less<T>>
class Multiset {
 public:
  Multiset() = default;
  Multiset(std::initializer_list<T> items) : Multiset(std::vector<T>(items)) {}
  explicit Multiset(std::vector<T> items) : entries_(std::move(items)) {
    std::sort(entries_.begin(), entries_.end(), Compare{});
  }

  std::span<const T> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// Underlying set, multiplicities erased.
  std::vector<T> support() const {
    std::vector<T> out = entries_;
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  template <class F>
  auto map(F&& f) const {
    using U = std::decay_t<decltype(f(std::declval<const T&>()))>;
    std::vector<U> out;
    out.reserve(entries_.size());
    for (const T& e : entries_) out.push_back(f(e));
    return Multiset<U>(std::move(out));
  }

  friend bool operator==(const Multiset&, const Multiset&) = default;
  friend auto operator<=>(const Multiset& a, const Multiset& b) {
    return std::lexicographical_compare_three_way(a.entries_.begin(), a.entries_.end(),
                                                  b.entries_.begin(), b.entries_.end());
  }

 private:
  std::vector<T> entries_;
};

using ElemMultiset = Multiset<ElemId>;

/// True iff there is an injection g from the left indices to the right ones
/// with compatible(i, g(i)) for every i. Kuhn's augmenting paths.
bool has_left_saturating_matching(std::size_t left, std::size_t right,
                                  const std::function<bool(std::size_t, std::size_t)>& compatible);

/// Same question for at most 64 right vertices; adj[i] has bit j set iff
/// left i is compatible with right j. Does not allocate.
bool has_left_saturating_matching(std::size_t left, std::span<const std::uint64_t> adj);

/// Injection order on multisets, given the order on entries.
template <class T, class Leq>
bool multiset_leq(std::span<const T> lhs, std::span<const T> rhs, Leq&& leq) {
  if (lhs.size() > rhs.size()) return false;
  if (lhs.empty()) return true;
  if (rhs.size() <= 64) {
    std::uint64_t adj[64];
    for (std::size_t i = 0; i < lhs.size(); ++i) {
      adj[i] = 0;
      for (std::size_t j = 0; j < rhs.size(); ++j) {
        if (leq(lhs[i], rhs[j])) adj[i] |= std::uint64_t{1} << j;
      }
      if (!adj[i]) return false;
    }
    return has_left_saturating_matching(lhs.size(), std::span<const std::uint64_t>(adj, lhs.size()));
  }
  // Compatibility is computed once; the matcher may probe an edge many times.
  std::vector<char> table(lhs.size() * rhs.size());
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    bool any = false;
    for (std::size_t j = 0; j < rhs.size(); ++j) {
      table[i * rhs.size() + j] = leq(lhs[i], rhs[j]) ? 1 : 0;
      any = any || table[i * rhs.size() + j];
    }
    if (!any) return false;
  }
  return has_left_saturating_matching(lhs.size(), rhs.size(), [&](std::size_t i, std::size_t j) {
    return table[i * rhs.size() + j] != 0;
  });
}

bool ms_leq(const Poset& p, const ElemMultiset& sigma, const ElemMultiset& tau);
ElemMultiset ms_map(const OrderMap& f, const ElemMultiset& sigma);
FinSubset ms_supp(const PosetRef& p, const ElemMultiset& sigma);

/// All multisets over p with at most max_size entries: by size, then
/// lexicographically on the sorted entry sequence.
std::vector<ElemMultiset> ms_enumerate(const Poset& p, std::size_t max_size);

/// Dilator payload encoding of M: a Node tagged kBagTag whose kids are the Elem entries.
inline constexpr std::uint32_t kBagTag = 0xB0000000U;
Shape to_shape(const ElemMultiset& m);
ElemMultiset multiset_of_shape(Shape s);  // throws InputError if s is not a bag of Elem leaves

std::string format_multiset(const Poset& p, const ElemMultiset& m);
/// Parses `[e1,e2,...]` with element names from p; whitespace is ignored.
ElemMultiset parse_multiset(const Poset& p, std::string_view text);

}  // namespace wpogap
