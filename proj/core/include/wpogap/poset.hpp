#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wpogap/report.hpp"
#include "wpogap/shape.hpp"

namespace wpogap {

/// Finite carrier {0, ..., size-1} with an explicit relation stored as bit
/// rows. The relation is whatever was supplied; `validate_poset` says whether
/// it is a partial order.
class Poset {
 public:
  Poset() = default;
  Poset(std::string name, std::vector<std::string> element_names);
  /// Anonymous elements; element_name(i) renders as e<i>.
  Poset(std::string name, std::size_t size);

  static Poset from_relation(std::string name, std::vector<std::string> element_names,
                             const std::function<bool(ElemId, ElemId)>& leq);
  /// Elements named e0, e1, ... ordered by `leq`.
  static Poset from_relation(std::string name, std::size_t size,
                             const std::function<bool(ElemId, ElemId)>& leq);

  static Poset empty();
  static Poset chain(std::vector<std::string> names);      // names[0] <= names[1] <= ...
  static Poset antichain(std::vector<std::string> names);  // pairwise incomparable
  static Poset vee();                                      // b <= l, b <= r

  const std::string& name() const { return name_; }
  std::size_t size() const { return size_; }
  bool contains(ElemId x) const { return x < size(); }
  std::string element_name(ElemId x) const;
  std::optional<ElemId> find(std::string_view element_name) const;

  bool leq(ElemId x, ElemId y) const {
    return (rows_[x * words_ + (y >> 6)] >> (y & 63)) & 1U;
  }
  void set_leq(ElemId x, ElemId y, bool value) {
    auto& word = rows_[x * words_ + (y >> 6)];
    const std::uint64_t bit = std::uint64_t{1} << (y & 63);
    word = value ? (word | bit) : (word & ~bit);
    if (!fingerprint_.empty()) fingerprint_.clear();
  }
  /// Becomes an anonymous empty relation on `size` elements, keeping capacity.
  void reset(std::size_t size);

  /// The suborder on `members` (in the given order), element i of the result
  /// being members[i].
  Poset induced(std::span<const ElemId> members) const;

  /// Reflexive-transitive closure of the current relation.
  void close();

  /// Content key (size plus relation bits); equal keys mean identical orders.
  const std::string& fingerprint() const;

 private:
  std::string name_;
  std::vector<std::string> names_;  // empty for anonymous posets
  std::size_t size_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> rows_;
  mutable std::string fingerprint_;
};

using PosetRef = std::shared_ptr<const Poset>;

/// Non-owning view of any relation on {0, ..., size-1} offering size() and leq(i, j).
class RelationRef {
 public:
  template <class R>
  RelationRef(const R& r)  // NOLINT: implicit on purpose
      : obj_(&r), size_(r.size()), leq_([](const void* o, ElemId x, ElemId y) {
          return static_cast<bool>(static_cast<const R*>(o)->leq(x, y));
        }) {}

  std::size_t size() const { return size_; }
  bool leq(ElemId x, ElemId y) const { return leq_(obj_, x, y); }

 private:
  const void* obj_;
  std::size_t size_;
  bool (*leq_)(const void*, ElemId, ElemId);
};

inline PosetRef share(Poset p) { return std::make_shared<const Poset>(std::move(p)); }

/// Every failed reflexivity (x), antisymmetry (x,y) or transitivity (x,y,z) instance.
Report validate_poset(const Poset& p);

/// A finite subset of a poset, members sorted and unique.
struct FinSubset {
  PosetRef parent;
  std::vector<ElemId> members;

  FinSubset() = default;
  FinSubset(PosetRef parent, std::vector<ElemId> members);  // sorts, dedups, checks

  bool contains(ElemId x) const;
  bool subset_of(const FinSubset& other) const;
  friend bool operator==(const FinSubset& a, const FinSubset& b) {
    return a.members == b.members;
  }
};

enum class MapKind { QuasiEmbedding, Embedding };

/// A total map between posets, tagged with the law it claims to satisfy.
struct OrderMap {
  PosetRef source;
  PosetRef target;
  std::vector<ElemId> assign;
  MapKind kind = MapKind::QuasiEmbedding;

  ElemId operator()(ElemId x) const { return assign.at(x); }
};

/// a <=fin b: every x in a lies below some y in b.
bool leq_fin(const Poset& p, std::span<const ElemId> a, std::span<const ElemId> b);
bool leq_fin(const Poset& p, const FinSubset& a, const FinSubset& b);

/// Quasi-embedding law over all pairs; for embeddings also the converse and injectivity.
Report validate_map(const OrderMap& f);

FinSubset image_fin(const OrderMap& f, const FinSubset& a);

/// The inclusion of the suborder on `a` into its parent.
OrderMap inclusion(const FinSubset& a);

OrderMap identity_map(const PosetRef& p);

/// g after f.
OrderMap compose_maps(const OrderMap& g, const OrderMap& f);

/// Parses the line-oriented poset format:
///   poset <name>
///   elem <id>
///   le <id> <id>
/// Closure is applied; a relation that is not antisymmetric after closure is an InputError.
Poset parse_poset(std::istream& in);
Poset load_poset_file(const std::string& path);
std::string format_poset(const Poset& p);

std::string format_ids(const Poset& p, std::span<const ElemId> ids);

}  // namespace wpogap
