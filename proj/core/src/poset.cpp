#include "wpogap/poset.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

namespace wpogap {

Poset::Poset(std::string name, std::vector<std::string> element_names)
    : name_(std::move(name)),
      names_(std::move(element_names)),
      size_(names_.size()),
      words_((size_ + 63) / 64),
      rows_(size_ * words_, 0) {}

Poset::Poset(std::string name, std::size_t size)
    : name_(std::move(name)), size_(size), words_((size + 63) / 64), rows_(size * words_, 0) {}

std::string Poset::element_name(ElemId x) const {
  if (x >= size_) throw InputError("element id " + std::to_string(x) + " out of range");
  return names_.empty() ? "e" + std::to_string(x) : names_[x];
}

Poset Poset::from_relation(std::string name, std::vector<std::string> element_names,
                           const std::function<bool(ElemId, ElemId)>& leq) {
  Poset p(std::move(name), std::move(element_names));
  const auto n = static_cast<ElemId>(p.size());
  for (ElemId x = 0; x < n; ++x) {
    for (ElemId y = 0; y < n; ++y) {
      if (leq(x, y)) p.set_leq(x, y, true);
    }
  }
  return p;
}

Poset Poset::from_relation(std::string name, std::size_t size,
                           const std::function<bool(ElemId, ElemId)>& leq) {
  Poset p(std::move(name), size);
  for (ElemId x = 0; x < size; ++x) {
    for (ElemId y = 0; y < size; ++y) {
      if (leq(x, y)) p.set_leq(x, y, true);
    }
  }
  return p;
}

Poset Poset::empty() { return Poset("empty", std::size_t{0}); }

Poset Poset::chain(std::vector<std::string> names) {
  const std::string label = "chain" + std::to_string(names.size());
  return from_relation(label, std::move(names), [](ElemId x, ElemId y) { return x <= y; });
}

Poset Poset::antichain(std::vector<std::string> names) {
  const std::string label = "antichain" + std::to_string(names.size());
  return from_relation(label, std::move(names), [](ElemId x, ElemId y) { return x == y; });
}

Poset Poset::vee() {
  return from_relation("vee", {"b", "l", "r"},
                       [](ElemId x, ElemId y) { return x == y || x == 0; });
}

std::optional<ElemId> Poset::find(std::string_view element_name) const {
  for (ElemId i = 0; i < size_; ++i) {
    if (this->element_name(i) == element_name) return i;
  }
  return std::nullopt;
}

void Poset::reset(std::size_t size) {
  names_.clear();
  size_ = size;
  words_ = (size + 63) / 64;
  rows_.assign(size * words_, 0);
  fingerprint_.clear();
}

Poset Poset::induced(std::span<const ElemId> members) const {
  Poset sub(name_ + "|sub", members.size());
  if (!names_.empty()) {
    sub.names_.reserve(members.size());
    for (ElemId m : members) sub.names_.push_back(names_.at(m));
  }
  for (ElemId i = 0; i < members.size(); ++i) {
    for (ElemId j = 0; j < members.size(); ++j) {
      if (leq(members[i], members[j])) sub.set_leq(i, j, true);
    }
  }
  return sub;
}

void Poset::close() {
  const auto n = static_cast<ElemId>(size());
  for (ElemId x = 0; x < n; ++x) set_leq(x, x, true);
  // Warshall on bit rows: if x <= k then row(x) |= row(k).
  for (ElemId k = 0; k < n; ++k) {
    for (ElemId x = 0; x < n; ++x) {
      if (!leq(x, k)) continue;
      for (std::size_t w = 0; w < words_; ++w) rows_[x * words_ + w] |= rows_[k * words_ + w];
    }
  }
  fingerprint_.clear();
}

const std::string& Poset::fingerprint() const {
  if (fingerprint_.empty()) {
    fingerprint_ = std::to_string(size()) + ":";
    for (std::uint64_t w : rows_) {
      fingerprint_.append(reinterpret_cast<const char*>(&w), sizeof(w));
    }
  }
  return fingerprint_;
}

Report validate_poset(const Poset& p) {
  Report r;
  const auto n = static_cast<ElemId>(p.size());
  for (ElemId x = 0; x < n; ++x) {
    ++r.checked;
    if (!p.leq(x, x)) r.add("reflexivity", "(" + p.element_name(x) + ")");
  }
  for (ElemId x = 0; x < n; ++x) {
    for (ElemId y = x + 1; y < n; ++y) {
      ++r.checked;
      if (p.leq(x, y) && p.leq(y, x)) {
        r.add("antisymmetry", "(" + p.element_name(x) + "," + p.element_name(y) + ")");
      }
    }
  }
  for (ElemId x = 0; x < n; ++x) {
    for (ElemId y = 0; y < n; ++y) {
      if (!p.leq(x, y)) continue;
      for (ElemId z = 0; z < n; ++z) {
        ++r.checked;
        if (p.leq(y, z) && !p.leq(x, z)) {
          r.add("transitivity", "(" + p.element_name(x) + "," + p.element_name(y) + "," +
                                    p.element_name(z) + ")");
        }
      }
    }
  }
  return r;
}

FinSubset::FinSubset(PosetRef parent_poset, std::vector<ElemId> ids)
    : parent(std::move(parent_poset)), members(std::move(ids)) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (ElemId m : members) {
    if (!parent || !parent->contains(m)) {
      throw InputError("element id " + std::to_string(m) + " is not in the parent poset");
    }
  }
}

bool FinSubset::contains(ElemId x) const {
  return std::binary_search(members.begin(), members.end(), x);
}

bool FinSubset::subset_of(const FinSubset& other) const {
  return std::includes(other.members.begin(), other.members.end(), members.begin(),
                       members.end());
}

bool leq_fin(const Poset& p, std::span<const ElemId> a, std::span<const ElemId> b) {
  for (ElemId y : b) {
    if (!p.contains(y)) throw InputError("foreign element id " + std::to_string(y));
  }
  for (ElemId x : a) {
    if (!p.contains(x)) throw InputError("foreign element id " + std::to_string(x));
    if (std::none_of(b.begin(), b.end(), [&](ElemId y) { return p.leq(x, y); })) return false;
  }
  return true;
}

bool leq_fin(const Poset& p, const FinSubset& a, const FinSubset& b) {
  return leq_fin(p, a.members, b.members);
}

Report validate_map(const OrderMap& f) {
  Report r;
  const Poset& src = *f.source;
  const Poset& dst = *f.target;
  if (f.assign.size() != src.size()) {
    r.add("totality", "assign has " + std::to_string(f.assign.size()) + " entries for " +
                          std::to_string(src.size()) + " elements");
    return r;
  }
  for (ElemId x = 0; x < src.size(); ++x) {
    if (!dst.contains(f.assign[x])) {
      r.add("totality", src.element_name(x) + " maps outside the target");
      return r;
    }
  }
  for (ElemId x = 0; x < src.size(); ++x) {
    for (ElemId y = 0; y < src.size(); ++y) {
      ++r.checked;
      const bool image_leq = dst.leq(f.assign[x], f.assign[y]);
      const bool source_leq = src.leq(x, y);
      const std::string pair = "(" + src.element_name(x) + "," + src.element_name(y) + ")";
      if (image_leq && !source_leq) r.add("quasi-embedding", pair);
      if (f.kind == MapKind::Embedding) {
        if (source_leq && !image_leq) r.add("embedding", pair);
        if (x < y && f.assign[x] == f.assign[y]) r.add("injectivity", pair);
      }
    }
  }
  return r;
}

FinSubset image_fin(const OrderMap& f, const FinSubset& a) {
  std::vector<ElemId> out;
  out.reserve(a.members.size());
  for (ElemId x : a.members) {
    if (!f.source->contains(x)) throw InputError("foreign element id " + std::to_string(x));
    out.push_back(f.assign.at(x));
  }
  return FinSubset(f.target, std::move(out));
}

OrderMap inclusion(const FinSubset& a) {
  return OrderMap{share(a.parent->induced(a.members)), a.parent, a.members, MapKind::Embedding};
}

OrderMap identity_map(const PosetRef& p) {
  std::vector<ElemId> assign(p->size());
  for (ElemId i = 0; i < assign.size(); ++i) assign[i] = i;
  return OrderMap{p, p, std::move(assign), MapKind::Embedding};
}

OrderMap compose_maps(const OrderMap& g, const OrderMap& f) {
  std::vector<ElemId> assign(f.assign.size());
  for (std::size_t i = 0; i < assign.size(); ++i) assign[i] = g.assign.at(f.assign[i]);
  const MapKind kind = (f.kind == MapKind::Embedding && g.kind == MapKind::Embedding)
                           ? MapKind::Embedding
                           : MapKind::QuasiEmbedding;
  return OrderMap{f.source, g.target, std::move(assign), kind};
}

Poset parse_poset(std::istream& in) {
  std::string name = "poset";
  std::vector<std::string> names;
  std::map<std::string, ElemId, std::less<>> index;
  std::vector<std::pair<ElemId, ElemId>> facts;
  std::string line;
  std::size_t lineno = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (word == "poset") {
      if (!(ls >> name)) throw InputError(where + "poset needs a name");
      saw_header = true;
    } else if (word == "elem") {
      std::string id;
      if (!(ls >> id)) throw InputError(where + "elem needs an id");
      if (index.contains(id)) throw InputError(where + "duplicate element " + id);
      index.emplace(id, static_cast<ElemId>(names.size()));
      names.push_back(id);
    } else if (word == "le") {
      std::string a;
      std::string b;
      if (!(ls >> a >> b)) throw InputError(where + "le needs two ids");
      auto ia = index.find(a);
      auto ib = index.find(b);
      if (ia == index.end() || ib == index.end()) {
        throw InputError(where + "unknown element in le " + a + " " + b);
      }
      facts.emplace_back(ia->second, ib->second);
    } else {
      throw InputError(where + "unknown directive " + word);
    }
    std::string extra;
    if (ls >> extra) throw InputError(where + "trailing token " + extra);
  }
  if (!saw_header) throw InputError("missing 'poset <name>' header");
  Poset p(name, std::move(names));
  for (auto [a, b] : facts) p.set_leq(a, b, true);
  p.close();
  for (ElemId x = 0; x < p.size(); ++x) {
    for (ElemId y = x + 1; y < p.size(); ++y) {
      if (p.leq(x, y) && p.leq(y, x)) {
        throw InputError("relation is not antisymmetric: " + p.element_name(x) + " and " +
                         p.element_name(y) + " are below each other");
      }
    }
  }
  return p;
}

Poset load_poset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open poset file " + path);
  return parse_poset(in);
}

std::string format_poset(const Poset& p) {
  std::ostringstream os;
  os << "poset " << p.name() << '\n';
  for (ElemId x = 0; x < p.size(); ++x) os << "elem " << p.element_name(x) << '\n';
  for (ElemId x = 0; x < p.size(); ++x) {
    for (ElemId y = 0; y < p.size(); ++y) {
      if (x != y && p.leq(x, y)) os << "le " << p.element_name(x) << ' ' << p.element_name(y) << '\n';
    }
  }
  return os.str();
}

std::string format_ids(const Poset& p, std::span<const ElemId> ids) {
  std::string out = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ',';
    out += p.contains(ids[i]) ? p.element_name(ids[i]) : "#" + std::to_string(ids[i]);
  }
  return out + "}";
}

}  // namespace wpogap
