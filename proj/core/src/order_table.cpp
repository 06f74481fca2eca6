#include "wpogap/order_table.hpp"

#include <algorithm>

namespace wpogap {

OrderTable::OrderTable(std::vector<Shape> values)
    : values_(std::move(values)), words_((values_.size() + 63) / 64), rows_(values_.size() * words_, 0) {
  sorted_.reserve(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) sorted_.emplace_back(values_[i], i);
  std::sort(sorted_.begin(), sorted_.end());
}

std::optional<std::size_t> OrderTable::index_of(Shape v) const {
  auto it = std::lower_bound(sorted_.begin(), sorted_.end(), std::make_pair(v, std::size_t{0}));
  if (it == sorted_.end() || it->first != v) return std::nullopt;
  return it->second;
}

OrderTable tabulate(std::vector<Shape> values, const std::function<bool(Shape, Shape)>& leq) {
  OrderTable t(std::move(values));
  const auto& v = t.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (leq(v[i], v[j])) t.set(i, j);
    }
  }
  return t;
}

Report check_partial_order(const OrderTable& table,
                           const std::function<std::string(Shape)>& describe,
                           std::size_t max_witnesses) {
  Report r;
  const std::size_t n = table.size();
  const std::size_t words = table.words();
  const auto& values = table.values();
  std::size_t refl = 0;
  std::size_t anti = 0;
  std::size_t trans = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ++r.checked;
    if (!table.leq(i, i) && refl++ < max_witnesses) r.add("reflexivity", describe(values[i]));
    for (std::size_t j = i + 1; j < n; ++j) {
      ++r.checked;
      if (table.leq(i, j) && table.leq(j, i) && values[i] != values[j] && anti++ < max_witnesses) {
        r.add("antisymmetry", describe(values[i]) + " ~ " + describe(values[j]));
      }
    }
  }
  // x <= y and y <= z imply x <= z, i.e. row(y) is contained in row(x).
  for (std::size_t i = 0; i < n; ++i) {
    const auto row_i = table.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !table.leq(i, j)) continue;
      const auto row_j = table.row(j);
      r.checked += n;
      for (std::size_t w = 0; w < words; ++w) {
        std::uint64_t missing = row_j[w] & ~row_i[w];
        while (missing) {
          const std::size_t k = w * 64 + static_cast<std::size_t>(__builtin_ctzll(missing));
          missing &= missing - 1;
          if (trans++ < max_witnesses) {
            r.add("transitivity", describe(values[i]) + " <= " + describe(values[j]) + " <= " +
                                      describe(values[k]));
          }
        }
      }
    }
  }
  if (refl > max_witnesses || anti > max_witnesses || trans > max_witnesses) {
    r.add("truncated", "further violations omitted");
  }
  return r;
}

}  // namespace wpogap
