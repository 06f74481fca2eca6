#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wpogap/report.hpp"
#include "wpogap/shape.hpp"

namespace wpogap {

/// A relation on a finite list of values, tabulated as bit rows.
/// Index i refers to values[i]; values keep the caller's order.
class OrderTable {
 public:
  OrderTable() = default;
  explicit OrderTable(std::vector<Shape> values);

  std::size_t size() const { return values_.size(); }
  const std::vector<Shape>& values() const { return values_; }
  std::optional<std::size_t> index_of(Shape v) const;

  bool leq(std::size_t i, std::size_t j) const {
    return (rows_[i * words_ + (j >> 6)] >> (j & 63)) & 1U;
  }
  void set(std::size_t i, std::size_t j) { rows_[i * words_ + (j >> 6)] |= std::uint64_t{1} << (j & 63); }
  std::span<const std::uint64_t> row(std::size_t i) const {
    return std::span<const std::uint64_t>(rows_).subspan(i * words_, words_);
  }
  std::size_t words() const { return words_; }

 private:
  std::vector<Shape> values_;
  std::vector<std::pair<Shape, std::size_t>> sorted_;  // for index_of
  std::size_t words_ = 0;
  std::vector<std::uint64_t> rows_;
};

/// Evaluates `leq` on every ordered pair.
OrderTable tabulate(std::vector<Shape> values, const std::function<bool(Shape, Shape)>& leq);

/// Reflexivity, antisymmetry and transitivity of the tabulated relation.
/// At most `max_witnesses` violations are recorded per law.
Report check_partial_order(const OrderTable& table,
                           const std::function<std::string(Shape)>& describe,
                           std::size_t max_witnesses = 20);

}  // namespace wpogap
