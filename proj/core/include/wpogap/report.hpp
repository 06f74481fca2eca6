#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace wpogap {

/// Malformed or foreign input (unknown element, label out of range, parse failure).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A dilator broke one of its laws in a way that prevents computing a result,
/// e.g. a value that cannot be pulled back along its own support.
class DilatorLawError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An enumeration or oracle bound was exceeded.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Violation {
  std::string law;
  std::string witness;

  friend bool operator==(const Violation&, const Violation&) = default;
  friend auto operator<=>(const Violation&, const Violation&) = default;
};

/// Outcome of a law check. Validators never throw on bad input; they list
/// every witness they find.
struct Report {
  std::size_t checked = 0;
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  void add(std::string law, std::string witness) {
    violations.push_back({std::move(law), std::move(witness)});
  }
  void merge(const Report& other) {
    checked += other.checked;
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  }
};

}  // namespace wpogap
