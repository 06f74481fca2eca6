#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wpogap/gap_trees.hpp"
#include "wpogap/terms.hpp"

namespace wpogap {

struct SuiteReport {
  std::string suite;
  int criterion = 0;  // acceptance criterion the suite contributes to
  std::size_t checked = 0;
  std::vector<std::string> violations;  // sorted before the report is returned
  double millis = 0;
  bool incomplete = false;  // a BudgetError cut the suite short
  std::vector<std::string> notes;  // counts and other cross-reported facts

  bool ok() const { return violations.empty() && !incomplete; }
  bool vacuous() const { return checked == 0; }
};

struct GapBound {
  std::size_t n = 0;
  std::size_t nodes_empty = 0;     // vertex bound over X = empty
  std::size_t nodes_nonempty = 0;  // vertex bound over the other posets
};

/// Every bound the suites read. `defaults()` is the acceptance budget,
/// `zero()` runs every suite on nothing.
struct Budget {
  std::vector<std::string> catalog;  // names for catalog_poset
  std::vector<GapBound> gap;
  std::vector<std::string> multiset_posets;
  std::size_t multiset_size = 0;
  std::size_t term_height = 0;
  std::size_t term_payload = 0;
  std::vector<std::size_t> tower;  // the n of M o T_n, T_{n+1}^- and pi
  std::size_t fixpoint_nodes = 0;  // Z = T_{n+1}^-(X) up to this many vertices
  std::size_t fixpoint_payload = 0;
  std::vector<std::string> composite_catalog;  // X for the derivative of M o T_1
  std::size_t composite_height = 0;
  std::size_t composite_payload = 0;
  std::vector<std::string> pipeline_catalog;
  std::size_t pipeline_nodes_empty = 0;
  std::size_t pipeline_nodes = 0;
  std::size_t pi_nodes_empty = 0;
  std::size_t pi_nodes = 0;
  std::size_t law_max_n = 0;
  std::size_t law_size = 0;
  std::size_t law_height = 0;
  std::size_t goodpair_nodes = 0;

  static Budget defaults();
  static Budget zero();
  /// Small bounds that still touch every clause; for quick runs.
  static Budget smoke();
  /// "default", "zero" or "smoke"; nullopt otherwise.
  static std::optional<Budget> named(std::string_view name);
};

/// empty, point, chain2, antichain2, chain3, antichain3, vee.
PosetRef catalog_poset(std::string_view name);
std::vector<std::string> catalog_names();

/// Every embedding between two posets, by brute force over assignments.
std::vector<OrderMap> embeddings_between(const PosetRef& a, const PosetRef& b);

/// The lexicographically least (i, j) with i < j and seq[i] <= seq[j].
std::optional<std::pair<std::size_t, std::size_t>> good_pair(const GapParams& p,
                                                             std::span<const Shape> seq);

/// Generic terms of the derivative of M o T_n over x whose fold onto
/// T_{n+1}^-(x) has at most k vertices, with their folds. predicted_nodes is
/// the vertex count read off the payload before folding.
struct PipelineFragment {
  std::shared_ptr<TermSystem> system;
  std::vector<Shape> terms;
  std::vector<Shape> trees;
  std::vector<std::size_t> predicted_nodes;
};
PipelineFragment pipeline_fragment(std::size_t n, const PosetRef& x, std::size_t k);

SuiteReport suite_partial_order(std::string name, const OrderTable& table,
                                const std::function<std::string(Shape)>& describe);

// One function per acceptance criterion; each returns one or more suites.
std::vector<SuiteReport> suites_gap_oracle(const Budget& b);        // 1
std::vector<SuiteReport> suites_multiset_oracle(const Budget& b);   // 2
std::vector<SuiteReport> suites_partial_orders(const Budget& b);    // 3
std::vector<SuiteReport> suites_fixed_points(const Budget& b);      // 4
std::vector<SuiteReport> suites_pipeline(const Budget& b);          // 5
std::vector<SuiteReport> suites_pi(const Budget& b);                // 6
std::vector<SuiteReport> suites_dilator_laws(const Budget& b);      // 7
std::vector<SuiteReport> suites_star_zero(const Budget& b);         // 8
std::vector<SuiteReport> suites_good_pair(const Budget& b);         // 9

std::vector<SuiteReport> suite_all(const Budget& b);

}  // namespace wpogap
