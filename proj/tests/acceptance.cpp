// One PASS/FAIL line per acceptance criterion at the default budget.

#include <cstdio>
#include <string>
#include <vector>

#include "wpogap/harness.hpp"

using namespace wpogap;

namespace {

struct Criterion {
  int id;
  const char* title;
  std::vector<SuiteReport> (*suites)(const Budget&);
  double limit_seconds;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "gap order agrees with the embedding oracle", suites_gap_oracle, 180},
      {2, "multiset matching agrees with the injection oracle", suites_multiset_oracle, 5},
      {3, "partial-order axioms and height monotonicity", suites_partial_orders, 60},
      {4, "Kruskal fixed-point axioms", suites_fixed_points, 60},
      {5, "reconstruction pipeline", suites_pipeline, 120},
      {6, "pi is a natural order isomorphism", suites_pi, 60},
      {7, "dilator laws", suites_dilator_laws, 60},
      {8, "(star) and zero subtrees", suites_star_zero, 30},
      {9, "good_pair finite-sequence semantics", suites_good_pair, 60},
  };
  const Budget budget = Budget::defaults();
  bool all_pass = true;
  bool earlier_pass = true;
  for (const Criterion& c : criteria) {
    const auto reports = c.suites(budget);
    std::size_t checked = 0;
    std::size_t violations = 0;
    double millis = 0;
    bool ok = true;
    std::string first;
    for (const SuiteReport& r : reports) {
      checked += r.checked;
      violations += r.violations.size();
      millis += r.millis;
      if (!r.ok() || r.vacuous()) {
        ok = false;
        if (first.empty()) {
          first = r.suite + (r.vacuous() ? ": no instances"
                             : r.incomplete ? ": incomplete"
                                            : ": " + r.violations.front());
        }
      }
    }
    const bool in_time = millis <= c.limit_seconds * 1000;
    if (!in_time && first.empty()) first = "over the time limit";
    // The last criterion stands in for WPO preservation, which is not decidable
    // at any finite size; it only passes on top of the finite evidence of 1-8.
    if (c.id == 9 && !earlier_pass && first.empty()) first = "an earlier criterion failed";
    const bool pass = ok && in_time && (c.id != 9 || earlier_pass);
    std::printf("%s %d  %s  (%zu suites, %zu checks, %zu violations, %.1fs)%s%s\n",
                pass ? "PASS" : "FAIL", c.id, c.title, reports.size(), checked, violations,
                millis / 1000, first.empty() ? "" : "  ", first.c_str());
    if (c.id == 9) {
      std::printf("       note: WPO preservation itself is not checked; substituted by 1-8 and good_pair\n");
    }
    std::fflush(stdout);
    all_pass = all_pass && pass;
    if (c.id < 9) earlier_pass = earlier_pass && pass;
  }
  return all_pass ? 0 : 1;
}
