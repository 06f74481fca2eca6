#include "wpogap/harness.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "wpogap/gap_oracle.hpp"
#include "wpogap/multiset.hpp"
#include "wpogap/terms.hpp"

namespace wpogap {

// ---- budgets and the catalog ----------------------------------------------------

Budget Budget::defaults() {
  Budget b;
  b.catalog = {"empty", "point", "chain2", "antichain2", "vee"};
  b.gap = {{1, 5, 3}, {2, 4, 3}, {3, 4, 3}};
  b.multiset_posets = {"empty", "point", "chain2", "antichain2", "chain3", "antichain3", "vee"};
  b.multiset_size = 3;
  b.term_height = 2;
  b.term_payload = 3;
  b.tower = {0, 1};
  b.fixpoint_nodes = 3;
  b.fixpoint_payload = 2;
  b.composite_catalog = {"empty", "chain2"};
  b.composite_height = 1;
  b.composite_payload = 2;
  b.pipeline_catalog = {"empty", "point", "chain2", "vee"};
  b.pipeline_nodes_empty = 5;
  b.pipeline_nodes = 4;
  b.pi_nodes_empty = 4;
  b.pi_nodes = 4;
  b.law_max_n = 3;
  b.law_size = 2;
  b.law_height = 1;
  b.goodpair_nodes = 5;
  return b;
}

Budget Budget::zero() { return Budget{}; }

Budget Budget::smoke() {
  Budget b = defaults();
  b.catalog = {"empty", "chain2"};
  b.gap = {{1, 4, 2}, {2, 3, 2}};
  b.multiset_posets = {"chain2", "antichain2"};
  b.multiset_size = 2;
  b.term_payload = 2;
  b.fixpoint_nodes = 2;
  b.composite_catalog = {"empty"};
  b.composite_payload = 1;
  b.pipeline_catalog = {"empty", "chain2"};
  b.pipeline_nodes_empty = 3;
  b.pipeline_nodes = 3;
  b.pi_nodes_empty = 3;
  b.pi_nodes = 2;
  b.law_max_n = 2;
  b.law_size = 1;
  b.goodpair_nodes = 3;
  return b;
}

std::optional<Budget> Budget::named(std::string_view name) {
  if (name == "default") return defaults();
  if (name == "zero") return zero();
  if (name == "smoke") return smoke();
  return std::nullopt;
}

PosetRef catalog_poset(std::string_view name) {
  static const std::map<std::string, PosetRef, std::less<>> catalog = [] {
    std::map<std::string, PosetRef, std::less<>> m;
    m["empty"] = share(Poset::empty());
    m["point"] = share(Poset::from_relation("point", {"x"}, [](ElemId, ElemId) { return true; }));
    m["chain2"] = share(Poset::chain({"x", "y"}));
    m["antichain2"] = share(Poset::antichain({"u", "v"}));
    m["chain3"] = share(Poset::chain({"x", "y", "z"}));
    m["antichain3"] = share(Poset::antichain({"u", "v", "w"}));
    m["vee"] = share(Poset::vee());
    return m;
  }();
  auto it = catalog.find(name);
  if (it == catalog.end()) throw InputError("unknown catalog poset '" + std::string(name) + "'");
  return it->second;
}

std::vector<std::string> catalog_names() {
  return {"empty", "point", "chain2", "antichain2", "chain3", "antichain3", "vee"};
}

std::vector<OrderMap> embeddings_between(const PosetRef& a, const PosetRef& b) {
  std::vector<OrderMap> out;
  std::vector<ElemId> assign(a->size());
  std::function<void(std::size_t)> extend = [&](std::size_t i) {
    if (i == a->size()) {
      out.push_back(OrderMap{a, b, assign, MapKind::Embedding});
      return;
    }
    for (ElemId y = 0; y < b->size(); ++y) {
      assign[i] = y;
      bool ok = true;
      for (ElemId j = 0; j <= i && ok; ++j) {
        ok = (a->leq(j, i) == b->leq(assign[j], y)) && (a->leq(i, j) == b->leq(y, assign[j])) &&
             (j == i || assign[j] != y);
      }
      if (ok) extend(i + 1);
    }
  };
  extend(0);
  return out;
}

std::optional<std::pair<std::size_t, std::size_t>> good_pair(const GapParams& p,
                                                             std::span<const Shape> seq) {
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (std::size_t j = i + 1; j < seq.size(); ++j) {
      if (gap_leq(p, seq[i], seq[j])) return std::pair{i, j};
    }
  }
  return std::nullopt;
}

// ---- plumbing -------------------------------------------------------------------

namespace {

constexpr std::size_t kMaxStoredViolations = 50;

class SuiteRun {
 public:
  SuiteRun(std::string name, int criterion) : start_(std::chrono::steady_clock::now()) {
    report_.suite = std::move(name);
    report_.criterion = criterion;
  }

  void check(bool ok, const std::function<std::string()>& what) {
    ++report_.checked;
    if (!ok) violation(what());
  }
  void count(std::size_t n) { report_.checked += n; }
  void violation(std::string what) {
    ++total_violations_;
    if (report_.violations.size() < kMaxStoredViolations) report_.violations.push_back(std::move(what));
  }
  void absorb(const Report& r, const std::string& context) {
    report_.checked += r.checked;
    for (const Violation& v : r.violations) violation(context + " " + v.law + ": " + v.witness);
  }
  void note(std::string text) { report_.notes.push_back(std::move(text)); }

  /// Runs `body`, turning a BudgetError into an incomplete report.
  void guarded(const std::function<void()>& body) {
    try {
      body();
    } catch (const BudgetError& e) {
      report_.incomplete = true;
      note(std::string("budget exhausted: ") + e.what());
    }
  }

  SuiteReport finish() {
    std::sort(report_.violations.begin(), report_.violations.end());
    if (total_violations_ > report_.violations.size()) {
      report_.violations.push_back("... and " +
                                   std::to_string(total_violations_ - report_.violations.size()) +
                                   " more");
    }
    report_.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                               start_)
                         .count();
    return std::move(report_);
  }

 private:
  SuiteReport report_;
  std::size_t total_violations_ = 0;
  std::chrono::steady_clock::time_point start_;
};

/// A budget that leaves a criterion without instances still reports it, as vacuous.
std::vector<SuiteReport> at_least_one(std::vector<SuiteReport> out, std::string name,
                                      int criterion) {
  if (out.empty()) out.push_back(SuiteRun(std::move(name) + " (no instances)", criterion).finish());
  return out;
}

std::string quote(const std::string& s) { return "'" + s + "'"; }

std::string poset_flag(const Poset& x) { return x.size() ? " --poset " + x.name() : ""; }

std::string compare_cmd(std::size_t n, const Poset& x, Shape s, Shape t) {
  return "compare --n " + std::to_string(n) + poset_flag(x) + " " +
         quote(format_gap_tree(x, s)) + " " + quote(format_gap_tree(x, t));
}

std::size_t gap_bound(const GapBound& g, const Poset& x) {
  return x.size() == 0 ? g.nodes_empty : g.nodes_nonempty;
}

/// Restricts a table to `values`, all of which must occur in it.
OrderTable restrict_table(const OrderTable& all, std::vector<Shape> values) {
  std::vector<std::size_t> at;
  for (Shape v : values) {
    auto i = all.index_of(v);
    if (!i) throw InputError("value outside the tabulated universe");
    at.push_back(*i);
  }
  OrderTable out(std::move(values));
  for (std::size_t i = 0; i < at.size(); ++i) {
    for (std::size_t j = 0; j < at.size(); ++j) {
      if (all.leq(at[i], at[j])) out.set(i, j);
    }
  }
  return out;
}

// Term universes over M are shared between suites; the vee universe alone
// takes seconds to tabulate.
struct TermUniverse {
  std::shared_ptr<TermSystem> system;
  std::vector<Shape> terms;
  OrderTable table;
};

std::shared_ptr<const TermUniverse> term_universe(const std::string& x_name, std::size_t height,
                                                  std::size_t payload) {
  static std::mutex mu;
  static std::map<std::tuple<std::string, std::size_t, std::size_t>,
                  std::shared_ptr<const TermUniverse>>
      cache;
  std::lock_guard lock(mu);
  auto key = std::tuple{x_name, height, payload};
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  auto u = std::make_shared<TermUniverse>();
  u->system = std::make_shared<TermSystem>(catalog_poset(x_name), multiset_dilator());
  u->terms = enumerate_terms(*u->system, height, payload);
  u->table = u->system->tabulate(u->terms);
  cache.emplace(key, u);
  return u;
}

/// The target (T W(X), leaf, kappa) answering bulk comparisons from `u` when it can.
KruskalTarget cached_target(const std::shared_ptr<const TermUniverse>& u) {
  KruskalTarget t = u->system->as_target();
  t.tabulate = [u](std::vector<Shape> values) {
    const bool inside = std::all_of(values.begin(), values.end(),
                                    [&](Shape v) { return u->table.index_of(v).has_value(); });
    return inside ? restrict_table(u->table, std::move(values)) : u->system->tabulate(std::move(values));
  };
  return t;
}

void check_height_monotone(SuiteRun& run, const OrderTable& table,
                           const std::function<std::size_t(Shape)>& height,
                           const std::function<std::string(Shape)>& describe) {
  const auto& v = table.values();
  std::vector<std::size_t> h;
  for (Shape s : v) h.push_back(height(s));
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      run.check(!table.leq(i, j) || h[i] <= h[j], [&] {
        return "height: " + describe(v[i]) + " <= " + describe(v[j]) + " but heights " +
               std::to_string(h[i]) + " > " + std::to_string(h[j]);
      });
    }
  }
}

}  // namespace

SuiteReport suite_partial_order(std::string name, const OrderTable& table,
                                const std::function<std::string(Shape)>& describe) {
  SuiteRun run(std::move(name), 3);
  run.absorb(check_partial_order(table, describe), "order");
  return run.finish();
}

// ---- 1: gap order against the embedding oracle ---------------------------------

std::vector<SuiteReport> suites_gap_oracle(const Budget& b) {
  std::vector<SuiteReport> out;
  const PosetRef empty = catalog_poset("empty");
  for (const GapBound& g : b.gap) {
    SuiteRun run("gap-oracle T" + std::to_string(g.n) + " <=" + std::to_string(g.nodes_empty) +
                     " nodes",
                 1);
    const GapParams p{g.n, empty};
    const auto trees = enumerate_gap_trees(p, g.nodes_empty);
    const OrderTable table = gap_tabulate(p, trees);
    std::vector<NodeTree> nodes;
    for (Shape t : trees) nodes.push_back(nodetree_of_gaptree(t));
    for (std::size_t i = 0; i < trees.size(); ++i) {
      for (std::size_t j = 0; j < trees.size(); ++j) {
        const auto witness = gap_embed(nodes[i], nodes[j]);
        run.check(witness.has_value() == table.leq(i, j), [&] {
          return std::string(table.leq(i, j) ? "gap_leq holds, no gap embedding: "
                                             : "gap embedding exists, gap_leq fails: ") +
                 compare_cmd(g.n, *empty, trees[i], trees[j]);
        });
        if (witness) {
          run.check(satisfies_gap_condition(nodes[i], nodes[j], *witness), [&] {
            return "witness fails the gap condition: " + format_tree_map(*witness);
          });
        }
        if (nodes[i].size() <= 4 && nodes[j].size() <= 4) {
          run.check(tree_embeddings(nodes[i], nodes[j]) ==
                        tree_embeddings(nodes[i], nodes[j], /*raw=*/true),
                    [&] {
                      return "pruned and raw embedding search differ: " +
                             compare_cmd(g.n, *empty, trees[i], trees[j]);
                    });
        }
      }
    }
    run.note(std::to_string(trees.size()) + " trees");
    out.push_back(run.finish());
  }
  return at_least_one(std::move(out), "gap-oracle", 1);
}

// ---- 2: multiset matching against injections ------------------------------------

std::vector<SuiteReport> suites_multiset_oracle(const Budget& b) {
  SuiteRun run("multiset-oracle size<=" + std::to_string(b.multiset_size), 2);
  run.guarded([&] {
    for (const std::string& name : b.multiset_posets) {
      const PosetRef p = catalog_poset(name);
      const auto all = ms_enumerate(*p, b.multiset_size);
      for (const auto& s : all) {
        for (const auto& t : all) {
          run.check(ms_leq(*p, s, t) == ms_leq_oracle(*p, s, t), [&] {
            return name + ": " + format_multiset(*p, s) + " vs " + format_multiset(*p, t);
          });
        }
      }
    }
  });
  std::vector<SuiteReport> out;
  out.push_back(run.finish());
  return at_least_one(std::move(out), "multiset-oracle", 2);
}

// ---- 3: partial orders and height monotonicity ----------------------------------

std::vector<SuiteReport> suites_partial_orders(const Budget& b) {
  std::vector<SuiteReport> out;
  for (const GapBound& g : b.gap) {
    for (const std::string& name : b.catalog) {
      const PosetRef x = catalog_poset(name);
      const std::size_t k = gap_bound(g, *x);
      SuiteRun run("order T" + std::to_string(g.n) + "(" + name + ") <=" + std::to_string(k) +
                       " nodes",
                   3);
      const GapParams p{g.n, x};
      const auto trees = enumerate_gap_trees(p, k);
      const OrderTable table = gap_tabulate(p, trees);
      auto describe = [&](Shape s) { return format_gap_tree(*x, s); };
      run.absorb(check_partial_order(table, describe), "order");
      check_height_monotone(run, table, gap_height, describe);
      run.note(std::to_string(trees.size()) + " trees");
      out.push_back(run.finish());
    }
  }
  for (const std::string& name : b.catalog) {
    SuiteRun run("order TM(" + name + ") height<=" + std::to_string(b.term_height) +
                     " payload<=" + std::to_string(b.term_payload),
                 3);
    const auto u = term_universe(name, b.term_height, b.term_payload);
    auto describe = [&](Shape s) { return u->system->format(s); };
    run.absorb(check_partial_order(u->table, describe), "order");
    check_height_monotone(run, u->table, term_height, describe);
    run.note(std::to_string(u->terms.size()) + " terms");
    out.push_back(run.finish());
  }
  for (const std::string& name : b.composite_catalog) {
    SuiteRun run("order T(M o T1)(" + name + ") height<=" + std::to_string(b.composite_height) +
                     " payload<=" + std::to_string(b.composite_payload),
                 3);
    TermSystem s(catalog_poset(name), compose(multiset_dilator(), gap_dilator(1)));
    const auto terms = enumerate_terms(s, b.composite_height, EnumBudget{b.composite_payload, 0});
    const OrderTable table = s.tabulate(terms);
    auto describe = [&](Shape t) { return s.format(t); };
    run.absorb(check_partial_order(table, describe), "order");
    check_height_monotone(run, table, term_height, describe);
    run.note(std::to_string(terms.size()) + " terms");
    out.push_back(run.finish());
  }
  for (const std::string& name : b.multiset_posets) {
    SuiteRun run("order M(" + name + ") size<=" + std::to_string(b.multiset_size), 3);
    const PosetRef p = catalog_poset(name);
    const auto values = multiset_dilator().enumerate(p, EnumBudget{b.multiset_size, 0});
    const OrderTable table = multiset_dilator().tabulate(p, values);
    run.absorb(check_partial_order(table, [&](Shape s) { return format_shape(*p, s); }), "order");
    out.push_back(run.finish());
  }
  return at_least_one(std::move(out), "order", 3);
}

// ---- 4: Kruskal fixed points ----------------------------------------------------

std::vector<SuiteReport> suites_fixed_points(const Budget& b) {
  std::vector<SuiteReport> out;
  const std::size_t z_height = b.term_height > 0 ? b.term_height - 1 : 0;
  for (const std::string& name : b.catalog) {
    SuiteRun run("fixpoint TM(" + name + ")", 4);
    const PosetRef x = catalog_poset(name);
    const auto u = term_universe(name, b.term_height, b.term_payload);
    const auto z = enumerate_terms(*u->system, z_height, b.term_payload);
    const KruskalTarget target = cached_target(u);
    const EnumBudget payload{b.term_payload, 0};
    run.absorb(check_fixed_point_axioms(multiset_dilator(), *x, target, z, payload), "axioms");
    run.absorb(check_height_witness(multiset_dilator(), target, z, payload, term_height),
               "initiality");
    run.note("Z: " + std::to_string(z.size()) + " terms");
    out.push_back(run.finish());
  }
  for (const std::string& name : b.catalog) {
    const PosetRef x = catalog_poset(name);
    const EnumBudget payload{b.fixpoint_payload, 0};
    {
      SuiteRun run("fixpoint T1-(" + name + ") for M", 4);
      const auto z = enumerate_gap_minus_trees(GapParams{1, x}, b.fixpoint_nodes);
      const KruskalTarget target = multiset_tree_target(x);
      run.absorb(check_fixed_point_axioms(multiset_dilator(), *x, target, z, payload), "axioms");
      run.absorb(check_height_witness(multiset_dilator(), target, z, payload, gap_height),
                 "initiality");
      out.push_back(run.finish());
    }
    for (std::size_t n : b.tower) {
      SuiteRun run("fixpoint T" + std::to_string(n + 1) + "-(" + name + ") for M o T" +
                       std::to_string(n),
                   4);
      const auto z = enumerate_gap_minus_trees(GapParams{n + 1, x}, b.fixpoint_nodes);
      const Dilator w = compose(multiset_dilator(), gap_dilator(n));
      const KruskalTarget target = gap_minus_target(n, x);
      run.absorb(check_fixed_point_axioms(w, *x, target, z, payload), "axioms");
      run.absorb(check_height_witness(w, target, z, payload, gap_height), "initiality");
      run.note("Z: " + std::to_string(z.size()) + " trees");
      out.push_back(run.finish());
    }
  }
  for (const std::string& name : b.composite_catalog) {
    SuiteRun run("fixpoint T(M o T1)(" + name + ")", 4);
    const PosetRef x = catalog_poset(name);
    const Dilator w = compose(multiset_dilator(), gap_dilator(1));
    TermSystem s(x, w);
    const EnumBudget payload{b.composite_payload, 0};
    const auto z = enumerate_terms(s, b.composite_height > 0 ? b.composite_height - 1 : 0, payload);
    run.absorb(check_fixed_point_axioms(w, *x, s.as_target(), z, payload), "axioms");
    run.absorb(check_height_witness(w, s.as_target(), z, payload, term_height), "initiality");
    out.push_back(run.finish());
  }
  return at_least_one(std::move(out), "fixpoint", 4);
}

// ---- 5: the reconstruction pipeline ---------------------------------------------

namespace {

// Vertices of pi applied to an inner T_n tree over z, given the fold sizes of z.
std::size_t inner_weight(Shape t, const std::vector<std::size_t>& z_weight) {
  if (t.is_elem()) return z_weight.at(t.id());
  std::size_t w = 1;
  for (Shape k : t.kids()) w += inner_weight(k, z_weight);
  return w;
}

}  // namespace

PipelineFragment pipeline_fragment(std::size_t n, const PosetRef& x, std::size_t k) {
  const Dilator inner = gap_dilator(n);
  const Dilator w = compose(multiset_dilator(), inner);
  PipelineFragment out{std::make_shared<TermSystem>(x, w), {}, {}, {}};
  const TermSystem& s = *out.system;
  const KruskalTarget target = gap_minus_target(n, x);

  // Generic terms whose fold has at most k vertices, built level by level.
  // Every child of such a term folds to a proper subtree, so nothing is lost
  // by building only on terms already kept.
  std::map<Shape, std::pair<Shape, std::size_t>> fold;  // term -> (tree, predicted size)
  for (ElemId e = 0; e < x->size() && k >= 1; ++e) {
    const Shape leaf = s.leaf(e);
    fold.emplace(leaf, std::pair{fold_initial(s, target, leaf), std::size_t{1}});
  }
  for (std::size_t round = 0; round < k; ++round) {
    std::vector<Shape> kept;
    for (const auto& [term, entry] : fold) kept.push_back(term);
    const Fragment z = s.fragment(kept);
    std::vector<std::size_t> z_weight;
    for (Shape t : z.values) z_weight.push_back(gap_nodes(fold.at(t).first));
    std::vector<Shape> inner_values;
    for (Shape t : inner.enumerate(z.poset, EnumBudget{k - 1, 0})) {
      if (inner_weight(t, z_weight) <= k - 1) inner_values.push_back(t);
    }
    bool grew = false;
    for (Shape sigma : compose_values(multiset_dilator(), inner, z.poset, inner_values,
                                      EnumBudget{k - 1, 0})) {
      const NormalPair pair = unpack_pair(sigma, kComposeTag);
      std::size_t weight = 1;
      const ElemMultiset bag = multiset_of_shape(pair.reduced);
      for (ElemId i : bag.entries()) weight += inner_weight(pair.carrier.at(i), z_weight);
      if (weight > k) continue;
      const Shape term = s.kappa(z, sigma);
      if (fold.contains(term)) continue;
      fold.emplace(term, std::pair{fold_initial(s, target, term), weight});
      grew = true;
    }
    if (!grew) break;
  }
  for (const auto& [term, entry] : fold) {
    out.terms.push_back(term);
    out.trees.push_back(entry.first);
    out.predicted_nodes.push_back(entry.second);
  }
  return out;
}

namespace {

SuiteReport pipeline_case(std::size_t n, const std::string& name, std::size_t k) {
  SuiteRun run("pipeline n=" + std::to_string(n) + " X=" + name + " <=" + std::to_string(k) +
                   " nodes",
               5);
  const PosetRef x = catalog_poset(name);
  const Dilator d = derivative(compose(multiset_dilator(), gap_dilator(n)));
  auto show = [&](Shape t) { return format_gap_tree(*x, t); };
  const PipelineFragment frag = pipeline_fragment(n, x, k);
  const TermSystem& s = *frag.system;
  const std::vector<Shape>& terms = frag.terms;
  const std::vector<Shape>& images = frag.trees;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    run.check(gap_nodes(images[i]) == frag.predicted_nodes[i], [&] {
      return "fold of " + s.format(terms[i]) + " has " + std::to_string(gap_nodes(images[i])) +
             " vertices, payload predicts " + std::to_string(frag.predicted_nodes[i]);
    });
  }
  const auto expected = enumerate_gap_minus_trees(GapParams{n + 1, x}, k);
  run.note(std::to_string(terms.size()) + " generic terms, " + std::to_string(expected.size()) +
           " trees in T" + std::to_string(n + 1) + "-(" + name + ")");

  std::map<Shape, Shape> preimage;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    auto [it, fresh] = preimage.emplace(images[i], terms[i]);
    run.check(fresh, [&] {
      return "fold is not injective: " + s.format(it->second) + " and " + s.format(terms[i]) +
             " both give " + show(images[i]);
    });
  }
  const std::set<Shape> expected_set(expected.begin(), expected.end());
  for (Shape t : images) {
    run.check(expected_set.contains(t), [&] { return "fold leaves the fragment: " + show(t); });
  }
  for (Shape t : expected) {
    run.check(preimage.contains(t), [&] { return "tree not reached by the fold: " + show(t); });
  }
  run.check(terms.size() == expected.size(), [&] {
    return "cardinalities differ: " + std::to_string(terms.size()) + " terms vs " +
           std::to_string(expected.size()) + " trees";
  });

  const OrderTable generic = d.tabulate(x, terms);
  const OrderTable concrete = gap_tabulate(GapParams{n + 1, x}, images);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = 0; j < terms.size(); ++j) {
      run.check(generic.leq(i, j) == concrete.leq(i, j), [&] {
        return std::string(generic.leq(i, j) ? "order not preserved: " : "order not reflected: ") +
               s.format(terms[i]) + " vs " + s.format(terms[j]) + " fold to " +
               compare_cmd(n + 1, *x, images[i], images[j]);
      });
    }
  }
  return run.finish();
}

}  // namespace

std::vector<SuiteReport> suites_pipeline(const Budget& b) {
  std::vector<SuiteReport> out;
  for (std::size_t n : b.tower) {
    for (const std::string& name : b.pipeline_catalog) {
      const std::size_t k =
          catalog_poset(name)->size() == 0 ? b.pipeline_nodes_empty : b.pipeline_nodes;
      out.push_back(pipeline_case(n, name, k));
    }
  }
  return at_least_one(std::move(out), "pipeline", 5);
}

// ---- 6: pi --------------------------------------------------------------------

namespace {

struct Composites {
  std::vector<Shape> pairs;  // compose(T_n, T_{n+1}^-) values
  std::vector<Shape> boxed;
};

Composites composites_upto(std::size_t n, const PosetRef& x, std::size_t k) {
  const Dilator comp = compose(gap_dilator(n), gap_minus_dilator(n + 1));
  Composites out;
  for (Shape pair : comp.enumerate(x, EnumBudget{k, 0})) {
    const Shape boxed = boxed_of_pair(pair);
    if (gap_nodes(boxed) > k) continue;
    out.pairs.push_back(pair);
    out.boxed.push_back(boxed);
  }
  return out;
}

std::size_t pi_bound(const Budget& b, const Poset& x) {
  return x.size() == 0 ? b.pi_nodes_empty : b.pi_nodes;
}

}  // namespace

std::vector<SuiteReport> suites_pi(const Budget& b) {
  std::vector<SuiteReport> out;
  for (std::size_t n : b.tower) {
    for (const std::string& name : b.catalog) {
      const PosetRef x = catalog_poset(name);
      const std::size_t k = pi_bound(b, *x);
      SuiteRun run("pi n=" + std::to_string(n) + " X=" + name + " <=" + std::to_string(k) +
                       " nodes",
                   6);
      const Dilator comp = compose(gap_dilator(n), gap_minus_dilator(n + 1));
      const GapParams target{n + 1, x};
      auto show = [&](Shape t) { return format_gap_tree(*x, t); };
      const Composites c = composites_upto(n, x, k);
      std::vector<Shape> images;
      for (std::size_t i = 0; i < c.boxed.size(); ++i) {
        images.push_back(pi(n, *x, c.boxed[i]));
        run.check(pair_of_boxed(c.boxed[i]) == c.pairs[i],
                  [&] { return "boxed form does not round-trip: " + show(c.boxed[i]); });
        run.check(pi_inv(n, *x, images.back()) == c.boxed[i],
                  [&] { return "pi_inv(pi(s)) != s for " + show(c.boxed[i]); });
      }
      const auto expected = enumerate_gap_trees(target, k);
      const std::set<Shape> image_set(images.begin(), images.end());
      run.check(image_set.size() == images.size(), [] { return std::string("pi is not injective"); });
      run.check(image_set == std::set<Shape>(expected.begin(), expected.end()), [&] {
        return "pi image differs from T" + std::to_string(n + 1) + "(" + name + "): " +
               std::to_string(image_set.size()) + " vs " + std::to_string(expected.size());
      });
      for (Shape t : expected) {
        run.check(pi(n, *x, pi_inv(n, *x, t)) == t, [&] { return "pi(pi_inv(t)) != t for " + show(t); });
      }
      run.note(std::to_string(c.pairs.size()) + " composites, " + std::to_string(expected.size()) +
               " trees");

      const OrderTable generic = comp.tabulate(x, c.pairs);
      const OrderTable concrete = gap_tabulate(target, images);
      for (std::size_t i = 0; i < images.size(); ++i) {
        for (std::size_t j = 0; j < images.size(); ++j) {
          run.check(generic.leq(i, j) == concrete.leq(i, j), [&] {
            return "order mismatch: " + show(c.boxed[i]) + " vs " + show(c.boxed[j]) +
                   " (composite " + (generic.leq(i, j) ? "<=" : "not <=") + ")";
          });
        }
      }

      // naturality along every embedding of a catalog poset into X
      for (const std::string& source_name : b.catalog) {
        const PosetRef a = catalog_poset(source_name);
        if (a->size() > x->size()) continue;
        const Composites over_a = composites_upto(n, a, k);
        for (const OrderMap& f : embeddings_between(a, x)) {
          for (std::size_t i = 0; i < over_a.pairs.size(); ++i) {
            const Shape lhs = pi(n, *x, boxed_of_pair(comp.map(f, over_a.pairs[i])));
            const Shape rhs = gap_map(f, pi(n, *a, over_a.boxed[i]));
            run.check(lhs == rhs, [&] {
              return "naturality fails on " + format_gap_tree(*a, over_a.boxed[i]) + " along " +
                     source_name + " -> " + name;
            });
          }
        }
      }
      out.push_back(run.finish());
    }
  }
  return at_least_one(std::move(out), "pi", 6);
}

// ---- 7: dilator laws ----------------------------------------------------------

std::vector<SuiteReport> suites_dilator_laws(const Budget& b) {
  std::vector<Dilator> dilators;
  if (b.law_size > 0) {
    dilators = {identity_dilator(), multiset_dilator()};
    for (std::size_t n = 0; n <= b.law_max_n; ++n) dilators.push_back(gap_dilator(n));
    for (std::size_t n = 1; n <= b.law_max_n; ++n) dilators.push_back(gap_minus_dilator(n));
    dilators.push_back(compose(multiset_dilator(), multiset_dilator()));
    dilators.push_back(compose(multiset_dilator(), gap_dilator(1)));
    dilators.push_back(compose(gap_dilator(1), gap_minus_dilator(2)));
    dilators.push_back(compose(identity_dilator(), multiset_dilator()));
    dilators.push_back(derivative(multiset_dilator()));
  }
  std::vector<std::pair<std::string, OrderMap>> maps;
  for (const std::string& a : b.catalog) {
    for (const std::string& c : b.catalog) {
      for (OrderMap& f : embeddings_between(catalog_poset(a), catalog_poset(c))) {
        maps.emplace_back(a + "->" + c, std::move(f));
      }
    }
  }
  const EnumBudget budget{b.law_size, b.law_height};
  std::vector<SuiteReport> out;
  for (const Dilator& w : dilators) {
    SuiteRun run("laws " + w.name(), 7);
    for (const std::string& name : b.catalog) {
      const PosetRef x = catalog_poset(name);
      run.absorb(check_normality(w, x, budget), name);
      run.absorb(check_normal_forms(w, x, budget), name);
    }
    for (const auto& [label, f] : maps) {
      run.absorb(check_support_condition(w, f, budget), label);
      run.absorb(check_naturality_supp(w, f, budget), label);
      run.absorb(check_map_order(w, f, budget), label);
      for (const auto& [label2, g] : maps) {
        if (g.source != f.target) continue;
        run.absorb(check_functoriality(w, f, g, budget), label + " then " + label2);
      }
    }
    out.push_back(run.finish());
  }
  return at_least_one(std::move(out), "laws", 7);
}

// ---- 8: (star), zero subtrees and Kruskal's order --------------------------------

std::vector<SuiteReport> suites_star_zero(const Budget& b) {
  std::vector<SuiteReport> out;
  const bool have_empty = std::find(b.catalog.begin(), b.catalog.end(), "empty") != b.catalog.end();
  if (have_empty) {
    const auto u = term_universe("empty", b.term_height, b.term_payload);
    const TermSystem& s = *u->system;
    const auto& terms = u->terms;
    auto children = [&](Shape t) {
      std::vector<std::size_t> out;  // with multiplicity
      const NormalPair parts = term_parts(t);
      const ElemMultiset bag = multiset_of_shape(parts.reduced);
      for (ElemId i : bag.entries()) {
        out.push_back(*u->table.index_of(parts.carrier.at(i)));
      }
      return out;
    };
    {
      SuiteRun run("star TM(empty)", 8);
      std::vector<std::vector<std::size_t>> kids;
      for (Shape t : terms) kids.push_back(children(t));
      for (std::size_t i = 0; i < terms.size(); ++i) {
        for (std::size_t j = 0; j < terms.size(); ++j) {
          const bool payload = multiset_leq(std::span<const std::size_t>(kids[i]),
                                            std::span<const std::size_t>(kids[j]),
                                            [&](std::size_t p, std::size_t q) { return u->table.leq(p, q); });
          const bool below_child = std::any_of(kids[j].begin(), kids[j].end(),
                                               [&](std::size_t c) { return u->table.leq(i, c); });
          run.check(u->table.leq(i, j) == (payload || below_child), [&] {
            return "(star) fails for " + s.format(terms[i]) + " vs " + s.format(terms[j]);
          });
        }
      }
      out.push_back(run.finish());
    }
    {
      SuiteRun run("kruskal-oracle TM(empty)", 8);
      const PosetRef empty = catalog_poset("empty");
      std::vector<Shape> trees;
      std::vector<NodeTree> nodes;
      std::function<std::size_t(Shape)> term_nodes = [&](Shape t) {
        std::size_t c = 1;
        const NormalPair parts = term_parts(t);
        const ElemMultiset bag = multiset_of_shape(parts.reduced);
        for (ElemId i : bag.entries()) c += term_nodes(parts.carrier.at(i));
        return c;
      };
      for (Shape t : terms) {
        trees.push_back(gaptree_of_term(t));
        nodes.push_back(nodetree_of_gaptree(trees.back()));
        run.check(nodes.back().size() == term_nodes(t), [&] {
          return "translation changes the node count of " + s.format(t);
        });
      }
      run.check(std::set<Shape>(trees.begin(), trees.end()).size() == trees.size(),
                [] { return std::string("translation to trees is not injective"); });
      for (std::size_t i = 0; i < terms.size(); ++i) {
        for (std::size_t j = 0; j < terms.size(); ++j) {
          const bool embeds = !tree_embeddings(nodes[i], nodes[j]).empty();
          run.check(u->table.leq(i, j) == embeds, [&] {
            return "term order vs plain embedding: " + s.format(terms[i]) + " vs " + s.format(terms[j]);
          });
          run.check(u->table.leq(i, j) == gap_leq(GapParams{1, empty}, trees[i], trees[j]), [&] {
            return "term order vs T1 order: " + compare_cmd(1, *empty, trees[i], trees[j]);
          });
        }
      }
      out.push_back(run.finish());
    }
  }
  for (std::size_t n : b.tower) {
    for (const std::string& name : b.catalog) {
      const PosetRef x = catalog_poset(name);
      const std::size_t k = pi_bound(b, *x);
      SuiteRun run("zero-subtrees n=" + std::to_string(n) + " X=" + name, 8);
      const auto small = enumerate_gap_minus_trees(GapParams{n + 1, x}, k);
      const Composites c = composites_upto(n, x, k);
      std::vector<Shape> universe(small.begin(), small.end());
      std::vector<Shape> images;
      std::vector<std::vector<Shape>> boxes(c.boxed.size());
      std::function<void(Shape, std::vector<Shape>&)> collect = [&](Shape t, std::vector<Shape>& into) {
        if (is_box(t)) {
          into.push_back(t.kids().front());
          return;
        }
        for (Shape kid : t.kids()) collect(kid, into);
      };
      for (std::size_t i = 0; i < c.boxed.size(); ++i) {
        images.push_back(pi(n, *x, c.boxed[i]));
        collect(c.boxed[i], boxes[i]);
        universe.push_back(images.back());
        universe.insert(universe.end(), boxes[i].begin(), boxes[i].end());
      }
      canonicalize(universe);
      const OrderTable table = gap_tabulate(GapParams{n + 1, x}, universe);
      auto at = [&](Shape v) { return *table.index_of(v); };
      for (Shape sm : small) {
        const std::size_t si = at(sm);
        for (std::size_t i = 0; i < images.size(); ++i) {
          const bool lhs = table.leq(si, at(images[i]));
          const bool rhs = std::any_of(boxes[i].begin(), boxes[i].end(),
                                       [&](Shape u) { return table.leq(si, at(u)); });
          run.check(lhs == rhs, [&] {
            return "zero-subtree lemma fails: " + format_gap_tree(*x, sm) + " vs " +
                   format_gap_tree(*x, c.boxed[i]);
          });
        }
      }
      out.push_back(run.finish());
    }
  }
  return at_least_one(std::move(out), "star/zero-subtrees", 8);
}

// ---- 9: finite-sequence semantics of good_pair ------------------------------------

std::vector<SuiteReport> suites_good_pair(const Budget& b) {
  SuiteRun run("good-pair", 9);
  if (b.goodpair_nodes > 0) {
    const PosetRef empty = catalog_poset("empty");
    const GapParams p{1, empty};
    const auto trees = enumerate_gap_trees(p, b.goodpair_nodes);
    const OrderTable table = gap_tabulate(p, trees);
    // Sequences: the enumeration, its reverse, and every pair and triple prefix
    // of the reverse. Expected answers come from the full pair table.
    std::vector<std::vector<std::size_t>> sequences;
    std::vector<std::size_t> forward(trees.size());
    for (std::size_t i = 0; i < trees.size(); ++i) forward[i] = i;
    sequences.push_back(forward);
    sequences.emplace_back(forward.rbegin(), forward.rend());
    for (std::size_t i = 0; i < trees.size(); ++i) {
      for (std::size_t j = 0; j < trees.size(); ++j) sequences.push_back({i, j});
    }
    for (const auto& idx : sequences) {
      std::vector<Shape> seq;
      for (std::size_t i : idx) seq.push_back(trees[i]);
      std::optional<std::pair<std::size_t, std::size_t>> expected;
      for (std::size_t i = 0; i < idx.size() && !expected; ++i) {
        for (std::size_t j = i + 1; j < idx.size() && !expected; ++j) {
          if (table.leq(idx[i], idx[j])) expected = std::pair{i, j};
        }
      }
      run.check(good_pair(p, seq) == expected, [&] {
        std::string text = "good_pair disagrees with the pair table on";
        for (Shape t : seq) text += " " + quote(format_gap_tree(*empty, t));
        return text;
      });
    }
    run.note("WPO preservation itself is not decidable; checked here is only the finite-sequence semantics");
  }
  std::vector<SuiteReport> out;
  out.push_back(run.finish());
  return at_least_one(std::move(out), "good-pair", 9);
}

std::vector<SuiteReport> suite_all(const Budget& b) {
  std::vector<SuiteReport> all;
  for (auto* suites : {suites_gap_oracle, suites_multiset_oracle, suites_partial_orders,
                       suites_fixed_points, suites_pipeline, suites_pi, suites_dilator_laws,
                       suites_star_zero, suites_good_pair}) {
    for (SuiteReport& r : suites(b)) all.push_back(std::move(r));
  }
  return all;
}

}  // namespace wpogap
