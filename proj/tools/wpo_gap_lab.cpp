// wpo-gap-lab: compare, oracle, enum, fold, selftest, goodpair.
// Exit codes: 0 pass/true, 1 fail/false, 2 usage or input error, 3 budget-incomplete.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "wpogap/gap_oracle.hpp"
#include "wpogap/harness.hpp"
#include "wpogap/terms.hpp"

using namespace wpogap;
using json = nlohmann::json;

namespace {

constexpr int kTrue = 0;
constexpr int kFalse = 1;
constexpr int kUsage = 2;
constexpr int kIncomplete = 3;

struct Common {
  std::size_t n = 1;
  std::string poset = "empty";
  std::string format = "text";

  bool as_json() const { return format == "json"; }
};

void add_common(CLI::App* cmd, Common& c, bool with_n = true) {
  if (with_n) cmd->add_option("--n", c.n, "number of labels");
  cmd->add_option("--poset", c.poset, "poset file, or a catalog name (empty, point, chain2, ...)");
  cmd->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));
}

PosetRef load_poset(const std::string& arg) {
  if (std::filesystem::is_regular_file(arg)) return share(load_poset_file(arg));
  return catalog_poset(arg);
}

bool is_term_literal(const std::string& s) { return s.starts_with("leaf:") || s.starts_with("node["); }

// ---- dilator names --------------------------------------------------------

class DilatorParser {
 public:
  explicit DilatorParser(std::string_view text) : text_(text) {}

  Dilator parse() {
    Dilator d = expr();
    if (pos_ != text_.size()) fail("trailing input");
    return d;
  }

 private:
  Dilator expr() {
    if (eat("id")) return identity_dilator();
    if (eat("compose(")) {
      Dilator outer = expr();
      expect(',');
      Dilator inner = expr();
      expect(')');
      return compose(std::move(outer), std::move(inner));
    }
    if (eat("deriv(")) {
      Dilator w = expr();
      expect(')');
      return derivative(std::move(w));
    }
    if (eat("Tminus(")) {
      const std::size_t m = number();
      expect(')');
      return gap_minus_dilator(m);
    }
    if (eat("T(")) {
      const std::size_t n = number();
      expect(')');
      return gap_dilator(n);
    }
    if (eat("M")) return multiset_dilator();
    fail("expected id, M, T(n), Tminus(n), compose(A,B) or deriv(A)");
  }

  bool eat(std::string_view word) {
    if (text_.substr(pos_).starts_with(word)) {
      pos_ += word.size();
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  std::size_t number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::stoul(std::string(text_.substr(start, pos_ - start)));
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("dilator name, offset " + std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// ---- budgets --------------------------------------------------------------

Budget load_budget(const std::string& arg) {
  if (auto b = Budget::named(arg)) return *b;
  std::ifstream in(arg);
  if (!in) throw InputError("budget '" + arg + "' is neither default, zero, smoke nor a readable file");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw InputError("budget file: " + std::string(e.what()));
  }
  // A file overrides the keys it names on top of `base` (default unless given).
  const std::string base = j.value("base", std::string("default"));
  auto b = Budget::named(base);
  if (!b) throw InputError("budget file: unknown base '" + base + "'");
  try {
    auto get = [&](const char* key, auto& field) {
      if (j.contains(key)) j.at(key).get_to(field);
    };
    get("catalog", b->catalog);
    get("multiset_posets", b->multiset_posets);
    get("multiset_size", b->multiset_size);
    get("term_height", b->term_height);
    get("term_payload", b->term_payload);
    get("tower", b->tower);
    get("fixpoint_nodes", b->fixpoint_nodes);
    get("fixpoint_payload", b->fixpoint_payload);
    get("composite_catalog", b->composite_catalog);
    get("composite_height", b->composite_height);
    get("composite_payload", b->composite_payload);
    get("pipeline_catalog", b->pipeline_catalog);
    get("pipeline_nodes_empty", b->pipeline_nodes_empty);
    get("pipeline_nodes", b->pipeline_nodes);
    get("pi_nodes_empty", b->pi_nodes_empty);
    get("pi_nodes", b->pi_nodes);
    get("law_max_n", b->law_max_n);
    get("law_size", b->law_size);
    get("law_height", b->law_height);
    get("goodpair_nodes", b->goodpair_nodes);
    if (j.contains("gap")) {
      b->gap.clear();
      for (const json& g : j.at("gap")) {
        b->gap.push_back({g.at("n").get<std::size_t>(), g.at("nodes_empty").get<std::size_t>(),
                          g.at("nodes_nonempty").get<std::size_t>()});
      }
    }
  } catch (const json::exception& e) {
    throw InputError("budget file: " + std::string(e.what()));
  }
  std::vector<std::string> names = b->catalog;
  names.insert(names.end(), b->multiset_posets.begin(), b->multiset_posets.end());
  names.insert(names.end(), b->composite_catalog.begin(), b->composite_catalog.end());
  names.insert(names.end(), b->pipeline_catalog.begin(), b->pipeline_catalog.end());
  for (const std::string& name : names) catalog_poset(name);  // throws on unknown names
  return *b;
}

// ---- commands -------------------------------------------------------------

const char* relation_name(bool le, bool ge) {
  if (le && ge) return "EQ";
  if (le) return "LE";
  if (ge) return "GE";
  return "INCOMP";
}

int cmd_compare(const Common& c, const std::string& a, const std::string& b) {
  const PosetRef x = load_poset(c.poset);
  bool le = false;
  bool ge = false;
  if (is_term_literal(a) || is_term_literal(b)) {
    TermSystem s(x, multiset_dilator());
    const Shape sa = s.parse(a);
    const Shape sb = s.parse(b);
    le = s.leq(sa, sb);
    ge = s.leq(sb, sa);
  } else {
    const GapParams p{c.n, x};
    const Shape sa = parse_gap_tree(p, a);
    const Shape sb = parse_gap_tree(p, b);
    le = gap_leq(p, sa, sb);
    ge = gap_leq(p, sb, sa);
  }
  if (c.as_json()) {
    std::cout << json{{"relation", relation_name(le, ge)}, {"le", le}, {"ge", ge}}.dump() << "\n";
  } else {
    std::cout << relation_name(le, ge) << "\n";
  }
  return le ? kTrue : kFalse;
}

int cmd_oracle(const Common& c, const std::string& a, const std::string& b) {
  const GapParams p{c.n, load_poset(c.poset)};
  const Shape sa = parse_gap_tree(p, a);
  const Shape sb = parse_gap_tree(p, b);
  const auto witness = gap_embed(nodetree_of_gaptree(sa), nodetree_of_gaptree(sb));
  const bool recursive = gap_leq(p, sa, sb);
  if (c.as_json()) {
    json out{{"witness", witness ? json(format_tree_map(*witness)) : json(nullptr)},
             {"gap_leq", recursive}};
    std::cout << out.dump() << "\n";
  } else {
    std::cout << (witness ? format_tree_map(*witness) : std::string("none")) << "\n";
    if (witness.has_value() != recursive) {
      std::cerr << "warning: gap_leq says " << (recursive ? "true" : "false") << "\n";
    }
  }
  return witness ? kTrue : kFalse;
}

struct EnumOptions {
  std::size_t max_nodes = 3;
  bool minus = false;
  std::string dilator;
  std::size_t size = 2;
  std::size_t height = 1;
};

int cmd_enum(const Common& c, const EnumOptions& e) {
  const PosetRef x = load_poset(c.poset);
  std::vector<std::string> lines;
  if (!e.dilator.empty()) {
    const Dilator d = DilatorParser(e.dilator).parse();
    for (Shape v : d.enumerate(x, EnumBudget{e.size, e.height})) lines.push_back(d.format(*x, v));
  } else {
    const GapParams p{c.n, x};
    const auto trees = e.minus ? enumerate_gap_minus_trees(p, e.max_nodes)
                               : enumerate_gap_trees(p, e.max_nodes);
    for (Shape t : trees) lines.push_back(format_gap_tree(*x, t));
  }
  if (c.as_json()) {
    std::cout << json(lines).dump() << "\n";
  } else {
    for (const std::string& l : lines) std::cout << l << "\n";
    std::cerr << lines.size() << " values\n";
  }
  return kTrue;
}

int cmd_fold(const Common& c, bool n_given, std::size_t max_nodes, const std::optional<std::string>& term) {
  const PosetRef x = load_poset(c.poset);
  std::vector<std::pair<std::string, std::string>> rows;
  if (term) {
    if (n_given) throw InputError("fold takes either a term over M or --n, not both");
    TermSystem s(x, multiset_dilator());
    const Shape t = s.parse(*term);
    rows.emplace_back(s.format(t), format_gap_tree(*x, fold_initial(s, multiset_tree_target(x), t)));
  } else {
    const PipelineFragment frag = pipeline_fragment(c.n, x, max_nodes);
    for (std::size_t i = 0; i < frag.terms.size(); ++i) {
      rows.emplace_back(frag.system->format(frag.terms[i]), format_gap_tree(*x, frag.trees[i]));
    }
  }
  if (c.as_json()) {
    json out = json::array();
    for (const auto& [t, tree] : rows) out.push_back({{"term", t}, {"tree", tree}});
    std::cout << out.dump() << "\n";
  } else if (term) {
    std::cout << rows.front().second << "\n";
  } else {
    for (const auto& [t, tree] : rows) std::cout << t << "  ->  " << tree << "\n";
  }
  return kTrue;
}

int cmd_goodpair(const Common& c, const std::vector<std::string>& trees) {
  const GapParams p{c.n, load_poset(c.poset)};
  std::vector<Shape> seq;
  for (const std::string& t : trees) seq.push_back(parse_gap_tree(p, t));
  const auto pair = good_pair(p, seq);
  if (c.as_json()) {
    std::cout << (pair ? json{pair->first, pair->second} : json(nullptr)).dump() << "\n";
  } else if (pair) {
    std::cout << pair->first << " " << pair->second << "\n";
  } else {
    std::cout << "none\n";
  }
  return pair ? kTrue : kFalse;
}

int cmd_selftest(const Common& c, const std::string& budget_name, int criterion) {
  const Budget budget = load_budget(budget_name);
  using Suites = std::vector<SuiteReport> (*)(const Budget&);
  const Suites all[] = {suites_gap_oracle,   suites_multiset_oracle, suites_partial_orders,
                        suites_fixed_points, suites_pipeline,        suites_pi,
                        suites_dilator_laws, suites_star_zero,       suites_good_pair};
  bool failed = false;
  bool incomplete = false;
  json out = json::array();
  for (int k = 1; k <= 9; ++k) {
    if (criterion && criterion != k) continue;
    for (const SuiteReport& r : all[k - 1](budget)) {
      failed |= !r.violations.empty();
      incomplete |= r.incomplete;
      if (c.as_json()) {
        out.push_back({{"suite", r.suite},
                       {"criterion", r.criterion},
                       {"checked", r.checked},
                       {"violations", r.violations},
                       {"millis", r.millis},
                       {"incomplete", r.incomplete},
                       {"vacuous", r.vacuous()},
                       {"notes", r.notes}});
        continue;
      }
      const char* status = !r.violations.empty() ? "FAIL"
                           : r.incomplete        ? "INCOMPLETE"
                           : r.vacuous()         ? "VACUOUS"
                                                 : "PASS";
      std::cout << status << "  [" << r.criterion << "] " << r.suite << "  checked=" << r.checked
                << "  " << static_cast<long long>(r.millis) << "ms\n";
      for (const std::string& v : r.violations) std::cout << "    " << v << "\n";
      for (const std::string& n : r.notes) std::cout << "    note: " << n << "\n";
    }
  }
  if (c.as_json()) std::cout << out.dump(2) << "\n";
  if (failed) return kFalse;
  return incomplete ? kIncomplete : kTrue;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gap orders, Kruskal derivatives and their brute-force oracles"};
  app.require_subcommand(1);

  Common common;
  std::string a;
  std::string b;

  auto* compare = app.add_subcommand("compare", "compare two gap trees (or two terms over M)");
  add_common(compare, common);
  compare->add_option("a", a)->required();
  compare->add_option("b", b)->required();

  auto* oracle = app.add_subcommand("oracle", "search a gap embedding by brute force (X empty)");
  add_common(oracle, common);
  oracle->add_option("a", a)->required();
  oracle->add_option("b", b)->required();

  EnumOptions e;
  auto* enumerate = app.add_subcommand("enum", "list gap trees, or the values of a named dilator");
  add_common(enumerate, common);
  enumerate->add_option("--max-nodes", e.max_nodes, "vertex bound for gap trees");
  enumerate->add_flag("--minus", e.minus, "only trees whose root is a node labelled 0");
  enumerate->add_option("--dilator", e.dilator, "id, M, T(n), Tminus(n), compose(A,B), deriv(A)");
  enumerate->add_option("--size", e.size, "dilator payload size bound");
  enumerate->add_option("--height", e.height, "dilator payload height bound");

  std::optional<std::string> term;
  std::size_t fold_nodes = 3;
  auto* fold = app.add_subcommand("fold", "fold a term over M, or list the pipeline fold for --n");
  add_common(fold, common);
  fold->add_option("term", term, "leaf:<id> or node[t1;t2;...]");
  fold->add_option("--max-nodes", fold_nodes, "vertex bound on folded trees");

  std::string budget = "default";
  int criterion = 0;
  auto* selftest = app.add_subcommand("selftest", "run the property suites");
  add_common(selftest, common, /*with_n=*/false);
  selftest->add_option("--budget", budget, "default, zero, smoke or a JSON file");
  selftest->add_option("--criterion", criterion, "only the suites of one criterion")
      ->check(CLI::Range(0, 9));

  std::vector<std::string> trees;
  auto* goodpair = app.add_subcommand("goodpair", "least i < j with t_i <= t_j");
  add_common(goodpair, common);
  goodpair->add_option("trees", trees)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kTrue : kUsage;
  }

  try {
    if (*compare) return cmd_compare(common, a, b);
    if (*oracle) return cmd_oracle(common, a, b);
    if (*enumerate) return cmd_enum(common, e);
    if (*fold) return cmd_fold(common, fold->count("--n") > 0, fold_nodes, term);
    if (*selftest) return cmd_selftest(common, budget, criterion);
    if (*goodpair) return cmd_goodpair(common, trees);
  } catch (const InputError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kUsage;
  } catch (const BudgetError& err) {
    std::cerr << "budget exhausted: " << err.what() << "\n";
    return kIncomplete;
  }
  return kUsage;
}
