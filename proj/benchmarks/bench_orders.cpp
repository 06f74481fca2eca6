#include <benchmark/benchmark.h>

#include "wpogap/gap_oracle.hpp"
#include "wpogap/harness.hpp"
#include "wpogap/terms.hpp"

using namespace wpogap;

namespace {

void BM_GapLeqPairwise(benchmark::State& state) {
  const GapParams p{static_cast<std::size_t>(state.range(0)), catalog_poset("empty")};
  const auto trees = enumerate_gap_trees(p, 4);
  for (auto _ : state) {
    std::size_t count = 0;
    for (Shape s : trees) {
      for (Shape t : trees) count += gap_leq(p, s, t);
    }
    benchmark::DoNotOptimize(count);
  }
  state.SetItemsProcessed(state.iterations() * trees.size() * trees.size());
}
BENCHMARK(BM_GapLeqPairwise)->Arg(1)->Arg(2)->Arg(3);

void BM_GapTabulate(benchmark::State& state) {
  const GapParams p{static_cast<std::size_t>(state.range(0)), catalog_poset("empty")};
  const auto trees = enumerate_gap_trees(p, 4);
  for (auto _ : state) benchmark::DoNotOptimize(gap_tabulate(p, trees));
  state.SetItemsProcessed(state.iterations() * trees.size() * trees.size());
}
BENCHMARK(BM_GapTabulate)->Arg(1)->Arg(2)->Arg(3);

void BM_GapEmbedOracle(benchmark::State& state) {
  const GapParams p{2, catalog_poset("empty")};
  std::vector<NodeTree> nodes;
  for (Shape t : enumerate_gap_trees(p, 4)) nodes.push_back(nodetree_of_gaptree(t));
  for (auto _ : state) {
    std::size_t count = 0;
    for (const NodeTree& s : nodes) {
      for (const NodeTree& t : nodes) count += gap_embed(s, t).has_value();
    }
    benchmark::DoNotOptimize(count);
  }
  state.SetItemsProcessed(state.iterations() * nodes.size() * nodes.size());
}
BENCHMARK(BM_GapEmbedOracle);

void BM_MultisetLeq(benchmark::State& state) {
  const PosetRef p = catalog_poset("vee");
  const auto all = ms_enumerate(*p, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    std::size_t count = 0;
    for (const auto& s : all) {
      for (const auto& t : all) count += ms_leq(*p, s, t);
    }
    benchmark::DoNotOptimize(count);
  }
  state.SetItemsProcessed(state.iterations() * all.size() * all.size());
}
BENCHMARK(BM_MultisetLeq)->Arg(2)->Arg(3)->Arg(4);

void BM_TermTabulate(benchmark::State& state) {
  const PosetRef x = catalog_poset(state.range(0) ? "chain2" : "point");
  for (auto _ : state) {
    TermSystem s(x, multiset_dilator());  // fresh memo each round
    const auto terms = enumerate_terms(s, 2, 3);
    benchmark::DoNotOptimize(s.tabulate(terms));
  }
}
BENCHMARK(BM_TermTabulate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_PipelineFragment(benchmark::State& state) {
  const PosetRef x = catalog_poset("empty");
  for (auto _ : state) benchmark::DoNotOptimize(pipeline_fragment(1, x, 4));
}
BENCHMARK(BM_PipelineFragment)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
