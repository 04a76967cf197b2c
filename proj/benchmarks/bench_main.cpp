#include <benchmark/benchmark.h>

#include "endopres/catalog.hpp"
#include "endopres/contract.hpp"
#include "endopres/coset.hpp"
#include "endopres/random.hpp"

using namespace endo;

static void BM_EnumerateGrigorchuk(benchmark::State& state) {
  const auto& L = get_entry("grigorchuk").lpres();
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_relators(L, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_EnumerateGrigorchuk)->DenseRange(2, 6, 2);

static void BM_LevelAction(benchmark::State& state) {
  const auto& s = *get_entry("gupta-sidki").recursion();
  LevelAction act(s, static_cast<unsigned>(state.range(0)));
  Rng rng(1);
  std::vector<Word> words;
  for (int i = 0; i < 64; ++i) words.push_back(random_word(rng, s.alphabet.size(), 24));
  for (auto _ : state)
    for (const auto& w : words) benchmark::DoNotOptimize(act.fixes_level(w));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(words.size()));
}
BENCHMARK(BM_LevelAction)->Arg(4)->Arg(6)->Arg(8);

static void BM_WordProblem(benchmark::State& state) {
  const auto& s = *get_entry("grigorchuk").recursion();
  Rng rng(2);
  std::vector<Word> words;
  for (int i = 0; i < 64; ++i) words.push_back(random_word(rng, s.alphabet.size(), static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) {
    WordProblemSolver solver(s);
    for (const auto& w : words) benchmark::DoNotOptimize(solver.is_trivial(w));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(words.size()));
}
BENCHMARK(BM_WordProblem)->Arg(16)->Arg(64)->Arg(256);

static void BM_ToddCoxeterSym(benchmark::State& state) {
  const auto& e = get_entry("sym(5)");
  auto p = truncate(e.lpres(), 4, DedupMode::cyclic);
  for (auto _ : state) benchmark::DoNotOptimize(todd_coxeter(p, {}, 100000).size());
}
BENCHMARK(BM_ToddCoxeterSym);

static void BM_Abelianization(benchmark::State& state) {
  const auto& L = get_entry("gupta-sidki").lpres();
  for (auto _ : state) benchmark::DoNotOptimize(abelianization(L, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_Abelianization)->Arg(3)->Arg(5);

static void BM_LevelQuotientOrder(benchmark::State& state) {
  const auto& s = *get_entry("grigorchuk").recursion();
  for (auto _ : state) benchmark::DoNotOptimize(level_quotient_order(s, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_LevelQuotientOrder)->DenseRange(4, 8, 2);
