#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "textmine/mat.hpp"
#include "textmine/rng.hpp"
#include "textmine/svd.hpp"
#include "textmine/text.hpp"
#include "textmine/topics.hpp"

using namespace textmine;

namespace {

std::vector<std::string> sample_words() {
  return {"running",     "happiness",  "nationally", "conditional", "relational",
          "hopefulness", "caresses",   "ponies",     "agreed",      "plastered",
          "motoring",    "conflated",  "triplicate", "formative",   "electrical",
          "adjustable",  "defensible", "activate",   "communism",   "operator"};
}

void bm_porter(benchmark::State& state) {
  const auto words = sample_words();
  for (auto _ : state) {
    for (const auto& w : words) benchmark::DoNotOptimize(stem_porter(w));
  }
  state.SetItemsProcessed(state.iterations() * words.size());
}
BENCHMARK(bm_porter);

void bm_svd(benchmark::State& state) {
  const std::size_t n = state.range(0);
  Rng rng(42);
  Mat a(n, n / 2);
  for (auto& x : a.data()) x = rng.gaussian();
  for (auto _ : state) benchmark::DoNotOptimize(svd_truncated(a, 5));
}
BENCHMARK(bm_svd)->Arg(32)->Arg(64)->Arg(128);

void bm_rake(benchmark::State& state) {
  Rng rng(7);
  const auto words = sample_words();
  std::string text;
  for (int i = 0; i < 2000; ++i) {
    if (!text.empty()) text += (rng.uniform01() < 0.1) ? ". " : " ";
    text += words[rng.uniform_int(words.size())];
  }
  RakeConfig cfg;
  cfg.stopwords = {"agreed", "operator"};
  for (auto _ : state) benchmark::DoNotOptimize(rake_extract(text, cfg));
  state.SetBytesProcessed(state.iterations() * text.size());
}
BENCHMARK(bm_rake);

}  // namespace

BENCHMARK_MAIN();
