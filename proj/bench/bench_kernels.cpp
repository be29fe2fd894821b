// Copyright 2026 The regeval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference vs OpenMP kernels on synthetic workloads.

#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>

#include "regeval/kernels.hpp"

namespace {

using namespace regeval;

struct Workload {
  std::vector<LabelSet> gold;
  std::vector<Ranking> predicted;
};

const Workload& workload(std::size_t n, std::size_t universe) {
  static std::map<std::pair<std::size_t, std::size_t>, Workload> cache;
  auto [it, fresh] = cache.try_emplace({n, universe});
  if (!fresh) return it->second;
  std::mt19937_64 rng(n * 31 + universe);
  for (std::size_t i = 0; i < n; ++i) {
    LabelSet g;
    Ranking p;
    for (LabelIndex l = 0; l < universe; ++l) {
      if (rng() % 5 == 0) g.push_back(l);
      if (rng() % 3 == 0) p.push_back(l);
    }
    if (g.empty()) g.push_back(static_cast<LabelIndex>(rng() % universe));
    std::shuffle(p.begin(), p.end(), rng);
    it->second.gold.push_back(std::move(g));
    it->second.predicted.push_back(std::move(p));
  }
  return it->second;
}

template <Execution E>
void BM_ScoreRankings(benchmark::State& state) {
  const auto& w = workload(static_cast<std::size_t>(state.range(0)), 40);
  std::vector<kernels::RankingJob> jobs(w.gold.size());
  for (std::size_t i = 0; i < jobs.size(); ++i) jobs[i] = {&w.gold[i], &w.predicted[i]};
  for (auto _ : state) benchmark::DoNotOptimize(kernels::score_rankings(jobs, E));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <Execution E>
void BM_TallyMultilabel(benchmark::State& state) {
  const auto& w = workload(static_cast<std::size_t>(state.range(0)), 40);
  std::vector<kernels::MultilabelJob> jobs(w.gold.size());
  for (std::size_t i = 0; i < jobs.size(); ++i) jobs[i] = {&w.gold[i], &w.predicted[i]};
  for (auto _ : state) benchmark::DoNotOptimize(kernels::tally_multilabel(jobs, 40, true, E));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

BENCHMARK(BM_ScoreRankings<Execution::kSerial>)->Range(1 << 10, 1 << 18);
BENCHMARK(BM_ScoreRankings<Execution::kParallel>)->Range(1 << 10, 1 << 18);
BENCHMARK(BM_TallyMultilabel<Execution::kSerial>)->Range(1 << 10, 1 << 18);
BENCHMARK(BM_TallyMultilabel<Execution::kParallel>)->Range(1 << 10, 1 << 18);

}  // namespace

BENCHMARK_MAIN();
