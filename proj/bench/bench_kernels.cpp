// Copyright 2026 The sentistab Authors.
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

#include <benchmark/benchmark.h>

#include <map>
#include <random>

#include "sentistab/core/batch.hpp"

namespace {

using sentistab::core::StabilityRecord;

std::vector<StabilityRecord> make_records(std::size_t n, std::size_t rewrites) {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto draw = [&] { return sentistab::core::clamp_normalize({u(rng), u(rng), u(rng)}); };
  std::vector<StabilityRecord> out(n);
  for (auto& rec : out) {
    rec.original = draw();
    for (std::size_t i = 0; i < rewrites; ++i) rec.rewrites.push_back({"ler" + std::to_string(i + 1), draw()});
    rec.round_trips.push_back({"person", draw()});
  }
  return out;
}

const std::vector<StabilityRecord>& records(std::size_t n) {
  static std::map<std::size_t, std::vector<StabilityRecord>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_records(n, 9)).first;
  return it->second;
}

void BM_ScoreSerial(benchmark::State& state) {
  const auto& recs = records(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sentistab::core::score_batch_serial(recs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ScoreParallel(benchmark::State& state) {
  const auto& recs = records(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sentistab::core::score_batch(recs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_EmbeddingSerial(benchmark::State& state) {
  const auto& recs = records(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sentistab::core::embedding_matrix_serial(recs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_EmbeddingParallel(benchmark::State& state) {
  const auto& recs = records(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sentistab::core::embedding_matrix(recs));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_ScoreSerial)->RangeMultiplier(10)->Range(1000, 1000000);
BENCHMARK(BM_ScoreParallel)->RangeMultiplier(10)->Range(1000, 1000000);
BENCHMARK(BM_EmbeddingSerial)->RangeMultiplier(10)->Range(1000, 1000000);
BENCHMARK(BM_EmbeddingParallel)->RangeMultiplier(10)->Range(1000, 1000000);

BENCHMARK_MAIN();
