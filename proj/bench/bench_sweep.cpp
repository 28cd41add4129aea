// Copyright 2026 The nullweak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Parallel sweep engine against its serial reference.

#include <benchmark/benchmark.h>

#include "nullweak/setups.hpp"
#include "nullweak/sweep.hpp"

namespace {

using namespace nullweak;

protocol::SweepRequest request(std::size_t n) {
  protocol::SweepRequest req;
  req.g_values = protocol::log_spaced(0.001, 20.0, n);
  return req;
}

void BM_SweepSerial(benchmark::State& state) {
  const auto s = setups::builtin("three-path");
  const auto req = request(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(protocol::sweep_serial(s, req));
  state.SetItemsProcessed(state.iterations() * state.range(0) * static_cast<int64_t>(s.probes.size()));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto s = setups::builtin("three-path");
  const auto req = request(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(protocol::sweep(s, req));
  state.SetItemsProcessed(state.iterations() * state.range(0) * static_cast<int64_t>(s.probes.size()));
}

BENCHMARK(BM_SweepSerial)->Arg(16)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(16)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
