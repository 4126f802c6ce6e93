// Copyright 2026 The bptest Authors
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

// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "bptest/ensembles.hpp"
#include "bptest/haar.hpp"
#include "bptest/permutation.hpp"

namespace {

using namespace bptest;

void BM_HaarMomentSerial(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(sym_projector_haar_mc_serial(2, 2, static_cast<std::uint64_t>(state.range(0)), 1));
    }
}
BENCHMARK(BM_HaarMomentSerial)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_HaarMomentParallel(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(sym_projector_haar_mc(2, 2, static_cast<std::uint64_t>(state.range(0)), 1));
    }
}
BENCHMARK(BM_HaarMomentParallel)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_TailSerial(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(tail_mc_serial(static_cast<int>(state.range(0)), 2, 0.9, 50, 1));
    }
}
BENCHMARK(BM_TailSerial)->Arg(8)->Arg(11)->Unit(benchmark::kMillisecond);

void BM_TailParallel(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(tail_mc(static_cast<int>(state.range(0)), 2, 0.9, 50, 1));
    }
}
BENCHMARK(BM_TailParallel)->Arg(8)->Arg(11)->Unit(benchmark::kMillisecond);

void BM_CycleHistogramSerial(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(cycle_triple_histogram_serial(static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_CycleHistogramSerial)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_CycleHistogramParallel(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(cycle_triple_histogram(static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_CycleHistogramParallel)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_FTraceSerial(benchmark::State& state) {
    const GridPoint g{static_cast<int>(state.range(0)), 2, 2};
    for (auto _ : state) {
        benchmark::DoNotOptimize(f_trace_serial(g));
    }
}
BENCHMARK(BM_FTraceSerial)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_FTraceParallel(benchmark::State& state) {
    const GridPoint g{static_cast<int>(state.range(0)), 2, 2};
    for (auto _ : state) {
        benchmark::DoNotOptimize(f_trace(g));
    }
}
BENCHMARK(BM_FTraceParallel)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_SubsetSumSerial(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(st_enumerated_serial(static_cast<int>(state.range(0)), 3, StVariant::intersect));
    }
}
BENCHMARK(BM_SubsetSumSerial)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_SubsetSumParallel(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(st_enumerated(static_cast<int>(state.range(0)), 3, StVariant::intersect));
    }
}
BENCHMARK(BM_SubsetSumParallel)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
