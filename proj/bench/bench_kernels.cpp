// SPDX-License-Identifier: Apache-2.0
// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "gdline/hamming.hpp"
#include "gdline/kernels.hpp"
#include "gdline/trace.hpp"

namespace {

using namespace gdline;

const Trace& bench_trace() {
  static const Trace trace = [] {
    TraceSpec spec;
    spec.chunk_count = 200'000;
    spec.seed = 7;
    return gen_synthetic(spec);
  }();
  return trace;
}

const HammingCode& bench_code() {
  static const HammingCode code = build_code(8);
  return code;
}

void set_counters(benchmark::State& state) {
  const auto chunks = static_cast<std::int64_t>(bench_trace().size());
  state.SetItemsProcessed(state.iterations() * chunks);
  state.SetBytesProcessed(state.iterations() * chunks * 32);
}

void BM_EncodeSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kernels::encode_serial(bench_trace(), bench_code()));
  set_counters(state);
}

void BM_EncodeParallel(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::encode_parallel(bench_trace(), bench_code(), threads));
  set_counters(state);
}

void BM_RoundtripSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kernels::roundtrip_failures_serial(bench_trace(), bench_code()));
  set_counters(state);
}

void BM_RoundtripParallel(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::roundtrip_failures_parallel(bench_trace(), bench_code(), threads));
  }
  set_counters(state);
}

}  // namespace

BENCHMARK(BM_EncodeSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EncodeParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RoundtripSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RoundtripParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
