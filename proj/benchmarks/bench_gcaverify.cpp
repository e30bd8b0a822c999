/*
 * Copyright (c) 2026, The gcaverify Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include <string>

#include "gcaverify/checker.hpp"
#include "gcaverify/crossvalidate.hpp"
#include "gcaverify/model_io.hpp"
#include "gcaverify/schedules.hpp"

using namespace gcaverify;

namespace {

const Model& tmr() {
  static const Model m = load_model(GCAVERIFY_MODELS_DIR "/balanced_rod_faulty.yaml");
  return m;
}

void BM_BuildProductTmr(benchmark::State& state) {
  const Model& m = tmr();
  BuildOptions opts;
  opts.threads = static_cast<unsigned>(state.range(0));
  std::size_t nodes = 0;
  for (auto _ : state) {
    const StateGraph g = build_product(m.system, m.gated, opts);
    nodes = g.nodes.size();
    benchmark::DoNotOptimize(nodes);
  }
  state.counters["nodes"] = static_cast<double>(nodes);
}
BENCHMARK(BM_BuildProductTmr)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_CheckTmr(benchmark::State& state) {
  const Model& m = tmr();
  const StateGraph g = build_product(m.system, m.gated);
  const CompiledFormula f = compile_formula(m.properties.at(0).formula, m.system);
  for (auto _ : state) {
    const CheckResult r = check_ltl(g, f, m.system.k());
    benchmark::DoNotOptimize(r.work);
  }
}
BENCHMARK(BM_CheckTmr)->Unit(benchmark::kMicrosecond);

// send; receive; assign repeated, n machines.
Pattern chain(int n, int blocks) {
  Pattern p;
  p.n = n;
  p.arrays = {{"a", Domain::bounded(0, 3), 0}};
  for (int b = 0; b < blocks; ++b) {
    p.actions.push_back(ActionTemplate::send("a"));
    p.actions.push_back(ActionTemplate::receive("a"));
    p.actions.push_back(ActionTemplate::assign("a", parse_expr("a[x] + 1")));
  }
  return p;
}

void BM_CountDaInterleavings(benchmark::State& state) {
  const Pattern p = chain(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  std::uint64_t count = 0;
  for (auto _ : state) {
    count = count_da_interleavings(p, p.n);
    benchmark::DoNotOptimize(count);
  }
  state.counters["interleavings"] = static_cast<double>(count);
}
BENCHMARK(BM_CountDaInterleavings)->Args({2, 2})->Args({3, 2})->Args({3, 3});

void BM_EnumerateDaInterleavings(benchmark::State& state) {
  const Pattern p = chain(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  std::uint64_t visited = 0;
  for (auto _ : state) {
    visited = for_each_da_interleaving(p, p.n, [](const Interleaving&) { return true; });
    benchmark::DoNotOptimize(visited);
  }
  state.counters["interleavings"] = static_cast<double>(visited);
}
BENCHMARK(BM_EnumerateDaInterleavings)->Args({2, 2})->Args({3, 2})->Unit(benchmark::kMillisecond);

void BM_CrossValidatePipeline(benchmark::State& state) {
  const Model m = load_model(GCAVERIFY_MODELS_DIR "/pipeline_demo.yaml");
  std::vector<CompiledProperty> props;
  for (const auto& p : m.properties) props.push_back({p.name, compile_formula(p.formula, m.system)});
  CrossValidationOptions opts;
  opts.cap = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    const auto r = cross_validate(m.system, m.gated, props, opts);
    benchmark::DoNotOptimize(r.async_traces);
  }
}
BENCHMARK(BM_CrossValidatePipeline)->Arg(1000)->Arg(20000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
