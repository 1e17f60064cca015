// Copyright 2026 The wasm-debloat Authors
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

#include <fstream>
#include <iterator>
#include <string>

#include "debloat/interp/runner.h"
#include "debloat/pipeline/pipeline.h"
#include "debloat/wasm/binary.h"
#include "debloat/wasm/validator.h"

namespace debloat {
namespace {

using wasm::Instruction;
using wasm::Opcode;

wasm::Bytes fixture(const std::string& name) {
  std::ifstream in(std::string(DEBLOAT_FIXTURE_DIR) + "/" + name + ".wasm", std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// `count(n)`: a counted loop summing 0..n-1 in a local.
wasm::Module countingLoop() {
  using wasm::ValType;
  wasm::Module m;
  m.types.push_back({{ValType::I32}, {ValType::I32}});
  wasm::Function f;
  f.locals = {ValType::I32};
  auto get = [](uint32_t i) { return Instruction::withIndex(Opcode::LocalGet, i); };
  auto set = [](uint32_t i) { return Instruction::withIndex(Opcode::LocalSet, i); };
  auto simple = [](Opcode o) { return Instruction::simple(o); };
  Instruction loop = Instruction::block(
      Opcode::Loop, std::nullopt,
      {get(1), get(0), simple(Opcode::I32Add), set(1),
       get(0), Instruction::i32Const(1), simple(Opcode::I32Sub), Instruction::withIndex(Opcode::LocalTee, 0),
       Instruction::withIndex(Opcode::BrIf, 0)});
  f.body = {Instruction::block(Opcode::Block, std::nullopt,
                               {get(0), simple(Opcode::I32Eqz), Instruction::withIndex(Opcode::BrIf, 0),
                                loop}),
            get(1)};
  m.functions.push_back(std::move(f));
  m.exports.push_back({"count", wasm::ExternalKind::Function, 0});
  return m;
}

interp::Workload calculatorWorkload() {
  using interp::Value;
  return {{{"add", {Value::i32(3), Value::i32(4)}},
           {"sub", {Value::i32(10), Value::i32(4)}},
           {"dispatch", {Value::i32(0), Value::i32(5)}}}};
}

void BM_Decode(benchmark::State& state) {
  const auto bytes = fixture("calculator");
  for (auto _ : state) benchmark::DoNotOptimize(wasm::decode(bytes));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * bytes.size()));
}
BENCHMARK(BM_Decode);

void BM_Encode(benchmark::State& state) {
  const auto m = wasm::decode(fixture("calculator"));
  for (auto _ : state) benchmark::DoNotOptimize(wasm::encode(m));
}
BENCHMARK(BM_Encode);

void BM_Validate(benchmark::State& state) {
  const auto m = wasm::decode(fixture("calculator"));
  for (auto _ : state) benchmark::DoNotOptimize(wasm::validateModule(m));
}
BENCHMARK(BM_Validate);

void BM_InterpretLoop(benchmark::State& state) {
  const auto m = countingLoop();
  const auto n = static_cast<int32_t>(state.range(0));
  const interp::Workload w{{{"count", {interp::Value::i32(n)}}}};
  for (auto _ : state) benchmark::DoNotOptimize(interp::runWorkload(m, w));
  // About 10 instructions per iteration.
  state.SetItemsProcessed(state.iterations() * n * 10);
}
BENCHMARK(BM_InterpretLoop)->Arg(1000)->Arg(100000);

void BM_DebloatCalculator(benchmark::State& state) {
  const auto bytes = fixture("calculator");
  const auto w = calculatorWorkload();
  for (auto _ : state) benchmark::DoNotOptimize(pipeline::debloatModule(bytes, w));
}
BENCHMARK(BM_DebloatCalculator);

}  // namespace
}  // namespace debloat

BENCHMARK_MAIN();
