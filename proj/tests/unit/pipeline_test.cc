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

#include <gtest/gtest.h>

#include <regex>

#include "builders.h"
#include "debloat/interp/runner.h"
#include "debloat/pipeline/pipeline.h"
#include "debloat/wasm/binary.h"
#include "fixtures.h"
#include "invariants.h"

namespace debloat::pipeline {
namespace {

using interp::Value;
using interp::Workload;
using testing::op;
using trace::Disposition;
using wasm::Opcode;

DebloatResult debloatFixture(const std::string& name) {
  auto fx = testing::loadFixture(name);
  return debloatModule(fx.bytes, fx.workload);
}

TEST(Pipeline, EmptyWorkloadStubsTheExport) {
  auto m = testing::singleFunction({wasm::ValType::I32}, {wasm::ValType::I32},
                                   {op(Opcode::LocalGet, 0)});
  auto result = debloatModule(wasm::encode(m), Workload{});
  auto out = wasm::decode(result.output);
  ASSERT_EQ(out.functions.size(), 1u);
  EXPECT_EQ(out.functions[0].body, (wasm::Expression{op(Opcode::Unreachable)}));
  EXPECT_TRUE(result.report.validation.ok());
  EXPECT_EQ(result.report.stub_ratio, 100);
}

TEST(Pipeline, MainHelperDropsDeadFunction) {
  auto result = debloatFixture("three_funcs");
  EXPECT_EQ(result.plan.disposition,
            (std::vector<Disposition>{Disposition::KeepBody, Disposition::KeepBody,
                                      Disposition::Remove}));
  EXPECT_EQ(wasm::decode(result.output).functions.size(), 2u);
  EXPECT_TRUE(result.report.validation.ok());
}

TEST(Pipeline, Calculator) {
  auto result = debloatFixture("calculator");
  const auto& r = result.report;
  EXPECT_EQ(r.stats.functions_kept_body, 4u);
  EXPECT_EQ(r.stats.functions_stubbed, 3u);
  EXPECT_EQ(r.stats.functions_removed, 3u);
  EXPECT_EQ(r.stats.imports_removed, 1u);
  EXPECT_DOUBLE_EQ(r.keep_ratio, 40);
  EXPECT_DOUBLE_EQ(r.stub_ratio, 30);
  EXPECT_DOUBLE_EQ(r.remove_ratio, 30);
  EXPECT_GE(r.remove_ratio, 30);
  EXPECT_LT(r.stats.code_bytes_after, r.stats.code_bytes_before);
  EXPECT_GT(r.bytes_saved_percent, 0);
  EXPECT_TRUE(r.validation.syntactic_ok);
  EXPECT_TRUE(r.validation.behavioral_ok);
  EXPECT_EQ(r.trace_summary.entered, 4u);
  EXPECT_TRUE(testing::checkReport(r).empty());
}

TEST(Pipeline, CallChainRatios) {
  auto result = debloatFixture("call_chain");
  // run(0) takes the else branch: callee is referenced but never entered.
  EXPECT_EQ(result.report.stats.functions_kept_body, 1u);
  EXPECT_EQ(result.report.stats.functions_stubbed, 1u);
  EXPECT_EQ(result.report.stats.functions_removed, 1u);
  EXPECT_DOUBLE_EQ(result.report.remove_ratio, 33.33);
  EXPECT_DOUBLE_EQ(result.report.keep_ratio, 33.33);
  EXPECT_DOUBLE_EQ(result.report.stub_ratio, 33.33);
}

TEST(Pipeline, WronglyStubbedFunctionIsReported) {
  auto fx = testing::loadFixture("calculator");
  auto m = wasm::decode(fx.bytes);
  auto run = interp::runWorkload(m, fx.workload);
  auto plan = trace::closeReferences(m, trace::consolidate(run.trace, m));
  plan.disposition[2] = Disposition::Stub;  // add
  auto bad = wasm::encode(shrink::applyPlan(m, plan));
  auto verdict = validateBehavior(fx.bytes, bad, fx.workload);
  EXPECT_TRUE(verdict.syntactic_ok);
  EXPECT_FALSE(verdict.behavioral_ok);
  ASSERT_EQ(verdict.mismatches.size(), 1u);
  const auto& mm = verdict.mismatches[0];
  EXPECT_EQ(mm.invocation, 0u);
  EXPECT_EQ(mm.field, "outcome");
  EXPECT_EQ(mm.original, "Results[i32:7]");
  EXPECT_EQ(mm.debloated, "Trap(unreachable)");
}

TEST(Pipeline, IdenticalModulesAgree) {
  for (const auto& name : testing::fixtureNames()) {
    auto fx = testing::loadFixture(name);
    auto verdict = validateBehavior(fx.bytes, fx.bytes, fx.workload);
    EXPECT_TRUE(verdict.ok()) << name;
    EXPECT_TRUE(verdict.mismatches.empty()) << name;
  }
}

TEST(Pipeline, InvalidDebloatedModuleIsSyntacticFailure) {
  auto fx = testing::loadFixture("add");
  auto m = wasm::decode(fx.bytes);
  m.functions[0].body.push_back(op(Opcode::I32Add));
  auto verdict = validateBehavior(fx.bytes, wasm::encode(m), fx.workload);
  EXPECT_FALSE(verdict.syntactic_ok);
  EXPECT_FALSE(verdict.behavioral_ok);
  ASSERT_EQ(verdict.mismatches.size(), 1u);
  EXPECT_EQ(verdict.mismatches[0].field, "module");
}

TEST(Pipeline, DebloatedModuleMissingAnExportIsReported) {
  auto fx = testing::loadFixture("add");
  auto m = wasm::decode(fx.bytes);
  m.exports[0].name = "plus";
  auto verdict = validateBehavior(fx.bytes, wasm::encode(m), fx.workload);
  EXPECT_TRUE(verdict.syntactic_ok);
  ASSERT_EQ(verdict.mismatches.size(), 1u);
  EXPECT_EQ(verdict.mismatches[0].field, "workload");
}

TEST(CompareObservations, TrapLocationIsIgnoredButKindIsNot) {
  interp::ObservationLog a, b;
  a.invocations.push_back({{"f", {}}, interp::Trap{interp::TrapKind::Unreachable, 3}, {}});
  b = a;
  std::get<interp::Trap>(b.invocations[0].outcome).function_index = 1;
  EXPECT_TRUE(compareObservations(a, b).empty());
  std::get<interp::Trap>(b.invocations[0].outcome).kind = interp::TrapKind::DivideByZero;
  auto m = compareObservations(a, b);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0].debloated, "Trap(divide-by-zero)");
}

TEST(CompareObservations, ReportsEveryField) {
  interp::ObservationLog a, b;
  a.invocations.push_back({{"f", {}}, interp::Results{{Value::i32(1)}},
                           {{"env.log", {Value::i32(1)}}}});
  a.memory_digest = 1;
  b.instantiation_failure = interp::LinkFailure{"nope"};
  b.start_host_calls.push_back({"env.log", {Value::i32(9)}});
  auto m = compareObservations(a, b);
  std::vector<std::string> fields;
  for (const auto& x : m) fields.push_back(x.field);
  EXPECT_EQ(fields, (std::vector<std::string>{"instantiation", "startHostCalls",
                                              "invocationCount", "memoryDigest"}));
  EXPECT_EQ(m[3].original, "0000000000000001");

  b = a;
  b.invocations[0].host_calls[0].args[0] = Value::i32(2);
  b.memory_digest = 2;
  m = compareObservations(a, b);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0].invocation, 0u);
  EXPECT_EQ(m[0].field, "hostCalls");
  EXPECT_FALSE(m[1].invocation.has_value());
}

// An unreferenced import the host cannot satisfy makes the original fail to
// link; the debloated module drops the import and links fine.
TEST(Pipeline, RemovingAnUnresolvableImportIsABehaviorChange) {
  wasm::Module m;
  m.types.push_back({});
  m.imports.push_back({"env", "missing", wasm::FunctionImport{0}});
  auto f = testing::addFunction(m, {}, {}, {});
  testing::exportFunction(m, "f", f);
  Workload w{{{"f", {}}}};
  auto result = debloatModule(wasm::encode(m), w);
  EXPECT_TRUE(result.report.validation.syntactic_ok);
  EXPECT_FALSE(result.report.validation.behavioral_ok);
  EXPECT_EQ(result.report.validation.mismatches.at(0).field, "instantiation");

  DebloatOptions strict;
  strict.fail_on_behavior_change = true;
  try {
    debloatModule(wasm::encode(m), w, strict);
    FAIL();
  } catch (const ValidationFailed& e) {
    EXPECT_FALSE(e.result().output.empty());
    EXPECT_EQ(e.result().report.validation, result.report.validation);
    EXPECT_EQ(e.result().output, result.output);
  }
}

TEST(Pipeline, StrictModePassesWhenBehaviorIsPreserved) {
  auto fx = testing::loadFixture("calculator");
  DebloatOptions strict;
  strict.fail_on_behavior_change = true;
  EXPECT_NO_THROW(debloatModule(fx.bytes, fx.workload, strict));
}

TEST(Pipeline, RejectsInvalidAndMalformedInput) {
  auto m = testing::singleFunction({}, {}, {op(Opcode::I32Add)});
  try {
    debloatModule(wasm::encode(m), Workload{});
    FAIL();
  } catch (const InvalidModule& e) {
    EXPECT_FALSE(e.report().ok());
  }
  EXPECT_THROW(debloatModule(wasm::Bytes{0, 1, 2}, Workload{}), wasm::MalformedBinary);
  auto add = testing::loadFixture("add");
  EXPECT_THROW(debloatModule(add.bytes, Workload{{{"nope", {}}}}), interp::UnknownExport);
}

TEST(Pipeline, ReportIsDeterministicApartFromTimestamp) {
  auto a = debloatFixture("calculator");
  auto b = debloatFixture("calculator");
  EXPECT_EQ(a.output, b.output);
  a.report.timestamp = b.report.timestamp;
  EXPECT_EQ(a.report, b.report);
  EXPECT_TRUE(std::regex_match(b.report.timestamp,
                               std::regex(R"(\d{4}-\d\d-\d\dT\d\d:\d\d:\d\dZ)")));
  EXPECT_EQ(b.report.tool_version, toolVersion());
}

TEST(Pipeline, StubbedExportsTrapUnreachable) {
  auto result = debloatFixture("calculator");
  auto out = wasm::decode(result.output);
  // mul and div were never called.
  for (const char* name : {"mul", "div"}) {
    auto run = interp::runWorkload(out, Workload{{{name, {Value::i32(6), Value::i32(3)}}}});
    const auto* t = std::get_if<interp::Trap>(&run.log.invocations.at(0).outcome);
    ASSERT_NE(t, nullptr) << name;
    EXPECT_EQ(t->kind, interp::TrapKind::Unreachable) << name;
  }
}

TEST(BuildReport, IdentityPlan) {
  auto fx = testing::loadFixture("add");
  auto m = wasm::decode(fx.bytes);
  trace::KeepPlan plan;
  plan.disposition = {Disposition::KeepBody};
  trace::rebuildRemaps(m, plan);
  auto stats = shrink::shrinkStats(fx.bytes, fx.bytes, plan);
  auto r = buildReport(m, plan, stats, {true, true, {}}, {});
  EXPECT_EQ(r.keep_ratio, 100);
  EXPECT_EQ(r.stub_ratio, 0);
  EXPECT_EQ(r.remove_ratio, 0);
  EXPECT_EQ(r.bytes_saved_percent, 0);
}

TEST(BuildReport, HalfStubHalfRemoved) {
  wasm::Module m;
  testing::addFunction(m, {}, {}, {op(Opcode::Nop)});
  testing::addFunction(m, {}, {}, {op(Opcode::Nop)});
  testing::exportFunction(m, "f", 0);
  trace::KeepPlan plan;
  plan.disposition = {Disposition::Stub, Disposition::Remove};
  trace::rebuildRemaps(m, plan);
  const auto before = wasm::encode(m);
  const auto after = wasm::encode(shrink::applyPlan(m, plan));
  auto r = buildReport(m, plan, shrink::shrinkStats(before, after, plan), {true, true, {}}, {});
  EXPECT_EQ(r.stub_ratio, 50);
  EXPECT_EQ(r.remove_ratio, 50);
  EXPECT_EQ(r.keep_ratio, 0);
}

TEST(BuildReport, NoDefinedFunctions) {
  auto fx = testing::loadFixture("empty");
  auto result = debloatModule(fx.bytes, fx.workload);
  EXPECT_EQ(result.report.keep_ratio, 100);
  EXPECT_EQ(result.output, fx.bytes);
  EXPECT_TRUE(testing::checkReport(result.report).empty());
}

TEST(Pipeline, EveryFixturePreservesBehavior) {
  for (const auto& name : testing::fixtureNames()) {
    auto result = debloatFixture(name);
    EXPECT_TRUE(result.report.validation.ok()) << name;
    EXPECT_TRUE(testing::checkReport(result.report).empty()) << name;
  }
}

}  // namespace
}  // namespace debloat::pipeline
