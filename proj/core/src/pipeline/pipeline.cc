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

#include "debloat/pipeline/pipeline.h"

#include <chrono>
#include <cmath>
#include <ctime>

#include "debloat/interp/runner.h"

#ifndef DEBLOAT_VERSION
#define DEBLOAT_VERSION "0.0.0"
#endif

namespace debloat::pipeline {

using interp::InvocationOutcome;
using interp::ObservationLog;

std::string_view toolVersion() { return "wasm-debloat " DEBLOAT_VERSION; }

InvalidModule::InvalidModule(wasm::ValidationReport report)
    : std::runtime_error("invalid module: " + report.summary()),
      report_(std::move(report)) {}

ValidationFailed::ValidationFailed(DebloatResult result)
    : std::runtime_error("debloated module does not preserve behavior"),
      result_(std::move(result)) {}

namespace {

bool sameOutcome(const InvocationOutcome& a, const InvocationOutcome& b) {
  if (a.index() != b.index()) return false;
  if (const auto* ta = std::get_if<interp::Trap>(&a)) {
    return ta->kind == std::get<interp::Trap>(b).kind;
  }
  return a == b;
}

std::string render(const std::vector<interp::HostCall>& calls) {
  std::string out = "[";
  for (size_t i = 0; i < calls.size(); ++i) {
    if (i) out += ", ";
    out += calls[i].import_name + "(";
    for (size_t k = 0; k < calls[i].args.size(); ++k) {
      if (k) out += ", ";
      out += interp::toString(calls[i].args[k]);
    }
    out += ")";
  }
  return out + "]";
}

std::string render(const std::optional<InvocationOutcome>& o) {
  return o ? interp::toString(*o) : "ok";
}

std::string render(const std::optional<uint64_t>& digest) {
  if (!digest) return "none";
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(*digest));
  return buf;
}

double round2(double v) { return std::round(v * 100.0) / 100.0; }

std::string utcTimestamp() {
  std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

wasm::Module decodeValid(wasm::ByteView bytes) {
  wasm::Module m = wasm::decode(bytes);
  auto report = wasm::validateModule(m);
  if (!report.ok()) throw InvalidModule(std::move(report));
  return m;
}

// Runs the workload on a module whose exports may no longer fit it; such
// failures are differences, not errors.
void replay(const wasm::Module& module, const interp::Workload& workload,
            const interp::HostConfig& host, const ObservationLog& expected,
            ValidationVerdict& verdict) {
  try {
    auto run = interp::runWorkload(module, workload, host);
    verdict.mismatches = compareObservations(expected, run.log);
  } catch (const std::exception& e) {
    verdict.mismatches.push_back({std::nullopt, "workload", "accepted", e.what()});
  }
  verdict.behavioral_ok = verdict.mismatches.empty();
}

}  // namespace

std::vector<Mismatch> compareObservations(const ObservationLog& a,
                                          const ObservationLog& b) {
  std::vector<Mismatch> out;
  const bool inst_same =
      a.instantiation_failure.has_value() == b.instantiation_failure.has_value() &&
      (!a.instantiation_failure ||
       sameOutcome(*a.instantiation_failure, *b.instantiation_failure));
  if (!inst_same) {
    out.push_back({std::nullopt, "instantiation", render(a.instantiation_failure),
                   render(b.instantiation_failure)});
  }
  if (a.start_host_calls != b.start_host_calls) {
    out.push_back({std::nullopt, "startHostCalls", render(a.start_host_calls),
                   render(b.start_host_calls)});
  }
  if (a.invocations.size() != b.invocations.size()) {
    out.push_back({std::nullopt, "invocationCount",
                   std::to_string(a.invocations.size()),
                   std::to_string(b.invocations.size())});
  }
  const size_t n = std::min(a.invocations.size(), b.invocations.size());
  for (size_t i = 0; i < n; ++i) {
    const auto& ra = a.invocations[i];
    const auto& rb = b.invocations[i];
    if (!sameOutcome(ra.outcome, rb.outcome)) {
      out.push_back({i, "outcome", interp::toString(ra.outcome),
                     interp::toString(rb.outcome)});
    }
    if (ra.host_calls != rb.host_calls) {
      out.push_back({i, "hostCalls", render(ra.host_calls), render(rb.host_calls)});
    }
  }
  if (a.memory_digest != b.memory_digest) {
    out.push_back({std::nullopt, "memoryDigest", render(a.memory_digest),
                   render(b.memory_digest)});
  }
  return out;
}

ValidationVerdict validateBehavior(wasm::ByteView original,
                                   wasm::ByteView debloated,
                                   const interp::Workload& workload,
                                   const interp::HostConfig& host) {
  const wasm::Module before = decodeValid(original);
  const wasm::Module after = wasm::decode(debloated);
  auto expected = interp::runWorkload(before, workload, host);

  ValidationVerdict verdict;
  auto report = wasm::validateModule(after);
  verdict.syntactic_ok = report.ok();
  if (!verdict.syntactic_ok) {
    verdict.mismatches.push_back(
        {std::nullopt, "module", "valid", report.summary()});
    return verdict;
  }
  replay(after, workload, host, expected.log, verdict);
  return verdict;
}

DebloatReport buildReport(const wasm::Module& module,
                          const trace::KeepPlan& plan,
                          const shrink::ShrinkStats& stats,
                          const ValidationVerdict& verdict,
                          const interp::ExecutionTrace& trace) {
  DebloatReport r;
  r.stats = stats;
  const size_t defined = module.functions.size();
  if (defined == 0) {
    r.keep_ratio = 100;
  } else {
    const double d = static_cast<double>(defined);
    r.keep_ratio = round2(100.0 * plan.count(trace::Disposition::KeepBody, module, true) / d);
    r.stub_ratio = round2(100.0 * plan.count(trace::Disposition::Stub, module, true) / d);
    r.remove_ratio = round2(100.0 * plan.count(trace::Disposition::Remove, module, true) / d);
  }
  if (stats.bytes_before > 0) {
    r.bytes_saved_percent = round2(
        100.0 * (1.0 - static_cast<double>(stats.bytes_after) /
                           static_cast<double>(stats.bytes_before)));
  }
  r.trace_summary = {trace.entered.size(), trace.call_targets.size(),
                     trace.table_observed.size()};
  r.validation = verdict;
  r.tool_version = std::string(toolVersion());
  r.timestamp = utcTimestamp();
  return r;
}

DebloatResult debloatModule(wasm::ByteView input,
                            const interp::Workload& workload,
                            const DebloatOptions& options) {
  const wasm::Module module = decodeValid(input);

  // Trace
  auto run = interp::runWorkload(module, workload, options.host);

  // Remove
  trace::KeepRoots roots = trace::consolidate(run.trace, module);
  trace::KeepPlan plan = trace::closeReferences(module, roots);
  wasm::Bytes output = wasm::encode(shrink::applyPlan(module, plan));

  // Validate, on the encoded artifact rather than the in-memory module.
  ValidationVerdict verdict;
  const wasm::Module debloated = wasm::decode(output);
  auto report = wasm::validateModule(debloated);
  verdict.syntactic_ok = report.ok();
  if (verdict.syntactic_ok) {
    replay(debloated, workload, options.host, run.log, verdict);
  } else {
    verdict.mismatches.push_back({std::nullopt, "module", "valid", report.summary()});
  }

  DebloatResult result;
  auto stats = shrink::shrinkStats(input, output, plan);
  result.report = buildReport(module, plan, stats, verdict, run.trace);
  result.output = std::move(output);
  result.plan = std::move(plan);
  result.trace = std::move(run.trace);
  result.observations = std::move(run.log);
  if (options.fail_on_behavior_change && !result.report.validation.ok()) {
    throw ValidationFailed(std::move(result));
  }
  return result;
}

}  // namespace debloat::pipeline
