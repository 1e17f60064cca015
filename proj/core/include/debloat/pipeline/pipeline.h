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

#ifndef DEBLOAT_PIPELINE_PIPELINE_H_
#define DEBLOAT_PIPELINE_PIPELINE_H_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "debloat/interp/host.h"
#include "debloat/interp/workload.h"
#include "debloat/shrink/shrink.h"
#include "debloat/trace/keep_plan.h"
#include "debloat/wasm/binary.h"
#include "debloat/wasm/validator.h"

namespace debloat::pipeline {

std::string_view toolVersion();

// One observable difference between the original and the debloated run.
// `invocation` is empty for whole-run fields (instantiation, memory digest).
struct Mismatch {
  std::optional<size_t> invocation;
  std::string field;
  std::string original;
  std::string debloated;

  bool operator==(const Mismatch&) const = default;
};

struct ValidationVerdict {
  bool syntactic_ok = false;
  bool behavioral_ok = false;
  std::vector<Mismatch> mismatches;

  bool ok() const { return syntactic_ok && behavioral_ok; }
  bool operator==(const ValidationVerdict&) const = default;
};

struct TraceSummary {
  size_t entered = 0;
  size_t call_targets = 0;
  size_t table_observed = 0;

  bool operator==(const TraceSummary&) const = default;
};

// Ratios are percentages of the defined functions, rounded to two decimals.
struct DebloatReport {
  shrink::ShrinkStats stats;
  double keep_ratio = 0;
  double stub_ratio = 0;
  double remove_ratio = 0;
  double bytes_saved_percent = 0;
  TraceSummary trace_summary;
  ValidationVerdict validation;
  std::string tool_version;
  std::string timestamp;  // UTC, ISO-8601

  bool operator==(const DebloatReport&) const = default;
};

struct DebloatOptions {
  bool fail_on_behavior_change = false;
  interp::HostConfig host = interp::HostConfig::standard();
};

struct DebloatResult {
  wasm::Bytes output;
  DebloatReport report;
  trace::KeepPlan plan;
  interp::ExecutionTrace trace;
  interp::ObservationLog observations;  // of the original module
};

class InvalidModule : public std::runtime_error {
 public:
  explicit InvalidModule(wasm::ValidationReport report);
  const wasm::ValidationReport& report() const { return report_; }

 private:
  wasm::ValidationReport report_;
};

// Raised by debloatModule with fail_on_behavior_change when the verdict is
// not fully ok. The result is still complete.
class ValidationFailed : public std::runtime_error {
 public:
  explicit ValidationFailed(DebloatResult result);
  const DebloatResult& result() const { return result_; }

 private:
  DebloatResult result_;
};

// Trace, remove, validate. The observation log recorded while tracing serves
// as the oracle for the replay of the debloated module; execution is
// deterministic, so running the original a second time would produce the
// same log.
//
// Throws MalformedBinary, InvalidModule, UnknownExport, SignatureMismatch,
// and ValidationFailed (see DebloatOptions).
DebloatResult debloatModule(wasm::ByteView input,
                            const interp::Workload& workload,
                            const DebloatOptions& options = {});

// Replays `workload` on both modules with the same host and compares
// outcomes (trap kinds included), host-call sequences and the final memory
// digest. Trap locations are not compared: function indices differ between
// the two modules by construction.
ValidationVerdict validateBehavior(
    wasm::ByteView original, wasm::ByteView debloated,
    const interp::Workload& workload,
    const interp::HostConfig& host = interp::HostConfig::standard());

std::vector<Mismatch> compareObservations(const interp::ObservationLog& original,
                                          const interp::ObservationLog& debloated);

DebloatReport buildReport(const wasm::Module& module,
                          const trace::KeepPlan& plan,
                          const shrink::ShrinkStats& stats,
                          const ValidationVerdict& verdict,
                          const interp::ExecutionTrace& trace);

}  // namespace debloat::pipeline

#endif  // DEBLOAT_PIPELINE_PIPELINE_H_
