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

#ifndef DEBLOAT_INTERP_WORKLOAD_H_
#define DEBLOAT_INTERP_WORKLOAD_H_

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "debloat/interp/value.h"

namespace debloat::interp {

inline constexpr uint64_t kDefaultFuel = 10'000'000;

struct Invocation {
  std::string export_name;
  std::vector<Value> args;

  bool operator==(const Invocation&) const = default;
};

// An ordered list of export invocations run against one instance. `fuel` is
// the instruction budget of each invocation (and of the start function).
struct Workload {
  std::vector<Invocation> invocations;
  uint64_t fuel = kDefaultFuel;

  bool operator==(const Workload&) const = default;
};

enum class TrapKind : uint8_t {
  Unreachable,
  DivideByZero,
  IntegerOverflow,
  OutOfBoundsMemory,
  OutOfBoundsTable,
  IndirectCallTypeMismatch,
  UndefinedTableElement,
  StackExhausted,
  FuelExhausted,
};

std::string_view toString(TrapKind kind);
std::optional<TrapKind> trapKindFromString(std::string_view text);

struct Results {
  std::vector<Value> values;

  bool operator==(const Results&) const = default;
};

struct Trap {
  TrapKind kind = TrapKind::Unreachable;
  uint32_t function_index = 0;  // function executing when the trap fired

  bool operator==(const Trap&) const = default;
};

struct LinkFailure {
  std::string message;

  bool operator==(const LinkFailure&) const = default;
};

using InvocationOutcome = std::variant<Results, Trap, LinkFailure>;

std::string toString(const InvocationOutcome& outcome);

struct HostCall {
  std::string import_name;  // "module.field"
  std::vector<Value> args;

  bool operator==(const HostCall&) const = default;
};

struct InvocationRecord {
  Invocation invocation;
  InvocationOutcome outcome;
  std::vector<HostCall> host_calls;

  bool operator==(const InvocationRecord&) const = default;
};

// What an observer outside the module can see of one workload run.
// `instantiation_failure` holds the LinkFailure or start-function Trap that
// prevented any invocation from running; in that case `invocations` is empty
// and there is no memory digest.
struct ObservationLog {
  std::optional<InvocationOutcome> instantiation_failure;
  std::vector<HostCall> start_host_calls;
  std::vector<InvocationRecord> invocations;
  std::optional<uint64_t> memory_digest;  // FNV-1a 64 of linear memory

  bool operator==(const ObservationLog&) const = default;
};

// Functions observed in use while running a workload, in the combined
// function index space.
//   entered        - bodies that began executing
//   call_targets   - functions control was transferred to by call or
//                    call_indirect (imports included)
//   table_observed - functions read from a table slot by call_indirect,
//                    including ones rejected by the signature check
struct ExecutionTrace {
  std::set<uint32_t> entered;
  std::set<uint32_t> call_targets;
  std::set<uint32_t> table_observed;

  bool operator==(const ExecutionTrace&) const = default;
};

}  // namespace debloat::interp

#endif  // DEBLOAT_INTERP_WORKLOAD_H_
