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

#ifndef DEBLOAT_TRACE_KEEP_PLAN_H_
#define DEBLOAT_TRACE_KEEP_PLAN_H_

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "debloat/interp/workload.h"
#include "debloat/wasm/module.h"

namespace debloat::trace {

class IndexOutOfRange : public std::runtime_error {
 public:
  IndexOutOfRange(uint32_t index, uint32_t function_count);
  uint32_t index() const { return index_; }

 private:
  uint32_t index_;
};

// Functions that must survive debloating.
//   body_keep - functions whose bodies are needed (observed in use)
//   decl_keep - functions whose declarations are needed; a superset of
//               body_keep that adds statically visible references
struct KeepRoots {
  std::set<uint32_t> body_keep;
  std::set<uint32_t> decl_keep;

  bool operator==(const KeepRoots&) const = default;
};

enum class Disposition : uint8_t { KeepBody, Stub, Remove };

std::string_view toString(Disposition d);

// Per-function disposition plus the index remaps applying it implies. Remap
// vectors are indexed by old index and hold the new index of survivors.
// Imported functions are never stubbed: a kept import is KeepBody.
struct KeepPlan {
  std::vector<Disposition> disposition;  // combined function index space
  std::vector<std::optional<uint32_t>> func_remap;
  std::vector<std::optional<uint32_t>> type_remap;
  std::vector<std::optional<uint32_t>> global_remap;
  std::set<uint32_t> removed_imports;  // positions in Module::imports

  bool operator==(const KeepPlan&) const = default;

  size_t count(Disposition d, const wasm::Module& m, bool defined_only) const;
};

// Unions the runtime observations with the module's static roots (exports,
// element segments, start). Throws IndexOutOfRange when the trace names a
// function the module does not have.
KeepRoots consolidate(const interp::ExecutionTrace& trace,
                      const wasm::Module& module);

// Closes the roots over direct calls in kept bodies and derives the plan:
// KeepBody for body_keep, Stub for other referenced defined functions,
// Remove for the rest. Calls inside bodies that will be stubbed do not count
// as references.
KeepPlan closeReferences(const wasm::Module& module, const KeepRoots& roots);

// Rebuilds the remap tables of `plan` from its dispositions. Useful after
// editing dispositions by hand.
void rebuildRemaps(const wasm::Module& module, KeepPlan& plan);

}  // namespace debloat::trace

#endif  // DEBLOAT_TRACE_KEEP_PLAN_H_
