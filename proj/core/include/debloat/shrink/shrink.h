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

#ifndef DEBLOAT_SHRINK_SHRINK_H_
#define DEBLOAT_SHRINK_SHRINK_H_

#include <cstddef>
#include <stdexcept>

#include "debloat/trace/keep_plan.h"
#include "debloat/wasm/binary.h"
#include "debloat/wasm/module.h"

namespace debloat::shrink {

class PlanMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ShrinkStats {
  // Over defined functions.
  size_t functions_kept_body = 0;
  size_t functions_stubbed = 0;
  size_t functions_removed = 0;
  size_t imports_removed = 0;
  size_t types_removed = 0;
  size_t bytes_before = 0;
  size_t bytes_after = 0;
  size_t code_bytes_before = 0;
  size_t code_bytes_after = 0;

  bool operator==(const ShrinkStats&) const = default;
};

// Same signature, no locals, body [unreachable].
wasm::Function stubBody(const wasm::Function& function);

// Rewrites `module` according to `plan`: stubs and removes functions, drops
// removed imports and unused types, and renumbers every function and type
// reference. Custom sections other than "name" are dropped; the name section
// is filtered and renumbered. Throws PlanMismatch when the plan does not fit
// the module or would leave a dangling reference.
wasm::Module applyPlan(const wasm::Module& module,
                       const trace::KeepPlan& plan);

// Counts come from the plan, byte figures from the section sizes of the two
// encodings. Throws MalformedBinary.
ShrinkStats shrinkStats(wasm::ByteView before, wasm::ByteView after,
                        const trace::KeepPlan& plan);

}  // namespace debloat::shrink

#endif  // DEBLOAT_SHRINK_SHRINK_H_
