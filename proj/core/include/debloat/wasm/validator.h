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

#ifndef DEBLOAT_WASM_VALIDATOR_H_
#define DEBLOAT_WASM_VALIDATOR_H_

#include <string>
#include <vector>

#include "debloat/wasm/module.h"

namespace debloat::wasm {

struct ValidationError {
  std::string location;  // e.g. "func[3] instr 7 (i32.add)" or "export[0]"
  std::string message;

  bool operator==(const ValidationError&) const = default;
};

struct ValidationReport {
  std::vector<ValidationError> errors;

  bool ok() const { return errors.empty(); }
  std::string summary() const;
};

// Structural and type validation per the 1.0 rules: index bounds in every
// index space, operand-stack typing of function bodies and constant
// expressions, unique export names, at most one table and one memory, and a
// [] -> [] start function. Each function body contributes at most one error.
ValidationReport validateModule(const Module& module);

}  // namespace debloat::wasm

#endif  // DEBLOAT_WASM_VALIDATOR_H_
