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

#ifndef DEBLOAT_INTERP_HOST_H_
#define DEBLOAT_INTERP_HOST_H_

#include <cstdint>
#include <string>
#include <vector>

#include "debloat/wasm/types.h"

namespace debloat::interp {

enum class HostBehavior : uint8_t {
  Record,       // append (name, args) to the host-call log and return
  RecordTrap,   // append to the log, then trap with TrapKind::Unreachable
};

struct HostFunction {
  std::string module;
  std::string field;
  wasm::FuncType type;
  HostBehavior behavior = HostBehavior::Record;
};

// Functions the host offers for import. Only function imports can be
// satisfied; a module importing a table, memory or global fails to link.
struct HostConfig {
  std::vector<HostFunction> functions;

  // env.log(i32)->(), env.log64(i64)->(), env.abort()->() (traps).
  static HostConfig standard();

  const HostFunction* find(std::string_view module,
                           std::string_view field) const;
};

}  // namespace debloat::interp

#endif  // DEBLOAT_INTERP_HOST_H_
