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

#include "debloat/trace/keep_plan.h"

#include <string>

namespace debloat::trace {

using wasm::ExternalKind;
using wasm::Module;
using wasm::Opcode;

IndexOutOfRange::IndexOutOfRange(uint32_t index, uint32_t function_count)
    : std::runtime_error("trace names function " + std::to_string(index) +
                         " but the module has " +
                         std::to_string(function_count) + " functions"),
      index_(index) {}

std::string_view toString(Disposition d) {
  switch (d) {
    case Disposition::KeepBody:
      return "keep";
    case Disposition::Stub:
      return "stub";
    case Disposition::Remove:
      return "remove";
  }
  return "?";
}

size_t KeepPlan::count(Disposition d, const Module& m,
                       bool defined_only) const {
  size_t n = 0;
  const uint32_t first = defined_only ? m.importedFunctionCount() : 0;
  for (uint32_t f = first; f < disposition.size(); ++f) {
    if (disposition[f] == d) ++n;
  }
  return n;
}

KeepRoots consolidate(const interp::ExecutionTrace& trace, const Module& m) {
  const uint32_t n = m.functionCount();
  for (const auto* set : {&trace.entered, &trace.call_targets,
                          &trace.table_observed}) {
    if (!set->empty() && *set->rbegin() >= n) {
      throw IndexOutOfRange(*set->rbegin(), n);
    }
  }

  KeepRoots roots;
  auto observe = [&](uint32_t f) {
    if (m.isImportedFunction(f)) {
      roots.decl_keep.insert(f);
    } else {
      roots.body_keep.insert(f);
    }
  };
  for (uint32_t f : trace.entered) observe(f);
  for (uint32_t f : trace.call_targets) observe(f);
  for (uint32_t f : trace.table_observed) observe(f);
  if (m.start) observe(*m.start);

  roots.decl_keep.insert(roots.body_keep.begin(), roots.body_keep.end());
  for (const auto& e : m.exports) {
    if (e.kind == ExternalKind::Function) roots.decl_keep.insert(e.index);
  }
  for (const auto& seg : m.elements) {
    roots.decl_keep.insert(seg.functions.begin(), seg.functions.end());
  }
  return roots;
}

KeepPlan closeReferences(const Module& m, const KeepRoots& roots) {
  // Only KeepBody bodies contribute references and body_keep is fixed, so a
  // single sweep over them reaches the fixed point.
  std::set<uint32_t> referenced = roots.decl_keep;
  for (uint32_t f : roots.body_keep) {
    if (m.isImportedFunction(f)) continue;
    wasm::forEachInstruction(m.definedFunction(f).body,
                             [&](const wasm::Instruction& ins) {
                               if (ins.opcode == Opcode::Call) {
                                 referenced.insert(ins.index);
                               }
                             });
  }

  KeepPlan plan;
  const uint32_t n = m.functionCount();
  plan.disposition.assign(n, Disposition::Remove);
  for (uint32_t f = 0; f < n; ++f) {
    if (m.isImportedFunction(f)) {
      if (referenced.count(f)) plan.disposition[f] = Disposition::KeepBody;
    } else if (roots.body_keep.count(f)) {
      plan.disposition[f] = Disposition::KeepBody;
    } else if (referenced.count(f)) {
      plan.disposition[f] = Disposition::Stub;
    }
  }
  rebuildRemaps(m, plan);
  return plan;
}

void rebuildRemaps(const Module& m, KeepPlan& plan) {
  const uint32_t n = m.functionCount();
  plan.func_remap.assign(n, std::nullopt);
  plan.removed_imports.clear();
  uint32_t next = 0;
  for (uint32_t f = 0; f < n; ++f) {
    if (plan.disposition[f] == Disposition::Remove) {
      if (m.isImportedFunction(f)) plan.removed_imports.insert(m.importPosition(f));
      continue;
    }
    plan.func_remap[f] = next++;
  }

  std::vector<bool> type_used(m.types.size(), false);
  for (uint32_t f = 0; f < n; ++f) {
    if (plan.disposition[f] == Disposition::Remove) continue;
    type_used[m.functionTypeIndex(f)] = true;
    if (m.isImportedFunction(f) || plan.disposition[f] != Disposition::KeepBody) {
      continue;
    }
    wasm::forEachInstruction(m.definedFunction(f).body,
                             [&](const wasm::Instruction& ins) {
                               if (ins.opcode == Opcode::CallIndirect) {
                                 type_used[ins.index] = true;
                               }
                             });
  }
  plan.type_remap.assign(m.types.size(), std::nullopt);
  uint32_t next_type = 0;
  for (uint32_t t = 0; t < m.types.size(); ++t) {
    if (type_used[t]) plan.type_remap[t] = next_type++;
  }

  plan.global_remap.resize(m.globalCount());
  for (uint32_t g = 0; g < m.globalCount(); ++g) plan.global_remap[g] = g;
}

}  // namespace debloat::trace
