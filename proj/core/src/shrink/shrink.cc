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

#include "debloat/shrink/shrink.h"

#include <map>
#include <string>

#include "debloat/wasm/name_section.h"

namespace debloat::shrink {

using trace::Disposition;
using trace::KeepPlan;
using wasm::ExternalKind;
using wasm::Module;
using wasm::Opcode;

wasm::Function stubBody(const wasm::Function& function) {
  wasm::Function stub;
  stub.type_index = function.type_index;
  stub.body.push_back(wasm::Instruction::simple(Opcode::Unreachable));
  return stub;
}

namespace {

class PlanApplier {
 public:
  PlanApplier(const Module& m, const KeepPlan& plan) : m_(m), plan_(plan) {}

  Module run() {
    checkShape();
    Module out;

    for (uint32_t t = 0; t < m_.types.size(); ++t) {
      if (plan_.type_remap[t]) out.types.push_back(m_.types[t]);
    }

    uint32_t func = 0;
    for (uint32_t i = 0; i < m_.imports.size(); ++i) {
      const auto& imp = m_.imports[i];
      const bool dropped = plan_.removed_imports.count(i) > 0;
      if (const auto* f = std::get_if<wasm::FunctionImport>(&imp.desc)) {
        const bool removed = plan_.disposition[func] == Disposition::Remove;
        if (removed != dropped) {
          fail("import " + std::to_string(i) +
               " disagrees with the disposition of function " +
               std::to_string(func));
        }
        ++func;
        if (removed) continue;
        wasm::Import copy = imp;
        copy.desc = wasm::FunctionImport{type(f->type_index)};
        out.imports.push_back(std::move(copy));
      } else {
        if (dropped) fail("only function imports can be removed");
        out.imports.push_back(imp);
      }
    }

    const uint32_t base = m_.importedFunctionCount();
    for (uint32_t i = 0; i < m_.functions.size(); ++i) {
      const wasm::Function& fn = m_.functions[i];
      switch (plan_.disposition[base + i]) {
        case Disposition::Remove:
          break;
        case Disposition::Stub: {
          wasm::Function stub = stubBody(fn);
          stub.type_index = type(fn.type_index);
          out.functions.push_back(std::move(stub));
          break;
        }
        case Disposition::KeepBody: {
          wasm::Function copy = fn;
          copy.type_index = type(fn.type_index);
          rewrite(copy.body);
          out.functions.push_back(std::move(copy));
          break;
        }
      }
    }

    out.tables = m_.tables;
    out.memories = m_.memories;
    for (const auto& g : m_.globals) {
      wasm::Global copy = g;
      rewrite(copy.init);
      out.globals.push_back(std::move(copy));
    }

    for (const auto& e : m_.exports) {
      wasm::Export copy = e;
      if (e.kind == ExternalKind::Function) {
        copy.index = function(e.index, "export \"" + e.name + "\"");
      } else if (e.kind == ExternalKind::Global) {
        copy.index = global(e.index);
      }
      out.exports.push_back(std::move(copy));
    }
    if (m_.start) out.start = function(*m_.start, "start");

    for (const auto& seg : m_.elements) {
      wasm::ElementSegment copy = seg;
      rewrite(copy.offset);
      for (auto& f : copy.functions) f = function(f, "element segment");
      out.elements.push_back(std::move(copy));
    }
    for (const auto& seg : m_.data) {
      wasm::DataSegment copy = seg;
      rewrite(copy.offset);
      out.data.push_back(std::move(copy));
    }

    for (const auto& c : m_.custom_sections) {
      if (c.name != wasm::kNameSectionName) continue;
      if (auto names = wasm::parseNameSection(c.bytes)) {
        wasm::CustomSection copy;
        copy.name = c.name;
        copy.after = c.after;
        copy.bytes = wasm::encodeNameSection(remapNames(*names));
        out.custom_sections.push_back(std::move(copy));
      }
    }
    return out;
  }

 private:
  [[noreturn]] static void fail(const std::string& msg) {
    throw PlanMismatch(msg);
  }

  void checkShape() const {
    const uint32_t n = m_.functionCount();
    if (plan_.disposition.size() != n || plan_.func_remap.size() != n) {
      fail("plan covers " + std::to_string(plan_.disposition.size()) +
           " functions, module has " + std::to_string(n));
    }
    if (plan_.type_remap.size() != m_.types.size()) {
      fail("plan covers " + std::to_string(plan_.type_remap.size()) +
           " types, module has " + std::to_string(m_.types.size()));
    }
    if (!plan_.global_remap.empty() &&
        plan_.global_remap.size() != m_.globalCount()) {
      fail("global remap does not match the module");
    }
    for (uint32_t f = 0; f < n; ++f) {
      if (plan_.func_remap[f].has_value() !=
          (plan_.disposition[f] != Disposition::Remove)) {
        fail("function remap disagrees with disposition of function " +
             std::to_string(f));
      }
      if (m_.isImportedFunction(f) && plan_.disposition[f] == Disposition::Stub) {
        fail("imported function " + std::to_string(f) + " cannot be stubbed");
      }
    }
  }

  uint32_t function(uint32_t f, const std::string& user) const {
    if (f >= plan_.func_remap.size() || !plan_.func_remap[f]) {
      fail(user + " references removed function " + std::to_string(f));
    }
    return *plan_.func_remap[f];
  }

  uint32_t type(uint32_t t) const {
    if (t >= plan_.type_remap.size() || !plan_.type_remap[t]) {
      fail("reference to removed type " + std::to_string(t));
    }
    return *plan_.type_remap[t];
  }

  uint32_t global(uint32_t g) const {
    if (plan_.global_remap.empty()) return g;
    if (g >= plan_.global_remap.size() || !plan_.global_remap[g]) {
      fail("reference to removed global " + std::to_string(g));
    }
    return *plan_.global_remap[g];
  }

  void rewrite(wasm::Expression& code) const {
    wasm::forEachInstruction(code, [&](wasm::Instruction& ins) {
      switch (ins.opcode) {
        case Opcode::Call:
          ins.index = function(ins.index, "kept body");
          break;
        case Opcode::CallIndirect:
          ins.index = type(ins.index);
          break;
        case Opcode::GlobalGet:
        case Opcode::GlobalSet:
          ins.index = global(ins.index);
          break;
        default:
          break;
      }
    });
  }

  wasm::NameSection remapNames(const wasm::NameSection& in) const {
    wasm::NameSection out;
    out.module_name = in.module_name;
    for (const auto& [f, name] : in.function_names) {
      if (f < plan_.func_remap.size() && plan_.func_remap[f]) {
        out.function_names[*plan_.func_remap[f]] = name;
      }
    }
    for (const auto& [f, locals] : in.local_names) {
      if (f >= plan_.func_remap.size() || !plan_.func_remap[f]) continue;
      auto kept = locals;
      if (plan_.disposition[f] == Disposition::Stub) {
        // A stub keeps only its parameters.
        const size_t params = m_.types[m_.functionTypeIndex(f)].params.size();
        std::erase_if(kept, [&](const auto& kv) { return kv.first >= params; });
      }
      if (!kept.empty()) out.local_names[*plan_.func_remap[f]] = std::move(kept);
    }
    return out;
  }

  const Module& m_;
  const KeepPlan& plan_;
};

}  // namespace

Module applyPlan(const Module& module, const KeepPlan& plan) {
  return PlanApplier(module, plan).run();
}

ShrinkStats shrinkStats(wasm::ByteView before, wasm::ByteView after,
                        const KeepPlan& plan) {
  const Module original = wasm::decode(before);
  auto size_before = wasm::sectionSizes(before);
  auto size_after = wasm::sectionSizes(after);
  const auto code = static_cast<uint8_t>(wasm::SectionId::Code);

  ShrinkStats s;
  s.functions_kept_body = plan.count(Disposition::KeepBody, original, true);
  s.functions_stubbed = plan.count(Disposition::Stub, original, true);
  s.functions_removed = plan.count(Disposition::Remove, original, true);
  s.imports_removed = plan.removed_imports.size();
  for (const auto& t : plan.type_remap) {
    if (!t) ++s.types_removed;
  }
  auto total = [](const std::map<uint8_t, size_t>& sizes) {
    size_t sum = wasm::kHeaderSize;
    for (const auto& [id, n] : sizes) sum += n;
    return sum;
  };
  s.bytes_before = total(size_before);
  s.bytes_after = total(size_after);
  s.code_bytes_before = size_before.count(code) ? size_before[code] : 0;
  s.code_bytes_after = size_after.count(code) ? size_after[code] : 0;
  return s;
}

}  // namespace debloat::shrink
