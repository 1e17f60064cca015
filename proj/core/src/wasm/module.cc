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

#include "debloat/wasm/module.h"

#include <array>
#include <cassert>

#include "debloat/wasm/opcodes.h"

namespace debloat::wasm {

std::string_view toString(ValType type) {
  switch (type) {
    case ValType::I32:
      return "i32";
    case ValType::I64:
      return "i64";
    case ValType::F32:
      return "f32";
    case ValType::F64:
      return "f64";
  }
  return "?";
}

std::optional<ValType> valTypeFromByte(uint8_t byte) {
  switch (byte) {
    case 0x7F:
    case 0x7E:
    case 0x7D:
    case 0x7C:
      return static_cast<ValType>(byte);
    default:
      return std::nullopt;
  }
}

std::string toString(const FuncType& type) {
  std::string out = "(";
  for (size_t i = 0; i < type.params.size(); ++i) {
    if (i) out += ",";
    out += toString(type.params[i]);
  }
  out += ")->(";
  for (size_t i = 0; i < type.results.size(); ++i) {
    if (i) out += ",";
    out += toString(type.results[i]);
  }
  out += ")";
  return out;
}

std::string_view toString(ExternalKind kind) {
  switch (kind) {
    case ExternalKind::Function:
      return "func";
    case ExternalKind::Table:
      return "table";
    case ExternalKind::Memory:
      return "memory";
    case ExternalKind::Global:
      return "global";
  }
  return "?";
}

std::string_view toString(SectionId id) {
  static constexpr std::array<std::string_view, 12> kNames = {
      "custom", "type",   "import", "function", "table", "memory",
      "global", "export", "start",  "element",  "code",  "data"};
  auto i = static_cast<size_t>(id);
  return i < kNames.size() ? kNames[i] : "unknown";
}

namespace {

struct OpcodeTable {
  std::array<std::optional<OpcodeInfo>, 256> entries;

  OpcodeTable() {
#define DEBLOAT_OPCODE_INFO(name, byte, text, imm, in, out) \
  entries[byte] = OpcodeInfo{text, Immediate::imm, in, out};
    DEBLOAT_WASM_OPCODES(DEBLOAT_OPCODE_INFO)
#undef DEBLOAT_OPCODE_INFO
  }
};

const OpcodeTable& opcodeTable() {
  static const OpcodeTable table;
  return table;
}

}  // namespace

std::optional<Opcode> opcodeFromByte(uint8_t byte) {
  if (!opcodeTable().entries[byte]) return std::nullopt;
  return static_cast<Opcode>(byte);
}

const OpcodeInfo& info(Opcode op) {
  const auto& entry = opcodeTable().entries[static_cast<uint8_t>(op)];
  assert(entry);
  return *entry;
}

uint32_t memoryAccessSize(Opcode op) {
  switch (op) {
    case Opcode::I32Load8S:
    case Opcode::I32Load8U:
    case Opcode::I64Load8S:
    case Opcode::I64Load8U:
    case Opcode::I32Store8:
    case Opcode::I64Store8:
      return 1;
    case Opcode::I32Load16S:
    case Opcode::I32Load16U:
    case Opcode::I64Load16S:
    case Opcode::I64Load16U:
    case Opcode::I32Store16:
    case Opcode::I64Store16:
      return 2;
    case Opcode::I32Load:
    case Opcode::F32Load:
    case Opcode::I64Load32S:
    case Opcode::I64Load32U:
    case Opcode::I32Store:
    case Opcode::F32Store:
    case Opcode::I64Store32:
      return 4;
    case Opcode::I64Load:
    case Opcode::F64Load:
    case Opcode::I64Store:
    case Opcode::F64Store:
      return 8;
    default:
      return 0;
  }
}

uint32_t Module::importCount(ExternalKind kind) const {
  uint32_t n = 0;
  for (const auto& imp : imports) {
    if (imp.kind() == kind) ++n;
  }
  return n;
}

uint32_t Module::functionTypeIndex(uint32_t func_index) const {
  uint32_t seen = 0;
  for (const auto& imp : imports) {
    if (const auto* f = std::get_if<FunctionImport>(&imp.desc)) {
      if (seen == func_index) return f->type_index;
      ++seen;
    }
  }
  return functions[func_index - seen].type_index;
}

uint32_t Module::importPosition(uint32_t func_index) const {
  uint32_t seen = 0;
  for (uint32_t i = 0; i < imports.size(); ++i) {
    if (imports[i].kind() != ExternalKind::Function) continue;
    if (seen == func_index) return i;
    ++seen;
  }
  assert(false && "not an imported function");
  return 0;
}

GlobalType Module::globalType(uint32_t global_index) const {
  uint32_t seen = 0;
  for (const auto& imp : imports) {
    if (const auto* g = std::get_if<GlobalType>(&imp.desc)) {
      if (seen == global_index) return *g;
      ++seen;
    }
  }
  return globals[global_index - seen].type;
}

std::optional<TableType> Module::table0() const {
  for (const auto& imp : imports) {
    if (const auto* t = std::get_if<TableType>(&imp.desc)) return *t;
  }
  if (!tables.empty()) return tables.front();
  return std::nullopt;
}

std::optional<MemoryType> Module::memory0() const {
  for (const auto& imp : imports) {
    if (const auto* m = std::get_if<MemoryType>(&imp.desc)) return *m;
  }
  if (!memories.empty()) return memories.front();
  return std::nullopt;
}

const Export* Module::findExport(std::string_view name) const {
  for (const auto& exp : exports) {
    if (exp.name == name) return &exp;
  }
  return nullptr;
}

}  // namespace debloat::wasm
