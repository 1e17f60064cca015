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

#ifndef DEBLOAT_WASM_MODULE_H_
#define DEBLOAT_WASM_MODULE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "debloat/wasm/instruction.h"
#include "debloat/wasm/types.h"

namespace debloat::wasm {

// Section ids of the MVP binary format, in their mandatory order.
enum class SectionId : uint8_t {
  Custom = 0,
  Type = 1,
  Import = 2,
  Function = 3,
  Table = 4,
  Memory = 5,
  Global = 6,
  Export = 7,
  Start = 8,
  Element = 9,
  Code = 10,
  Data = 11,
};

std::string_view toString(SectionId id);

struct FunctionImport {
  uint32_t type_index = 0;

  bool operator==(const FunctionImport&) const = default;
};

using ImportDesc =
    std::variant<FunctionImport, TableType, MemoryType, GlobalType>;

struct Import {
  std::string module;
  std::string field;
  ImportDesc desc;

  ExternalKind kind() const {
    return static_cast<ExternalKind>(desc.index());
  }
  bool operator==(const Import&) const = default;
};

struct Function {
  uint32_t type_index = 0;
  std::vector<ValType> locals;  // declared locals, parameters excluded
  Expression body;

  bool operator==(const Function&) const = default;
};

struct Global {
  GlobalType type;
  Expression init;

  bool operator==(const Global&) const = default;
};

struct Export {
  std::string name;
  ExternalKind kind = ExternalKind::Function;
  uint32_t index = 0;

  bool operator==(const Export&) const = default;
};

struct ElementSegment {
  uint32_t table_index = 0;
  Expression offset;
  std::vector<uint32_t> functions;

  bool operator==(const ElementSegment&) const = default;
};

struct DataSegment {
  uint32_t memory_index = 0;
  Expression offset;
  std::vector<uint8_t> bytes;

  bool operator==(const DataSegment&) const = default;
};

// A custom section is kept verbatim. `after` is the id of the last non-empty
// known section preceding it (Custom when it came first), which lets the
// encoder put it back in the same relative position.
struct CustomSection {
  std::string name;
  std::vector<uint8_t> bytes;
  SectionId after = SectionId::Custom;

  bool operator==(const CustomSection&) const = default;
};

// Decoded WebAssembly 1.0 module. Every index space (functions, tables,
// memories, globals) counts imports first, then local definitions.
struct Module {
  std::vector<FuncType> types;
  std::vector<Import> imports;
  std::vector<Function> functions;
  std::vector<TableType> tables;
  std::vector<MemoryType> memories;
  std::vector<Global> globals;
  std::vector<Export> exports;
  std::optional<uint32_t> start;
  std::vector<ElementSegment> elements;
  std::vector<DataSegment> data;
  std::vector<CustomSection> custom_sections;

  bool operator==(const Module&) const = default;

  uint32_t importCount(ExternalKind kind) const;
  uint32_t importedFunctionCount() const {
    return importCount(ExternalKind::Function);
  }
  uint32_t functionCount() const {
    return importedFunctionCount() + static_cast<uint32_t>(functions.size());
  }
  uint32_t tableCount() const {
    return importCount(ExternalKind::Table) +
           static_cast<uint32_t>(tables.size());
  }
  uint32_t memoryCount() const {
    return importCount(ExternalKind::Memory) +
           static_cast<uint32_t>(memories.size());
  }
  uint32_t globalCount() const {
    return importCount(ExternalKind::Global) +
           static_cast<uint32_t>(globals.size());
  }

  bool isImportedFunction(uint32_t func_index) const {
    return func_index < importedFunctionCount();
  }

  // Type index of a function in the combined index space. Requires
  // func_index < functionCount().
  uint32_t functionTypeIndex(uint32_t func_index) const;

  // Position in `imports` of an imported function. Requires
  // isImportedFunction(func_index).
  uint32_t importPosition(uint32_t func_index) const;

  // Definition of a locally defined function given its combined index.
  const Function& definedFunction(uint32_t func_index) const {
    return functions[func_index - importedFunctionCount()];
  }

  // Type of a global in the combined index space.
  GlobalType globalType(uint32_t global_index) const;

  // Limits of table/memory 0, whether imported or defined.
  std::optional<TableType> table0() const;
  std::optional<MemoryType> memory0() const;

  const Export* findExport(std::string_view name) const;
};

}  // namespace debloat::wasm

#endif  // DEBLOAT_WASM_MODULE_H_
