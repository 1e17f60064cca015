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

#ifndef DEBLOAT_WASM_TYPES_H_
#define DEBLOAT_WASM_TYPES_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace debloat::wasm {

// Value types of the MVP, tagged with their binary encoding.
enum class ValType : uint8_t {
  I32 = 0x7F,
  I64 = 0x7E,
  F32 = 0x7D,
  F64 = 0x7C,
};

std::string_view toString(ValType type);
std::optional<ValType> valTypeFromByte(uint8_t byte);

struct FuncType {
  std::vector<ValType> params;
  std::vector<ValType> results;

  bool operator==(const FuncType&) const = default;
};

std::string toString(const FuncType& type);

struct Limits {
  uint32_t min = 0;
  std::optional<uint32_t> max;

  bool operator==(const Limits&) const = default;
};

// The MVP has a single element type (funcref), so a table is its limits.
struct TableType {
  Limits limits;

  bool operator==(const TableType&) const = default;
};

// Limits are counted in 64 KiB pages.
struct MemoryType {
  Limits limits;

  bool operator==(const MemoryType&) const = default;
};

struct GlobalType {
  ValType type = ValType::I32;
  bool is_mutable = false;

  bool operator==(const GlobalType&) const = default;
};

enum class ExternalKind : uint8_t {
  Function = 0,
  Table = 1,
  Memory = 2,
  Global = 3,
};

std::string_view toString(ExternalKind kind);

inline constexpr uint32_t kPageSize = 65536;
inline constexpr uint32_t kMaxPages = 65536;

}  // namespace debloat::wasm

#endif  // DEBLOAT_WASM_TYPES_H_
