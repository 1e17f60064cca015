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

#ifndef DEBLOAT_INTERP_VALUE_H_
#define DEBLOAT_INTERP_VALUE_H_

#include <bit>
#include <cstdint>
#include <string>

#include "debloat/wasm/types.h"

namespace debloat::interp {

using wasm::ValType;

// A typed WebAssembly value. `bits` holds the raw little-endian payload,
// zero-extended to 64 bits for 32-bit types; equality is bitwise, so two
// NaNs compare equal only when their payloads match.
struct Value {
  ValType type = ValType::I32;
  uint64_t bits = 0;

  bool operator==(const Value&) const = default;

  static Value i32(int32_t v) { return {ValType::I32, static_cast<uint32_t>(v)}; }
  static Value i64(int64_t v) { return {ValType::I64, static_cast<uint64_t>(v)}; }
  static Value f32(float v) { return {ValType::F32, std::bit_cast<uint32_t>(v)}; }
  static Value f64(double v) { return {ValType::F64, std::bit_cast<uint64_t>(v)}; }
  static Value fromBits(ValType type, uint64_t bits) {
    if (type == ValType::I32 || type == ValType::F32) bits &= 0xFFFFFFFFu;
    return {type, bits};
  }

  int32_t asI32() const { return static_cast<int32_t>(static_cast<uint32_t>(bits)); }
  int64_t asI64() const { return static_cast<int64_t>(bits); }
  float asF32() const { return std::bit_cast<float>(static_cast<uint32_t>(bits)); }
  double asF64() const { return std::bit_cast<double>(bits); }
};

// "i32:5", "i64:-7", "f32:1.5", "f64:nan:0x7ff8000000000000".
std::string toString(const Value& v);

}  // namespace debloat::interp

#endif  // DEBLOAT_INTERP_VALUE_H_
