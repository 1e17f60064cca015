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

#ifndef DEBLOAT_WASM_INSTRUCTION_H_
#define DEBLOAT_WASM_INSTRUCTION_H_

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "debloat/wasm/opcodes.h"
#include "debloat/wasm/types.h"

namespace debloat::wasm {

struct MemArg {
  uint32_t align = 0;  // log2 of the alignment hint
  uint32_t offset = 0;

  bool operator==(const MemArg&) const = default;
};

// One instruction in tree form. Structured instructions own their nested
// bodies, so a function body is a well-nested tree rather than a flat stream
// with explicit `end` markers.
//
// Which fields are meaningful depends on info(opcode).immediate:
//   Index        -> index
//   CallIndirect -> index (type index)
//   BrTable      -> targets + index (default label)
//   MemArg       -> memarg
//   I32/I64/F32/F64 -> bits (raw little-endian bit pattern, zero-extended)
//   Block        -> block_result, body, else_body/has_else (`if` only)
struct Instruction {
  Opcode opcode = Opcode::Nop;
  uint32_t index = 0;
  MemArg memarg;
  uint64_t bits = 0;
  std::optional<ValType> block_result;
  std::vector<uint32_t> targets;
  std::vector<Instruction> body;
  std::vector<Instruction> else_body;
  bool has_else = false;

  bool operator==(const Instruction&) const = default;

  static Instruction simple(Opcode op) {
    Instruction i;
    i.opcode = op;
    return i;
  }
  static Instruction withIndex(Opcode op, uint32_t index) {
    Instruction i;
    i.opcode = op;
    i.index = index;
    return i;
  }
  static Instruction memory(Opcode op, uint32_t align, uint32_t offset) {
    Instruction i;
    i.opcode = op;
    i.memarg = {align, offset};
    return i;
  }
  static Instruction i32Const(int32_t v) {
    Instruction i;
    i.opcode = Opcode::I32Const;
    i.bits = static_cast<uint32_t>(v);
    return i;
  }
  static Instruction i64Const(int64_t v) {
    Instruction i;
    i.opcode = Opcode::I64Const;
    i.bits = static_cast<uint64_t>(v);
    return i;
  }
  static Instruction f32Const(float v) {
    Instruction i;
    i.opcode = Opcode::F32Const;
    i.bits = std::bit_cast<uint32_t>(v);
    return i;
  }
  static Instruction f64Const(double v) {
    Instruction i;
    i.opcode = Opcode::F64Const;
    i.bits = std::bit_cast<uint64_t>(v);
    return i;
  }
  static Instruction block(Opcode op, std::optional<ValType> result,
                           std::vector<Instruction> body) {
    Instruction i;
    i.opcode = op;
    i.block_result = result;
    i.body = std::move(body);
    return i;
  }
  static Instruction ifElse(std::optional<ValType> result,
                            std::vector<Instruction> then_body,
                            std::vector<Instruction> else_body) {
    Instruction i = block(Opcode::If, result, std::move(then_body));
    i.else_body = std::move(else_body);
    i.has_else = true;
    return i;
  }
  static Instruction brTable(std::vector<uint32_t> targets,
                             uint32_t default_label) {
    Instruction i;
    i.opcode = Opcode::BrTable;
    i.targets = std::move(targets);
    i.index = default_label;
    return i;
  }
};

using Expression = std::vector<Instruction>;

// Calls `fn` on every instruction in `code`, nested bodies included, in
// pre-order.
template <typename Code, typename Fn>
void forEachInstruction(Code& code, Fn&& fn) {
  for (auto& ins : code) {
    fn(ins);
    forEachInstruction(ins.body, fn);
    forEachInstruction(ins.else_body, fn);
  }
}

}  // namespace debloat::wasm

#endif  // DEBLOAT_WASM_INSTRUCTION_H_
