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

#include "debloat/interp/instance.h"

#include <bit>
#include <cassert>
#include <cmath>
#include <cstring>
#include <limits>
#include <type_traits>

namespace debloat::interp {

using wasm::Expression;
using wasm::FuncType;
using wasm::Instruction;
using wasm::Module;
using wasm::Opcode;

UnknownExport::UnknownExport(std::string name)
    : std::runtime_error("unknown export \"" + name + "\""),
      name_(std::move(name)) {}

SignatureMismatch::SignatureMismatch(std::string export_name,
                                     std::string expected, std::string got)
    : std::runtime_error("signature mismatch invoking \"" + export_name +
                         "\": expected " + expected + ", got " + got),
      expected_(std::move(expected)),
      got_(std::move(got)) {}

InstantiationTrap::InstantiationTrap(Trap trap)
    : std::runtime_error("instantiation trapped: " +
                         std::string(toString(trap.kind))),
      trap_(trap) {}

uint64_t fnv1a64(std::span<const uint8_t> bytes) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  return h;
}

uint32_t checkInvocation(const Module& module, std::string_view name,
                         std::span<const Value> args) {
  const wasm::Export* exp = module.findExport(name);
  if (!exp || exp->kind != wasm::ExternalKind::Function) {
    throw UnknownExport(std::string(name));
  }
  const FuncType& type = module.types[module.functionTypeIndex(exp->index)];
  bool match = type.params.size() == args.size();
  for (size_t i = 0; match && i < args.size(); ++i) {
    match = args[i].type == type.params[i];
  }
  if (!match) {
    FuncType got;
    for (const auto& a : args) got.params.push_back(a.type);
    std::string expected = "(";
    std::string actual = "(";
    for (size_t i = 0; i < type.params.size(); ++i) {
      expected += (i ? "," : "") + std::string(wasm::toString(type.params[i]));
    }
    for (size_t i = 0; i < args.size(); ++i) {
      actual += (i ? "," : "") + std::string(wasm::toString(args[i].type));
    }
    throw SignatureMismatch(std::string(name), expected + ")", actual + ")");
  }
  return exp->index;
}

namespace {

struct TrapSignal {
  TrapKind kind;
};

[[noreturn]] void trap(TrapKind kind) { throw TrapSignal{kind}; }

enum class Flow : uint8_t { Next, Branch, Return };

constexpr uint32_t kCanonicalNan32 = 0x7FC00000u;
constexpr uint64_t kCanonicalNan64 = 0x7FF8000000000000ull;

uint32_t canon(float f) {
  return std::isnan(f) ? kCanonicalNan32 : std::bit_cast<uint32_t>(f);
}
uint64_t canon(double d) {
  return std::isnan(d) ? kCanonicalNan64 : std::bit_cast<uint64_t>(d);
}

template <typename F>
F fmin(F a, F b) {
  if (std::isnan(a) || std::isnan(b)) return std::numeric_limits<F>::quiet_NaN();
  if (a == 0 && b == 0) return std::signbit(a) ? a : b;
  return a < b ? a : b;
}

template <typename F>
F fmax(F a, F b) {
  if (std::isnan(a) || std::isnan(b)) return std::numeric_limits<F>::quiet_NaN();
  if (a == 0 && b == 0) return std::signbit(a) ? b : a;
  return a > b ? a : b;
}

// Float -> integer truncation with the trapping rules: NaN and out-of-range
// inputs both report IntegerOverflow. long double is wide enough to hold
// every 64-bit bound exactly.
template <typename Int, typename F>
Int truncate(F x) {
  if (std::isnan(x)) trap(TrapKind::IntegerOverflow);
  long double t = std::trunc(static_cast<long double>(x));
  if (t < static_cast<long double>(std::numeric_limits<Int>::min()) ||
      t > static_cast<long double>(std::numeric_limits<Int>::max())) {
    trap(TrapKind::IntegerOverflow);
  }
  return static_cast<Int>(t);
}

}  // namespace

struct Instance::State {
  State(const Module& m, const HostConfig& host, InstanceLimits lim)
      : module(m), limits(lim) {
    const uint32_t nfuncs = m.functionCount();
    func_types.reserve(nfuncs);
    for (const auto& imp : m.imports) {
      if (imp.kind() != wasm::ExternalKind::Function) {
        throw LinkError("cannot satisfy " + std::string(wasm::toString(imp.kind())) +
                        " import \"" + imp.module + "." + imp.field + "\"");
      }
      uint32_t ti = std::get<wasm::FunctionImport>(imp.desc).type_index;
      const HostFunction* hf = host.find(imp.module, imp.field);
      if (!hf) {
        throw LinkError("unknown import \"" + imp.module + "." + imp.field + "\"");
      }
      if (hf->type != m.types[ti]) {
        throw LinkError("incompatible import type for \"" + imp.module + "." +
                        imp.field + "\": expected " + wasm::toString(hf->type) +
                        ", got " + wasm::toString(m.types[ti]));
      }
      host_funcs.push_back(*hf);
      func_types.push_back(ti);
    }
    for (const auto& f : m.functions) func_types.push_back(f.type_index);

    if (auto mem = m.memory0()) {
      has_memory = true;
      memory_max = mem->limits.max.value_or(wasm::kMaxPages);
      if (mem->limits.min > limits.max_memory_pages) {
        throw LinkError("memory of " + std::to_string(mem->limits.min) +
                        " pages exceeds the host limit");
      }
      memory.assign(size_t{mem->limits.min} * wasm::kPageSize, 0);
    }
    if (auto tab = m.table0()) {
      has_table = true;
      table.assign(tab->limits.min, std::nullopt);
    }
    for (const auto& g : m.globals) globals.push_back(evalConst(g.init));

    entered.assign(nfuncs, 0);
    call_targets.assign(nfuncs, 0);
    table_observed.assign(nfuncs, 0);
  }

  uint64_t evalConst(const Expression& e) const {
    // Validated constant expressions are a single const; global.get can only
    // name imported globals, which never link.
    assert(e.size() == 1);
    return e.front().bits;
  }

  std::optional<Trap> initialize(uint64_t budget) {
    assert(!initialized);
    initialized = true;
    std::vector<std::pair<uint32_t, const wasm::ElementSegment*>> elems;
    for (const auto& seg : module.elements) {
      uint32_t off = static_cast<uint32_t>(evalConst(seg.offset));
      if (uint64_t{off} + seg.functions.size() > table.size()) {
        return Trap{TrapKind::OutOfBoundsTable, kNoFunction};
      }
      elems.emplace_back(off, &seg);
    }
    std::vector<std::pair<uint32_t, const wasm::DataSegment*>> datas;
    for (const auto& seg : module.data) {
      uint32_t off = static_cast<uint32_t>(evalConst(seg.offset));
      if (uint64_t{off} + seg.bytes.size() > memory.size()) {
        return Trap{TrapKind::OutOfBoundsMemory, kNoFunction};
      }
      datas.emplace_back(off, &seg);
    }
    for (const auto& [off, seg] : elems) {
      for (size_t i = 0; i < seg->functions.size(); ++i) {
        table[off + i] = seg->functions[i];
      }
    }
    for (const auto& [off, seg] : datas) {
      if (!seg->bytes.empty()) {
        std::memcpy(memory.data() + off, seg->bytes.data(), seg->bytes.size());
      }
    }
    if (module.start) {
      auto outcome = run(*module.start, {}, budget);
      if (auto* t = std::get_if<Trap>(&outcome)) return *t;
    }
    return std::nullopt;
  }

  InvocationOutcome run(uint32_t func, std::span<const Value> args,
                        uint64_t budget) {
    fuel = budget;
    for (const auto& a : args) stack.push_back(a.bits);
    try {
      call(func, /*via_call=*/false);
    } catch (const TrapSignal& t) {
      uint32_t at = call_stack.empty() ? func : call_stack.back();
      resetExecution();
      return Trap{t.kind, at};
    }
    const FuncType& type = module.types[func_types[func]];
    Results r;
    for (size_t i = 0; i < type.results.size(); ++i) {
      r.values.push_back(Value::fromBits(
          type.results[i], stack[stack.size() - type.results.size() + i]));
    }
    resetExecution();
    return r;
  }

  void resetExecution() {
    stack.clear();
    call_stack.clear();
    locals.clear();
    locals_base = 0;
    depth = 0;
  }

  // --- operand stack -------------------------------------------------------

  uint32_t pop32() {
    uint32_t v = static_cast<uint32_t>(stack.back());
    stack.pop_back();
    return v;
  }
  uint64_t pop64() {
    uint64_t v = stack.back();
    stack.pop_back();
    return v;
  }
  float popF32() { return std::bit_cast<float>(pop32()); }
  double popF64() { return std::bit_cast<double>(pop64()); }
  void push32(uint32_t v) { stack.push_back(v); }
  void push64(uint64_t v) { stack.push_back(v); }
  void pushBool(bool b) { stack.push_back(b ? 1 : 0); }

  // --- memory --------------------------------------------------------------

  uint8_t* address(uint32_t base, uint32_t offset, uint32_t size) {
    uint64_t ea = uint64_t{base} + offset;
    if (ea + size > memory.size()) trap(TrapKind::OutOfBoundsMemory);
    return memory.data() + ea;
  }

  template <typename T>
  T load(const Instruction& ins) {
    uint32_t base = pop32();
    T v;
    std::memcpy(&v, address(base, ins.memarg.offset, sizeof(T)), sizeof(T));
    return v;
  }

  template <typename T>
  void store(const Instruction& ins, T v) {
    uint32_t base = pop32();
    std::memcpy(address(base, ins.memarg.offset, sizeof(T)), &v, sizeof(T));
  }

  void enterNested() {
    if (++depth > limits.max_depth) trap(TrapKind::StackExhausted);
  }

  // --- calls ---------------------------------------------------------------

  void call(uint32_t f, bool via_call) {
    enterNested();
    const FuncType& type = module.types[func_types[f]];
    if (module.isImportedFunction(f)) {
      callHost(f, type);
      --depth;
      return;
    }
    const wasm::Function& fn = module.definedFunction(f);
    call_stack.push_back(f);
    if (fn.body.empty() || fuel > 0) {
      entered[f] = 1;
      if (via_call) call_targets[f] = 1;
    }

    const size_t nparams = type.params.size();
    const size_t saved_base = locals_base;
    const size_t base = locals.size();
    locals.resize(base + nparams + fn.locals.size(), 0);
    std::memcpy(locals.data() + base, stack.data() + stack.size() - nparams,
                nparams * sizeof(uint64_t));
    stack.resize(stack.size() - nparams);
    locals_base = base;

    const size_t height = stack.size();
    exec(fn.body);
    if (!type.results.empty()) {
      uint64_t result = stack.back();
      stack.resize(height);
      stack.push_back(result);
    } else {
      stack.resize(height);
    }

    locals.resize(base);
    locals_base = saved_base;
    call_stack.pop_back();
    --depth;
  }

  void callHost(uint32_t f, const FuncType& type) {
    const HostFunction& h = host_funcs[f];
    call_targets[f] = 1;
    HostCall hc;
    hc.import_name = h.module + "." + h.field;
    const size_t n = type.params.size();
    for (size_t i = 0; i < n; ++i) {
      hc.args.push_back(
          Value::fromBits(type.params[i], stack[stack.size() - n + i]));
    }
    stack.resize(stack.size() - n);
    host_calls.push_back(std::move(hc));
    if (h.behavior == HostBehavior::RecordTrap) {
      call_stack.push_back(f);
      trap(TrapKind::Unreachable);
    }
    for (size_t i = 0; i < type.results.size(); ++i) stack.push_back(0);
  }

  void callIndirect(const Instruction& ins) {
    uint32_t slot = pop32();
    if (!has_table || slot >= table.size()) trap(TrapKind::OutOfBoundsTable);
    const auto& target = table[slot];
    if (!target) trap(TrapKind::UndefinedTableElement);
    table_observed[*target] = 1;
    if (module.types[ins.index] != module.types[func_types[*target]]) {
      trap(TrapKind::IndirectCallTypeMismatch);
    }
    call(*target, /*via_call=*/true);
  }

  // --- control -------------------------------------------------------------

  // Branch bookkeeping: a Branch flow carries the remaining label depth in
  // `branch_depth`; the construct owning label 0 consumes it.
  Flow block(const Instruction& ins, const Expression& body) {
    enterNested();
    const size_t height = stack.size();
    Flow f = exec(body);
    --depth;
    if (f == Flow::Branch) {
      if (branch_depth > 0) {
        --branch_depth;
        return Flow::Branch;
      }
      unwind(height, ins.block_result ? 1 : 0);
      return Flow::Next;
    }
    return f;
  }

  Flow loop(const Instruction& ins) {
    enterNested();
    const size_t height = stack.size();
    for (;;) {
      Flow f = exec(ins.body);
      if (f == Flow::Branch) {
        if (branch_depth > 0) {
          --branch_depth;
          --depth;
          return Flow::Branch;
        }
        stack.resize(height);
        continue;
      }
      --depth;
      return f;
    }
  }

  void unwind(size_t height, size_t arity) {
    if (arity) {
      uint64_t v = stack.back();
      stack.resize(height);
      stack.push_back(v);
    } else {
      stack.resize(height);
    }
  }

  Flow branch(uint32_t label) {
    branch_depth = label;
    return Flow::Branch;
  }

  Flow exec(const Expression& code);

  const Module& module;
  InstanceLimits limits;
  std::vector<HostFunction> host_funcs;  // indexed by imported function
  std::vector<uint32_t> func_types;

  bool has_memory = false;
  uint32_t memory_max = 0;
  std::vector<uint8_t> memory;
  bool has_table = false;
  std::vector<std::optional<uint32_t>> table;
  std::vector<uint64_t> globals;

  std::vector<uint64_t> stack;
  std::vector<uint64_t> locals;
  size_t locals_base = 0;
  std::vector<uint32_t> call_stack;
  uint32_t depth = 0;
  uint32_t branch_depth = 0;
  uint64_t fuel = 0;
  bool initialized = false;

  std::vector<uint8_t> entered;
  std::vector<uint8_t> call_targets;
  std::vector<uint8_t> table_observed;
  std::vector<HostCall> host_calls;
};

Flow Instance::State::exec(const Expression& code) {
  for (const Instruction& ins : code) {
    if (fuel == 0) trap(TrapKind::FuelExhausted);
    --fuel;

    switch (ins.opcode) {
      case Opcode::Unreachable:
        trap(TrapKind::Unreachable);
      case Opcode::Nop:
        break;
      case Opcode::Block: {
        Flow f = block(ins, ins.body);
        if (f != Flow::Next) return f;
        break;
      }
      case Opcode::Loop: {
        Flow f = loop(ins);
        if (f != Flow::Next) return f;
        break;
      }
      case Opcode::If: {
        bool cond = pop32() != 0;
        Flow f = block(ins, cond ? ins.body : ins.else_body);
        if (f != Flow::Next) return f;
        break;
      }
      case Opcode::Br:
        return branch(ins.index);
      case Opcode::BrIf:
        if (pop32() != 0) return branch(ins.index);
        break;
      case Opcode::BrTable: {
        uint32_t i = pop32();
        return branch(i < ins.targets.size() ? ins.targets[i] : ins.index);
      }
      case Opcode::Return:
        return Flow::Return;
      case Opcode::Call:
        call(ins.index, /*via_call=*/true);
        break;
      case Opcode::CallIndirect:
        callIndirect(ins);
        break;
      case Opcode::Drop:
        stack.pop_back();
        break;
      case Opcode::Select: {
        uint32_t c = pop32();
        uint64_t b = pop64();
        uint64_t a = pop64();
        push64(c ? a : b);
        break;
      }
      case Opcode::LocalGet:
        push64(locals[locals_base + ins.index]);
        break;
      case Opcode::LocalSet:
        locals[locals_base + ins.index] = pop64();
        break;
      case Opcode::LocalTee:
        locals[locals_base + ins.index] = stack.back();
        break;
      case Opcode::GlobalGet:
        push64(globals[ins.index]);
        break;
      case Opcode::GlobalSet:
        globals[ins.index] = pop64();
        break;

      case Opcode::I32Load:
        push32(load<uint32_t>(ins));
        break;
      case Opcode::I64Load:
        push64(load<uint64_t>(ins));
        break;
      case Opcode::F32Load:
        push32(load<uint32_t>(ins));
        break;
      case Opcode::F64Load:
        push64(load<uint64_t>(ins));
        break;
      case Opcode::I32Load8S:
        push32(static_cast<uint32_t>(static_cast<int32_t>(load<int8_t>(ins))));
        break;
      case Opcode::I32Load8U:
        push32(load<uint8_t>(ins));
        break;
      case Opcode::I32Load16S:
        push32(static_cast<uint32_t>(static_cast<int32_t>(load<int16_t>(ins))));
        break;
      case Opcode::I32Load16U:
        push32(load<uint16_t>(ins));
        break;
      case Opcode::I64Load8S:
        push64(static_cast<uint64_t>(static_cast<int64_t>(load<int8_t>(ins))));
        break;
      case Opcode::I64Load8U:
        push64(load<uint8_t>(ins));
        break;
      case Opcode::I64Load16S:
        push64(static_cast<uint64_t>(static_cast<int64_t>(load<int16_t>(ins))));
        break;
      case Opcode::I64Load16U:
        push64(load<uint16_t>(ins));
        break;
      case Opcode::I64Load32S:
        push64(static_cast<uint64_t>(static_cast<int64_t>(load<int32_t>(ins))));
        break;
      case Opcode::I64Load32U:
        push64(load<uint32_t>(ins));
        break;
      case Opcode::I32Store:
      case Opcode::F32Store: {
        uint32_t v = pop32();
        store<uint32_t>(ins, v);
        break;
      }
      case Opcode::I64Store:
      case Opcode::F64Store: {
        uint64_t v = pop64();
        store<uint64_t>(ins, v);
        break;
      }
      case Opcode::I32Store8:
      case Opcode::I64Store8: {
        uint8_t v = static_cast<uint8_t>(pop64());
        store<uint8_t>(ins, v);
        break;
      }
      case Opcode::I32Store16:
      case Opcode::I64Store16: {
        uint16_t v = static_cast<uint16_t>(pop64());
        store<uint16_t>(ins, v);
        break;
      }
      case Opcode::I64Store32: {
        uint32_t v = static_cast<uint32_t>(pop64());
        store<uint32_t>(ins, v);
        break;
      }
      case Opcode::MemorySize:
        push32(static_cast<uint32_t>(memory.size() / wasm::kPageSize));
        break;
      case Opcode::MemoryGrow: {
        uint32_t delta = pop32();
        uint64_t old_pages = memory.size() / wasm::kPageSize;
        uint64_t new_pages = old_pages + delta;
        if (new_pages > memory_max || new_pages > limits.max_memory_pages) {
          push32(static_cast<uint32_t>(-1));
        } else {
          memory.resize(new_pages * wasm::kPageSize, 0);
          push32(static_cast<uint32_t>(old_pages));
        }
        break;
      }

      case Opcode::I32Const:
      case Opcode::I64Const:
      case Opcode::F32Const:
      case Opcode::F64Const:
        push64(ins.bits);
        break;

      // i32 comparisons
      case Opcode::I32Eqz:
        pushBool(pop32() == 0);
        break;
#define CMP32(OP, EXPR)                                       \
  case Opcode::OP: {                                          \
    uint32_t b = pop32();                                     \
    uint32_t a = pop32();                                     \
    [[maybe_unused]] int32_t sa = static_cast<int32_t>(a);    \
    [[maybe_unused]] int32_t sb = static_cast<int32_t>(b);    \
    pushBool(EXPR);                                           \
    break;                                                    \
  }
        CMP32(I32Eq, a == b)
        CMP32(I32Ne, a != b)
        CMP32(I32LtS, sa < sb)
        CMP32(I32LtU, a < b)
        CMP32(I32GtS, sa > sb)
        CMP32(I32GtU, a > b)
        CMP32(I32LeS, sa <= sb)
        CMP32(I32LeU, a <= b)
        CMP32(I32GeS, sa >= sb)
        CMP32(I32GeU, a >= b)
#undef CMP32

      case Opcode::I64Eqz:
        pushBool(pop64() == 0);
        break;
#define CMP64(OP, EXPR)                                       \
  case Opcode::OP: {                                          \
    uint64_t b = pop64();                                     \
    uint64_t a = pop64();                                     \
    [[maybe_unused]] int64_t sa = static_cast<int64_t>(a);    \
    [[maybe_unused]] int64_t sb = static_cast<int64_t>(b);    \
    pushBool(EXPR);                                           \
    break;                                                    \
  }
        CMP64(I64Eq, a == b)
        CMP64(I64Ne, a != b)
        CMP64(I64LtS, sa < sb)
        CMP64(I64LtU, a < b)
        CMP64(I64GtS, sa > sb)
        CMP64(I64GtU, a > b)
        CMP64(I64LeS, sa <= sb)
        CMP64(I64LeU, a <= b)
        CMP64(I64GeS, sa >= sb)
        CMP64(I64GeU, a >= b)
#undef CMP64

#define FCMP(OP, POP, EXPR)  \
  case Opcode::OP: {         \
    auto b = POP();          \
    auto a = POP();          \
    pushBool(EXPR);          \
    break;                   \
  }
        FCMP(F32Eq, popF32, a == b)
        FCMP(F32Ne, popF32, a != b)
        FCMP(F32Lt, popF32, a < b)
        FCMP(F32Gt, popF32, a > b)
        FCMP(F32Le, popF32, a <= b)
        FCMP(F32Ge, popF32, a >= b)
        FCMP(F64Eq, popF64, a == b)
        FCMP(F64Ne, popF64, a != b)
        FCMP(F64Lt, popF64, a < b)
        FCMP(F64Gt, popF64, a > b)
        FCMP(F64Le, popF64, a <= b)
        FCMP(F64Ge, popF64, a >= b)
#undef FCMP

      // i32 arithmetic
      case Opcode::I32Clz:
        push32(std::countl_zero(pop32()));
        break;
      case Opcode::I32Ctz:
        push32(std::countr_zero(pop32()));
        break;
      case Opcode::I32Popcnt:
        push32(std::popcount(pop32()));
        break;
#define BIN32(OP, EXPR)      \
  case Opcode::OP: {         \
    uint32_t b = pop32();    \
    uint32_t a = pop32();    \
    push32(EXPR);            \
    break;                   \
  }
        BIN32(I32Add, a + b)
        BIN32(I32Sub, a - b)
        BIN32(I32Mul, a * b)
        BIN32(I32And, a & b)
        BIN32(I32Or, a | b)
        BIN32(I32Xor, a ^ b)
        BIN32(I32Shl, a << (b & 31))
        BIN32(I32ShrS, static_cast<uint32_t>(static_cast<int32_t>(a) >> (b & 31)))
        BIN32(I32ShrU, a >> (b & 31))
        BIN32(I32Rotl, std::rotl(a, static_cast<int>(b & 31)))
        BIN32(I32Rotr, std::rotr(a, static_cast<int>(b & 31)))
#undef BIN32
      case Opcode::I32DivS: {
        int32_t b = static_cast<int32_t>(pop32());
        int32_t a = static_cast<int32_t>(pop32());
        if (b == 0) trap(TrapKind::DivideByZero);
        if (a == std::numeric_limits<int32_t>::min() && b == -1) {
          trap(TrapKind::IntegerOverflow);
        }
        push32(static_cast<uint32_t>(a / b));
        break;
      }
      case Opcode::I32DivU: {
        uint32_t b = pop32();
        uint32_t a = pop32();
        if (b == 0) trap(TrapKind::DivideByZero);
        push32(a / b);
        break;
      }
      case Opcode::I32RemS: {
        int32_t b = static_cast<int32_t>(pop32());
        int32_t a = static_cast<int32_t>(pop32());
        if (b == 0) trap(TrapKind::DivideByZero);
        push32(b == -1 ? 0 : static_cast<uint32_t>(a % b));
        break;
      }
      case Opcode::I32RemU: {
        uint32_t b = pop32();
        uint32_t a = pop32();
        if (b == 0) trap(TrapKind::DivideByZero);
        push32(a % b);
        break;
      }

      // i64 arithmetic
      case Opcode::I64Clz:
        push64(std::countl_zero(pop64()));
        break;
      case Opcode::I64Ctz:
        push64(std::countr_zero(pop64()));
        break;
      case Opcode::I64Popcnt:
        push64(std::popcount(pop64()));
        break;
#define BIN64(OP, EXPR)      \
  case Opcode::OP: {         \
    uint64_t b = pop64();    \
    uint64_t a = pop64();    \
    push64(EXPR);            \
    break;                   \
  }
        BIN64(I64Add, a + b)
        BIN64(I64Sub, a - b)
        BIN64(I64Mul, a * b)
        BIN64(I64And, a & b)
        BIN64(I64Or, a | b)
        BIN64(I64Xor, a ^ b)
        BIN64(I64Shl, a << (b & 63))
        BIN64(I64ShrS, static_cast<uint64_t>(static_cast<int64_t>(a) >> (b & 63)))
        BIN64(I64ShrU, a >> (b & 63))
        BIN64(I64Rotl, std::rotl(a, static_cast<int>(b & 63)))
        BIN64(I64Rotr, std::rotr(a, static_cast<int>(b & 63)))
#undef BIN64
      case Opcode::I64DivS: {
        int64_t b = static_cast<int64_t>(pop64());
        int64_t a = static_cast<int64_t>(pop64());
        if (b == 0) trap(TrapKind::DivideByZero);
        if (a == std::numeric_limits<int64_t>::min() && b == -1) {
          trap(TrapKind::IntegerOverflow);
        }
        push64(static_cast<uint64_t>(a / b));
        break;
      }
      case Opcode::I64DivU: {
        uint64_t b = pop64();
        uint64_t a = pop64();
        if (b == 0) trap(TrapKind::DivideByZero);
        push64(a / b);
        break;
      }
      case Opcode::I64RemS: {
        int64_t b = static_cast<int64_t>(pop64());
        int64_t a = static_cast<int64_t>(pop64());
        if (b == 0) trap(TrapKind::DivideByZero);
        push64(b == -1 ? 0 : static_cast<uint64_t>(a % b));
        break;
      }
      case Opcode::I64RemU: {
        uint64_t b = pop64();
        uint64_t a = pop64();
        if (b == 0) trap(TrapKind::DivideByZero);
        push64(a % b);
        break;
      }

      // f32 arithmetic; sign operations are pure bit manipulation and keep
      // NaN payloads, everything else canonicalizes NaN results.
      case Opcode::F32Abs:
        push32(pop32() & 0x7FFFFFFFu);
        break;
      case Opcode::F32Neg:
        push32(pop32() ^ 0x80000000u);
        break;
      case Opcode::F32Copysign: {
        uint32_t b = pop32();
        uint32_t a = pop32();
        push32((a & 0x7FFFFFFFu) | (b & 0x80000000u));
        break;
      }
#define FUN32(OP, EXPR)      \
  case Opcode::OP: {         \
    float a = popF32();      \
    push32(canon(EXPR));     \
    break;                   \
  }
        FUN32(F32Ceil, std::ceil(a))
        FUN32(F32Floor, std::floor(a))
        FUN32(F32Trunc, std::trunc(a))
        FUN32(F32Nearest, std::nearbyint(a))
        FUN32(F32Sqrt, std::sqrt(a))
#undef FUN32
#define FBIN32(OP, EXPR)     \
  case Opcode::OP: {         \
    float b = popF32();      \
    float a = popF32();      \
    push32(canon(EXPR));     \
    break;                   \
  }
        FBIN32(F32Add, a + b)
        FBIN32(F32Sub, a - b)
        FBIN32(F32Mul, a * b)
        FBIN32(F32Div, a / b)
        FBIN32(F32Min, fmin(a, b))
        FBIN32(F32Max, fmax(a, b))
#undef FBIN32

      case Opcode::F64Abs:
        push64(pop64() & 0x7FFFFFFFFFFFFFFFull);
        break;
      case Opcode::F64Neg:
        push64(pop64() ^ 0x8000000000000000ull);
        break;
      case Opcode::F64Copysign: {
        uint64_t b = pop64();
        uint64_t a = pop64();
        push64((a & 0x7FFFFFFFFFFFFFFFull) | (b & 0x8000000000000000ull));
        break;
      }
#define FUN64(OP, EXPR)      \
  case Opcode::OP: {         \
    double a = popF64();     \
    push64(canon(EXPR));     \
    break;                   \
  }
        FUN64(F64Ceil, std::ceil(a))
        FUN64(F64Floor, std::floor(a))
        FUN64(F64Trunc, std::trunc(a))
        FUN64(F64Nearest, std::nearbyint(a))
        FUN64(F64Sqrt, std::sqrt(a))
#undef FUN64
#define FBIN64(OP, EXPR)     \
  case Opcode::OP: {         \
    double b = popF64();     \
    double a = popF64();     \
    push64(canon(EXPR));     \
    break;                   \
  }
        FBIN64(F64Add, a + b)
        FBIN64(F64Sub, a - b)
        FBIN64(F64Mul, a * b)
        FBIN64(F64Div, a / b)
        FBIN64(F64Min, fmin(a, b))
        FBIN64(F64Max, fmax(a, b))
#undef FBIN64

      // conversions
      case Opcode::I32WrapI64:
        push32(static_cast<uint32_t>(pop64()));
        break;
      case Opcode::I32TruncF32S:
        push32(static_cast<uint32_t>(truncate<int32_t>(popF32())));
        break;
      case Opcode::I32TruncF32U:
        push32(truncate<uint32_t>(popF32()));
        break;
      case Opcode::I32TruncF64S:
        push32(static_cast<uint32_t>(truncate<int32_t>(popF64())));
        break;
      case Opcode::I32TruncF64U:
        push32(truncate<uint32_t>(popF64()));
        break;
      case Opcode::I64ExtendI32S:
        push64(static_cast<uint64_t>(static_cast<int64_t>(static_cast<int32_t>(pop32()))));
        break;
      case Opcode::I64ExtendI32U:
        push64(pop32());
        break;
      case Opcode::I64TruncF32S:
        push64(static_cast<uint64_t>(truncate<int64_t>(popF32())));
        break;
      case Opcode::I64TruncF32U:
        push64(truncate<uint64_t>(popF32()));
        break;
      case Opcode::I64TruncF64S:
        push64(static_cast<uint64_t>(truncate<int64_t>(popF64())));
        break;
      case Opcode::I64TruncF64U:
        push64(truncate<uint64_t>(popF64()));
        break;
      case Opcode::F32ConvertI32S:
        push32(std::bit_cast<uint32_t>(static_cast<float>(static_cast<int32_t>(pop32()))));
        break;
      case Opcode::F32ConvertI32U:
        push32(std::bit_cast<uint32_t>(static_cast<float>(pop32())));
        break;
      case Opcode::F32ConvertI64S:
        push32(std::bit_cast<uint32_t>(static_cast<float>(static_cast<int64_t>(pop64()))));
        break;
      case Opcode::F32ConvertI64U:
        push32(std::bit_cast<uint32_t>(static_cast<float>(pop64())));
        break;
      case Opcode::F32DemoteF64:
        push32(canon(static_cast<float>(popF64())));
        break;
      case Opcode::F64ConvertI32S:
        push64(std::bit_cast<uint64_t>(static_cast<double>(static_cast<int32_t>(pop32()))));
        break;
      case Opcode::F64ConvertI32U:
        push64(std::bit_cast<uint64_t>(static_cast<double>(pop32())));
        break;
      case Opcode::F64ConvertI64S:
        push64(std::bit_cast<uint64_t>(static_cast<double>(static_cast<int64_t>(pop64()))));
        break;
      case Opcode::F64ConvertI64U:
        push64(std::bit_cast<uint64_t>(static_cast<double>(pop64())));
        break;
      case Opcode::F64PromoteF32:
        push64(canon(static_cast<double>(popF32())));
        break;
      case Opcode::I32ReinterpretF32:
      case Opcode::I64ReinterpretF64:
      case Opcode::F32ReinterpretI32:
      case Opcode::F64ReinterpretI64:
        break;  // same bits, new type
    }
  }
  return Flow::Next;
}

Instance::Instance(const Module& module, const HostConfig& host,
                   InstanceLimits limits)
    : state_(std::make_unique<State>(module, host, limits)) {}

Instance::~Instance() = default;
Instance::Instance(Instance&&) noexcept = default;
Instance& Instance::operator=(Instance&&) noexcept = default;

std::optional<Trap> Instance::initialize(uint64_t fuel) {
  return state_->initialize(fuel);
}

InvocationOutcome Instance::invoke(std::string_view export_name,
                                   std::span<const Value> args, uint64_t fuel) {
  if (!state_->initialized) {
    throw std::logic_error("Instance::invoke before initialize");
  }
  uint32_t func = checkInvocation(state_->module, export_name, args);
  return state_->run(func, args, fuel);
}

ExecutionTrace Instance::trace() const {
  ExecutionTrace t;
  for (uint32_t i = 0; i < state_->entered.size(); ++i) {
    if (state_->entered[i]) t.entered.insert(i);
    if (state_->call_targets[i]) t.call_targets.insert(i);
    if (state_->table_observed[i]) t.table_observed.insert(i);
  }
  return t;
}

std::vector<HostCall> Instance::takeHostCalls() {
  return std::exchange(state_->host_calls, {});
}

std::span<const uint8_t> Instance::memory() const { return state_->memory; }

bool Instance::hasMemory() const { return state_->has_memory; }

std::optional<uint64_t> Instance::memoryDigest() const {
  if (!state_->has_memory) return std::nullopt;
  return fnv1a64(state_->memory);
}

Value Instance::global(uint32_t index) const {
  return Value::fromBits(state_->module.globalType(index).type,
                         state_->globals.at(index));
}

Instance instantiate(const Module& module, const HostConfig& host,
                     uint64_t fuel) {
  Instance inst(module, host);
  if (auto t = inst.initialize(fuel)) throw InstantiationTrap(*t);
  return inst;
}

}  // namespace debloat::interp
