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

#include "debloat/wasm/validator.h"

#include <optional>
#include <set>
#include <string_view>

namespace debloat::wasm {

std::string ValidationReport::summary() const {
  if (errors.empty()) return "ok";
  std::string out;
  for (const auto& e : errors) {
    if (!out.empty()) out += "\n";
    out += e.location + ": " + e.message;
  }
  return out;
}

namespace {

struct CheckError {
  std::string message;
};

ValType fromSigChar(char c) {
  switch (c) {
    case 'i':
      return ValType::I32;
    case 'I':
      return ValType::I64;
    case 'f':
      return ValType::F32;
    default:
      return ValType::F64;
  }
}

std::string typeName(std::optional<ValType> t) {
  return t ? std::string(toString(*t)) : "unknown";
}

// Operand-stack type checker for one function body. An empty optional on the
// operand stack is the polymorphic "unknown" type produced after
// unconditional control transfers.
class BodyChecker {
 public:
  BodyChecker(const Module& m, const FuncType& sig,
              std::vector<ValType> locals)
      : m_(m), sig_(sig), locals_(std::move(locals)) {}

  void run(const Expression& body) {
    ctrls_.push_back({Opcode::Block, sig_.results, 0, false});
    sequence(body);
    endFrame();
  }

  // Pre-order index and opcode of the last instruction visited.
  size_t position() const { return position_; }
  Opcode current() const { return current_; }

 private:
  struct Ctrl {
    Opcode kind;
    std::vector<ValType> results;
    size_t height;
    bool unreachable;
  };

  [[noreturn]] void fail(std::string msg) { throw CheckError{std::move(msg)}; }

  void push(std::optional<ValType> t) { opds_.push_back(t); }
  void pushAll(const std::vector<ValType>& ts) {
    for (auto t : ts) push(t);
  }

  std::optional<ValType> pop() {
    const Ctrl& c = ctrls_.back();
    if (opds_.size() == c.height) {
      if (c.unreachable) return std::nullopt;
      fail("type mismatch: operand stack underflow");
    }
    auto t = opds_.back();
    opds_.pop_back();
    return t;
  }

  std::optional<ValType> pop(ValType expect) {
    auto actual = pop();
    if (actual && *actual != expect) {
      fail("type mismatch: expected " + std::string(toString(expect)) +
           ", got " + typeName(actual));
    }
    return actual ? actual : expect;
  }

  void popAll(const std::vector<ValType>& ts) {
    for (auto it = ts.rbegin(); it != ts.rend(); ++it) pop(*it);
  }

  void setUnreachable() {
    opds_.resize(ctrls_.back().height);
    ctrls_.back().unreachable = true;
  }

  const std::vector<ValType>& labelTypes(const Ctrl& c) const {
    static const std::vector<ValType> kNone;
    return c.kind == Opcode::Loop ? kNone : c.results;
  }

  const Ctrl& label(uint32_t depth) {
    if (depth >= ctrls_.size()) fail("unknown label " + std::to_string(depth));
    return ctrls_[ctrls_.size() - 1 - depth];
  }

  void endFrame() {
    std::vector<ValType> results = ctrls_.back().results;
    popAll(results);
    if (opds_.size() != ctrls_.back().height) {
      fail("type mismatch: values remaining on stack at end of block");
    }
    ctrls_.pop_back();
    pushAll(results);
  }

  void requireMemory() {
    if (m_.memoryCount() == 0) fail("unknown memory 0");
  }

  const FuncType& typeAt(uint32_t index) {
    if (index >= m_.types.size()) fail("unknown type " + std::to_string(index));
    return m_.types[index];
  }

  void sequence(const Expression& code) {
    for (const auto& ins : code) instruction(ins);
  }

  std::vector<ValType> blockResults(const Instruction& ins) {
    if (ins.block_result) return {*ins.block_result};
    return {};
  }

  void instruction(const Instruction& ins) {
    ++position_;
    current_ = ins.opcode;
    const OpcodeInfo& oi = info(ins.opcode);
    if (oi.operands != "*") {
      if (oi.immediate == Immediate::MemArg ||
          oi.immediate == Immediate::MemoryIndex) {
        requireMemory();
      }
      if (oi.immediate == Immediate::MemArg) {
        uint32_t size = memoryAccessSize(ins.opcode);
        if (ins.memarg.align >= 32 || (1u << ins.memarg.align) > size) {
          fail("alignment must not be larger than natural");
        }
      }
      for (auto it = oi.operands.rbegin(); it != oi.operands.rend(); ++it) {
        pop(fromSigChar(*it));
      }
      for (char c : oi.results) push(fromSigChar(c));
      return;
    }

    switch (ins.opcode) {
      case Opcode::Unreachable:
        setUnreachable();
        break;
      case Opcode::Block:
      case Opcode::Loop:
        ctrls_.push_back({ins.opcode, blockResults(ins), opds_.size(), false});
        sequence(ins.body);
        endFrame();
        break;
      case Opcode::If: {
        pop(ValType::I32);
        auto results = blockResults(ins);
        if (!ins.has_else && !results.empty()) {
          fail("type mismatch: if without else must not produce a value");
        }
        ctrls_.push_back({Opcode::If, results, opds_.size(), false});
        sequence(ins.body);
        if (ins.has_else) {
          popAll(results);
          if (opds_.size() != ctrls_.back().height) {
            fail("type mismatch: values remaining on stack at end of block");
          }
          ctrls_.back().unreachable = false;
          sequence(ins.else_body);
        }
        endFrame();
        break;
      }
      case Opcode::Br:
        popAll(labelTypes(label(ins.index)));
        setUnreachable();
        break;
      case Opcode::BrIf: {
        pop(ValType::I32);
        auto types = labelTypes(label(ins.index));
        popAll(types);
        pushAll(types);
        break;
      }
      case Opcode::BrTable: {
        pop(ValType::I32);
        auto types = labelTypes(label(ins.index));
        for (uint32_t t : ins.targets) {
          if (labelTypes(label(t)) != types) {
            fail("type mismatch: br_table targets have inconsistent types");
          }
        }
        popAll(types);
        setUnreachable();
        break;
      }
      case Opcode::Return:
        popAll(sig_.results);
        setUnreachable();
        break;
      case Opcode::Call: {
        if (ins.index >= m_.functionCount()) {
          fail("unknown function " + std::to_string(ins.index));
        }
        const FuncType& t = typeAt(m_.functionTypeIndex(ins.index));
        popAll(t.params);
        pushAll(t.results);
        break;
      }
      case Opcode::CallIndirect: {
        if (m_.tableCount() == 0) fail("unknown table 0");
        const FuncType& t = typeAt(ins.index);
        pop(ValType::I32);
        popAll(t.params);
        pushAll(t.results);
        break;
      }
      case Opcode::Drop:
        pop();
        break;
      case Opcode::Select: {
        pop(ValType::I32);
        auto t1 = pop();
        auto t2 = pop();
        if (t1 && t2 && *t1 != *t2) {
          fail("type mismatch: select operands differ");
        }
        push(t1 ? t1 : t2);
        break;
      }
      case Opcode::LocalGet:
        push(local(ins.index));
        break;
      case Opcode::LocalSet:
        pop(local(ins.index));
        break;
      case Opcode::LocalTee: {
        ValType t = local(ins.index);
        pop(t);
        push(t);
        break;
      }
      case Opcode::GlobalGet:
        if (ins.index >= m_.globalCount()) {
          fail("unknown global " + std::to_string(ins.index));
        }
        push(m_.globalType(ins.index).type);
        break;
      case Opcode::GlobalSet: {
        if (ins.index >= m_.globalCount()) {
          fail("unknown global " + std::to_string(ins.index));
        }
        GlobalType g = m_.globalType(ins.index);
        if (!g.is_mutable) fail("global is immutable");
        pop(g.type);
        break;
      }
      default:
        fail("unhandled opcode");
    }
  }

  ValType local(uint32_t index) {
    if (index >= locals_.size()) fail("unknown local " + std::to_string(index));
    return locals_[index];
  }

  const Module& m_;
  const FuncType& sig_;
  std::vector<ValType> locals_;
  std::vector<std::optional<ValType>> opds_;
  std::vector<Ctrl> ctrls_;
  size_t position_ = 0;
  Opcode current_ = Opcode::Nop;
};

class ModuleValidator {
 public:
  explicit ModuleValidator(const Module& m) : m_(m) {}

  ValidationReport run() {
    checkImports();
    checkFunctions();
    checkTablesAndMemories();
    checkGlobals();
    checkExports();
    checkStart();
    checkElements();
    checkData();
    checkBodies();
    return std::move(report_);
  }

 private:
  void error(std::string location, std::string message) {
    report_.errors.push_back({std::move(location), std::move(message)});
  }

  static std::string at(std::string_view what, size_t i) {
    return std::string(what) + "[" + std::to_string(i) + "]";
  }

  void checkLimits(const std::string& loc, const Limits& l,
                   std::optional<uint32_t> bound) {
    if (bound && l.min > *bound) error(loc, "memory size must be at most 65536 pages");
    if (l.max) {
      if (bound && *l.max > *bound) {
        error(loc, "memory size must be at most 65536 pages");
      }
      if (*l.max < l.min) error(loc, "size minimum must not be greater than maximum");
    }
  }

  void checkImports() {
    for (size_t i = 0; i < m_.imports.size(); ++i) {
      const auto& imp = m_.imports[i];
      const std::string loc = at("import", i);
      if (const auto* f = std::get_if<FunctionImport>(&imp.desc)) {
        if (f->type_index >= m_.types.size()) error(loc, "unknown type");
      } else if (const auto* t = std::get_if<TableType>(&imp.desc)) {
        checkLimits(loc, t->limits, std::nullopt);
      } else if (const auto* mem = std::get_if<MemoryType>(&imp.desc)) {
        checkLimits(loc, mem->limits, kMaxPages);
      }
    }
  }

  void checkFunctions() {
    for (size_t i = 0; i < m_.functions.size(); ++i) {
      if (m_.functions[i].type_index >= m_.types.size()) {
        error(at("func", m_.importedFunctionCount() + i), "unknown type");
      }
    }
  }

  void checkTablesAndMemories() {
    if (m_.tableCount() > 1) error("module", "multiple tables");
    if (m_.memoryCount() > 1) error("module", "multiple memories");
    for (size_t i = 0; i < m_.tables.size(); ++i) {
      checkLimits(at("table", i), m_.tables[i].limits, std::nullopt);
    }
    for (size_t i = 0; i < m_.memories.size(); ++i) {
      checkLimits(at("memory", i), m_.memories[i].limits, kMaxPages);
    }
  }

  // Constant expressions may only read imported globals.
  void checkConstExpr(const std::string& loc, const Expression& e,
                      ValType expected) {
    if (e.size() != 1) {
      error(loc, "constant expression required");
      return;
    }
    const Instruction& ins = e.front();
    std::optional<ValType> type;
    switch (ins.opcode) {
      case Opcode::I32Const:
        type = ValType::I32;
        break;
      case Opcode::I64Const:
        type = ValType::I64;
        break;
      case Opcode::F32Const:
        type = ValType::F32;
        break;
      case Opcode::F64Const:
        type = ValType::F64;
        break;
      case Opcode::GlobalGet:
        if (ins.index >= m_.importCount(ExternalKind::Global)) {
          error(loc, "unknown global " + std::to_string(ins.index));
          return;
        }
        if (m_.globalType(ins.index).is_mutable) {
          error(loc, "constant expression required");
          return;
        }
        type = m_.globalType(ins.index).type;
        break;
      default:
        error(loc, "constant expression required");
        return;
    }
    if (*type != expected) error(loc, "type mismatch in constant expression");
  }

  void checkGlobals() {
    for (size_t i = 0; i < m_.globals.size(); ++i) {
      const auto& g = m_.globals[i];
      checkConstExpr(at("global", m_.importCount(ExternalKind::Global) + i),
                     g.init, g.type.type);
    }
  }

  void checkExports() {
    std::set<std::string_view> names;
    for (size_t i = 0; i < m_.exports.size(); ++i) {
      const auto& e = m_.exports[i];
      const std::string loc = at("export", i);
      if (!names.insert(e.name).second) {
        error(loc, "duplicate export name \"" + e.name + "\"");
      }
      uint32_t bound = 0;
      switch (e.kind) {
        case ExternalKind::Function:
          bound = m_.functionCount();
          break;
        case ExternalKind::Table:
          bound = m_.tableCount();
          break;
        case ExternalKind::Memory:
          bound = m_.memoryCount();
          break;
        case ExternalKind::Global:
          bound = m_.globalCount();
          break;
      }
      if (e.index >= bound) error(loc, "export index out of bounds");
    }
  }

  void checkStart() {
    if (!m_.start) return;
    if (*m_.start >= m_.functionCount()) {
      error("start", "start function index out of bounds");
      return;
    }
    uint32_t ti = m_.functionTypeIndex(*m_.start);
    if (ti < m_.types.size() && m_.types[ti] != FuncType{}) {
      error("start", "start function must have type [] -> []");
    }
  }

  void checkElements() {
    for (size_t i = 0; i < m_.elements.size(); ++i) {
      const auto& seg = m_.elements[i];
      const std::string loc = at("elem", i);
      if (seg.table_index >= m_.tableCount()) error(loc, "unknown table");
      checkConstExpr(loc, seg.offset, ValType::I32);
      for (uint32_t f : seg.functions) {
        if (f >= m_.functionCount()) {
          error(loc, "element function index out of bounds");
          break;
        }
      }
    }
  }

  void checkData() {
    for (size_t i = 0; i < m_.data.size(); ++i) {
      const auto& seg = m_.data[i];
      const std::string loc = at("data", i);
      if (seg.memory_index >= m_.memoryCount()) error(loc, "unknown memory");
      checkConstExpr(loc, seg.offset, ValType::I32);
    }
  }

  void checkBodies() {
    const uint32_t base = m_.importedFunctionCount();
    for (size_t i = 0; i < m_.functions.size(); ++i) {
      const Function& f = m_.functions[i];
      if (f.type_index >= m_.types.size()) continue;  // already reported
      const FuncType& sig = m_.types[f.type_index];
      std::vector<ValType> locals = sig.params;
      locals.insert(locals.end(), f.locals.begin(), f.locals.end());
      BodyChecker checker(m_, sig, std::move(locals));
      try {
        checker.run(f.body);
      } catch (const CheckError& e) {
        std::string loc = at("func", base + i);
        if (checker.position() > 0) {
          loc += " instr " + std::to_string(checker.position()) + " (" +
                 std::string(toString(checker.current())) + ")";
        } else {
          loc += " end";
        }
        error(std::move(loc), e.message);
      }
    }
  }

  const Module& m_;
  ValidationReport report_;
};

}  // namespace

ValidationReport validateModule(const Module& module) {
  return ModuleValidator(module).run();
}

}  // namespace debloat::wasm
