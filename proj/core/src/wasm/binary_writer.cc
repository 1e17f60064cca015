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

#include <limits>

#include "debloat/wasm/binary.h"

namespace debloat::wasm {

void writeU32(Bytes& out, uint32_t value) {
  do {
    uint8_t b = value & 0x7F;
    value >>= 7;
    if (value) b |= 0x80;
    out.push_back(b);
  } while (value);
}

void writeS32(Bytes& out, int32_t value) { writeS64(out, value); }

void writeS64(Bytes& out, int64_t value) {
  for (;;) {
    uint8_t b = value & 0x7F;
    value >>= 7;  // arithmetic shift
    bool done = (value == 0 && !(b & 0x40)) || (value == -1 && (b & 0x40));
    if (!done) b |= 0x80;
    out.push_back(b);
    if (done) return;
  }
}

void writeName(Bytes& out, std::string_view name) {
  if (name.size() > std::numeric_limits<uint32_t>::max()) {
    throw EncodeError("name too long");
  }
  writeU32(out, static_cast<uint32_t>(name.size()));
  out.insert(out.end(), name.begin(), name.end());
}

namespace {

uint32_t checkedSize(size_t n) {
  if (n > std::numeric_limits<uint32_t>::max()) {
    throw EncodeError("vector length exceeds u32 range");
  }
  return static_cast<uint32_t>(n);
}

void writeFixed(Bytes& out, uint64_t bits, int width) {
  for (int i = 0; i < width; ++i) out.push_back((bits >> (8 * i)) & 0xFF);
}

void writeValType(Bytes& out, ValType t) {
  out.push_back(static_cast<uint8_t>(t));
}

void writeLimits(Bytes& out, const Limits& l) {
  out.push_back(l.max ? 1 : 0);
  writeU32(out, l.min);
  if (l.max) writeU32(out, *l.max);
}

void writeGlobalType(Bytes& out, const GlobalType& g) {
  writeValType(out, g.type);
  out.push_back(g.is_mutable ? 1 : 0);
}

void writeInstructions(Bytes& out, const Expression& code);

void writeInstruction(Bytes& out, const Instruction& ins) {
  out.push_back(static_cast<uint8_t>(ins.opcode));
  switch (info(ins.opcode).immediate) {
    case Immediate::None:
      break;
    case Immediate::Block:
      out.push_back(ins.block_result ? static_cast<uint8_t>(*ins.block_result)
                                     : 0x40);
      writeInstructions(out, ins.body);
      if (ins.has_else) {
        out.push_back(kElseByte);
        writeInstructions(out, ins.else_body);
      }
      out.push_back(kEndByte);
      break;
    case Immediate::Index:
      writeU32(out, ins.index);
      break;
    case Immediate::BrTable:
      writeU32(out, checkedSize(ins.targets.size()));
      for (uint32_t t : ins.targets) writeU32(out, t);
      writeU32(out, ins.index);
      break;
    case Immediate::CallIndirect:
      writeU32(out, ins.index);
      out.push_back(0x00);
      break;
    case Immediate::MemArg:
      writeU32(out, ins.memarg.align);
      writeU32(out, ins.memarg.offset);
      break;
    case Immediate::MemoryIndex:
      out.push_back(0x00);
      break;
    case Immediate::I32:
      writeS32(out, static_cast<int32_t>(static_cast<uint32_t>(ins.bits)));
      break;
    case Immediate::I64:
      writeS64(out, static_cast<int64_t>(ins.bits));
      break;
    case Immediate::F32:
      writeFixed(out, ins.bits, 4);
      break;
    case Immediate::F64:
      writeFixed(out, ins.bits, 8);
      break;
  }
}

void writeInstructions(Bytes& out, const Expression& code) {
  for (const auto& ins : code) writeInstruction(out, ins);
}

void writeExpression(Bytes& out, const Expression& code) {
  writeInstructions(out, code);
  out.push_back(kEndByte);
}

class ModuleEncoder {
 public:
  explicit ModuleEncoder(const Module& m) : m_(m) {}

  Bytes run() {
    out_.assign(std::begin(kMagic), std::end(kMagic));
    out_.insert(out_.end(), std::begin(kVersion), std::end(kVersion));
    emitted_custom_.assign(m_.custom_sections.size(), false);

    for (uint8_t id = 1; id <= static_cast<uint8_t>(SectionId::Data); ++id) {
      flushCustom(static_cast<SectionId>(id));
      Bytes content;
      if (sectionContent(static_cast<SectionId>(id), content)) {
        writeSection(id, content);
      }
    }
    flushCustom(std::nullopt);
    return std::move(out_);
  }

 private:
  // Emits custom sections placed before section `next` (all remaining ones
  // when `next` is empty).
  void flushCustom(std::optional<SectionId> next) {
    for (size_t i = 0; i < m_.custom_sections.size(); ++i) {
      const auto& c = m_.custom_sections[i];
      if (emitted_custom_[i]) continue;
      if (next && static_cast<uint8_t>(c.after) >= static_cast<uint8_t>(*next)) {
        continue;
      }
      Bytes content;
      writeName(content, c.name);
      content.insert(content.end(), c.bytes.begin(), c.bytes.end());
      writeSection(0, content);
      emitted_custom_[i] = true;
    }
  }

  void writeSection(uint8_t id, const Bytes& content) {
    out_.push_back(id);
    writeU32(out_, checkedSize(content.size()));
    out_.insert(out_.end(), content.begin(), content.end());
  }

  bool sectionContent(SectionId id, Bytes& c) {
    switch (id) {
      case SectionId::Type:
        if (m_.types.empty()) return false;
        writeU32(c, checkedSize(m_.types.size()));
        for (const auto& t : m_.types) {
          c.push_back(0x60);
          writeU32(c, checkedSize(t.params.size()));
          for (auto p : t.params) writeValType(c, p);
          writeU32(c, checkedSize(t.results.size()));
          for (auto r : t.results) writeValType(c, r);
        }
        return true;
      case SectionId::Import:
        if (m_.imports.empty()) return false;
        writeU32(c, checkedSize(m_.imports.size()));
        for (const auto& imp : m_.imports) {
          writeName(c, imp.module);
          writeName(c, imp.field);
          c.push_back(static_cast<uint8_t>(imp.kind()));
          if (const auto* f = std::get_if<FunctionImport>(&imp.desc)) {
            writeU32(c, f->type_index);
          } else if (const auto* t = std::get_if<TableType>(&imp.desc)) {
            c.push_back(0x70);
            writeLimits(c, t->limits);
          } else if (const auto* mem = std::get_if<MemoryType>(&imp.desc)) {
            writeLimits(c, mem->limits);
          } else {
            writeGlobalType(c, std::get<GlobalType>(imp.desc));
          }
        }
        return true;
      case SectionId::Function:
        if (m_.functions.empty()) return false;
        writeU32(c, checkedSize(m_.functions.size()));
        for (const auto& f : m_.functions) writeU32(c, f.type_index);
        return true;
      case SectionId::Table:
        if (m_.tables.empty()) return false;
        writeU32(c, checkedSize(m_.tables.size()));
        for (const auto& t : m_.tables) {
          c.push_back(0x70);
          writeLimits(c, t.limits);
        }
        return true;
      case SectionId::Memory:
        if (m_.memories.empty()) return false;
        writeU32(c, checkedSize(m_.memories.size()));
        for (const auto& mem : m_.memories) writeLimits(c, mem.limits);
        return true;
      case SectionId::Global:
        if (m_.globals.empty()) return false;
        writeU32(c, checkedSize(m_.globals.size()));
        for (const auto& g : m_.globals) {
          writeGlobalType(c, g.type);
          writeExpression(c, g.init);
        }
        return true;
      case SectionId::Export:
        if (m_.exports.empty()) return false;
        writeU32(c, checkedSize(m_.exports.size()));
        for (const auto& e : m_.exports) {
          writeName(c, e.name);
          c.push_back(static_cast<uint8_t>(e.kind));
          writeU32(c, e.index);
        }
        return true;
      case SectionId::Start:
        if (!m_.start) return false;
        writeU32(c, *m_.start);
        return true;
      case SectionId::Element:
        if (m_.elements.empty()) return false;
        writeU32(c, checkedSize(m_.elements.size()));
        for (const auto& seg : m_.elements) {
          writeU32(c, seg.table_index);
          writeExpression(c, seg.offset);
          writeU32(c, checkedSize(seg.functions.size()));
          for (uint32_t f : seg.functions) writeU32(c, f);
        }
        return true;
      case SectionId::Code:
        if (m_.functions.empty()) return false;
        writeU32(c, checkedSize(m_.functions.size()));
        for (const auto& f : m_.functions) {
          Bytes body;
          writeLocals(body, f.locals);
          writeExpression(body, f.body);
          writeU32(c, checkedSize(body.size()));
          c.insert(c.end(), body.begin(), body.end());
        }
        return true;
      case SectionId::Data:
        if (m_.data.empty()) return false;
        writeU32(c, checkedSize(m_.data.size()));
        for (const auto& seg : m_.data) {
          writeU32(c, seg.memory_index);
          writeExpression(c, seg.offset);
          writeU32(c, checkedSize(seg.bytes.size()));
          c.insert(c.end(), seg.bytes.begin(), seg.bytes.end());
        }
        return true;
      case SectionId::Custom:
        break;
    }
    return false;
  }

  static void writeLocals(Bytes& out, const std::vector<ValType>& locals) {
    std::vector<std::pair<uint32_t, ValType>> groups;
    for (ValType t : locals) {
      if (!groups.empty() && groups.back().second == t) {
        ++groups.back().first;
      } else {
        groups.emplace_back(1, t);
      }
    }
    writeU32(out, checkedSize(groups.size()));
    for (const auto& [n, t] : groups) {
      writeU32(out, n);
      writeValType(out, t);
    }
  }

  const Module& m_;
  Bytes out_;
  std::vector<bool> emitted_custom_;
};

}  // namespace

Bytes encode(const Module& module) { return ModuleEncoder(module).run(); }

}  // namespace debloat::wasm
