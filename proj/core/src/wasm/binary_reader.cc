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

#include <cstdio>
#include <cstring>
#include <utility>

#include "debloat/wasm/binary.h"

namespace debloat::wasm {

namespace {

std::string hexByte(uint8_t byte) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "0x%02x", byte);
  return buf;
}

bool isValidUtf8(ByteView s) {
  size_t i = 0;
  while (i < s.size()) {
    uint8_t c = s[i];
    size_t len;
    uint32_t cp;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > s.size()) return false;
    for (size_t k = 1; k < len; ++k) {
      if ((s[i + k] & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (s[i + k] & 0x3F);
    }
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
        (len == 4 && (cp < 0x10000 || cp > 0x10FFFF)) ||
        (cp >= 0xD800 && cp <= 0xDFFF)) {
      return false;
    }
    i += len;
  }
  return true;
}

}  // namespace

MalformedBinary::MalformedBinary(size_t offset, std::string reason)
    : std::runtime_error("malformed binary at offset " +
                         std::to_string(offset) + ": " + reason),
      offset_(offset),
      reason_(std::move(reason)) {}

void Reader::fail(std::string reason) const { failAt(offset(), std::move(reason)); }

void Reader::failAt(size_t offset, std::string reason) const {
  throw MalformedBinary(offset, std::move(reason));
}

uint8_t Reader::u8() {
  if (pos_ >= bytes_.size()) fail("unexpected end");
  return bytes_[pos_++];
}

uint32_t Reader::u32() {
  const size_t start = offset();
  uint32_t result = 0;
  for (int i = 0; i < 5; ++i) {
    uint8_t b = u8();
    if (i == 4 && (b & 0xF0) != 0) failAt(start, "integer too large");
    result |= static_cast<uint32_t>(b & 0x7F) << (7 * i);
    if (!(b & 0x80)) return result;
  }
  failAt(start, "integer representation too long");
}

int32_t Reader::s32() {
  const size_t start = offset();
  uint32_t result = 0;
  for (int i = 0; i < 5; ++i) {
    uint8_t b = u8();
    if (i == 4) {
      // The unused bits of the final byte must sign-extend bit 31.
      uint8_t tail = b & 0x70;
      bool negative = b & 0x08;
      if (b & 0x80) failAt(start, "integer representation too long");
      if ((negative && tail != 0x70) || (!negative && tail != 0)) {
        failAt(start, "integer too large");
      }
    }
    result |= static_cast<uint32_t>(b & 0x7F) << (7 * i);
    if (!(b & 0x80)) {
      int shift = 7 * (i + 1);
      if (shift < 32 && (b & 0x40)) result |= ~0u << shift;
      return static_cast<int32_t>(result);
    }
  }
  failAt(start, "integer representation too long");
}

int64_t Reader::s64() {
  const size_t start = offset();
  uint64_t result = 0;
  for (int i = 0; i < 10; ++i) {
    uint8_t b = u8();
    if (i == 9) {
      if (b & 0x80) failAt(start, "integer representation too long");
      if (b != 0x00 && b != 0x7F) failAt(start, "integer too large");
    }
    result |= static_cast<uint64_t>(b & 0x7F) << (7 * i);
    if (!(b & 0x80)) {
      int shift = 7 * (i + 1);
      if (shift < 64 && (b & 0x40)) result |= ~uint64_t{0} << shift;
      return static_cast<int64_t>(result);
    }
  }
  failAt(start, "integer representation too long");
}

uint32_t Reader::fixed32() {
  ByteView b = take(4);
  uint32_t v;
  std::memcpy(&v, b.data(), 4);
  return v;
}

uint64_t Reader::fixed64() {
  ByteView b = take(8);
  uint64_t v;
  std::memcpy(&v, b.data(), 8);
  return v;
}

std::string Reader::name() {
  const size_t start = offset();
  uint32_t len = u32();
  ByteView b = take(len);
  if (!isValidUtf8(b)) failAt(start, "malformed UTF-8 encoding");
  return std::string(b.begin(), b.end());
}

ByteView Reader::take(size_t count) {
  if (count > remaining()) fail("unexpected end");
  ByteView out = bytes_.subspan(pos_, count);
  pos_ += count;
  return out;
}

namespace {

class ModuleDecoder {
 public:
  explicit ModuleDecoder(ByteView bytes) : bytes_(bytes) {}

  Module run() {
    Reader header(bytes_);
    if (bytes_.size() < 4 || std::memcmp(bytes_.data(), kMagic, 4) != 0) {
      if (bytes_.size() < 4) header.failAt(bytes_.size(), "unexpected end");
      header.failAt(0, "magic header not detected");
    }
    if (bytes_.size() < kHeaderSize) {
      header.failAt(bytes_.size(), "unexpected end");
    }
    if (std::memcmp(bytes_.data() + 4, kVersion, 4) != 0) {
      header.failAt(4, "unsupported version");
    }

    Reader r(bytes_.subspan(kHeaderSize), kHeaderSize);
    uint8_t last_id = 0;
    SectionId last_emitted = SectionId::Custom;
    while (!r.atEnd()) {
      const size_t section_start = r.offset();
      uint8_t id = r.u8();
      uint32_t size = r.u32();
      const size_t content_start = r.offset();
      ByteView content = r.take(size);
      Reader s(content, content_start);
      if (id == 0) {
        CustomSection custom;
        custom.name = s.name();
        ByteView rest = s.take(s.remaining());
        custom.bytes.assign(rest.begin(), rest.end());
        custom.after = last_emitted;
        module_.custom_sections.push_back(std::move(custom));
        continue;
      }
      if (id > static_cast<uint8_t>(SectionId::Data)) {
        r.failAt(section_start, "unknown section id " + std::to_string(id));
      }
      if (id <= last_id) {
        r.failAt(section_start, id == last_id ? "duplicate section"
                                              : "invalid section order");
      }
      last_id = id;
      readSection(static_cast<SectionId>(id), s);
      if (!s.atEnd()) s.fail("section size mismatch");
      if (emitsSection(static_cast<SectionId>(id))) {
        last_emitted = static_cast<SectionId>(id);
      }
    }
    if (!saw_code_ && !module_.functions.empty()) {
      r.fail("function and code section have inconsistent lengths");
    }
    return std::move(module_);
  }

 private:
  // Mirrors the encoder's rule for omitting empty sections.
  bool emitsSection(SectionId id) const {
    switch (id) {
      case SectionId::Type:
        return !module_.types.empty();
      case SectionId::Import:
        return !module_.imports.empty();
      case SectionId::Function:
      case SectionId::Code:
        return !module_.functions.empty();
      case SectionId::Table:
        return !module_.tables.empty();
      case SectionId::Memory:
        return !module_.memories.empty();
      case SectionId::Global:
        return !module_.globals.empty();
      case SectionId::Export:
        return !module_.exports.empty();
      case SectionId::Start:
        return module_.start.has_value();
      case SectionId::Element:
        return !module_.elements.empty();
      case SectionId::Data:
        return !module_.data.empty();
      case SectionId::Custom:
        break;
    }
    return false;
  }

  uint32_t count(Reader& r) {
    const size_t at = r.offset();
    uint32_t n = r.u32();
    // Every element takes at least one byte.
    if (n > r.remaining()) r.failAt(at, "length out of bounds");
    return n;
  }

  ValType valType(Reader& r) {
    const size_t at = r.offset();
    uint8_t b = r.u8();
    auto t = valTypeFromByte(b);
    if (!t) r.failAt(at, "invalid value type " + hexByte(b));
    return *t;
  }

  Limits limits(Reader& r) {
    const size_t at = r.offset();
    uint8_t flag = r.u8();
    Limits l;
    if (flag == 0) {
      l.min = r.u32();
    } else if (flag == 1) {
      l.min = r.u32();
      l.max = r.u32();
    } else {
      r.failAt(at, "invalid limits flag " + hexByte(flag));
    }
    return l;
  }

  TableType tableType(Reader& r) {
    const size_t at = r.offset();
    uint8_t elem = r.u8();
    if (elem != 0x70) r.failAt(at, "invalid table element type");
    return TableType{limits(r)};
  }

  GlobalType globalType(Reader& r) {
    GlobalType g;
    g.type = valType(r);
    const size_t at = r.offset();
    uint8_t mut = r.u8();
    if (mut > 1) r.failAt(at, "invalid mutability");
    g.is_mutable = mut == 1;
    return g;
  }

  void readSection(SectionId id, Reader& s) {
    switch (id) {
      case SectionId::Type:
        readTypes(s);
        break;
      case SectionId::Import:
        readImports(s);
        break;
      case SectionId::Function: {
        uint32_t n = count(s);
        module_.functions.resize(n);
        for (auto& f : module_.functions) f.type_index = s.u32();
        break;
      }
      case SectionId::Table: {
        uint32_t n = count(s);
        for (uint32_t i = 0; i < n; ++i) module_.tables.push_back(tableType(s));
        break;
      }
      case SectionId::Memory: {
        uint32_t n = count(s);
        for (uint32_t i = 0; i < n; ++i) {
          module_.memories.push_back(MemoryType{limits(s)});
        }
        break;
      }
      case SectionId::Global: {
        uint32_t n = count(s);
        for (uint32_t i = 0; i < n; ++i) {
          Global g;
          g.type = globalType(s);
          g.init = expression(s);
          module_.globals.push_back(std::move(g));
        }
        break;
      }
      case SectionId::Export:
        readExports(s);
        break;
      case SectionId::Start:
        module_.start = s.u32();
        break;
      case SectionId::Element: {
        uint32_t n = count(s);
        for (uint32_t i = 0; i < n; ++i) {
          ElementSegment seg;
          seg.table_index = s.u32();
          seg.offset = expression(s);
          uint32_t m = count(s);
          seg.functions.reserve(m);
          for (uint32_t k = 0; k < m; ++k) seg.functions.push_back(s.u32());
          module_.elements.push_back(std::move(seg));
        }
        break;
      }
      case SectionId::Code:
        readCode(s);
        break;
      case SectionId::Data: {
        uint32_t n = count(s);
        for (uint32_t i = 0; i < n; ++i) {
          DataSegment seg;
          seg.memory_index = s.u32();
          seg.offset = expression(s);
          uint32_t len = s.u32();
          ByteView b = s.take(len);
          seg.bytes.assign(b.begin(), b.end());
          module_.data.push_back(std::move(seg));
        }
        break;
      }
      case SectionId::Custom:
        break;
    }
  }

  void readTypes(Reader& s) {
    uint32_t n = count(s);
    for (uint32_t i = 0; i < n; ++i) {
      const size_t at = s.offset();
      if (s.u8() != 0x60) s.failAt(at, "invalid function type form");
      FuncType t;
      uint32_t np = count(s);
      for (uint32_t k = 0; k < np; ++k) t.params.push_back(valType(s));
      const size_t results_at = s.offset();
      uint32_t nr = count(s);
      if (nr > 1) s.failAt(results_at, "multiple results are not supported");
      for (uint32_t k = 0; k < nr; ++k) t.results.push_back(valType(s));
      module_.types.push_back(std::move(t));
    }
  }

  void readImports(Reader& s) {
    uint32_t n = count(s);
    for (uint32_t i = 0; i < n; ++i) {
      Import imp;
      imp.module = s.name();
      imp.field = s.name();
      const size_t at = s.offset();
      uint8_t kind = s.u8();
      switch (kind) {
        case 0:
          imp.desc = FunctionImport{s.u32()};
          break;
        case 1:
          imp.desc = tableType(s);
          break;
        case 2:
          imp.desc = MemoryType{limits(s)};
          break;
        case 3:
          imp.desc = globalType(s);
          break;
        default:
          s.failAt(at, "invalid import kind " + hexByte(kind));
      }
      module_.imports.push_back(std::move(imp));
    }
  }

  void readExports(Reader& s) {
    uint32_t n = count(s);
    for (uint32_t i = 0; i < n; ++i) {
      Export exp;
      exp.name = s.name();
      const size_t at = s.offset();
      uint8_t kind = s.u8();
      if (kind > 3) s.failAt(at, "invalid export kind " + hexByte(kind));
      exp.kind = static_cast<ExternalKind>(kind);
      exp.index = s.u32();
      module_.exports.push_back(std::move(exp));
    }
  }

  void readCode(Reader& s) {
    const size_t at = s.offset();
    uint32_t n = count(s);
    if (n != module_.functions.size()) {
      s.failAt(at, "function and code section have inconsistent lengths");
    }
    saw_code_ = true;
    for (auto& fn : module_.functions) {
      uint32_t size = s.u32();
      const size_t body_start = s.offset();
      Reader body(s.take(size), body_start);
      uint32_t groups = count(body);
      uint64_t total = 0;
      for (uint32_t g = 0; g < groups; ++g) {
        const size_t group_at = body.offset();
        uint32_t c = body.u32();
        total += c;
        if (total > kMaxLocals) body.failAt(group_at, "too many locals");
        ValType t = valType(body);
        fn.locals.insert(fn.locals.end(), c, t);
      }
      fn.body = expression(body);
      if (!body.atEnd()) body.fail("function body size mismatch");
    }
  }

  Expression expression(Reader& r) {
    Expression out;
    if (sequence(r, out, 0, /*allow_else=*/false)) {
      r.fail("unexpected else");
    }
    return out;
  }

  // Reads instructions up to the closing delimiter. Returns true when the
  // sequence was closed by `else` rather than `end`.
  bool sequence(Reader& r, Expression& out, uint32_t depth, bool allow_else) {
    for (;;) {
      const size_t at = r.offset();
      uint8_t byte = r.u8();
      if (byte == kEndByte) return false;
      if (byte == kElseByte) {
        if (!allow_else) r.failAt(at, "unexpected else");
        return true;
      }
      auto op = opcodeFromByte(byte);
      if (!op) r.failAt(at, "unknown opcode " + hexByte(byte));
      Instruction ins;
      ins.opcode = *op;
      immediates(r, ins, depth, at);
      out.push_back(std::move(ins));
    }
  }

  void immediates(Reader& r, Instruction& ins, uint32_t depth, size_t at) {
    switch (info(ins.opcode).immediate) {
      case Immediate::None:
        break;
      case Immediate::Block: {
        if (depth + 1 > kMaxNestingDepth) r.failAt(at, "nesting too deep");
        const size_t bt_at = r.offset();
        uint8_t bt = r.u8();
        if (bt != 0x40) {
          auto t = valTypeFromByte(bt);
          if (!t) r.failAt(bt_at, "invalid block type " + hexByte(bt));
          ins.block_result = *t;
        }
        bool closed_by_else =
            sequence(r, ins.body, depth + 1, ins.opcode == Opcode::If);
        if (closed_by_else) {
          ins.has_else = true;
          if (sequence(r, ins.else_body, depth + 1, false)) {
            r.fail("unexpected else");
          }
        }
        break;
      }
      case Immediate::Index:
        ins.index = r.u32();
        break;
      case Immediate::BrTable: {
        uint32_t n = count(r);
        ins.targets.reserve(n);
        for (uint32_t i = 0; i < n; ++i) ins.targets.push_back(r.u32());
        ins.index = r.u32();
        break;
      }
      case Immediate::CallIndirect: {
        ins.index = r.u32();
        const size_t z = r.offset();
        if (r.u8() != 0) r.failAt(z, "zero byte expected");
        break;
      }
      case Immediate::MemArg:
        ins.memarg.align = r.u32();
        ins.memarg.offset = r.u32();
        break;
      case Immediate::MemoryIndex: {
        const size_t z = r.offset();
        if (r.u8() != 0) r.failAt(z, "zero byte expected");
        break;
      }
      case Immediate::I32:
        ins.bits = static_cast<uint32_t>(r.s32());
        break;
      case Immediate::I64:
        ins.bits = static_cast<uint64_t>(r.s64());
        break;
      case Immediate::F32:
        ins.bits = r.fixed32();
        break;
      case Immediate::F64:
        ins.bits = r.fixed64();
        break;
    }
  }

  ByteView bytes_;
  Module module_;
  bool saw_code_ = false;
};

}  // namespace

Module decode(ByteView bytes) { return ModuleDecoder(bytes).run(); }

std::map<uint8_t, size_t> sectionSizes(ByteView bytes) {
  (void)decode(bytes);
  std::map<uint8_t, size_t> sizes;
  Reader r(bytes.subspan(kHeaderSize), kHeaderSize);
  while (!r.atEnd()) {
    const size_t start = r.offset();
    uint8_t id = r.u8();
    uint32_t size = r.u32();
    r.take(size);
    sizes[id] += r.offset() - start;
  }
  return sizes;
}

}  // namespace debloat::wasm
