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

#ifndef DEBLOAT_WASM_BINARY_H_
#define DEBLOAT_WASM_BINARY_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "debloat/wasm/module.h"

namespace debloat::wasm {

using Bytes = std::vector<uint8_t>;
using ByteView = std::span<const uint8_t>;

inline constexpr uint8_t kMagic[4] = {0x00, 0x61, 0x73, 0x6D};
inline constexpr uint8_t kVersion[4] = {0x01, 0x00, 0x00, 0x00};
inline constexpr size_t kHeaderSize = 8;

// Deepest block/loop/if nesting the decoder accepts.
inline constexpr uint32_t kMaxNestingDepth = 512;
// Upper bound on declared locals per function.
inline constexpr uint32_t kMaxLocals = 50000;

class MalformedBinary : public std::runtime_error {
 public:
  MalformedBinary(size_t offset, std::string reason);

  size_t offset() const { return offset_; }
  const std::string& reason() const { return reason_; }

 private:
  size_t offset_;
  std::string reason_;
};

class EncodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Decodes a WebAssembly 1.0 binary. Only MVP opcodes and encodings are
// accepted; custom sections are kept verbatim. Throws MalformedBinary.
Module decode(ByteView bytes);

// Canonical encoding: sections in id order, empty sections omitted, minimal
// LEB128 everywhere, consecutive equal locals grouped. Deterministic.
Bytes encode(const Module& module);

// Byte count of every section keyed by section id, headers (id byte and size
// field) included. Multiple custom sections accumulate under id 0, so the
// values plus kHeaderSize always add up to the input length.
std::map<uint8_t, size_t> sectionSizes(ByteView bytes);

// Minimal LEB128 writers, exposed for the name-section rewriter and tests.
void writeU32(Bytes& out, uint32_t value);
void writeS32(Bytes& out, int32_t value);
void writeS64(Bytes& out, int64_t value);
void writeName(Bytes& out, std::string_view name);

// Cursor over a byte span that reports failures as MalformedBinary with an
// absolute offset.
class Reader {
 public:
  explicit Reader(ByteView bytes, size_t base_offset = 0)
      : bytes_(bytes), base_(base_offset) {}

  bool atEnd() const { return pos_ == bytes_.size(); }
  size_t offset() const { return base_ + pos_; }
  size_t remaining() const { return bytes_.size() - pos_; }

  uint8_t u8();
  uint32_t u32();
  int32_t s32();
  int64_t s64();
  uint32_t fixed32();
  uint64_t fixed64();
  std::string name();
  ByteView take(size_t count);

  [[noreturn]] void fail(std::string reason) const;
  [[noreturn]] void failAt(size_t offset, std::string reason) const;

 private:
  ByteView bytes_;
  size_t base_ = 0;
  size_t pos_ = 0;
};

}  // namespace debloat::wasm

#endif  // DEBLOAT_WASM_BINARY_H_
