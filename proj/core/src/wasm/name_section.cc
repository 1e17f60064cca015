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

#include "debloat/wasm/name_section.h"

namespace debloat::wasm {

namespace {

enum : uint8_t { kModuleNames = 0, kFunctionNames = 1, kLocalNames = 2 };

std::map<uint32_t, std::string> nameMap(Reader& r) {
  std::map<uint32_t, std::string> out;
  uint32_t n = r.u32();
  for (uint32_t i = 0; i < n; ++i) {
    uint32_t index = r.u32();
    out[index] = r.name();
  }
  return out;
}

void writeNameMap(Bytes& out, const std::map<uint32_t, std::string>& names) {
  writeU32(out, static_cast<uint32_t>(names.size()));
  for (const auto& [index, name] : names) {
    writeU32(out, index);
    writeName(out, name);
  }
}

void writeSubsection(Bytes& out, uint8_t id, const Bytes& content) {
  out.push_back(id);
  writeU32(out, static_cast<uint32_t>(content.size()));
  out.insert(out.end(), content.begin(), content.end());
}

}  // namespace

std::optional<NameSection> parseNameSection(ByteView payload) {
  NameSection names;
  try {
    Reader r(payload);
    while (!r.atEnd()) {
      uint8_t id = r.u8();
      uint32_t size = r.u32();
      Reader sub(r.take(size));
      switch (id) {
        case kModuleNames:
          names.module_name = sub.name();
          break;
        case kFunctionNames:
          names.function_names = nameMap(sub);
          break;
        case kLocalNames: {
          uint32_t n = sub.u32();
          for (uint32_t i = 0; i < n; ++i) {
            uint32_t func = sub.u32();
            names.local_names[func] = nameMap(sub);
          }
          break;
        }
        default:
          continue;  // dropped
      }
      if (!sub.atEnd()) return std::nullopt;
    }
  } catch (const MalformedBinary&) {
    return std::nullopt;
  }
  return names;
}

Bytes encodeNameSection(const NameSection& names) {
  Bytes out;
  if (names.module_name) {
    Bytes content;
    writeName(content, *names.module_name);
    writeSubsection(out, kModuleNames, content);
  }
  if (!names.function_names.empty()) {
    Bytes content;
    writeNameMap(content, names.function_names);
    writeSubsection(out, kFunctionNames, content);
  }
  if (!names.local_names.empty()) {
    Bytes content;
    writeU32(content, static_cast<uint32_t>(names.local_names.size()));
    for (const auto& [func, locals] : names.local_names) {
      writeU32(content, func);
      writeNameMap(content, locals);
    }
    writeSubsection(out, kLocalNames, content);
  }
  return out;
}

}  // namespace debloat::wasm
