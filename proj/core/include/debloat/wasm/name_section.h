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

#ifndef DEBLOAT_WASM_NAME_SECTION_H_
#define DEBLOAT_WASM_NAME_SECTION_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "debloat/wasm/binary.h"

namespace debloat::wasm {

inline constexpr std::string_view kNameSectionName = "name";

// The module, function and local name subsections of a "name" custom
// section. Other subsections are not retained.
struct NameSection {
  std::optional<std::string> module_name;
  std::map<uint32_t, std::string> function_names;
  std::map<uint32_t, std::map<uint32_t, std::string>> local_names;

  bool operator==(const NameSection&) const = default;
};

// Returns nullopt when the payload is malformed.
std::optional<NameSection> parseNameSection(ByteView payload);

Bytes encodeNameSection(const NameSection& names);

}  // namespace debloat::wasm

#endif  // DEBLOAT_WASM_NAME_SECTION_H_
