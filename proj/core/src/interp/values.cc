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

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "debloat/interp/host.h"
#include "debloat/interp/value.h"
#include "debloat/interp/workload.h"

namespace debloat::interp {

namespace {

template <typename F>
std::string floatText(F f, uint64_t bits, int hex_digits) {
  if (std::isnan(f)) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "nan:0x%0*llx", hex_digits,
                  static_cast<unsigned long long>(bits));
    return buf;
  }
  std::array<char, 64> buf;
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), f);
  return std::string(buf.data(), res.ptr);
}

constexpr std::array<std::string_view, 9> kTrapNames = {
    "unreachable",
    "divide-by-zero",
    "integer-overflow",
    "out-of-bounds-memory",
    "out-of-bounds-table",
    "indirect-call-type-mismatch",
    "undefined-table-element",
    "stack-exhausted",
    "fuel-exhausted",
};

}  // namespace

std::string toString(const Value& v) {
  std::string out(wasm::toString(v.type));
  out += ":";
  switch (v.type) {
    case ValType::I32:
      out += std::to_string(v.asI32());
      break;
    case ValType::I64:
      out += std::to_string(v.asI64());
      break;
    case ValType::F32:
      out += floatText(v.asF32(), v.bits, 8);
      break;
    case ValType::F64:
      out += floatText(v.asF64(), v.bits, 16);
      break;
  }
  return out;
}

std::string_view toString(TrapKind kind) {
  return kTrapNames[static_cast<size_t>(kind)];
}

std::optional<TrapKind> trapKindFromString(std::string_view text) {
  for (size_t i = 0; i < kTrapNames.size(); ++i) {
    if (kTrapNames[i] == text) return static_cast<TrapKind>(i);
  }
  return std::nullopt;
}

std::string toString(const InvocationOutcome& outcome) {
  if (const auto* r = std::get_if<Results>(&outcome)) {
    std::string out = "Results[";
    for (size_t i = 0; i < r->values.size(); ++i) {
      if (i) out += ", ";
      out += toString(r->values[i]);
    }
    return out + "]";
  }
  if (const auto* t = std::get_if<Trap>(&outcome)) {
    return "Trap(" + std::string(toString(t->kind)) + ")";
  }
  return "LinkError(" + std::get<LinkFailure>(outcome).message + ")";
}

HostConfig HostConfig::standard() {
  using wasm::FuncType;
  HostConfig c;
  c.functions.push_back(
      {"env", "log", FuncType{{ValType::I32}, {}}, HostBehavior::Record});
  c.functions.push_back(
      {"env", "log64", FuncType{{ValType::I64}, {}}, HostBehavior::Record});
  c.functions.push_back(
      {"env", "abort", FuncType{{}, {}}, HostBehavior::RecordTrap});
  return c;
}

const HostFunction* HostConfig::find(std::string_view module,
                                     std::string_view field) const {
  for (const auto& f : functions) {
    if (f.module == module && f.field == field) return &f;
  }
  return nullptr;
}

}  // namespace debloat::interp
