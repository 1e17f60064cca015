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

#ifndef DEBLOAT_TOOLS_CLI_DOCUMENTS_H_
#define DEBLOAT_TOOLS_CLI_DOCUMENTS_H_

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "debloat/interp/workload.h"
#include "debloat/pipeline/pipeline.h"
#include "debloat/wasm/binary.h"

namespace debloat::cli {

using Document = nlohmann::ordered_json;

// A document that does not parse or does not fit its schema. The message
// starts with the location: a line/column for syntax errors, a JSON pointer
// for schema errors.
class DocumentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// {"invocations": [{"func": NAME, "args": [{"i32": n} | {"i64": "n"} |
// {"f32": x} | {"f64": x}, ...]}, ...], "fuel": n}
//
// i32 accepts signed or unsigned 32-bit integers. i64 is a decimal string.
// Floats are numbers or one of "nan", "inf", "-inf", or a "0x" bit pattern.
interp::Workload parseWorkload(std::string_view text);
Document workloadToJson(const interp::Workload& workload);

Document valueToJson(const interp::Value& value);
interp::Value valueFromJson(const nlohmann::json& j, const std::string& where);

Document traceToJson(const interp::ExecutionTrace& trace);
Document statsToJson(const shrink::ShrinkStats& stats);
Document verdictToJson(const pipeline::ValidationVerdict& verdict);
Document reportToJson(const pipeline::DebloatReport& report);
pipeline::DebloatReport reportFromJson(const nlohmann::json& j);

// Section sizes and index-space counts of one module.
Document moduleStatsToJson(wasm::ByteView bytes);

wasm::Bytes readBinaryFile(const std::filesystem::path& path);
std::string readTextFile(const std::filesystem::path& path);
void writeBinaryFile(const std::filesystem::path& path, wasm::ByteView bytes);
void writeTextFile(const std::filesystem::path& path, std::string_view text);

}  // namespace debloat::cli

#endif  // DEBLOAT_TOOLS_CLI_DOCUMENTS_H_
