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

#include "documents.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <iterator>
#include <limits>
#include <sstream>

namespace debloat::cli {

using nlohmann::json;
using interp::Value;
using wasm::ValType;

namespace {

[[noreturn]] void schemaError(const std::string& where, const std::string& what) {
  throw DocumentError((where.empty() ? std::string("/") : where) + ": " + what);
}

void expectKeys(const json& j, const std::string& where,
                std::initializer_list<std::string_view> allowed,
                std::initializer_list<std::string_view> required) {
  if (!j.is_object()) schemaError(where, "expected an object");
  for (const auto& [key, _] : j.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) schemaError(where, "unknown field \"" + key + "\"");
  }
  for (auto r : required) {
    if (!j.contains(std::string(r))) {
      schemaError(where, "missing field \"" + std::string(r) + "\"");
    }
  }
}

template <typename T>
bool parseInteger(std::string_view text, T& out, int base = 10) {
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out, base);
  return ec == std::errc() && ptr == text.data() + text.size();
}

uint64_t floatBits(ValType type, const json& v, const std::string& where) {
  const bool single = type == ValType::F32;
  if (v.is_number()) {
    double d = v.get<double>();
    return single ? std::bit_cast<uint32_t>(static_cast<float>(d))
                  : std::bit_cast<uint64_t>(d);
  }
  if (!v.is_string()) schemaError(where, "expected a number or a string");
  const auto s = v.get<std::string>();
  double d;
  if (s == "nan") {
    d = std::numeric_limits<double>::quiet_NaN();
  } else if (s == "inf") {
    d = std::numeric_limits<double>::infinity();
  } else if (s == "-inf") {
    d = -std::numeric_limits<double>::infinity();
  } else if (s.size() > 2 && s.starts_with("0x")) {
    uint64_t bits;
    if (!parseInteger(std::string_view(s).substr(2), bits, 16) ||
        (single && bits > 0xFFFFFFFFu)) {
      schemaError(where, "bad bit pattern \"" + s + "\"");
    }
    return bits;
  } else {
    schemaError(where, "bad float literal \"" + s + "\"");
  }
  return single ? std::bit_cast<uint32_t>(static_cast<float>(d))
                : std::bit_cast<uint64_t>(d);
}

std::string hexBits(uint64_t bits, int digits) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "0x%0*llx", digits,
                static_cast<unsigned long long>(bits));
  return buf;
}

Document mismatchToJson(const pipeline::Mismatch& m) {
  Document j;
  j["invocation"] = m.invocation ? Document(*m.invocation) : Document(nullptr);
  j["field"] = m.field;
  j["original"] = m.original;
  j["debloated"] = m.debloated;
  return j;
}

}  // namespace

Value valueFromJson(const json& j, const std::string& where) {
  if (!j.is_object() || j.size() != 1) {
    schemaError(where, "expected one of {\"i32\": ...}, {\"i64\": ...}, "
                       "{\"f32\": ...}, {\"f64\": ...}");
  }
  const auto& [key, v] = *j.items().begin();
  const std::string at = where + "/" + key;
  if (key == "i32") {
    if (!v.is_number_integer()) schemaError(at, "expected an integer");
    if (v.is_number_unsigned()) {
      auto u = v.get<uint64_t>();
      if (u > 0xFFFFFFFFu) schemaError(at, "out of i32 range");
      return Value::fromBits(ValType::I32, u);
    }
    auto s = v.get<int64_t>();
    if (s < std::numeric_limits<int32_t>::min() || s > std::numeric_limits<int32_t>::max()) {
      schemaError(at, "out of i32 range");
    }
    return Value::i32(static_cast<int32_t>(s));
  }
  if (key == "i64") {
    if (!v.is_string()) schemaError(at, "i64 literals are decimal strings");
    const auto s = v.get<std::string>();
    int64_t signed_value;
    uint64_t unsigned_value;
    if (parseInteger(std::string_view(s), signed_value)) return Value::i64(signed_value);
    if (parseInteger(std::string_view(s), unsigned_value)) {
      return Value::fromBits(ValType::I64, unsigned_value);
    }
    schemaError(at, "bad i64 literal \"" + s + "\"");
  }
  if (key == "f32") return Value::fromBits(ValType::F32, floatBits(ValType::F32, v, at));
  if (key == "f64") return Value::fromBits(ValType::F64, floatBits(ValType::F64, v, at));
  schemaError(where, "unknown value type \"" + key + "\"");
}

Document valueToJson(const Value& value) {
  Document j;
  switch (value.type) {
    case ValType::I32:
      j["i32"] = value.asI32();
      break;
    case ValType::I64:
      j["i64"] = std::to_string(value.asI64());
      break;
    case ValType::F32:
      j["f32"] = hexBits(value.bits, 8);
      break;
    case ValType::F64:
      j["f64"] = hexBits(value.bits, 16);
      break;
  }
  return j;
}

interp::Workload parseWorkload(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw DocumentError(e.what());
  }
  expectKeys(doc, "", {"invocations", "fuel"}, {"invocations"});

  interp::Workload w;
  if (doc.contains("fuel")) {
    const auto& fuel = doc["fuel"];
    if (!fuel.is_number_unsigned()) schemaError("/fuel", "expected a non-negative integer");
    w.fuel = fuel.get<uint64_t>();
  }
  const auto& list = doc["invocations"];
  if (!list.is_array()) schemaError("/invocations", "expected an array");
  for (size_t i = 0; i < list.size(); ++i) {
    const std::string at = "/invocations/" + std::to_string(i);
    const auto& entry = list[i];
    expectKeys(entry, at, {"func", "args"}, {"func"});
    if (!entry["func"].is_string()) schemaError(at + "/func", "expected a string");
    interp::Invocation inv;
    inv.export_name = entry["func"].get<std::string>();
    if (entry.contains("args")) {
      const auto& args = entry["args"];
      if (!args.is_array()) schemaError(at + "/args", "expected an array");
      for (size_t k = 0; k < args.size(); ++k) {
        inv.args.push_back(valueFromJson(args[k], at + "/args/" + std::to_string(k)));
      }
    }
    w.invocations.push_back(std::move(inv));
  }
  return w;
}

Document workloadToJson(const interp::Workload& workload) {
  Document doc;
  doc["invocations"] = Document::array();
  for (const auto& inv : workload.invocations) {
    Document entry;
    entry["func"] = inv.export_name;
    entry["args"] = Document::array();
    for (const auto& v : inv.args) entry["args"].push_back(valueToJson(v));
    doc["invocations"].push_back(std::move(entry));
  }
  doc["fuel"] = workload.fuel;
  return doc;
}

Document traceToJson(const interp::ExecutionTrace& trace) {
  Document doc;
  doc["entered"] = trace.entered;
  doc["callTargets"] = trace.call_targets;
  doc["tableObserved"] = trace.table_observed;
  return doc;
}

Document statsToJson(const shrink::ShrinkStats& s) {
  Document j;
  j["functionsKeptBody"] = s.functions_kept_body;
  j["functionsStubbed"] = s.functions_stubbed;
  j["functionsRemoved"] = s.functions_removed;
  j["importsRemoved"] = s.imports_removed;
  j["typesRemoved"] = s.types_removed;
  j["bytesBefore"] = s.bytes_before;
  j["bytesAfter"] = s.bytes_after;
  j["codeBytesBefore"] = s.code_bytes_before;
  j["codeBytesAfter"] = s.code_bytes_after;
  return j;
}

Document verdictToJson(const pipeline::ValidationVerdict& v) {
  Document j;
  j["syntacticOk"] = v.syntactic_ok;
  j["behavioralOk"] = v.behavioral_ok;
  j["mismatches"] = Document::array();
  for (const auto& m : v.mismatches) j["mismatches"].push_back(mismatchToJson(m));
  return j;
}

Document reportToJson(const pipeline::DebloatReport& r) {
  Document j;
  j["toolVersion"] = r.tool_version;
  j["timestamp"] = r.timestamp;
  j["stats"] = statsToJson(r.stats);
  j["keepRatio"] = r.keep_ratio;
  j["stubRatio"] = r.stub_ratio;
  j["removeRatio"] = r.remove_ratio;
  j["bytesSavedPercent"] = r.bytes_saved_percent;
  j["traceSummary"] = {{"entered", r.trace_summary.entered},
                       {"callTargets", r.trace_summary.call_targets},
                       {"tableObserved", r.trace_summary.table_observed}};
  j["validation"] = verdictToJson(r.validation);
  return j;
}

pipeline::DebloatReport reportFromJson(const json& j) {
  try {
    pipeline::DebloatReport r;
    r.tool_version = j.at("toolVersion").get<std::string>();
    r.timestamp = j.at("timestamp").get<std::string>();
    const auto& s = j.at("stats");
    r.stats.functions_kept_body = s.at("functionsKeptBody").get<size_t>();
    r.stats.functions_stubbed = s.at("functionsStubbed").get<size_t>();
    r.stats.functions_removed = s.at("functionsRemoved").get<size_t>();
    r.stats.imports_removed = s.at("importsRemoved").get<size_t>();
    r.stats.types_removed = s.at("typesRemoved").get<size_t>();
    r.stats.bytes_before = s.at("bytesBefore").get<size_t>();
    r.stats.bytes_after = s.at("bytesAfter").get<size_t>();
    r.stats.code_bytes_before = s.at("codeBytesBefore").get<size_t>();
    r.stats.code_bytes_after = s.at("codeBytesAfter").get<size_t>();
    r.keep_ratio = j.at("keepRatio").get<double>();
    r.stub_ratio = j.at("stubRatio").get<double>();
    r.remove_ratio = j.at("removeRatio").get<double>();
    r.bytes_saved_percent = j.at("bytesSavedPercent").get<double>();
    const auto& t = j.at("traceSummary");
    r.trace_summary.entered = t.at("entered").get<size_t>();
    r.trace_summary.call_targets = t.at("callTargets").get<size_t>();
    r.trace_summary.table_observed = t.at("tableObserved").get<size_t>();
    const auto& v = j.at("validation");
    r.validation.syntactic_ok = v.at("syntacticOk").get<bool>();
    r.validation.behavioral_ok = v.at("behavioralOk").get<bool>();
    for (const auto& m : v.at("mismatches")) {
      pipeline::Mismatch mm;
      if (!m.at("invocation").is_null()) mm.invocation = m.at("invocation").get<size_t>();
      mm.field = m.at("field").get<std::string>();
      mm.original = m.at("original").get<std::string>();
      mm.debloated = m.at("debloated").get<std::string>();
      r.validation.mismatches.push_back(std::move(mm));
    }
    return r;
  } catch (const json::exception& e) {
    throw DocumentError(std::string("report: ") + e.what());
  }
}

Document moduleStatsToJson(wasm::ByteView bytes) {
  const wasm::Module m = wasm::decode(bytes);
  Document doc;
  doc["totalBytes"] = bytes.size();
  Document sections = Document::array();
  for (const auto& [id, size] : wasm::sectionSizes(bytes)) {
    sections.push_back({{"id", id},
                        {"name", std::string(wasm::toString(static_cast<wasm::SectionId>(id)))},
                        {"bytes", size}});
  }
  doc["sections"] = std::move(sections);
  doc["functions"] = {{"imported", m.importedFunctionCount()},
                      {"defined", m.functions.size()},
                      {"total", m.functionCount()}};
  doc["types"] = m.types.size();
  doc["imports"] = m.imports.size();
  doc["exports"] = m.exports.size();
  doc["globals"] = m.globalCount();
  return doc;
}

wasm::Bytes readBinaryFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return wasm::Bytes(std::istreambuf_iterator<char>(in), {});
}

std::string readTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void writeBinaryFile(const std::filesystem::path& path, wasm::ByteView bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("cannot write " + path.string());
}

void writeTextFile(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw IoError("cannot write " + path.string());
}

}  // namespace debloat::cli
