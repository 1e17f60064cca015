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

#include "fixtures.h"

#include <algorithm>
#include <cmath>

#include "documents.h"

#ifndef DEBLOAT_FIXTURE_DIR
#error "DEBLOAT_FIXTURE_DIR must point at tests/fixtures"
#endif

namespace debloat::testing {

using nlohmann::json;

std::filesystem::path fixtureDir() { return DEBLOAT_FIXTURE_DIR; }

std::vector<std::string> fixtureNames() {
  std::vector<std::string> names;
  for (const auto& entry : std::filesystem::directory_iterator(fixtureDir())) {
    if (entry.path().extension() == ".wasm") names.push_back(entry.path().stem().string());
  }
  std::sort(names.begin(), names.end());
  return names;
}

Fixture loadFixture(const std::string& name) {
  Fixture f;
  f.name = name;
  const auto dir = fixtureDir();
  f.bytes = cli::readBinaryFile(dir / (name + ".wasm"));
  f.workload = cli::parseWorkload(cli::readTextFile(dir / (name + ".workload.json")));
  f.expected = json::parse(cli::readTextFile(dir / (name + ".expected.json")));
  return f;
}

std::vector<Fixture> loadAllFixtures() {
  std::vector<Fixture> out;
  for (const auto& name : fixtureNames()) out.push_back(loadFixture(name));
  return out;
}

namespace {

// Matches the reference document's value encoding: integers as unsigned
// decimal strings, floats as hex bit patterns or "nan".
bool sameValue(const interp::Value& v, const json& e) {
  const auto& [key, text] = *e.items().begin();
  const std::string s = text.get<std::string>();
  switch (v.type) {
    case wasm::ValType::I32:
      return key == "i32" && s == std::to_string(static_cast<uint32_t>(v.bits));
    case wasm::ValType::I64:
      return key == "i64" && s == std::to_string(v.bits);
    case wasm::ValType::F32:
      if (key != "f32") return false;
      if (s == "nan") return std::isnan(v.asF32());
      return std::stoull(s, nullptr, 16) == v.bits;
    case wasm::ValType::F64:
      if (key != "f64") return false;
      if (s == "nan") return std::isnan(v.asF64());
      return std::stoull(s, nullptr, 16) == v.bits;
  }
  return false;
}

bool sameOutcome(const interp::InvocationOutcome& o, const json& e) {
  if (e.contains("trap")) {
    const auto* trap = std::get_if<interp::Trap>(&o);
    return trap && interp::toString(trap->kind) == e["trap"].get<std::string>();
  }
  const auto* results = std::get_if<interp::Results>(&o);
  if (!results || results->values.size() != e["results"].size()) return false;
  for (size_t i = 0; i < results->values.size(); ++i) {
    if (!sameValue(results->values[i], e["results"][i])) return false;
  }
  return true;
}

bool sameCalls(const std::vector<interp::HostCall>& calls, const json& e) {
  if (calls.size() != e.size()) return false;
  for (size_t i = 0; i < calls.size(); ++i) {
    if (calls[i].import_name != e[i]["name"].get<std::string>()) return false;
    if (calls[i].args.size() != e[i]["args"].size()) return false;
    for (size_t k = 0; k < calls[i].args.size(); ++k) {
      if (!sameValue(calls[i].args[k], e[i]["args"][k])) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<std::string> compareWithExpected(const interp::ObservationLog& log,
                                             const json& expected) {
  std::vector<std::string> diffs;
  const auto& inst = expected["instantiation"];
  if (inst.is_null() != !log.instantiation_failure.has_value() ||
      (!inst.is_null() && !sameOutcome(*log.instantiation_failure, inst))) {
    diffs.push_back("instantiation: expected " + inst.dump() + ", got " +
                    (log.instantiation_failure ? interp::toString(*log.instantiation_failure)
                                               : std::string("ok")));
  }
  if (!sameCalls(log.start_host_calls, expected["startHostCalls"])) {
    diffs.push_back("start host calls differ");
  }
  const auto& invs = expected["invocations"];
  if (invs.size() != log.invocations.size()) {
    diffs.push_back("expected " + std::to_string(invs.size()) + " invocations, got " +
                    std::to_string(log.invocations.size()));
    return diffs;
  }
  for (size_t i = 0; i < invs.size(); ++i) {
    const auto& rec = log.invocations[i];
    if (!sameOutcome(rec.outcome, invs[i]["outcome"])) {
      diffs.push_back("invocation " + std::to_string(i) + " (" + rec.invocation.export_name +
                      "): expected " + invs[i]["outcome"].dump() + ", got " +
                      interp::toString(rec.outcome));
    }
    if (!sameCalls(rec.host_calls, invs[i]["hostCalls"])) {
      diffs.push_back("invocation " + std::to_string(i) + ": host calls differ");
    }
  }
  const auto& digest = expected["memoryDigest"];
  if (!digest.is_null()) {
    char buf[24];
    if (log.memory_digest) {
      std::snprintf(buf, sizeof(buf), "%016llx",
                    static_cast<unsigned long long>(*log.memory_digest));
    }
    if (!log.memory_digest || digest.get<std::string>() != buf) {
      diffs.push_back("memory digest differs");
    }
  }
  return diffs;
}

}  // namespace debloat::testing
