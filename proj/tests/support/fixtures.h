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

#ifndef DEBLOAT_TESTS_SUPPORT_FIXTURES_H_
#define DEBLOAT_TESTS_SUPPORT_FIXTURES_H_

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "debloat/interp/workload.h"
#include "debloat/wasm/binary.h"

namespace debloat::testing {

// A committed fixture: the module, its workload, and the outcomes recorded
// by the reference engine (see tests/oracle/build_fixtures.py).
struct Fixture {
  std::string name;
  wasm::Bytes bytes;
  interp::Workload workload;
  nlohmann::json expected;
};

std::filesystem::path fixtureDir();
std::vector<std::string> fixtureNames();
Fixture loadFixture(const std::string& name);
std::vector<Fixture> loadAllFixtures();

// Differences between a log and a reference document, one line each.
// Empty when they agree. NaN results only need to agree on being NaN.
std::vector<std::string> compareWithExpected(const interp::ObservationLog& log,
                                             const nlohmann::json& expected);

}  // namespace debloat::testing

#endif  // DEBLOAT_TESTS_SUPPORT_FIXTURES_H_
