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

#ifndef DEBLOAT_INTERP_INSTANCE_H_
#define DEBLOAT_INTERP_INSTANCE_H_

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "debloat/interp/host.h"
#include "debloat/interp/value.h"
#include "debloat/interp/workload.h"
#include "debloat/wasm/module.h"

namespace debloat::interp {

// Trap::function_index when no function was executing (segment
// initialization).
inline constexpr uint32_t kNoFunction = std::numeric_limits<uint32_t>::max();

class LinkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownExport : public std::runtime_error {
 public:
  explicit UnknownExport(std::string name);
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class SignatureMismatch : public std::runtime_error {
 public:
  SignatureMismatch(std::string export_name, std::string expected,
                    std::string got);
  const std::string& expected() const { return expected_; }
  const std::string& got() const { return got_; }

 private:
  std::string expected_;
  std::string got_;
};

// Thrown by instantiate() when segment initialization or the start function
// traps.
class InstantiationTrap : public std::runtime_error {
 public:
  explicit InstantiationTrap(Trap trap);
  const Trap& trap() const { return trap_; }

 private:
  Trap trap_;
};

struct InstanceLimits {
  // Bound on nested activations: every function call and every entered
  // block/loop/if counts one. Exceeding it traps with StackExhausted.
  uint32_t max_depth = 4000;
  // Linear memory never grows past this many pages.
  uint32_t max_memory_pages = 1024;
};

// Resolves an invocation against the module's exports. Returns the function
// index. Throws UnknownExport or SignatureMismatch.
uint32_t checkInvocation(const wasm::Module& module, std::string_view name,
                         std::span<const Value> args);

// A running module. Not thread-safe; the module must outlive the instance.
//
// Execution probes are built in: a function counts as entered the moment its
// first body instruction is about to run, so a trap anywhere inside the body
// cannot hide the entry.
class Instance {
 public:
  // Links imports against the host and allocates memory, table and globals.
  // Throws LinkError.
  Instance(const wasm::Module& module, const HostConfig& host,
           InstanceLimits limits = {});
  ~Instance();
  Instance(Instance&&) noexcept;
  Instance& operator=(Instance&&) noexcept;

  // Applies element and data segments, then runs the start function with the
  // given instruction budget. Must be called exactly once before invoke().
  std::optional<Trap> initialize(uint64_t fuel = kDefaultFuel);

  // Calls an exported function. Throws UnknownExport / SignatureMismatch.
  InvocationOutcome invoke(std::string_view export_name,
                           std::span<const Value> args,
                           uint64_t fuel = kDefaultFuel);

  ExecutionTrace trace() const;
  std::vector<HostCall> takeHostCalls();

  std::span<const uint8_t> memory() const;
  bool hasMemory() const;
  std::optional<uint64_t> memoryDigest() const;
  Value global(uint32_t index) const;

 private:
  struct State;
  std::unique_ptr<State> state_;
};

// Link + initialize in one step. Throws LinkError or InstantiationTrap.
Instance instantiate(const wasm::Module& module, const HostConfig& host,
                     uint64_t fuel = kDefaultFuel);

uint64_t fnv1a64(std::span<const uint8_t> bytes);

}  // namespace debloat::interp

#endif  // DEBLOAT_INTERP_INSTANCE_H_
