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

#include "debloat/interp/runner.h"

#include <optional>

namespace debloat::interp {

WorkloadRun runWorkload(const wasm::Module& module, const Workload& workload,
                        const HostConfig& host) {
  for (const auto& inv : workload.invocations) {
    checkInvocation(module, inv.export_name, inv.args);
  }

  WorkloadRun run;
  std::optional<Instance> instance;
  try {
    instance.emplace(module, host);
  } catch (const LinkError& e) {
    run.log.instantiation_failure = LinkFailure{e.what()};
    return run;
  }

  std::optional<Trap> start_trap = instance->initialize(workload.fuel);
  run.log.start_host_calls = instance->takeHostCalls();
  if (start_trap) {
    run.log.instantiation_failure = *start_trap;
    run.trace = instance->trace();
    return run;
  }

  for (const auto& inv : workload.invocations) {
    InvocationRecord rec;
    rec.invocation = inv;
    rec.outcome = instance->invoke(inv.export_name, inv.args, workload.fuel);
    rec.host_calls = instance->takeHostCalls();
    run.log.invocations.push_back(std::move(rec));
  }
  run.log.memory_digest = instance->memoryDigest();
  run.trace = instance->trace();
  return run;
}

}  // namespace debloat::interp
