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

#ifndef DEBLOAT_INTERP_RUNNER_H_
#define DEBLOAT_INTERP_RUNNER_H_

#include "debloat/interp/host.h"
#include "debloat/interp/instance.h"
#include "debloat/interp/workload.h"
#include "debloat/wasm/module.h"

namespace debloat::interp {

struct WorkloadRun {
  ObservationLog log;
  ExecutionTrace trace;
};

// Runs every invocation of `workload`, in order, against one fresh instance
// of a validated module. State persists across invocations and a trapping
// invocation does not stop the ones after it. The trace is cumulative and
// includes the start function.
//
// Every invocation is checked against the exports before anything executes:
// throws UnknownExport / SignatureMismatch. A link failure is recorded in the
// log rather than thrown.
WorkloadRun runWorkload(const wasm::Module& module, const Workload& workload,
                        const HostConfig& host = HostConfig::standard());

}  // namespace debloat::interp

#endif  // DEBLOAT_INTERP_RUNNER_H_
