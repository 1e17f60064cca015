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

#include "commands.h"

#include <CLI11.hpp>

#include "debloat/interp/instance.h"
#include "debloat/interp/runner.h"
#include "debloat/shrink/shrink.h"
#include "documents.h"

namespace debloat::cli {

namespace {

struct Paths {
  std::string module;
  std::string workload;
  std::string out;
  std::string report;
  std::string original;
  std::string debloated;
  bool fail_on_behavior_change = false;
};

void emit(const Document& doc, const std::string& path, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (path.empty()) {
    out << text;
  } else {
    writeTextFile(path, text);
  }
}

void printMismatches(const pipeline::ValidationVerdict& v, std::ostream& err) {
  if (!v.syntactic_ok) err << "debloated module does not validate\n";
  for (const auto& m : v.mismatches) {
    err << "mismatch";
    if (m.invocation) err << " in invocation " << *m.invocation;
    err << " (" << m.field << "): original " << m.original << ", debloated "
        << m.debloated << "\n";
  }
}

int debloat(const Paths& p, std::ostream& out, std::ostream& err) {
  const auto input = readBinaryFile(p.module);
  const auto workload = parseWorkload(readTextFile(p.workload));
  pipeline::DebloatOptions options;
  options.fail_on_behavior_change = p.fail_on_behavior_change;

  auto write = [&](const pipeline::DebloatResult& r) {
    writeBinaryFile(p.out, r.output);
    emit(reportToJson(r.report), p.report, out);
  };
  try {
    auto result = pipeline::debloatModule(input, workload, options);
    write(result);
    if (!result.report.validation.ok()) {
      printMismatches(result.report.validation, err);
    }
  } catch (const pipeline::ValidationFailed& e) {
    write(e.result());
    printMismatches(e.result().report.validation, err);
    err << "error: " << e.what() << "\n";
    return kExitValidationFailed;
  }
  return kExitOk;
}

int trace(const Paths& p, std::ostream& out) {
  const auto module = wasm::decode(readBinaryFile(p.module));
  auto report = wasm::validateModule(module);
  if (!report.ok()) throw pipeline::InvalidModule(report);
  const auto workload = parseWorkload(readTextFile(p.workload));
  auto run = interp::runWorkload(module, workload);
  emit(traceToJson(run.trace), p.out, out);
  return kExitOk;
}

int validate(const Paths& p, std::ostream& out, std::ostream& err) {
  const auto original = readBinaryFile(p.original);
  const auto debloated = readBinaryFile(p.debloated);
  const auto workload = parseWorkload(readTextFile(p.workload));
  auto verdict = pipeline::validateBehavior(original, debloated, workload);
  emit(verdictToJson(verdict), p.out, out);
  if (!verdict.ok()) {
    printMismatches(verdict, err);
    return kExitValidationFailed;
  }
  return kExitOk;
}

int stats(const Paths& p, std::ostream& out) {
  emit(moduleStatsToJson(readBinaryFile(p.module)), p.out, out);
  return kExitOk;
}

}  // namespace

int runCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Trace-based debloating for WebAssembly modules"};
  app.name(args.empty() ? "wasm-debloat" : args[0]);
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(pipeline::toolVersion()));

  Paths p;
  auto* cmd_debloat = app.add_subcommand(
      "debloat", "Trace a workload, then stub or remove everything it does not reach");
  cmd_debloat->add_option("--module", p.module, "Input module")->required();
  cmd_debloat->add_option("--workload", p.workload, "Workload document")->required();
  cmd_debloat->add_option("--out", p.out, "Output module")->required();
  cmd_debloat->add_option("--report", p.report, "Report path (default: stdout)");
  cmd_debloat->add_flag("--fail-on-behavior-change", p.fail_on_behavior_change,
                        "Exit 2 when the output does not replay the workload identically");

  auto* cmd_trace = app.add_subcommand("trace", "Run a workload and print the execution trace");
  cmd_trace->add_option("--module", p.module, "Input module")->required();
  cmd_trace->add_option("--workload", p.workload, "Workload document")->required();
  cmd_trace->add_option("--out", p.out, "Trace path (default: stdout)");

  auto* cmd_validate = app.add_subcommand(
      "validate", "Replay a workload on two modules and compare what it observes");
  cmd_validate->add_option("--original", p.original, "Original module")->required();
  cmd_validate->add_option("--debloated", p.debloated, "Debloated module")->required();
  cmd_validate->add_option("--workload", p.workload, "Workload document")->required();
  cmd_validate->add_option("--out", p.out, "Verdict path (default: stdout)");

  auto* cmd_stats = app.add_subcommand("stats", "Print section sizes and function counts");
  cmd_stats->add_option("--module", p.module, "Input module")->required();
  cmd_stats->add_option("--out", p.out, "Output path (default: stdout)");

  std::vector<std::string> rest(args.rbegin(), args.rend());
  if (!rest.empty()) rest.pop_back();
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e, out, err);
    }
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*cmd_debloat) return debloat(p, out, err);
    if (*cmd_trace) return trace(p, out);
    if (*cmd_validate) return validate(p, out, err);
    return stats(p, out);
  } catch (const DocumentError& e) {
    err << "error: workload: " << e.what() << "\n";
  } catch (const pipeline::InvalidModule& e) {
    err << "error: " << e.what() << "\n";
  } catch (const wasm::MalformedBinary& e) {
    err << "error: malformed module: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitInputError;
}

}  // namespace debloat::cli
