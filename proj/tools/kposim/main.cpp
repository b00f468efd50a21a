// Copyright 2026 The kposim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// kposim: run a registered experiment and write CSV + manifest.
//
//   kposim list
//   kposim validate --config <file>
//   kposim <experiment> [--config <file>] [--out <dir>] [--workers N] [--audit] [--strict-truncation]
//
// Exit codes: 0 ok, 2 config error, 3 some grid points failed, 4 audit flags (with --audit).

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kposim/errors.hpp"
#include "kposim/exp/audit.hpp"
#include "kposim/exp/config.hpp"
#include "kposim/exp/experiments.hpp"
#include "kposim/exp/output.hpp"
#include "kposim/exp/sweep.hpp"

#ifndef KPOSIM_VERSION
#define KPOSIM_VERSION "0.0.0"
#endif

namespace {

namespace ex = kposim::exp;

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kPartialFailure = 3;
constexpr int kAuditFlags = 4;

void usage(std::ostream& os) {
  os << "usage: kposim list\n"
        "       kposim validate --config <file>\n"
        "       kposim <experiment> [--config <file>] [--out <dir>] [--workers N] [--audit] "
        "[--strict-truncation]\n";
}

int list_experiments() {
  for (const auto& def : ex::registry()) {
    const auto cfg = def.defaults();
    std::printf("%-24s %s\n", def.name.c_str(), def.figure.c_str());
    std::printf("%-24s %s\n", "", def.description.c_str());
    std::string axes;
    for (const auto& a : cfg.grid) axes += (axes.empty() ? "" : " x ") + a.name + "[" + std::to_string(a.values.size()) + "]";
    std::printf("%-24s grid %s = %zu points\n", "", axes.c_str(), cfg.grid_size());
  }
  return kOk;
}

int validate_command(std::vector<std::string> args) {
  CLI::App app{"validate a config file", "kposim validate"};
  std::string config;
  app.add_option("--config", config, "config file")->required();
  std::reverse(args.begin(), args.end());
  app.parse(args);
  const auto cfg = ex::load_config(config);
  std::printf("%s: ok (%s, %zu grid points)\n", config.c_str(), cfg.experiment.c_str(), cfg.grid_size());
  return kOk;
}

int run_command(const std::string& experiment, std::vector<std::string> args) {
  CLI::App app{"run experiment " + experiment, "kposim " + experiment};
  std::string config, out;
  std::optional<int> workers;
  bool audit = false, strict = false;
  app.add_option("--config", config, "config file (JSON); defaults are used when omitted");
  app.add_option("--out", out, "output directory");
  app.add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--audit", audit, "re-run first and last points with 2 n_max and step/2");
  app.add_flag("--strict-truncation", strict, "treat truncation warnings as errors");
  std::reverse(args.begin(), args.end());
  app.parse(args);

  ex::ExperimentConfig cfg =
      config.empty() ? ex::find_experiment(experiment).defaults() : ex::load_config(config, experiment);
  if (!out.empty()) cfg.out_dir = out;
  if (workers) cfg.workers = *workers;
  if (audit) cfg.audit = true;
  if (strict) cfg.strict_truncation = true;
  ex::validate(cfg);

  const ex::SweepResult result = ex::run_sweep(cfg, cfg.workers);
  std::optional<ex::AuditReport> report;
  if (cfg.audit) report = ex::convergence_audit(cfg, result);
  const auto paths = ex::write_outputs(cfg, result, report);

  std::fprintf(stderr, "%s: %zu points, %zu failed, %.1f s -> %s\n", cfg.experiment.c_str(), result.rows.size(),
               result.failures(), result.wall_seconds, paths.csv.c_str());
  for (const auto& row : result.rows)
    if (row.failed())
      std::fprintf(stderr, "  point %zu: %s: %s\n", row.point.index, row.result.error.c_str(),
                   row.result.message.c_str());
  if (report)
    for (const auto& f : report->flags)
      std::fprintf(stderr, "  audit point %zu: %s %.10g -> %.10g (%s)\n", f.grid_index, f.metric.c_str(), f.baseline,
                   f.refined, f.refinement.c_str());

  if (result.failures() > 0) return kPartialFailure;
  if (report && !report->clean()) return kAuditFlags;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty()) {
    usage(std::cerr);
    return kConfigError;
  }
  const std::string cmd = args.front();
  args.erase(args.begin());
  try {
    if (cmd == "-h" || cmd == "--help") {
      usage(std::cout);
      return kOk;
    }
    if (cmd == "--version") {
      std::printf("kposim %s\n", KPOSIM_VERSION);
      return kOk;
    }
    if (cmd == "list") return list_experiments();
    if (cmd == "validate") return validate_command(std::move(args));
    return run_command(cmd, std::move(args));
  } catch (const CLI::CallForHelp&) {
    usage(std::cout);
    return kOk;
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "kposim: %s\n", e.what());
    usage(std::cerr);
    return kConfigError;
  } catch (const kposim::ConfigError& e) {
    std::fprintf(stderr, "kposim: config error: %s\n", e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "kposim: %s\n", e.what());
    return 1;
  }
}
