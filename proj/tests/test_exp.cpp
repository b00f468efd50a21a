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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "json.hpp"
#include "kposim/errors.hpp"
#include "kposim/exp/audit.hpp"
#include "kposim/exp/config.hpp"
#include "kposim/exp/experiments.hpp"
#include "kposim/exp/output.hpp"
#include "kposim/exp/sweep.hpp"

using namespace kposim;
using namespace kposim::exp;
namespace fs = std::filesystem;

namespace {

// Small rotation sweep used for runner tests: cheap but non-trivial dynamics.
const char* kSmallRotation = R"({
  "schema_version": 1,
  "experiment": "rotation-sweep-T",
  "params": {"p": 2.0, "n_max": 12},
  "grid": {"T": [0.2, 0.3, 0.5], "cd": [1, 0]},
  "evolution": {"step": 1e-3}
})";

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("kposim_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(KPOSIM_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Registry, AllExperimentsHaveValidDefaults) {
  const std::vector<std::string> names = {"rotation-sweep-T",      "gate-sweep-T",          "gate-sweep-theta-amp",
                                          "gate-sweep-T-by-p",     "gate-decoherence",      "beam-splitter-compare",
                                          "pure-decay-vs-dephasing", "cd-error-sweep",      "detuning-error-sweep",
                                          "loading",               "wigner-snapshot"};
  ASSERT_EQ(registry().size(), names.size());
  for (const auto& n : names) {
    const auto& def = find_experiment(n);
    const auto cfg = def.defaults();
    EXPECT_EQ(cfg.experiment, n);
    EXPECT_NO_THROW(validate(cfg)) << n;
    EXPECT_FALSE(def.metrics.empty());
    EXPECT_GT(cfg.grid_size(), 0u);
  }
  EXPECT_THROW(find_experiment("nope"), ConfigError);
}

TEST(Registry, GridExpansionLastAxisFastest) {
  auto cfg = find_experiment("gate-sweep-T-by-p").defaults();
  cfg.grid = {{"p", {5, 6}}, {"T", {1.0, 2.0, 3.0}}, {"cd", {1, 0}}};
  const auto pts = expand_grid(cfg);
  ASSERT_EQ(pts.size(), 12u);
  EXPECT_EQ(pts[1].values, (std::vector<double>{5, 1.0, 0}));
  EXPECT_EQ(pts[2].values, (std::vector<double>{5, 2.0, 1}));
  EXPECT_EQ(pts[11].values, (std::vector<double>{6, 3.0, 0}));
  EXPECT_EQ(pts[7].get("T"), 1.0);
  EXPECT_THROW(pts[0].get("xi"), ParameterError);
}

TEST(Config, OverlayAndEcho) {
  const auto cfg = parse_config(kSmallRotation);
  EXPECT_EQ(cfg.params.n_max, 12);
  EXPECT_EQ(cfg.params.p[0], 2.0);
  EXPECT_EQ(cfg.params.p[1], 2.0);
  EXPECT_EQ(cfg.axis("T").values.size(), 3u);
  EXPECT_DOUBLE_EQ(cfg.evolution.step, 1e-3);
  // Echo is a fixed point of parse . to_json.
  const std::string echo = to_json(cfg);
  EXPECT_EQ(to_json(parse_config(echo)), echo);
}

TEST(Config, RejectsBadDocuments) {
  EXPECT_THROW(parse_config("{not json"), ConfigError);
  EXPECT_THROW(parse_config(R"({"experiment": "gate-sweep-T"})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"schema_version": 2, "experiment": "gate-sweep-T"})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"schema_version": 1, "experiment": "gate-sweep-T", "extra": 1})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"schema_version": 1, "experiment": "gate-sweep-T", "grid": {"xi": [1]}})"),
               ConfigError);
  EXPECT_THROW(parse_config(R"({"schema_version": 1, "experiment": "gate-sweep-T", "grid": {"T": []}})"),
               ConfigError);
  EXPECT_THROW(parse_config(R"({"schema_version": 1, "experiment": "gate-sweep-T", "params": {"J": "x"}})"),
               ConfigError);
  EXPECT_THROW(parse_config(R"({"schema_version": 1, "experiment": "gate-sweep-T", "params": {"r": -1}})"),
               ConfigError);
  EXPECT_THROW(parse_config(R"({"schema_version": 1, "experiment": "gate-sweep-T", "workers": 0})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"schema_version": 1})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"schema_version": 1, "experiment": "loading"})", "gate-sweep-T"), ConfigError);
}

TEST(Sweep, CsvIsDeterministicAndWorkerInvariant) {
  const auto cfg = parse_config(kSmallRotation);
  const auto a = run_sweep(cfg, 1);
  const auto b = run_sweep(cfg, 3);
  const auto c = run_sweep(cfg, 1);
  EXPECT_EQ(format_csv(a), format_csv(b));
  EXPECT_EQ(format_csv(a), format_csv(c));
  EXPECT_EQ(a.failures(), 0u);
  for (std::size_t i = 0; i < a.rows.size(); ++i) EXPECT_EQ(a.rows[i].point.index, i);
}

TEST(Sweep, FailedPointsAreRecordedAndRunContinues) {
  const auto cfg = parse_config(R"({"schema_version": 1, "experiment": "gate-sweep-T-by-p",
    "params": {"n_max": 8}, "grid": {"p": [5], "T": [0.3, 0.4], "cd": [1]}})");
  const auto r = run_sweep(cfg, 1);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_EQ(r.failures(), 2u);
  EXPECT_EQ(r.rows[0].result.error, "calibration");
  const std::string csv = format_csv(r);
  EXPECT_NE(csv.find("failed,calibration"), std::string::npos);
}

TEST(Output, CsvColumnsMatchManifest) {
  auto cfg = parse_config(kSmallRotation);
  cfg.out_dir = scratch("out").string();
  const auto r = run_sweep(cfg, 1);
  const auto paths = write_outputs(cfg, r, std::nullopt);
  const std::string csv = slurp(paths.csv);
  const auto man = nlohmann::json::parse(slurp(paths.manifest));
  std::string header;
  for (const auto& c : man["columns"]) header += (header.empty() ? "" : ",") + c.get<std::string>();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), header);
  EXPECT_EQ(man["points"].get<int>(), 6);
  EXPECT_EQ(man["schema_version"].get<int>(), kSchemaVersion);
  EXPECT_EQ(man["config"]["params"]["n_max"].get<int>(), 12);
  EXPECT_TRUE(man["audit"].is_null());
  // 6 data rows plus the header.
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
}

TEST(Output, WignerSnapshotFiles) {
  auto cfg = find_experiment("wigner-snapshot").defaults();
  cfg.grid = {{"snapshot", {0, 1}}};
  cfg.options.wigner_grid.nx = cfg.options.wigner_grid.ny = 41;
  cfg.out_dir = scratch("wigner").string();
  const auto r = run_sweep(cfg, 1);
  ASSERT_EQ(r.failures(), 0u);
  const auto paths = write_outputs(cfg, r, std::nullopt);
  ASSERT_EQ(paths.wigner.size(), 2u);
  EXPECT_TRUE(paths.wigner[0].ends_with("wigner_cat_theta0.csv"));
  const std::string w = slurp(paths.wigner[0]);
  EXPECT_EQ(w.substr(0, 6), "x,y,W\n");
  EXPECT_EQ(std::count(w.begin(), w.end(), '\n'), 41 * 41 + 1);
  EXPECT_NEAR(r.rows[0].result.metrics.at("w_origin"), 2 / std::numbers::pi, 1e-10);
}

TEST(Audit, FlagsTruncatedBasis) {
  auto cfg = parse_config(R"({"schema_version": 1, "experiment": "rotation-sweep-T",
    "params": {"n_max": 8}, "grid": {"T": [0.4], "cd": [1]}})");
  const auto base = run_sweep(cfg, 1);
  ASSERT_EQ(base.failures(), 0u);
  const auto rep = convergence_audit(cfg, base);
  EXPECT_EQ(rep.refined_n_max, 16);
  EXPECT_FALSE(rep.clean());
  bool n_flag = false;
  for (const auto& f : rep.flags) n_flag |= f.refinement == "n_max";
  EXPECT_TRUE(n_flag);
}

TEST(Audit, CoarseStepIsCaught) {
  auto cfg = parse_config(R"({"schema_version": 1, "experiment": "rotation-sweep-T",
    "grid": {"T": [0.2], "cd": [0]}, "evolution": {"step": 1e-2}})");
  const auto base = run_sweep(cfg, 1);
  // Either the monitor rejects the run outright or the audit flags the step.
  if (base.failures() == 0) {
    const auto rep = convergence_audit(cfg, base);
    bool step_flag = false;
    for (const auto& f : rep.flags) step_flag |= f.refinement == "step";
    EXPECT_TRUE(step_flag);
  } else {
    EXPECT_EQ(base.rows[0].result.error, "integration");
  }
}

TEST(Audit, ConvergedRunIsClean) {
  auto cfg = parse_config(R"({"schema_version": 1, "experiment": "rotation-sweep-T",
    "params": {"p": 2.0, "n_max": 20}, "grid": {"T": [0.5], "cd": [1]}, "evolution": {"step": 1e-3}})");
  const auto base = run_sweep(cfg, 1);
  EXPECT_TRUE(convergence_audit(cfg, base).clean());
}

TEST(Cli, ExitCodes) {
  const fs::path dir = scratch("cli");
  const auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  };
  EXPECT_EQ(run_cli("list"), 0);
  EXPECT_EQ(run_cli("validate --config " + write("ok.json", kSmallRotation)), 0);
  EXPECT_EQ(run_cli("validate --config " + write("bad.json", R"({"schema_version": 1, "bogus": 0})")), 2);
  EXPECT_EQ(run_cli("validate --config " + (dir / "missing.json").string()), 2);
  EXPECT_EQ(run_cli("no-such-experiment"), 2);
  EXPECT_EQ(run_cli("rotation-sweep-T --workers 0"), 2);

  const std::string out = (dir / "run").string();
  EXPECT_EQ(run_cli("rotation-sweep-T --config " + (dir / "ok.json").string() + " --out " + out + " --workers 2"), 0);
  EXPECT_TRUE(fs::exists(fs::path(out) / "rotation-sweep-T.csv"));
  EXPECT_TRUE(fs::exists(fs::path(out) / "rotation-sweep-T.manifest.json"));

  const auto partial = write("partial.json", R"({"schema_version": 1, "experiment": "gate-sweep-T-by-p",
    "params": {"n_max": 8}, "grid": {"p": [5], "T": [0.4], "cd": [1]}})");
  EXPECT_EQ(run_cli("gate-sweep-T-by-p --config " + partial + " --out " + out), 3);

  const auto coarse = write("coarse.json", R"({"schema_version": 1, "experiment": "rotation-sweep-T",
    "params": {"n_max": 8}, "grid": {"T": [0.4], "cd": [1]}})");
  EXPECT_EQ(run_cli("rotation-sweep-T --config " + coarse + " --out " + out + " --audit"), 4);
  const auto man = nlohmann::json::parse(slurp(fs::path(out) / "rotation-sweep-T.manifest.json"));
  EXPECT_FALSE(man["audit"]["clean"].get<bool>());

  EXPECT_EQ(run_cli("rotation-sweep-T --config " + coarse + " --out " + out + " --strict-truncation"), 3);
}
