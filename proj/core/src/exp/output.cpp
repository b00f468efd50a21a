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

#include "kposim/exp/output.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"

#include "kposim/errors.hpp"

#ifndef KPOSIM_VERSION
#define KPOSIM_VERSION "0.0.0"
#endif

namespace kposim::exp {
namespace {

using nlohmann::ordered_json;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open '" + path.string() + "' for writing");
  f << text;
  if (!f) throw ConfigError("write to '" + path.string() + "' failed");
}

}  // namespace

std::string format_csv(const SweepResult& result) {
  std::string s;
  for (const auto& a : result.axes) s += a + ",";
  s += "status,error";
  for (const auto& m : result.metrics) s += "," + m;
  s += "\n";
  for (const auto& row : result.rows) {
    for (double v : row.point.values) s += num(v) + ",";
    s += row.failed() ? "failed," + row.result.error : std::string("ok,");
    for (const auto& m : result.metrics) {
      s += ",";
      auto it = row.result.metrics.find(m);
      if (it != row.result.metrics.end()) s += num(it->second);
    }
    s += "\n";
  }
  return s;
}

std::string format_wigner_csv(const WignerGrid& grid) {
  std::string s = "x,y,W\n";
  for (std::size_t iy = 0; iy < grid.y.size(); ++iy)
    for (std::size_t ix = 0; ix < grid.x.size(); ++ix)
      s += num(grid.x[ix]) + "," + num(grid.y[iy]) + "," + num(grid.values(static_cast<Eigen::Index>(iy), static_cast<Eigen::Index>(ix))) + "\n";
  return s;
}

std::string format_manifest(const ExperimentConfig& config, const SweepResult& result,
                            const std::optional<AuditReport>& audit) {
  const ExperimentDef& def = find_experiment(config.experiment);
  ordered_json m;
  m["schema_version"] = kSchemaVersion;
  m["csv_schema_version"] = kCsvSchemaVersion;
  m["code_version"] = KPOSIM_VERSION;
  m["experiment"] = config.experiment;
  m["figure"] = def.figure;
  m["description"] = def.description;
  m["units"] = "energies and rates in units of K (K = 1), times in units of 1/K";
  m["grid_note"] = "grid values are sampling choices of this run, not reference data";
  m["config"] = ordered_json::parse(to_json(config));

  ordered_json cols = ordered_json::array();
  for (const auto& a : result.axes) cols.push_back(a);
  cols.push_back("status");
  cols.push_back("error");
  for (const auto& c : result.metrics) cols.push_back(c);
  m["columns"] = cols;
  m["axes"] = result.axes;
  m["points"] = result.rows.size();
  m["failures"] = result.failures();

  ordered_json errs = ordered_json::array();
  ordered_json wall = ordered_json::array();
  ordered_json snaps = ordered_json::array();
  for (const auto& row : result.rows) {
    wall.push_back(row.wall_seconds);
    if (row.failed())
      errs.push_back({{"index", row.point.index}, {"code", row.result.error}, {"message", row.result.message}});
    for (const auto& s : row.result.snapshots)
      snaps.push_back({{"index", row.point.index}, {"label", s.label}, {"file", "wigner_" + s.label + ".csv"}});
  }
  m["errors"] = errs;
  m["wigner_files"] = snaps;
  m["warnings"] = result.warnings;
  m["timing"] = {{"wall_seconds", result.wall_seconds}, {"point_seconds", wall}, {"workers", config.workers}};

  if (audit) {
    ordered_json flags = ordered_json::array();
    for (const auto& f : audit->flags)
      flags.push_back({{"index", f.grid_index},
                       {"metric", f.metric},
                       {"baseline", f.baseline},
                       {"refined", f.refined},
                       {"refinement", f.refinement}});
    m["audit"] = {{"audited_points", audit->audited_points},
                  {"refined_n_max", audit->refined_n_max},
                  {"refined_step", audit->refined_step},
                  {"fidelity_tolerance", kAuditFidelityTol},
                  {"phase_tolerance", kAuditPhaseTol},
                  {"clean", audit->clean()},
                  {"flags", flags}};
  } else {
    m["audit"] = nullptr;
  }
  return m.dump(2) + "\n";
}

OutputPaths write_outputs(const ExperimentConfig& config, const SweepResult& result,
                          const std::optional<AuditReport>& audit) {
  namespace fs = std::filesystem;
  const fs::path dir(config.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir.string() + "': " + ec.message());

  OutputPaths out;
  out.csv = (dir / (config.experiment + ".csv")).string();
  out.manifest = (dir / (config.experiment + ".manifest.json")).string();
  write_file(out.csv, format_csv(result));
  for (const auto& row : result.rows)
    for (const auto& s : row.result.snapshots) {
      out.wigner.push_back((dir / ("wigner_" + s.label + ".csv")).string());
      write_file(out.wigner.back(), format_wigner_csv(s.grid));
    }
  write_file(out.manifest, format_manifest(config, result, audit));
  return out;
}

}  // namespace kposim::exp
