// Copyright 2026 The eflows Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "eflows/cli/commands.hpp"
#include "eflows/cli/replay.hpp"

namespace {

std::vector<std::string> split_ids(const std::vector<std::string>& raw) {
  std::vector<std::string> ids;
  for (const auto& item : raw) {
    std::stringstream ss(item);
    std::string id;
    while (std::getline(ss, id, ',')) {
      if (!id.empty()) ids.push_back(id);
    }
  }
  return ids;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace eflows::cli;

  CLI::App app{"eflows: environmental flow thresholds and compliance reporting"};
  app.require_subcommand(1);

  IngestOptions ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Load daily-record or station CSV files into a data directory");
  ingest_cmd->add_option("files", ingest.files, "CSV files")->required();
  ingest_cmd->add_option("--data-dir", ingest.data_dir, "Store directory")->required();

  ReportOptions report;
  std::vector<std::string> report_stations;
  auto* report_cmd = app.add_subcommand("report", "Compute thresholds and noncompliance tables");
  report_cmd->add_option("--stations", report_stations, "Station ids (comma separated or repeated)");
  report_cmd->add_option("--from", report.from_year, "First year")->required();
  report_cmd->add_option("--to", report.to_year, "Last year")->required();
  report_cmd->add_option("--config", report.config_file, "Service config or method override document");
  report_cmd->add_option("--out", report.out_dir, "Output directory")->required();
  report_cmd->add_option("--format", report.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  report_cmd->add_flag("--reproducible", report.reproducible, "Zero computed_at timestamps");
  report_cmd->add_option("--data-dir", report.data_dir, "Store directory")->required();

  ReplaySpec replay_spec;
  long long pace_ms = 0;
  auto* replay_cmd = app.add_subcommand("replay", "Stream a CSV file into a running service");
  replay_cmd->add_option("source", replay_spec.source_file, "Daily-record CSV")->required();
  replay_cmd->add_option("--target", replay_spec.target_url, "Service URL, e.g. http://127.0.0.1:8080")
      ->required();
  replay_cmd->add_option("--batch-size", replay_spec.batch_size, "Records per POST");
  replay_cmd->add_option("--pace-ms", pace_ms, "Sleep between batches in milliseconds");
  replay_cmd->add_option("--jitter", replay_spec.jitter_fraction, "Extra random sleep as a fraction of pace");
  replay_cmd->add_option("--jitter-seed", replay_spec.jitter_seed, "Seed for jitter");

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth", "Write a deterministic synthetic fixture CSV");
  synth_cmd->add_option("--spec", synth.spec_file, "Fixture spec document")->required();
  synth_cmd->add_option("--seed", synth.seed, "Random seed")->required();
  synth_cmd->add_option("--out", synth.out, "Records CSV (stdout when omitted)");
  synth_cmd->add_option("--stations-out", synth.stations_out, "Station metadata CSV");

  ServeOptions serve;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  serve_cmd->add_option("--config", serve.config_file, "Service config document");
  serve_cmd->add_option("--bind", serve.bind, "host:port (overrides EFLOWS_BIND)");
  serve_cmd->add_option("--data-dir", serve.data_dir, "Store directory (overrides EFLOWS_DATA_DIR)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  if (*ingest_cmd) return run_ingest(ingest, std::cout, std::cerr);
  if (*report_cmd) {
    report.stations = split_ids(report_stations);
    return run_report(report, std::cout, std::cerr);
  }
  if (*replay_cmd) {
    replay_spec.pace = std::chrono::milliseconds{pace_ms};
    return replay(replay_spec, std::cout, std::cerr).exit_code;
  }
  if (*synth_cmd) return run_synth(synth, std::cout, std::cerr);
  if (*serve_cmd) return run_serve(serve, std::cout, std::cerr);
  return kExitInput;
}
