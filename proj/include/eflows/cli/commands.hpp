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

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eflows/hydro/synthetic.hpp"

// Batch entry points behind the `eflows` executable. Each returns the process
// exit code: 0 success, 2 usage or input error, 3 connectivity error.
namespace eflows::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitConnectivity = 3;

struct IngestOptions {
  std::vector<std::filesystem::path> files;  // daily-record or station metadata CSVs
  std::filesystem::path data_dir;
};

int run_ingest(const IngestOptions& options, std::ostream& out, std::ostream& err);

struct ReportOptions {
  std::vector<std::string> stations;
  int from_year = 0;
  int to_year = 0;
  std::optional<std::filesystem::path> config_file;
  std::filesystem::path out_dir;
  std::string format = "csv";  // csv | json
  bool reproducible = false;
  std::filesystem::path data_dir;
};

int run_report(const ReportOptions& options, std::ostream& out, std::ostream& err);

struct SynthStation {
  hydro::SyntheticSpec spec;
  std::string station_name;
  std::string river_name;
  double latitude = 0.0;
  double longitude = 0.0;
};

/// Reads a fixture spec document:
/// {"start_date", "end_date", "stations": [{"station_id", "base_q",
///  "seasonal_amplitude", "noise_scale", "gap_fraction"?, "station_name"?,
///  "river_name"?, "latitude"?, "longitude"?, "start_date"?, "end_date"?}]}
/// Throws InvalidSpec.
std::vector<SynthStation> read_synth_spec(const std::filesystem::path& file);

struct SynthOptions {
  std::filesystem::path spec_file;
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> out;  // stdout when absent
  std::optional<std::filesystem::path> stations_out;
};

int run_synth(const SynthOptions& options, std::ostream& out, std::ostream& err);

struct ServeOptions {
  std::optional<std::filesystem::path> config_file;
  std::optional<std::string> bind;
  std::optional<std::filesystem::path> data_dir;
};

int run_serve(const ServeOptions& options, std::ostream& out, std::ostream& err);

}  // namespace eflows::cli
