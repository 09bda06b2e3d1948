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

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "eflows/hydro/store.hpp"

namespace eflows::cli {

/// Simulated gateway feed: records from a CSV file are pushed to /v1/ingest
/// in file order, one batch at a time.
struct ReplaySpec {
  std::filesystem::path source_file;
  std::string target_url;  // "http://host:port", optionally ending in /v1/ingest
  std::size_t batch_size = 1;
  std::chrono::milliseconds pace{0};  // sleep after each batch
  double jitter_fraction = 0.0;       // extra sleep drawn from [0, jitter_fraction * pace]
  std::uint64_t jitter_seed = 1;

  /// Throws std::invalid_argument.
  void validate() const;
};

struct ReplayOutcome {
  std::size_t batches_sent = 0;
  std::size_t batches_skipped = 0;
  std::size_t records_delivered = 0;
  hydro::IngestReport totals;
  int exit_code = 0;  // 0 ok, 2 input error, 3 connectivity error
};

/// Streams the file. Per-batch acknowledgements go to `acks`, diagnostics to
/// `diagnostics`. A failed batch is retried once, then reported and skipped;
/// an unreachable target ends the run with exit code 3.
ReplayOutcome replay(const ReplaySpec& spec, std::ostream& acks, std::ostream& diagnostics);

}  // namespace eflows::cli
