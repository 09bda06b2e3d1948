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
#include <string>
#include <vector>

#include "eflows/compliance/compliance.hpp"
#include "eflows/errors.hpp"
#include "eflows/hydro/store.hpp"
#include "eflows/methods/eflow.hpp"

namespace eflows::compliance {

struct YearRange {
  int from = 0;
  int to = 0;

  friend bool operator==(const YearRange&, const YearRange&) = default;
};

struct ComplianceQuery {
  std::vector<std::string> station_ids;
  YearRange years;
  BioperiodCalendar calendar = BioperiodCalendar::standard();
  methods::EflowMethodConfig method;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct StationError {
  std::string station_id;
  ErrorCode code = ErrorCode::internal;
  std::string message;
};

struct ComplianceReport {
  /// Query with defaults resolved: station ids sorted and unique, and the
  /// method's reference period set (the year range when it was left open).
  ComplianceQuery effective;
  std::vector<methods::EflowThreshold> thresholds;
  std::vector<BioperiodCompliance> compliance;  // station, calendar order, year
  std::vector<ComplianceSummary> summaries;     // station, calendar order
  std::vector<StationError> errors;             // station order
};

/// Resolves the defaults applied by compliance_report.
ComplianceQuery effective_query(const ComplianceQuery& query);

/// compute_eflow -> partition_bioperiods -> count_noncompliance -> summarize
/// for every station. A failing station becomes an error entry and does not
/// affect the others. Output order is stable regardless of worker scheduling.
ComplianceReport compliance_report(const ComplianceQuery& query, const hydro::StoreSnapshot& store,
                                   std::chrono::sys_seconds computed_at = {});

}  // namespace eflows::compliance
