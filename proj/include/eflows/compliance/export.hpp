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

#include <optional>
#include <string>
#include <string_view>

#include "eflows/compliance/report.hpp"

namespace eflows::compliance {

inline constexpr std::string_view kComplianceCsvHeader =
    "station_id,bioperiod,year,noncompliance_days,observed_days,missing_days,total_days";
inline constexpr std::string_view kSummaryCsvHeader =
    "station_id,bioperiod,years_covered,mean,sd,min,max";
inline constexpr std::string_view kThresholdsCsvHeader =
    "station_id,method_id,p,aggregation,daily_statistic,q_env,n,coverage,computed_at";
inline constexpr std::string_view kErrorsCsvHeader = "station_id,code,message";

/// The tables a report can be exported as.
enum class ExportPart { compliance, summary, thresholds, errors };

std::string_view to_string(ExportPart part);
std::optional<ExportPart> parse_export_part(std::string_view text);

/// File name used by `cli report` and the export endpoint, e.g. "summary.csv".
std::string export_file_name(ExportPart part);

std::string export_csv(const ComplianceReport& report, ExportPart part);

/// Canonical JSON document of the full report (trailing newline included).
std::string report_document(const ComplianceReport& report);

/// Content-derived identifier: 16 hex digits of FNV-1a over `document`.
std::string report_id(std::string_view document);

/// Download name carrying the station ids and year range, e.g.
/// "eflows_A-B_2009-2018_summary.csv".
std::string download_file_name(const ComplianceReport& report, ExportPart part);

}  // namespace eflows::compliance
