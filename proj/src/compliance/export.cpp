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

#include "eflows/compliance/export.hpp"

#include <cstdint>
#include <cstdio>

#include "eflows/codec.hpp"
#include "eflows/text.hpp"

namespace eflows::compliance {

std::string_view to_string(ExportPart part) {
  switch (part) {
    case ExportPart::compliance: return "compliance";
    case ExportPart::summary: return "summary";
    case ExportPart::thresholds: return "thresholds";
    case ExportPart::errors: return "errors";
  }
  return "compliance";
}

std::optional<ExportPart> parse_export_part(std::string_view text) {
  if (text == "compliance") return ExportPart::compliance;
  if (text == "summary") return ExportPart::summary;
  if (text == "thresholds") return ExportPart::thresholds;
  if (text == "errors") return ExportPart::errors;
  return std::nullopt;
}

std::string export_file_name(ExportPart part) { return std::string(to_string(part)) + ".csv"; }

std::string export_csv(const ComplianceReport& report, ExportPart part) {
  using text::csv_field;
  std::string out;
  switch (part) {
    case ExportPart::compliance:
      out = std::string(kComplianceCsvHeader) + "\n";
      for (const auto& r : report.compliance) {
        out += csv_field(r.station_id) + "," + csv_field(r.bioperiod) + "," + std::to_string(r.year) +
               "," + std::to_string(r.noncompliance_days) + "," + std::to_string(r.observed_days) +
               "," + std::to_string(r.missing_days) + "," + std::to_string(r.total_days) + "\n";
      }
      break;
    case ExportPart::summary:
      out = std::string(kSummaryCsvHeader) + "\n";
      for (const auto& s : report.summaries) {
        out += csv_field(s.station_id) + "," + csv_field(s.bioperiod) + "," +
               std::to_string(s.years_covered) + "," + text::format_fixed(s.mean, 2) + "," +
               text::format_fixed(s.sd, 2) + "," + std::to_string(s.min) + "," +
               std::to_string(s.max) + "\n";
      }
      break;
    case ExportPart::thresholds:
      out = std::string(kThresholdsCsvHeader) + "\n";
      for (const auto& t : report.thresholds) {
        out += csv_field(t.station_id) + "," + std::string(methods::to_string(t.config.method_id)) +
               "," + text::format_number(t.config.p) + "," +
               std::string(methods::to_string(t.config.aggregation)) + "," +
               std::string(hydro::to_string(t.config.daily_statistic)) + "," +
               text::format_number(t.q_env) + "," + std::to_string(t.n) + "," +
               text::format_number(t.coverage) + "," + codec::format_timestamp(t.computed_at) + "\n";
      }
      break;
    case ExportPart::errors:
      out = std::string(kErrorsCsvHeader) + "\n";
      for (const auto& e : report.errors) {
        out += csv_field(e.station_id) + "," + std::string(eflows::to_string(e.code)) + "," +
               csv_field(e.message) + "\n";
      }
      break;
  }
  return out;
}

std::string report_document(const ComplianceReport& report) {
  return codec::dump(codec::to_json(report));
}

std::string report_id(std::string_view document) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : document) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string download_file_name(const ComplianceReport& report, ExportPart part) {
  std::string ids;
  for (const auto& id : report.effective.station_ids) {
    if (!ids.empty()) ids += '-';
    for (char c : id) {
      const bool safe = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                        c == '_' || c == '.';
      ids += safe ? c : '_';
    }
  }
  return "eflows_" + ids + "_" + std::to_string(report.effective.years.from) + "-" +
         std::to_string(report.effective.years.to) + "_" + std::string(to_string(part)) + ".csv";
}

}  // namespace eflows::compliance
