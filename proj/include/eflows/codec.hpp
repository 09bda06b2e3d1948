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
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "eflows/compliance/compliance.hpp"
#include "eflows/compliance/report.hpp"
#include "eflows/hydro/records.hpp"
#include "eflows/hydro/store.hpp"
#include "eflows/methods/eflow.hpp"

// Structured-document encoding of the domain types. Field names match the
// published schema in schema/eflows-api.schema.json.
namespace eflows::codec {

using Json = nlohmann::ordered_json;

/// A document failed validation; `field` is a dotted path to the culprit.
class SchemaError : public std::invalid_argument {
 public:
  SchemaError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// `YYYY-MM-DDThh:mm:ssZ`.
std::string format_timestamp(std::chrono::sys_seconds t);

/// Pretty-printed with a trailing newline; the canonical byte form of every
/// document this project writes.
std::string dump(const Json& doc);

/// Parses text, turning syntax errors into SchemaError("body", ...).
Json parse(std::string_view text);

Json to_json(const hydro::DailyRecord& record);
Json to_json(const hydro::Station& station);
Json to_json(const hydro::DailySeries& series);
Json to_json(const hydro::IngestReport& report);
Json to_json(const methods::EflowMethodConfig& config);
Json to_json(const compliance::BioperiodCalendar& calendar);
Json to_json(const methods::EflowThreshold& threshold);
Json to_json(const compliance::BioperiodCompliance& row);
Json to_json(const compliance::ComplianceSummary& summary);
Json to_json(const compliance::StationError& error);
Json to_json(const compliance::ComplianceQuery& effective);
Json to_json(const compliance::ComplianceReport& report);

hydro::DailyRecord record_from_json(const Json& doc, const std::string& path = "record");

/// Merges the keys present in `overrides` into `base`. Unknown keys and
/// ill-typed values throw SchemaError; the merged config is validated.
methods::EflowMethodConfig apply_method_overrides(methods::EflowMethodConfig base,
                                                  const Json& overrides,
                                                  const std::string& path = "method_config");

compliance::BioperiodCalendar calendar_from_json(const Json& doc,
                                                 const std::string& path = "calendar");

/// Reads {station_ids, year_range, calendar?, method_config?}; other keys
/// listed in `extra_keys` are tolerated and ignored.
compliance::ComplianceQuery query_from_json(const Json& doc,
                                            const compliance::BioperiodCalendar& default_calendar,
                                            const methods::EflowMethodConfig& default_method,
                                            const std::vector<std::string>& extra_keys = {});

}  // namespace eflows::codec
