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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "eflows/hydro/records.hpp"

namespace eflows::hydro {

inline constexpr std::string_view kDailyHeader =
    "station_id,date,wl_min,wl_avg,wl_max,tw_min,tw_avg,tw_max,q_min,q_avg,q_max";
inline constexpr std::string_view kQualityFlagColumn = "quality_flag";
inline constexpr std::string_view kStationHeader =
    "station_id,station_name,river_name,latitude,longitude";

struct RowError {
  std::size_t line = 0;  // 1-based, header is line 1
  std::string reason;

  friend bool operator==(const RowError&, const RowError&) = default;
};

struct ParseResult {
  std::vector<DailyRecord> records;
  std::vector<RowError> errors;
};

/// Parses the daily-record dialect. Malformed rows become RowErrors and the
/// parse continues; a header mismatch throws FormatError naming the first
/// offending column.
ParseResult parse_daily_csv(std::string_view data);

/// Always writes the quality_flag column.
std::string serialize_daily_csv(const std::vector<DailyRecord>& records);
std::string serialize_daily_row(const DailyRecord& record);

struct StationParseResult {
  std::vector<Station> stations;
  std::vector<RowError> errors;
};

StationParseResult parse_station_csv(std::string_view data);
std::string serialize_station_csv(const std::vector<Station>& stations);

/// True when the first line of `data` is the station metadata header.
bool looks_like_station_csv(std::string_view data);

}  // namespace eflows::hydro
