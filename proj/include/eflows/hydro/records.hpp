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
#include <vector>

#include "eflows/date.hpp"

namespace eflows::hydro {

enum class QualityFlag { observed, estimated, suspect };

std::string_view to_string(QualityFlag flag);
std::optional<QualityFlag> parse_quality_flag(std::string_view text);

/// Daily {min, avg, max} of one variable.
struct Triple {
  double min = 0.0;
  double avg = 0.0;
  double max = 0.0;

  bool ordered() const { return min <= avg && avg <= max; }
  friend bool operator==(const Triple&, const Triple&) = default;
};

enum class Variable { Q, WL, TW };
enum class Statistic { min, avg, max };

std::string_view to_string(Variable v);
std::string_view to_string(Statistic s);
std::optional<Variable> parse_variable(std::string_view text);
std::optional<Statistic> parse_statistic(std::string_view text);

double pick(const Triple& t, Statistic s);

/// Measurements of one station-day, without the key.
struct DayValues {
  std::optional<Triple> wl;  // cm
  std::optional<Triple> tw;  // degC
  std::optional<Triple> q;   // m3/s
  QualityFlag quality_flag = QualityFlag::observed;

  const std::optional<Triple>& get(Variable v) const;
  friend bool operator==(const DayValues&, const DayValues&) = default;
};

struct DailyRecord {
  std::string station_id;
  Date date;
  DayValues values;

  friend bool operator==(const DailyRecord&, const DailyRecord&) = default;
};

/// Empty when the record satisfies every DailyRecord invariant, otherwise the
/// first violated rule.
std::optional<std::string> validate(const DailyRecord& record);

struct Station {
  std::string station_id;
  std::string station_name;
  std::string river_name;
  double latitude = 0.0;
  double longitude = 0.0;
  std::optional<double> mean_annual_discharge;
  std::optional<double> size_percentile;

  friend bool operator==(const Station&, const Station&) = default;
};

std::optional<std::string> validate(const Station& station);

struct SeriesPoint {
  Date date;
  std::optional<double> value;

  friend bool operator==(const SeriesPoint&, const SeriesPoint&) = default;
};

/// One entry per calendar day of [start_date, end_date]; gaps are explicit.
struct DailySeries {
  std::string station_id;
  Variable variable = Variable::Q;
  Statistic statistic = Statistic::avg;
  Date start_date;
  Date end_date;
  std::vector<SeriesPoint> points;

  std::size_t present_count() const;
  double coverage() const;
};

}  // namespace eflows::hydro
