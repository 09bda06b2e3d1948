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

#include "eflows/hydro/records.hpp"

#include <cmath>

namespace eflows::hydro {

std::string_view to_string(QualityFlag flag) {
  switch (flag) {
    case QualityFlag::observed: return "observed";
    case QualityFlag::estimated: return "estimated";
    case QualityFlag::suspect: return "suspect";
  }
  return "observed";
}

std::optional<QualityFlag> parse_quality_flag(std::string_view text) {
  if (text == "observed") return QualityFlag::observed;
  if (text == "estimated") return QualityFlag::estimated;
  if (text == "suspect") return QualityFlag::suspect;
  return std::nullopt;
}

std::string_view to_string(Variable v) {
  switch (v) {
    case Variable::Q: return "Q";
    case Variable::WL: return "WL";
    case Variable::TW: return "TW";
  }
  return "Q";
}

std::string_view to_string(Statistic s) {
  switch (s) {
    case Statistic::min: return "min";
    case Statistic::avg: return "avg";
    case Statistic::max: return "max";
  }
  return "avg";
}

std::optional<Variable> parse_variable(std::string_view text) {
  if (text == "Q") return Variable::Q;
  if (text == "WL") return Variable::WL;
  if (text == "TW") return Variable::TW;
  return std::nullopt;
}

std::optional<Statistic> parse_statistic(std::string_view text) {
  if (text == "min") return Statistic::min;
  if (text == "avg") return Statistic::avg;
  if (text == "max") return Statistic::max;
  return std::nullopt;
}

double pick(const Triple& t, Statistic s) {
  switch (s) {
    case Statistic::min: return t.min;
    case Statistic::avg: return t.avg;
    case Statistic::max: return t.max;
  }
  return t.avg;
}

const std::optional<Triple>& DayValues::get(Variable v) const {
  switch (v) {
    case Variable::WL: return wl;
    case Variable::TW: return tw;
    case Variable::Q: break;
  }
  return q;
}

namespace {

std::optional<std::string> check_triple(const std::optional<Triple>& t, std::string_view name,
                                        bool non_negative) {
  if (!t) return std::nullopt;
  if (!std::isfinite(t->min) || !std::isfinite(t->avg) || !std::isfinite(t->max)) {
    return std::string(name) + ": non-finite value";
  }
  if (!t->ordered()) return std::string(name) + ": min ≤ avg ≤ max violated";
  if (non_negative && t->min < 0.0) return std::string(name) + ": negative discharge";
  return std::nullopt;
}

}  // namespace

std::optional<std::string> validate(const DailyRecord& record) {
  if (record.station_id.empty()) return "empty station_id";
  if (auto e = check_triple(record.values.wl, "wl", false)) return e;
  if (auto e = check_triple(record.values.tw, "tw", false)) return e;
  if (auto e = check_triple(record.values.q, "q", true)) return e;
  return std::nullopt;
}

std::optional<std::string> validate(const Station& station) {
  if (station.station_id.empty()) return "empty station_id";
  if (!(station.latitude >= -90.0 && station.latitude <= 90.0)) return "latitude out of range";
  if (!(station.longitude >= -180.0 && station.longitude <= 180.0)) {
    return "longitude out of range";
  }
  if (station.size_percentile &&
      !(*station.size_percentile >= 0.0 && *station.size_percentile <= 100.0)) {
    return "size_percentile out of range";
  }
  return std::nullopt;
}

std::size_t DailySeries::present_count() const {
  std::size_t n = 0;
  for (const auto& p : points) n += p.value.has_value() ? 1 : 0;
  return n;
}

double DailySeries::coverage() const {
  if (points.empty()) return 0.0;
  return static_cast<double>(present_count()) / static_cast<double>(points.size());
}

}  // namespace eflows::hydro
