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

#include "eflows/codec.hpp"

#include <cmath>
#include <cstdio>
#include <set>

namespace eflows::codec {

using compliance::BioperiodCalendar;
using compliance::MonthDay;
using methods::EflowMethodConfig;

namespace {

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

const Json& require_object(const Json& doc, const std::string& path) {
  if (!doc.is_object()) throw SchemaError(path, "expected an object");
  return doc;
}

void reject_unknown(const Json& doc, const std::string& path, const std::set<std::string>& known) {
  for (const auto& [key, value] : doc.items()) {
    if (!known.contains(key)) throw SchemaError(join(path, key), "unknown field");
  }
}

const Json& require_key(const Json& doc, const std::string& path, const std::string& key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw SchemaError(join(path, key), "required field missing");
  return *it;
}

double as_number(const Json& v, const std::string& path) {
  if (!v.is_number()) throw SchemaError(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw SchemaError(path, "expected a finite number");
  return d;
}

long long as_integer(const Json& v, const std::string& path) {
  if (!v.is_number_integer()) throw SchemaError(path, "expected an integer");
  return v.get<long long>();
}

std::string as_string(const Json& v, const std::string& path) {
  if (!v.is_string()) throw SchemaError(path, "expected a string");
  return v.get<std::string>();
}

Date as_date(const Json& v, const std::string& path) {
  auto d = parse_date(as_string(v, path));
  if (!d) throw SchemaError(path, "expected a YYYY-MM-DD date");
  return *d;
}

Json triple_json(const std::optional<hydro::Triple>& t) {
  if (!t) return nullptr;
  return Json{{"min", t->min}, {"avg", t->avg}, {"max", t->max}};
}

std::optional<hydro::Triple> triple_from_json(const Json& doc, const std::string& path) {
  if (doc.is_null()) return std::nullopt;
  require_object(doc, path);
  reject_unknown(doc, path, {"min", "avg", "max"});
  return hydro::Triple{as_number(require_key(doc, path, "min"), join(path, "min")),
                       as_number(require_key(doc, path, "avg"), join(path, "avg")),
                       as_number(require_key(doc, path, "max"), join(path, "max"))};
}

std::string format_month_day(const MonthDay& md) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%02u-%02u", md.month, md.day);
  return buf;
}

MonthDay parse_month_day(const Json& v, const std::string& path) {
  const auto s = as_string(v, path);
  unsigned m = 0, d = 0;
  char tail = 0;
  if (s.size() != 5 || std::sscanf(s.c_str(), "%2u-%2u%c", &m, &d, &tail) != 2) {
    throw SchemaError(path, "expected MM-DD");
  }
  return {m, d};
}

Json optional_number(const std::optional<double>& v) {
  if (!v) return nullptr;
  return *v;
}

}  // namespace

std::string format_timestamp(std::chrono::sys_seconds t) {
  const auto day = std::chrono::floor<std::chrono::days>(t);
  const std::chrono::hh_mm_ss hms{t - day};
  char buf[16];
  std::snprintf(buf, sizeof buf, "T%02d:%02d:%02dZ", static_cast<int>(hms.hours().count()),
                static_cast<int>(hms.minutes().count()), static_cast<int>(hms.seconds().count()));
  return format_date(Date{day}) + buf;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

Json parse(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError("body", std::string("malformed document: ") + e.what());
  }
}

Json to_json(const hydro::DailyRecord& r) {
  return Json{{"station_id", r.station_id},
              {"date", format_date(r.date)},
              {"wl", triple_json(r.values.wl)},
              {"tw", triple_json(r.values.tw)},
              {"q", triple_json(r.values.q)},
              {"quality_flag", hydro::to_string(r.values.quality_flag)}};
}

Json to_json(const hydro::Station& s) {
  return Json{{"station_id", s.station_id},
              {"station_name", s.station_name},
              {"river_name", s.river_name},
              {"latitude", s.latitude},
              {"longitude", s.longitude},
              {"mean_annual_discharge", optional_number(s.mean_annual_discharge)},
              {"size_percentile", optional_number(s.size_percentile)}};
}

Json to_json(const hydro::DailySeries& series) {
  Json points = Json::array();
  for (const auto& p : series.points) {
    points.push_back(Json{{"date", format_date(p.date)},
                          {"value", p.value ? Json(*p.value) : Json(nullptr)}});
  }
  return Json{{"station_id", series.station_id},
              {"variable", hydro::to_string(series.variable)},
              {"statistic", hydro::to_string(series.statistic)},
              {"start_date", format_date(series.start_date)},
              {"end_date", format_date(series.end_date)},
              {"coverage", series.coverage()},
              {"points", std::move(points)}};
}

Json to_json(const hydro::IngestReport& report) {
  Json rejections = Json::array();
  for (const auto& r : report.rejections) {
    rejections.push_back(Json{{"index", r.index},
                              {"station_id", r.station_id},
                              {"date", r.date},
                              {"reason", r.reason}});
  }
  return Json{{"inserted", report.inserted},
              {"replaced", report.replaced},
              {"rejected", report.rejected},
              {"rejections", std::move(rejections)}};
}

Json to_json(const EflowMethodConfig& c) {
  Json months = Json::array();
  for (unsigned m : c.month_window) months.push_back(m);
  Json reference = nullptr;
  if (c.reference_period) {
    reference = Json{{"start", format_date(c.reference_period->start)},
                     {"end", format_date(c.reference_period->end)}};
  }
  return Json{{"method_id", methods::to_string(c.method_id)},
              {"p", c.p},
              {"aggregation", methods::to_string(c.aggregation)},
              {"month_window", std::move(months)},
              {"daily_statistic", hydro::to_string(c.daily_statistic)},
              {"reference_period", std::move(reference)},
              {"min_sample", c.min_sample},
              {"min_coverage", c.min_coverage}};
}

Json to_json(const BioperiodCalendar& calendar) {
  Json out = Json::array();
  for (const auto& p : calendar.periods()) {
    out.push_back(Json{{"name", p.name},
                       {"start", format_month_day(p.start)},
                       {"end", format_month_day(p.end)}});
  }
  return out;
}

Json to_json(const methods::EflowThreshold& t) {
  return Json{{"station_id", t.station_id},
              {"q_env", t.q_env},
              {"n", t.n},
              {"coverage", t.coverage},
              {"computed_at", format_timestamp(t.computed_at)},
              {"config", to_json(t.config)}};
}

Json to_json(const compliance::BioperiodCompliance& r) {
  return Json{{"station_id", r.station_id},
              {"bioperiod", r.bioperiod},
              {"year", r.year},
              {"segment_start", format_date(r.segment_start)},
              {"segment_end", format_date(r.segment_end)},
              {"noncompliance_days", r.noncompliance_days},
              {"observed_days", r.observed_days},
              {"missing_days", r.missing_days},
              {"total_days", r.total_days},
              {"threshold", r.threshold}};
}

Json to_json(const compliance::ComplianceSummary& s) {
  return Json{{"station_id", s.station_id},
              {"bioperiod", s.bioperiod},
              {"years_covered", s.years_covered},
              {"mean", s.mean},
              {"sd", s.sd},
              {"min", s.min},
              {"max", s.max},
              {"formatted", s.formatted()}};
}

Json to_json(const compliance::StationError& e) {
  return Json{{"station_id", e.station_id}, {"code", to_string(e.code)}, {"message", e.message}};
}

Json to_json(const compliance::ComplianceQuery& q) {
  return Json{{"station_ids", q.station_ids},
              {"year_range", Json{{"from", q.years.from}, {"to", q.years.to}}},
              {"calendar", to_json(q.calendar)},
              {"method_config", to_json(q.method)}};
}

Json to_json(const compliance::ComplianceReport& report) {
  Json thresholds = Json::array();
  for (const auto& t : report.thresholds) thresholds.push_back(to_json(t));
  Json rows = Json::array();
  for (const auto& r : report.compliance) rows.push_back(to_json(r));
  Json summaries = Json::array();
  for (const auto& s : report.summaries) summaries.push_back(to_json(s));
  Json errors = Json::array();
  for (const auto& e : report.errors) errors.push_back(to_json(e));
  return Json{{"effective_config", to_json(report.effective)},
              {"thresholds", std::move(thresholds)},
              {"compliance", std::move(rows)},
              {"summaries", std::move(summaries)},
              {"errors", std::move(errors)}};
}

hydro::DailyRecord record_from_json(const Json& doc, const std::string& path) {
  require_object(doc, path);
  reject_unknown(doc, path, {"station_id", "date", "wl", "tw", "q", "quality_flag"});
  hydro::DailyRecord r;
  r.station_id = as_string(require_key(doc, path, "station_id"), join(path, "station_id"));
  r.date = as_date(require_key(doc, path, "date"), join(path, "date"));
  for (const char* key : {"wl", "tw", "q"}) {
    auto it = doc.find(key);
    if (it == doc.end()) continue;
    auto t = triple_from_json(*it, join(path, key));
    if (std::string_view(key) == "wl") r.values.wl = t;
    if (std::string_view(key) == "tw") r.values.tw = t;
    if (std::string_view(key) == "q") r.values.q = t;
  }
  if (auto it = doc.find("quality_flag"); it != doc.end() && !it->is_null()) {
    auto flag = hydro::parse_quality_flag(as_string(*it, join(path, "quality_flag")));
    if (!flag) throw SchemaError(join(path, "quality_flag"), "expected observed|estimated|suspect");
    r.values.quality_flag = *flag;
  }
  return r;
}

EflowMethodConfig apply_method_overrides(EflowMethodConfig c, const Json& doc,
                                         const std::string& path) {
  if (doc.is_null()) return c;
  require_object(doc, path);
  reject_unknown(doc, path,
                 {"method_id", "p", "aggregation", "month_window", "daily_statistic",
                  "reference_period", "min_sample", "min_coverage"});
  if (auto it = doc.find("method_id"); it != doc.end()) {
    auto id = methods::parse_method_id(as_string(*it, join(path, "method_id")));
    if (!id) throw SchemaError(join(path, "method_id"), "unknown method");
    c.method_id = *id;
  }
  if (auto it = doc.find("p"); it != doc.end()) {
    c.p = as_number(*it, join(path, "p"));
    if (!(c.p > 0.0 && c.p < 100.0)) throw SchemaError(join(path, "p"), "must lie in (0, 100)");
  }
  if (auto it = doc.find("aggregation"); it != doc.end()) {
    auto a = methods::parse_aggregation(as_string(*it, join(path, "aggregation")));
    if (!a) throw SchemaError(join(path, "aggregation"), "expected raw_daily|monthly_minimum");
    c.aggregation = *a;
  }
  if (auto it = doc.find("month_window"); it != doc.end()) {
    const auto field = join(path, "month_window");
    if (!it->is_array() || it->empty()) throw SchemaError(field, "expected a non-empty array of months");
    c.month_window.clear();
    for (const auto& m : *it) {
      const auto month = as_integer(m, field);
      if (month < 1 || month > 12) throw SchemaError(field, "months must be 1..12");
      c.month_window.insert(static_cast<unsigned>(month));
    }
  }
  if (auto it = doc.find("daily_statistic"); it != doc.end()) {
    auto s = hydro::parse_statistic(as_string(*it, join(path, "daily_statistic")));
    if (!s) throw SchemaError(join(path, "daily_statistic"), "expected min|avg|max");
    c.daily_statistic = *s;
  }
  if (auto it = doc.find("reference_period"); it != doc.end()) {
    const auto field = join(path, "reference_period");
    if (it->is_null()) {
      c.reference_period.reset();
    } else {
      require_object(*it, field);
      reject_unknown(*it, field, {"start", "end"});
      methods::DateRange range{as_date(require_key(*it, field, "start"), join(field, "start")),
                               as_date(require_key(*it, field, "end"), join(field, "end"))};
      if (range.end < range.start) throw SchemaError(field, "start after end");
      c.reference_period = range;
    }
  }
  if (auto it = doc.find("min_sample"); it != doc.end()) {
    const auto n = as_integer(*it, join(path, "min_sample"));
    if (n < 1) throw SchemaError(join(path, "min_sample"), "must be >= 1");
    c.min_sample = static_cast<std::size_t>(n);
  }
  if (auto it = doc.find("min_coverage"); it != doc.end()) {
    c.min_coverage = as_number(*it, join(path, "min_coverage"));
    if (!(c.min_coverage > 0.0 && c.min_coverage <= 1.0)) {
      throw SchemaError(join(path, "min_coverage"), "must lie in (0, 1]");
    }
  }
  c.validate();
  return c;
}

BioperiodCalendar calendar_from_json(const Json& doc, const std::string& path) {
  if (!doc.is_array()) throw SchemaError(path, "expected an array of bioperiods");
  std::vector<compliance::Bioperiod> periods;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto item_path = path + "[" + std::to_string(i) + "]";
    const auto& item = require_object(doc[i], item_path);
    reject_unknown(item, item_path, {"name", "start", "end"});
    periods.push_back({as_string(require_key(item, item_path, "name"), join(item_path, "name")),
                       parse_month_day(require_key(item, item_path, "start"), join(item_path, "start")),
                       parse_month_day(require_key(item, item_path, "end"), join(item_path, "end"))});
  }
  try {
    return BioperiodCalendar(std::move(periods));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(path, e.what());
  }
}

compliance::ComplianceQuery query_from_json(const Json& doc,
                                            const BioperiodCalendar& default_calendar,
                                            const EflowMethodConfig& default_method,
                                            const std::vector<std::string>& extra_keys) {
  require_object(doc, "");
  std::set<std::string> known{"station_ids", "year_range", "calendar", "method_config"};
  known.insert(extra_keys.begin(), extra_keys.end());
  reject_unknown(doc, "", known);

  compliance::ComplianceQuery q;
  const auto& ids = require_key(doc, "", "station_ids");
  if (!ids.is_array() || ids.empty()) {
    throw SchemaError("station_ids", "expected a non-empty array of station ids");
  }
  for (const auto& id : ids) {
    auto s = as_string(id, "station_ids");
    if (s.empty()) throw SchemaError("station_ids", "ids must be non-empty");
    q.station_ids.push_back(std::move(s));
  }
  const auto& range = require_object(require_key(doc, "", "year_range"), "year_range");
  reject_unknown(range, "year_range", {"from", "to"});
  q.years.from = static_cast<int>(as_integer(require_key(range, "year_range", "from"), "year_range.from"));
  q.years.to = static_cast<int>(as_integer(require_key(range, "year_range", "to"), "year_range.to"));
  if (q.years.from < 1 || q.years.to > 9999 || q.years.to < q.years.from) {
    throw SchemaError("year_range", "need 1 <= from <= to <= 9999");
  }
  auto cal = doc.find("calendar");
  q.calendar = cal == doc.end() || cal->is_null() ? default_calendar : calendar_from_json(*cal);
  auto method = doc.find("method_config");
  q.method = method == doc.end() ? default_method : apply_method_overrides(default_method, *method);
  return q;
}

}  // namespace eflows::codec
