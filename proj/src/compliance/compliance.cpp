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

#include "eflows/compliance/compliance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>

#include "eflows/errors.hpp"
#include "eflows/text.hpp"

namespace eflows::compliance {

namespace {

// Month-days are validated against a leap year so Feb 29 is representable.
bool valid_month_day(const MonthDay& md) {
  return md.month >= 1 && md.month <= 12 && md.day >= 1 && md.day <= days_in_month(2000, md.month);
}

Date resolve(const MonthDay& md, int year, bool is_start) {
  if (md.month == 2 && md.day == 29 && !is_leap_year(year)) {
    return is_start ? make_date(year, 3, 1) : make_date(year, 2, 28);
  }
  return make_date(year, md.month, md.day);
}

}  // namespace

BioperiodCalendar::BioperiodCalendar(std::vector<Bioperiod> periods) : periods_(std::move(periods)) {
  if (periods_.empty()) throw std::invalid_argument("calendar: at least one bioperiod required");
  std::set<std::string> names;
  for (const auto& p : periods_) {
    if (p.name.empty()) throw std::invalid_argument("calendar: bioperiod name must not be empty");
    if (!names.insert(p.name).second) {
      throw std::invalid_argument("calendar: duplicate bioperiod name '" + p.name + "'");
    }
    if (!valid_month_day(p.start) || !valid_month_day(p.end)) {
      throw std::invalid_argument("calendar: '" + p.name + "' has an invalid month-day bound");
    }
    if (p.end < p.start) {
      throw std::invalid_argument("calendar: '" + p.name + "' wraps across the year boundary");
    }
  }
  std::vector<const Bioperiod*> by_start;
  for (const auto& p : periods_) by_start.push_back(&p);
  std::sort(by_start.begin(), by_start.end(),
            [](const Bioperiod* a, const Bioperiod* b) { return a->start < b->start; });
  for (std::size_t i = 1; i < by_start.size(); ++i) {
    if (!(by_start[i - 1]->end < by_start[i]->start)) {
      throw std::invalid_argument("calendar: '" + by_start[i - 1]->name + "' overlaps '" +
                                  by_start[i]->name + "'");
    }
  }
}

BioperiodCalendar BioperiodCalendar::standard() {
  return BioperiodCalendar({
      {"overwintering", {1, 1}, {2, 29}},
      {"spring_spawning", {3, 1}, {6, 30}},
      {"rearing_and_growth", {7, 1}, {9, 30}},
      {"fall_spawning", {10, 1}, {12, 31}},
  });
}

std::optional<methods::DateRange> window_in_year(const Bioperiod& period, int year) {
  const Date start = resolve(period.start, year, true);
  const Date end = resolve(period.end, year, false);
  if (end < start) return std::nullopt;
  return methods::DateRange{start, end};
}

std::vector<Segment> partition_bioperiods(Date start_date, Date end_date,
                                          const BioperiodCalendar& calendar) {
  std::vector<Segment> segments;
  if (end_date < start_date) return segments;
  for (int year = year_of(start_date); year <= year_of(end_date); ++year) {
    for (const auto& period : calendar.periods()) {
      auto window = window_in_year(period, year);
      if (!window) continue;
      const Date s = std::max(window->start, start_date);
      const Date e = std::min(window->end, end_date);
      if (e < s) continue;
      segments.push_back({period.name, year, s, e});
    }
  }
  return segments;
}

BioperiodCompliance count_noncompliance(const hydro::DailySeries& series,
                                        const methods::EflowThreshold& threshold,
                                        const Segment& segment) {
  if (series.variable != hydro::Variable::Q) {
    throw std::invalid_argument("count_noncompliance requires a discharge series");
  }
  if (segment.end < segment.start || segment.start < series.start_date ||
      series.end_date < segment.end ||
      series.points.size() != static_cast<std::size_t>(days_inclusive(series.start_date, series.end_date))) {
    throw std::invalid_argument("series does not cover segment");
  }

  BioperiodCompliance out;
  out.station_id = series.station_id;
  out.bioperiod = segment.bioperiod;
  out.year = segment.year;
  out.threshold = threshold.q_env;
  out.segment_start = segment.start;
  out.segment_end = segment.end;

  const auto first = static_cast<std::size_t>((segment.start - series.start_date).count());
  const auto count = static_cast<std::size_t>(days_inclusive(segment.start, segment.end));
  for (std::size_t i = first; i < first + count; ++i) {
    const auto& value = series.points[i].value;
    if (!value) {
      ++out.missing_days;
      continue;
    }
    ++out.observed_days;
    if (*value < threshold.q_env) ++out.noncompliance_days;
  }
  out.total_days = count;
  return out;
}

std::string format_summary_cell(double mean, double sd, std::size_t min, std::size_t max) {
  return text::format_fixed(mean, 2) + " ± " + text::format_fixed(sd, 2) + " (" +
         std::to_string(min) + "; " + std::to_string(max) + ")";
}

std::string ComplianceSummary::formatted() const { return format_summary_cell(mean, sd, min, max); }

ComplianceSummary summarize(std::span<const BioperiodCompliance> results) {
  if (results.empty()) throw EmptyGroup("summarize: empty group");
  const auto& head = results.front();
  std::set<int> years;
  for (const auto& r : results) {
    if (r.station_id != head.station_id || r.bioperiod != head.bioperiod) {
      throw std::invalid_argument("summarize: results span several (station, bioperiod) groups");
    }
    if (!years.insert(r.year).second) {
      throw std::invalid_argument("summarize: year " + std::to_string(r.year) + " repeated");
    }
  }

  // Integer moments keep the result independent of the order of years.
  std::uint64_t sum = 0;
  std::uint64_t sum_sq = 0;
  ComplianceSummary s;
  s.station_id = head.station_id;
  s.bioperiod = head.bioperiod;
  s.years_covered = results.size();
  s.min = head.noncompliance_days;
  s.max = head.noncompliance_days;
  for (const auto& r : results) {
    const auto x = static_cast<std::uint64_t>(r.noncompliance_days);
    sum += x;
    sum_sq += x * x;
    s.min = std::min(s.min, r.noncompliance_days);
    s.max = std::max(s.max, r.noncompliance_days);
  }
  const auto n = static_cast<std::uint64_t>(results.size());
  s.mean = static_cast<double>(sum) / static_cast<double>(n);
  if (n > 1) {
    const std::uint64_t numerator = n * sum_sq - sum * sum;  // n^2 * population variance >= 0
    s.sd = std::sqrt(static_cast<double>(numerator) / static_cast<double>(n * (n - 1)));
  }
  return s;
}

}  // namespace eflows::compliance
