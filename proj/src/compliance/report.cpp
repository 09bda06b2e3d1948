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

#include "eflows/compliance/report.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <optional>
#include <stdexcept>
#include <thread>

namespace eflows::compliance {

namespace {

struct StationResult {
  std::optional<methods::EflowThreshold> threshold;
  std::vector<BioperiodCompliance> compliance;
  std::vector<ComplianceSummary> summaries;
  std::optional<StationError> error;
};

StationResult run_station(const std::string& station_id, const ComplianceQuery& q,
                          const hydro::StoreSnapshot& store, std::chrono::sys_seconds computed_at) {
  StationResult result;
  try {
    auto threshold = methods::compute_eflow(station_id, q.method, store, computed_at);
    const Date first = make_date(q.years.from, 1, 1);
    const Date last = make_date(q.years.to, 12, 31);
    const auto series = store.query_series(station_id, hydro::Variable::Q,
                                           q.method.daily_statistic, first, last);
    const auto segments = partition_bioperiods(first, last, q.calendar);

    std::map<std::string, std::vector<BioperiodCompliance>> by_period;
    for (const auto& segment : segments) {
      by_period[segment.bioperiod].push_back(count_noncompliance(series, threshold, segment));
    }
    for (const auto& period : q.calendar.periods()) {
      auto it = by_period.find(period.name);
      if (it == by_period.end()) continue;
      auto& rows = it->second;
      std::sort(rows.begin(), rows.end(),
                [](const auto& a, const auto& b) { return a.year < b.year; });
      result.summaries.push_back(summarize(rows));
      for (auto& r : rows) result.compliance.push_back(std::move(r));
    }
    result.threshold = std::move(threshold);
  } catch (const std::exception& e) {
    result = StationResult{};
    result.error = StationError{station_id, classify_current_exception(), e.what()};
  }
  return result;
}

}  // namespace

void ComplianceQuery::validate() const {
  if (station_ids.empty()) throw std::invalid_argument("station_ids: must not be empty");
  for (const auto& id : station_ids) {
    if (id.empty()) throw std::invalid_argument("station_ids: ids must be non-empty");
  }
  if (years.from < 1 || years.to > 9999 || years.to < years.from) {
    throw std::invalid_argument("year_range: need 1 <= from <= to <= 9999");
  }
  method.validate();
}

ComplianceQuery effective_query(const ComplianceQuery& query) {
  query.validate();
  ComplianceQuery q = query;
  std::sort(q.station_ids.begin(), q.station_ids.end());
  q.station_ids.erase(std::unique(q.station_ids.begin(), q.station_ids.end()), q.station_ids.end());
  if (!q.method.reference_period) {
    q.method.reference_period =
        methods::DateRange{make_date(q.years.from, 1, 1), make_date(q.years.to, 12, 31)};
  }
  return q;
}

ComplianceReport compliance_report(const ComplianceQuery& query, const hydro::StoreSnapshot& store,
                                   std::chrono::sys_seconds computed_at) {
  ComplianceReport report;
  report.effective = effective_query(query);
  const auto& ids = report.effective.station_ids;

  std::vector<StationResult> results(ids.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < ids.size(); i = next++) {
      results[i] = run_station(ids[i], report.effective, store, computed_at);
    }
  };
  const std::size_t workers =
      std::min<std::size_t>(ids.size(), std::max(1u, std::thread::hardware_concurrency()));
  {
    std::vector<std::jthread> pool;
    for (std::size_t i = 1; i < workers; ++i) pool.emplace_back(worker);
    worker();
  }

  for (auto& r : results) {
    if (r.error) {
      report.errors.push_back(std::move(*r.error));
      continue;
    }
    report.thresholds.push_back(std::move(*r.threshold));
    for (auto& c : r.compliance) report.compliance.push_back(std::move(c));
    for (auto& s : r.summaries) report.summaries.push_back(std::move(s));
  }
  return report;
}

}  // namespace eflows::compliance
