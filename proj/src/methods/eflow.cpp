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

#include "eflows/methods/eflow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "eflows/errors.hpp"

namespace eflows::methods {

DischargeSample::DischargeSample(std::vector<double> values, std::string source_description)
    : values_(std::move(values)), source_(std::move(source_description)) {
  if (values_.empty()) throw std::invalid_argument("discharge sample must not be empty");
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("discharge sample values must be finite and >= 0");
    }
  }
  std::stable_sort(values_.begin(), values_.end(), std::greater<>{});
}

std::size_t exceedance_index(double p, std::size_t n) {
  if (!(p > 0.0 && p < 100.0)) throw std::invalid_argument("p must lie in (0, 100)");
  if (n == 0) throw std::invalid_argument("n must be >= 1");
  // std::llround rounds halfway cases away from zero.
  const long long rank = std::llround(p * static_cast<double>(n + 1) / 100.0);
  return static_cast<std::size_t>(std::clamp<long long>(rank, 1, static_cast<long long>(n)));
}

double exceedance_quantile(const DischargeSample& sample, double p) {
  return sample.values_desc()[exceedance_index(p, sample.n()) - 1];
}

std::string_view to_string(MethodId id) {
  switch (id) {
    case MethodId::exceedance_quantile: return "exceedance_quantile";
  }
  return "exceedance_quantile";
}

std::string_view to_string(Aggregation a) {
  switch (a) {
    case Aggregation::raw_daily: return "raw_daily";
    case Aggregation::monthly_minimum: return "monthly_minimum";
  }
  return "monthly_minimum";
}

std::optional<MethodId> parse_method_id(std::string_view text) {
  if (text == "exceedance_quantile") return MethodId::exceedance_quantile;
  return std::nullopt;
}

std::optional<Aggregation> parse_aggregation(std::string_view text) {
  if (text == "raw_daily") return Aggregation::raw_daily;
  if (text == "monthly_minimum") return Aggregation::monthly_minimum;
  return std::nullopt;
}

void EflowMethodConfig::validate() const {
  if (!(p > 0.0 && p < 100.0)) throw std::invalid_argument("p: must lie in (0, 100)");
  if (min_sample < 1) throw std::invalid_argument("min_sample: must be >= 1");
  if (!(min_coverage > 0.0 && min_coverage <= 1.0)) {
    throw std::invalid_argument("min_coverage: must lie in (0, 1]");
  }
  if (month_window.empty()) throw std::invalid_argument("month_window: must not be empty");
  for (unsigned m : month_window) {
    if (m < 1 || m > 12) throw std::invalid_argument("month_window: months must be 1..12");
  }
  if (reference_period && reference_period->end < reference_period->start) {
    throw std::invalid_argument("reference_period: start after end");
  }
}

namespace {

bool selected(Date d, const EflowMethodConfig& config) {
  if (config.reference_period && !config.reference_period->contains(d)) return false;
  return config.month_window.contains(month_of(d));
}

}  // namespace

double window_coverage(const hydro::DailySeries& series, const EflowMethodConfig& config) {
  std::size_t total = 0;
  std::size_t present = 0;
  for (const auto& point : series.points) {
    if (!selected(point.date, config)) continue;
    ++total;
    if (point.value) ++present;
  }
  return total == 0 ? 0.0 : static_cast<double>(present) / static_cast<double>(total);
}

DischargeSample aggregate_sample(const hydro::DailySeries& series, const EflowMethodConfig& config) {
  if (series.variable != hydro::Variable::Q) {
    throw std::invalid_argument("aggregate_sample requires a discharge series");
  }
  if (series.statistic != config.daily_statistic) {
    throw std::invalid_argument("series statistic does not match config.daily_statistic");
  }

  std::vector<double> values;
  if (config.aggregation == Aggregation::raw_daily) {
    for (const auto& point : series.points) {
      if (point.value && selected(point.date, config)) values.push_back(*point.value);
    }
  } else {
    // Points are date-ascending, so each (year, month) is one contiguous run.
    std::optional<std::pair<int, unsigned>> month;
    std::optional<double> minimum;
    auto flush = [&] {
      if (minimum) values.push_back(*minimum);
      minimum.reset();
    };
    for (const auto& point : series.points) {
      if (!selected(point.date, config)) continue;
      const std::pair<int, unsigned> key{year_of(point.date), month_of(point.date)};
      if (month != key) {
        flush();
        month = key;
      }
      if (point.value) minimum = minimum ? std::min(*minimum, *point.value) : *point.value;
    }
    flush();
  }

  if (values.size() < config.min_sample) throw InsufficientSample(values.size(), config.min_sample);
  const double coverage = window_coverage(series, config);
  if (coverage < config.min_coverage) throw InsufficientCoverage(coverage, config.min_coverage);

  std::string description = series.station_id + " " + format_date(series.start_date) + ".." +
                            format_date(series.end_date) + " " +
                            std::string(to_string(config.aggregation)) + "(Q " +
                            std::string(hydro::to_string(config.daily_statistic)) + ")";
  return DischargeSample(std::move(values), std::move(description));
}

void MethodRegistry::add(MethodId id, Method method) { methods_[id] = std::move(method); }

const MethodRegistry::Method& MethodRegistry::get(MethodId id) const {
  auto it = methods_.find(id);
  if (it == methods_.end()) {
    throw std::invalid_argument("no method registered for '" + std::string(to_string(id)) + "'");
  }
  return it->second;
}

bool MethodRegistry::contains(MethodId id) const { return methods_.contains(id); }

const MethodRegistry& MethodRegistry::builtin() {
  static const MethodRegistry registry = [] {
    MethodRegistry r;
    r.add(MethodId::exceedance_quantile, [](const DischargeSample& s, const EflowMethodConfig& c) {
      return exceedance_quantile(s, c.p);
    });
    return r;
  }();
  return registry;
}

EflowThreshold compute_eflow(const std::string& station_id, const EflowMethodConfig& config,
                             const hydro::StoreSnapshot& store, std::chrono::sys_seconds computed_at,
                             const MethodRegistry& registry) {
  config.validate();
  DateRange window;
  if (config.reference_period) {
    window = *config.reference_period;
  } else {
    auto extent = store.extent(station_id);
    if (!extent) throw InsufficientSample(0, config.min_sample);
    window = {extent->first, extent->second};
  }
  const auto series = store.query_series(station_id, hydro::Variable::Q, config.daily_statistic,
                                         window.start, window.end);
  const auto sample = aggregate_sample(series, config);

  EflowThreshold threshold;
  threshold.station_id = station_id;
  threshold.q_env = registry.get(config.method_id)(sample, config);
  threshold.config = config;
  threshold.n = sample.n();
  threshold.coverage = window_coverage(series, config);
  threshold.computed_at = computed_at;
  return threshold;
}

}  // namespace eflows::methods
