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
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eflows/date.hpp"
#include "eflows/hydro/records.hpp"
#include "eflows/hydro/store.hpp"

namespace eflows::methods {

/// Observed discharges sorted non-increasing. Construction sorts (stably) and
/// rejects empty or negative samples, so every instance is a valid input to
/// the exceedance quantile.
class DischargeSample {
 public:
  /// Throws std::invalid_argument when `values` is empty or holds a negative
  /// or non-finite value.
  explicit DischargeSample(std::vector<double> values, std::string source_description = {});

  std::span<const double> values_desc() const { return values_; }
  std::size_t n() const { return values_.size(); }
  const std::string& source_description() const { return source_; }

 private:
  std::vector<double> values_;
  std::string source_;
};

/// 1-based rank nint(p * (n + 1) / 100) clamped to [1, n]; nint rounds half
/// away from zero. Throws std::invalid_argument unless 0 < p < 100 and n >= 1.
std::size_t exceedance_index(double p, std::size_t n);

/// Discharge exceeded with probability p percent: the sample value at
/// exceedance_index(p, n) in descending order.
double exceedance_quantile(const DischargeSample& sample, double p);

enum class MethodId { exceedance_quantile };
enum class Aggregation { raw_daily, monthly_minimum };

std::string_view to_string(MethodId id);
std::string_view to_string(Aggregation a);
std::optional<MethodId> parse_method_id(std::string_view text);
std::optional<Aggregation> parse_aggregation(std::string_view text);

struct DateRange {
  Date start;
  Date end;

  bool contains(Date d) const { return start <= d && d <= end; }
  friend bool operator==(const DateRange&, const DateRange&) = default;
};

struct EflowMethodConfig {
  MethodId method_id = MethodId::exceedance_quantile;
  double p = 95.0;
  Aggregation aggregation = Aggregation::monthly_minimum;
  std::set<unsigned> month_window{5, 6, 7, 8, 9, 10};
  hydro::Statistic daily_statistic = hydro::Statistic::avg;
  std::optional<DateRange> reference_period;
  std::size_t min_sample = 10;
  double min_coverage = 0.7;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  friend bool operator==(const EflowMethodConfig&, const EflowMethodConfig&) = default;
};

struct EflowThreshold {
  std::string station_id;
  double q_env = 0.0;
  EflowMethodConfig config;
  std::size_t n = 0;
  double coverage = 0.0;
  std::chrono::sys_seconds computed_at{};
};

/// Fraction of days in (series window ∩ reference period ∩ month window) that
/// carry a value. Zero when the selection is empty.
double window_coverage(const hydro::DailySeries& series, const EflowMethodConfig& config);

/// Builds the sample the quantile is taken over. raw_daily keeps every
/// present in-window day; monthly_minimum keeps the minimum of each
/// (year, month) with at least one observation. Throws InsufficientSample or
/// InsufficientCoverage when the gates in `config` are not met.
DischargeSample aggregate_sample(const hydro::DailySeries& series, const EflowMethodConfig& config);

/// Maps a method id to the function that turns a sample into q_env.
class MethodRegistry {
 public:
  using Method = std::function<double(const DischargeSample&, const EflowMethodConfig&)>;

  void add(MethodId id, Method method);
  const Method& get(MethodId id) const;
  bool contains(MethodId id) const;

  /// Registry with every built-in method.
  static const MethodRegistry& builtin();

 private:
  std::map<MethodId, Method> methods_;
};

/// query_series -> aggregate_sample -> registered method. Without a
/// reference period the station's full stored extent is used.
EflowThreshold compute_eflow(const std::string& station_id, const EflowMethodConfig& config,
                             const hydro::StoreSnapshot& store,
                             std::chrono::sys_seconds computed_at = {},
                             const MethodRegistry& registry = MethodRegistry::builtin());

}  // namespace eflows::methods
