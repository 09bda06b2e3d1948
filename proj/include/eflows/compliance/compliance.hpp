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

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eflows/date.hpp"
#include "eflows/hydro/records.hpp"
#include "eflows/methods/eflow.hpp"

namespace eflows::compliance {

struct MonthDay {
  unsigned month = 1;
  unsigned day = 1;

  friend auto operator<=>(const MonthDay&, const MonthDay&) = default;
};

/// Named window of the year, inclusive on both ends. Feb 29 is allowed as a
/// bound; in common years it maps to Feb 28 (end) or Mar 1 (start).
struct Bioperiod {
  std::string name;
  MonthDay start;
  MonthDay end;

  friend bool operator==(const Bioperiod&, const Bioperiod&) = default;
};

/// Ordered, non-overlapping bioperiods that never wrap across New Year.
class BioperiodCalendar {
 public:
  /// Throws std::invalid_argument when names repeat, a bound is not a real
  /// month-day, a period wraps (start after end), or two periods overlap.
  explicit BioperiodCalendar(std::vector<Bioperiod> periods);

  /// overwintering Jan 1-Feb 29, spring_spawning Mar 1-Jun 30,
  /// rearing_and_growth Jul 1-Sep 30, fall_spawning Oct 1-Dec 31.
  static BioperiodCalendar standard();

  const std::vector<Bioperiod>& periods() const { return periods_; }

  friend bool operator==(const BioperiodCalendar&, const BioperiodCalendar&) = default;

 private:
  std::vector<Bioperiod> periods_;
};

/// The period's days in `year`, or nullopt when it has none (Feb 29 only, in a
/// common year).
std::optional<methods::DateRange> window_in_year(const Bioperiod& period, int year);

struct Segment {
  std::string bioperiod;
  int year = 0;
  Date start;
  Date end;

  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Bioperiod-year segments clipped to [start_date, end_date], ordered by year
/// then calendar order. Days outside every period belong to no segment.
std::vector<Segment> partition_bioperiods(Date start_date, Date end_date,
                                          const BioperiodCalendar& calendar);

struct BioperiodCompliance {
  std::string station_id;
  std::string bioperiod;
  int year = 0;
  std::size_t noncompliance_days = 0;
  std::size_t observed_days = 0;
  std::size_t missing_days = 0;
  std::size_t total_days = 0;
  double threshold = 0.0;  // q_env the segment was judged against
  Date segment_start;
  Date segment_end;

  std::size_t compliant_days() const { return observed_days - noncompliance_days; }
};

/// Days with a value strictly below the threshold are noncompliant; gaps are
/// counted as missing, never as noncompliant. Throws std::invalid_argument when
/// the series does not cover the segment or is not discharge.
BioperiodCompliance count_noncompliance(const hydro::DailySeries& series,
                                        const methods::EflowThreshold& threshold,
                                        const Segment& segment);

struct ComplianceSummary {
  std::string station_id;
  std::string bioperiod;
  std::size_t years_covered = 0;
  double mean = 0.0;
  double sd = 0.0;
  std::size_t min = 0;
  std::size_t max = 0;

  /// "mean ± sd (min; max)" with two decimals for mean and sd.
  std::string formatted() const;
};

/// Across-year statistics of one (station, bioperiod) group. sd uses the n − 1
/// denominator and is 0 for a single year. Throws EmptyGroup on empty input and
/// std::invalid_argument when the group is mixed or repeats a year.
ComplianceSummary summarize(std::span<const BioperiodCompliance> results);

std::string format_summary_cell(double mean, double sd, std::size_t min, std::size_t max);

}  // namespace eflows::compliance
