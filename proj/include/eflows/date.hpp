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
#include <optional>
#include <string>
#include <string_view>

namespace eflows {

/// Calendar day without time-of-day or timezone.
using Date = std::chrono::sys_days;

/// Parses ISO-8601 `YYYY-MM-DD`. Returns nullopt for anything else,
/// including impossible days such as 2018-02-29.
std::optional<Date> parse_date(std::string_view text);

/// Throws std::invalid_argument on malformed input.
Date parse_date_or_throw(std::string_view text);

std::string format_date(Date date);

Date make_date(int year, unsigned month, unsigned day);

int year_of(Date date);
unsigned month_of(Date date);
unsigned day_of(Date date);

/// 1-based ordinal day within the year (Jan 1 = 1).
int day_of_year(Date date);

bool is_leap_year(int year);
unsigned days_in_month(int year, unsigned month);

/// Inclusive day count of [first, last]; zero when last < first.
long days_inclusive(Date first, Date last);

}  // namespace eflows
