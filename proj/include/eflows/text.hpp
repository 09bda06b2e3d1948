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

namespace eflows::text {

/// Shortest decimal form that parses back to the same double.
std::string format_number(double value);

/// Fixed-point with `decimals` digits, never "-0.00".
std::string format_fixed(double value, int decimals);

/// Whole-field decimal parse; rejects blanks, trailing junk, inf and nan.
std::optional<double> parse_number(std::string_view text);

/// Splits one CSV line. Double-quoted fields may contain commas and "" escapes.
std::vector<std::string> split_csv_line(std::string_view line);

/// Quotes a field when it contains a comma, quote, or line break.
std::string csv_field(std::string_view value);

/// Splits on '\n', dropping a trailing '\r' from each line and a UTF-8 BOM.
std::vector<std::string_view> split_lines(std::string_view data);

}  // namespace eflows::text
