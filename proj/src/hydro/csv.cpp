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

#include "eflows/hydro/csv.hpp"

#include <array>

#include "eflows/errors.hpp"
#include "eflows/text.hpp"

namespace eflows::hydro {

namespace {

std::vector<std::string> expected_columns(std::string_view header) {
  return text::split_csv_line(header);
}

/// Checks `found` against `expected`, optionally allowing one trailing column.
/// Returns the number of columns accepted.
std::size_t check_header(const std::vector<std::string>& found,
                         const std::vector<std::string>& expected,
                         std::string_view optional_tail) {
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i >= found.size()) {
      throw FormatError("header mismatch: missing column '" + expected[i] + "' at position " +
                        std::to_string(i + 1));
    }
    if (found[i] != expected[i]) {
      throw FormatError("header mismatch: column " + std::to_string(i + 1) + " is '" + found[i] +
                        "', expected '" + expected[i] + "'");
    }
  }
  std::size_t accepted = expected.size();
  if (found.size() > accepted && !optional_tail.empty() && found[accepted] == optional_tail) {
    ++accepted;
  }
  if (found.size() > accepted) {
    throw FormatError("header mismatch: unexpected column '" + found[accepted] + "' at position " +
                      std::to_string(accepted + 1));
  }
  return accepted;
}

bool blank(std::string_view line) { return line.find_first_not_of(" \t") == std::string_view::npos; }

/// Parses three columns starting at `offset` into an optional triple.
/// Returns an error reason on failure.
std::optional<std::string> parse_triple(const std::vector<std::string>& fields, std::size_t offset,
                                        std::string_view name, std::optional<Triple>& out) {
  const std::array<const std::string*, 3> cells{&fields[offset], &fields[offset + 1],
                                                &fields[offset + 2]};
  int empties = 0;
  for (const auto* c : cells) empties += c->empty() ? 1 : 0;
  if (empties == 3) {
    out.reset();
    return std::nullopt;
  }
  if (empties != 0) return std::string(name) + ": partially missing min/avg/max";
  std::array<double, 3> v{};
  static constexpr std::array<const char*, 3> kSuffix{"_min", "_avg", "_max"};
  for (std::size_t i = 0; i < 3; ++i) {
    auto parsed = text::parse_number(*cells[i]);
    if (!parsed) {
      return std::string(name) + kSuffix[i] + ": not a decimal number '" + *cells[i] + "'";
    }
    v[i] = *parsed;
  }
  out = Triple{v[0], v[1], v[2]};
  return std::nullopt;
}

void append_triple(std::string& out, const std::optional<Triple>& t) {
  if (!t) {
    out += ",,,";
    return;
  }
  out += ',';
  out += text::format_number(t->min);
  out += ',';
  out += text::format_number(t->avg);
  out += ',';
  out += text::format_number(t->max);
}

}  // namespace

ParseResult parse_daily_csv(std::string_view data) {
  ParseResult result;
  const auto lines = text::split_lines(data);
  if (lines.empty()) return result;

  const auto header = text::split_csv_line(lines.front());
  const std::size_t columns = check_header(header, expected_columns(kDailyHeader), kQualityFlagColumn);
  const bool has_flag = columns == 12;

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (blank(lines[i])) continue;
    const auto fields = text::split_csv_line(lines[i]);
    if (fields.size() != columns) {
      result.errors.push_back({line_no, "expected " + std::to_string(columns) + " fields, found " +
                                            std::to_string(fields.size())});
      continue;
    }
    DailyRecord record;
    record.station_id = fields[0];
    if (record.station_id.empty()) {
      result.errors.push_back({line_no, "empty station_id"});
      continue;
    }
    auto date = parse_date(fields[1]);
    if (!date) {
      result.errors.push_back({line_no, "invalid date '" + fields[1] + "'"});
      continue;
    }
    record.date = *date;

    std::optional<std::string> problem = parse_triple(fields, 2, "wl", record.values.wl);
    if (!problem) problem = parse_triple(fields, 5, "tw", record.values.tw);
    if (!problem) problem = parse_triple(fields, 8, "q", record.values.q);
    if (!problem && has_flag && !fields[11].empty()) {
      auto flag = parse_quality_flag(fields[11]);
      if (flag) {
        record.values.quality_flag = *flag;
      } else {
        problem = "unknown quality_flag '" + fields[11] + "'";
      }
    }
    if (!problem) problem = validate(record);
    if (problem) {
      result.errors.push_back({line_no, *problem});
      continue;
    }
    result.records.push_back(std::move(record));
  }
  return result;
}

std::string serialize_daily_row(const DailyRecord& record) {
  std::string out = text::csv_field(record.station_id);
  out += ',';
  out += format_date(record.date);
  append_triple(out, record.values.wl);
  append_triple(out, record.values.tw);
  append_triple(out, record.values.q);
  out += ',';
  out += to_string(record.values.quality_flag);
  out += '\n';
  return out;
}

std::string serialize_daily_csv(const std::vector<DailyRecord>& records) {
  std::string out(kDailyHeader);
  out += ',';
  out += kQualityFlagColumn;
  out += '\n';
  for (const auto& r : records) out += serialize_daily_row(r);
  return out;
}

StationParseResult parse_station_csv(std::string_view data) {
  StationParseResult result;
  const auto lines = text::split_lines(data);
  if (lines.empty()) return result;
  check_header(text::split_csv_line(lines.front()), expected_columns(kStationHeader), {});

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (blank(lines[i])) continue;
    const auto fields = text::split_csv_line(lines[i]);
    if (fields.size() != 5) {
      result.errors.push_back({line_no, "expected 5 fields, found " + std::to_string(fields.size())});
      continue;
    }
    Station s;
    s.station_id = fields[0];
    s.station_name = fields[1];
    s.river_name = fields[2];
    auto lat = text::parse_number(fields[3]);
    auto lon = text::parse_number(fields[4]);
    if (!lat || !lon) {
      result.errors.push_back({line_no, "latitude/longitude must be decimal numbers"});
      continue;
    }
    s.latitude = *lat;
    s.longitude = *lon;
    if (auto problem = validate(s)) {
      result.errors.push_back({line_no, *problem});
      continue;
    }
    result.stations.push_back(std::move(s));
  }
  return result;
}

std::string serialize_station_csv(const std::vector<Station>& stations) {
  std::string out(kStationHeader);
  out += '\n';
  for (const auto& s : stations) {
    out += text::csv_field(s.station_id);
    out += ',';
    out += text::csv_field(s.station_name);
    out += ',';
    out += text::csv_field(s.river_name);
    out += ',';
    out += text::format_number(s.latitude);
    out += ',';
    out += text::format_number(s.longitude);
    out += '\n';
  }
  return out;
}

bool looks_like_station_csv(std::string_view data) {
  const auto lines = text::split_lines(data.substr(0, 512));
  return !lines.empty() && lines.front() == kStationHeader;
}

}  // namespace eflows::hydro
