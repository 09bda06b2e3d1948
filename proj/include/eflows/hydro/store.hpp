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

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eflows/hydro/records.hpp"

namespace eflows::hydro {

struct Rejection {
  std::size_t index = 0;  // position in the submitted batch
  std::string station_id;
  std::string date;
  std::string reason;
};

struct IngestReport {
  std::size_t inserted = 0;
  std::size_t replaced = 0;
  std::size_t rejected = 0;
  std::vector<Rejection> rejections;

  IngestReport& operator+=(const IngestReport& other);
};

namespace detail {

/// One station-year of values indexed by day-of-year − 1.
struct YearBlock {
  std::array<std::optional<DayValues>, 366> days;
  std::size_t count = 0;
  double q_avg_sum = 0.0;
  std::size_t q_avg_count = 0;
};

struct StationData {
  Station meta;
  std::map<int, std::shared_ptr<const YearBlock>> years;
};

using StationMap = std::map<std::string, std::shared_ptr<const StationData>, std::less<>>;

}  // namespace detail

/// Immutable point-in-time view of the store. Cheap to copy.
class StoreSnapshot {
 public:
  StoreSnapshot();
  explicit StoreSnapshot(std::shared_ptr<const detail::StationMap> data);

  bool has_station(std::string_view station_id) const;

  /// All stations ordered by station_id, with mean_annual_discharge and
  /// size_percentile derived over the stations in this snapshot.
  std::vector<Station> stations() const;

  /// Throws NotFound for unknown stations and std::invalid_argument when
  /// end_date < start_date.
  DailySeries query_series(std::string_view station_id, Variable variable, Statistic statistic,
                           Date start_date, Date end_date) const;

  /// First and last stored day; nullopt when the station has no records.
  std::optional<std::pair<Date, Date>> extent(std::string_view station_id) const;

  std::optional<DayValues> lookup(std::string_view station_id, Date date) const;

  /// Records of one station in date order.
  std::vector<DailyRecord> records(std::string_view station_id) const;

  std::size_t record_count() const;

 private:
  const detail::StationData& station(std::string_view station_id) const;

  std::shared_ptr<const detail::StationData> find(std::string_view station_id) const;

  std::shared_ptr<const detail::StationMap> data_;
};

/// Daily record store: many concurrent readers, one writer at a time.
/// Every batch becomes visible atomically. When opened on a directory, each
/// station is persisted as an append-only CSV journal plus an index file of
/// station metadata.
class RecordStore {
 public:
  /// In-memory store.
  RecordStore();

  /// Opens (creating if needed) a persistent store rooted at `directory`.
  explicit RecordStore(std::filesystem::path directory);

  RecordStore(const RecordStore&) = delete;
  RecordStore& operator=(const RecordStore&) = delete;

  /// Last-write-wins on (station_id, date). Invalid records are counted and
  /// itemized, never stored.
  IngestReport store_records(std::span<const DailyRecord> records);

  /// Inserts or replaces station metadata. Returns the number of stations written.
  std::size_t upsert_stations(std::span<const Station> stations);

  StoreSnapshot snapshot() const;

  const std::optional<std::filesystem::path>& directory() const { return directory_; }

  /// Rewrites every journal sorted with one row per day.
  void compact();

 private:
  void load();
  void persist_index(const detail::StationMap& map) const;
  void publish(std::shared_ptr<const detail::StationMap> next);

  std::optional<std::filesystem::path> directory_;
  mutable std::mutex snapshot_mutex_;
  std::shared_ptr<const detail::StationMap> current_;
  std::mutex write_mutex_;
};

}  // namespace eflows::hydro
