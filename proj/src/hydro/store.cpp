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

#include "eflows/hydro/store.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "eflows/errors.hpp"
#include "eflows/hydro/csv.hpp"

namespace eflows::hydro {

using detail::StationData;
using detail::StationMap;
using detail::YearBlock;

IngestReport& IngestReport::operator+=(const IngestReport& other) {
  const std::size_t offset = inserted + replaced + rejected;
  inserted += other.inserted;
  replaced += other.replaced;
  rejected += other.rejected;
  for (auto r : other.rejections) {
    r.index += offset;
    rejections.push_back(std::move(r));
  }
  return *this;
}

namespace {

const auto kEmptyMap = std::make_shared<const StationMap>();

std::string journal_name(std::string_view station_id) {
  std::string out;
  for (unsigned char c : station_id) {
    if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' ||
        c == '_' || c == '.') {
      out += static_cast<char>(c);
    } else {
      char buf[4];
      std::snprintf(buf, sizeof buf, "%%%02X", c);
      out += buf;
    }
  }
  return out + ".csv";
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void add_stats(YearBlock& block, const DayValues& v) {
  ++block.count;
  if (v.q) ++block.q_avg_count;
}

void remove_stats(YearBlock& block, const DayValues& v) {
  --block.count;
  if (v.q) --block.q_avg_count;
}

// Re-summed from scratch so the mean is independent of insertion history.
void recompute_sum(YearBlock& block) {
  block.q_avg_sum = 0.0;
  for (const auto& d : block.days) {
    if (d && d->q) block.q_avg_sum += d->q->avg;
  }
}

Station default_meta(std::string_view station_id) {
  Station s;
  s.station_id = std::string(station_id);
  s.station_name = std::string(station_id);
  return s;
}

/// Writable working copy of a snapshot. Touched stations and year blocks are
/// cloned on first write; everything else stays shared with the old snapshot.
class Builder {
 public:
  explicit Builder(const StationMap& base) : map_(base) {}

  /// Returns true when an existing value was replaced.
  bool put(const DailyRecord& record) {
    StationData& st = mutable_station(record.station_id);
    const int year = year_of(record.date);
    YearBlock& block = mutable_block(st, record.station_id, year);
    auto& slot = block.days[static_cast<std::size_t>(day_of_year(record.date) - 1)];
    const bool replaced = slot.has_value();
    if (replaced) remove_stats(block, *slot);
    slot = record.values;
    add_stats(block, *slot);
    return replaced;
  }

  void put_station(const Station& meta) {
    StationData& st = mutable_station(meta.station_id);
    st.meta = meta;
    st.meta.mean_annual_discharge.reset();
    st.meta.size_percentile.reset();
  }

  bool created_station() const { return created_station_; }

  std::shared_ptr<const StationMap> finish() {
    for (auto& [key, block] : blocks_) recompute_sum(*block);
    return std::make_shared<const StationMap>(std::move(map_));
  }

 private:
  StationData& mutable_station(const std::string& id) {
    auto owned = stations_.find(id);
    if (owned != stations_.end()) return *owned->second;
    std::shared_ptr<StationData> copy;
    auto it = map_.find(id);
    if (it != map_.end()) {
      copy = std::make_shared<StationData>(*it->second);
    } else {
      copy = std::make_shared<StationData>();
      copy->meta = default_meta(id);
      created_station_ = true;
    }
    map_[id] = copy;
    stations_.emplace(id, copy);
    return *copy;
  }

  YearBlock& mutable_block(StationData& st, const std::string& id, int year) {
    auto key = std::make_pair(id, year);
    auto owned = blocks_.find(key);
    if (owned != blocks_.end()) return *owned->second;
    std::shared_ptr<YearBlock> copy;
    auto it = st.years.find(year);
    copy = it != st.years.end() ? std::make_shared<YearBlock>(*it->second)
                                : std::make_shared<YearBlock>();
    st.years[year] = copy;
    blocks_.emplace(key, copy);
    return *copy;
  }

  StationMap map_;
  std::map<std::string, std::shared_ptr<StationData>> stations_;
  std::map<std::pair<std::string, int>, std::shared_ptr<YearBlock>> blocks_;
  bool created_station_ = false;
};

}  // namespace

// ---------------------------------------------------------------------------
// StoreSnapshot

StoreSnapshot::StoreSnapshot() : data_(kEmptyMap) {}

StoreSnapshot::StoreSnapshot(std::shared_ptr<const StationMap> data)
    : data_(data ? std::move(data) : kEmptyMap) {}

std::shared_ptr<const StationData> StoreSnapshot::find(std::string_view station_id) const {
  auto it = data_->find(station_id);
  return it == data_->end() ? nullptr : it->second;
}

const StationData& StoreSnapshot::station(std::string_view station_id) const {
  auto it = data_->find(station_id);
  if (it == data_->end()) throw NotFound("unknown station '" + std::string(station_id) + "'");
  return *it->second;
}

bool StoreSnapshot::has_station(std::string_view station_id) const {
  return data_->find(station_id) != data_->end();
}

std::vector<Station> StoreSnapshot::stations() const {
  std::vector<Station> out;
  out.reserve(data_->size());
  for (const auto& [id, st] : *data_) {
    Station s = st->meta;
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& [year, block] : st->years) {
      sum += block->q_avg_sum;
      n += block->q_avg_count;
    }
    if (n > 0) s.mean_annual_discharge = sum / static_cast<double>(n);
    out.push_back(std::move(s));
  }

  std::vector<double> means;
  for (const auto& s : out) {
    if (s.mean_annual_discharge) means.push_back(*s.mean_annual_discharge);
  }
  std::sort(means.begin(), means.end());
  for (auto& s : out) {
    if (!s.mean_annual_discharge) continue;
    if (means.size() == 1) {
      s.size_percentile = 100.0;
      continue;
    }
    // Ties share the highest rank so the largest river is always 100.
    const auto rank = static_cast<double>(
        std::upper_bound(means.begin(), means.end(), *s.mean_annual_discharge) - means.begin());
    s.size_percentile = 100.0 * (rank - 1.0) / static_cast<double>(means.size() - 1);
  }
  return out;
}

DailySeries StoreSnapshot::query_series(std::string_view station_id, Variable variable,
                                        Statistic statistic, Date start_date,
                                        Date end_date) const {
  if (end_date < start_date) throw std::invalid_argument("start_date after end_date");
  const StationData& st = station(station_id);
  DailySeries series;
  series.station_id = std::string(station_id);
  series.variable = variable;
  series.statistic = statistic;
  series.start_date = start_date;
  series.end_date = end_date;
  series.points.reserve(static_cast<std::size_t>(days_inclusive(start_date, end_date)));

  int cached_year = year_of(start_date) - 1;
  const YearBlock* block = nullptr;
  for (Date d = start_date; d <= end_date; d += std::chrono::days{1}) {
    const int y = year_of(d);
    if (y != cached_year) {
      cached_year = y;
      auto it = st.years.find(y);
      block = it == st.years.end() ? nullptr : it->second.get();
    }
    SeriesPoint p{d, std::nullopt};
    if (block != nullptr) {
      const auto& slot = block->days[static_cast<std::size_t>(day_of_year(d) - 1)];
      if (slot) {
        if (const auto& t = slot->get(variable)) p.value = pick(*t, statistic);
      }
    }
    series.points.push_back(p);
  }
  return series;
}

std::optional<std::pair<Date, Date>> StoreSnapshot::extent(std::string_view station_id) const {
  const StationData& st = station(station_id);
  std::optional<Date> first;
  std::optional<Date> last;
  for (const auto& [year, block] : st.years) {
    for (std::size_t i = 0; i < block->days.size(); ++i) {
      if (!block->days[i]) continue;
      const Date d = make_date(year, 1, 1) + std::chrono::days{static_cast<int>(i)};
      if (!first) first = d;
      last = d;
    }
  }
  if (!first) return std::nullopt;
  return std::make_pair(*first, *last);
}

std::optional<DayValues> StoreSnapshot::lookup(std::string_view station_id, Date date) const {
  auto st = find(station_id);
  if (!st) return std::nullopt;
  auto it = st->years.find(year_of(date));
  if (it == st->years.end()) return std::nullopt;
  return it->second->days[static_cast<std::size_t>(day_of_year(date) - 1)];
}

std::vector<DailyRecord> StoreSnapshot::records(std::string_view station_id) const {
  const StationData& st = station(station_id);
  std::vector<DailyRecord> out;
  for (const auto& [year, block] : st.years) {
    for (std::size_t i = 0; i < block->days.size(); ++i) {
      if (!block->days[i]) continue;
      out.push_back({std::string(station_id),
                     make_date(year, 1, 1) + std::chrono::days{static_cast<int>(i)},
                     *block->days[i]});
    }
  }
  return out;
}

std::size_t StoreSnapshot::record_count() const {
  std::size_t n = 0;
  for (const auto& [id, st] : *data_) {
    for (const auto& [year, block] : st->years) n += block->count;
  }
  return n;
}

// ---------------------------------------------------------------------------
// RecordStore

RecordStore::RecordStore() : current_(kEmptyMap) {}

RecordStore::RecordStore(std::filesystem::path directory)
    : directory_(std::move(directory)), current_(kEmptyMap) {
  std::filesystem::create_directories(*directory_ / "stations");
  load();
}

StoreSnapshot RecordStore::snapshot() const {
  std::lock_guard lock(snapshot_mutex_);
  return StoreSnapshot(current_);
}

void RecordStore::publish(std::shared_ptr<const StationMap> next) {
  std::lock_guard lock(snapshot_mutex_);
  current_ = std::move(next);
}

IngestReport RecordStore::store_records(std::span<const DailyRecord> records) {
  std::lock_guard writer(write_mutex_);
  std::shared_ptr<const StationMap> base_map;
  {
    std::lock_guard lock(snapshot_mutex_);
    base_map = current_;
  }
  Builder builder(*base_map);
  IngestReport report;
  std::map<std::string, std::string> journal_rows;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (auto problem = validate(r)) {
      ++report.rejected;
      report.rejections.push_back({i, r.station_id, format_date(r.date), *problem});
      continue;
    }
    if (builder.put(r)) {
      ++report.replaced;
    } else {
      ++report.inserted;
    }
    if (directory_) journal_rows[r.station_id] += serialize_daily_row(r);
  }
  if (report.inserted + report.replaced == 0) return report;

  auto next = builder.finish();
  if (directory_) {
    const std::string header = serialize_daily_csv({});
    for (const auto& [id, rows] : journal_rows) {
      const auto path = *directory_ / "stations" / journal_name(id);
      const bool fresh = !std::filesystem::exists(path);
      std::ofstream out(path, std::ios::binary | std::ios::app);
      if (!out) throw std::runtime_error("cannot append to " + path.string());
      if (fresh) out << header;
      out << rows;
      if (!out.flush()) throw std::runtime_error("append failed for " + path.string());
    }
    if (builder.created_station()) persist_index(*next);
  }
  publish(std::move(next));
  return report;
}

std::size_t RecordStore::upsert_stations(std::span<const Station> stations) {
  std::lock_guard writer(write_mutex_);
  std::shared_ptr<const StationMap> base_map;
  {
    std::lock_guard lock(snapshot_mutex_);
    base_map = current_;
  }
  Builder builder(*base_map);
  std::size_t written = 0;
  for (const auto& s : stations) {
    if (auto problem = validate(s)) {
      throw std::invalid_argument("station '" + s.station_id + "': " + *problem);
    }
    builder.put_station(s);
    ++written;
  }
  auto next = builder.finish();
  if (directory_) persist_index(*next);
  publish(std::move(next));
  return written;
}

void RecordStore::persist_index(const StationMap& map) const {
  std::vector<Station> metas;
  for (const auto& [id, st] : map) metas.push_back(st->meta);
  write_file_atomic(*directory_ / "index.csv", serialize_station_csv(metas));
}

void RecordStore::load() {
  Builder builder(StationMap{});
  const auto index = *directory_ / "index.csv";
  if (std::filesystem::exists(index)) {
    auto parsed = parse_station_csv(read_file(index));
    if (!parsed.errors.empty()) {
      throw std::runtime_error("corrupt station index at line " +
                               std::to_string(parsed.errors.front().line) + ": " +
                               parsed.errors.front().reason);
    }
    for (const auto& s : parsed.stations) builder.put_station(s);
  }
  std::vector<std::filesystem::path> journals;
  for (const auto& entry : std::filesystem::directory_iterator(*directory_ / "stations")) {
    if (entry.path().extension() == ".csv") journals.push_back(entry.path());
  }
  std::sort(journals.begin(), journals.end());
  for (const auto& path : journals) {
    auto parsed = parse_daily_csv(read_file(path));
    for (const auto& r : parsed.records) builder.put(r);
  }
  publish(builder.finish());
  compact();
}

void RecordStore::compact() {
  if (!directory_) return;
  std::lock_guard writer(write_mutex_);
  const auto snap = snapshot();
  for (const auto& s : snap.stations()) {
    auto rows = snap.records(s.station_id);
    if (rows.empty()) continue;
    write_file_atomic(*directory_ / "stations" / journal_name(s.station_id),
                      serialize_daily_csv(rows));
  }
  std::shared_ptr<const StationMap> map;
  {
    std::lock_guard lock(snapshot_mutex_);
    map = current_;
  }
  persist_index(*map);
}

}  // namespace eflows::hydro
