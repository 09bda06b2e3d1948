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
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "eflows/compliance/report.hpp"
#include "eflows/hydro/store.hpp"
#include "eflows/service/config.hpp"

namespace eflows::service {

/// Reports produced in this process, kept for export until their TTL runs out.
class ReportCache {
 public:
  using Clock = std::function<std::chrono::steady_clock::time_point()>;

  explicit ReportCache(std::chrono::seconds ttl, Clock clock = std::chrono::steady_clock::now);

  void put(const std::string& id, std::shared_ptr<const compliance::ComplianceReport> report);

  /// nullptr when unknown or expired.
  std::shared_ptr<const compliance::ComplianceReport> get(const std::string& id) const;

  std::size_t size() const;

 private:
  struct Entry {
    std::shared_ptr<const compliance::ComplianceReport> report;
    std::chrono::steady_clock::time_point expires;
  };

  void evict_expired_locked(std::chrono::steady_clock::time_point now) const;

  std::chrono::seconds ttl_;
  Clock clock_;
  mutable std::mutex mutex_;
  mutable std::map<std::string, Entry> entries_;
};

/// HTTP/1.1 facade over a RecordStore. Every endpoint lives under /v1:
///
///   GET  /v1/stations
///   GET  /v1/stations/{id}/series?var=Q&stat=avg&from=YYYY-MM-DD&to=YYYY-MM-DD
///   POST /v1/eflows        {station_ids, method_config?, reproducible?}
///   POST /v1/compliance    {station_ids, year_range, calendar?, method_config?, reproducible?}
///   GET  /v1/export?report_id=...&format=csv[&part=compliance|summary|thresholds|errors]
///   POST /v1/ingest        [DailyRecord, ...]
///   GET  /v1/health
///
/// Errors are {"error": {"code", "message", "detail"?}} with the status
/// implied by the code.
class Server {
 public:
  Server(ServiceConfig config, std::shared_ptr<hydro::RecordStore> store);
  ~Server();

  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds the configured address (port 0 picks a free port) and serves on a
  /// background thread. Returns the bound port.
  int start();

  /// Binds and serves on the calling thread until stop() is called.
  void run();

  void stop();

  int port() const;

  const ServiceConfig& config() const { return config_; }
  ReportCache& reports() { return reports_; }

 private:
  struct Impl;

  ServiceConfig config_;
  std::shared_ptr<hydro::RecordStore> store_;
  ReportCache reports_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace eflows::service
