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
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include "eflows/codec.hpp"
#include "eflows/compliance/compliance.hpp"
#include "eflows/methods/eflow.hpp"

namespace eflows::service {

struct ServiceConfig {
  std::string bind_address = "127.0.0.1:8080";
  std::filesystem::path data_directory = "eflows-data";
  compliance::BioperiodCalendar default_calendar = compliance::BioperiodCalendar::standard();
  methods::EflowMethodConfig default_method;
  std::size_t max_request_stations = 60;
  std::chrono::seconds report_ttl{3600};

  /// Throws std::invalid_argument. Does not touch the filesystem.
  void validate() const;
};

struct BindAddress {
  std::string host;
  int port = 0;
};

/// Splits "host:port"; throws std::invalid_argument when malformed.
BindAddress parse_bind_address(const std::string& address);

/// Applies the keys of a ServiceConfig document on top of `base`:
/// bind_address, data_directory, max_request_stations, report_ttl_seconds,
/// default_calendar, default_method (EflowMethodConfig overrides).
ServiceConfig apply_config_document(ServiceConfig base, const codec::Json& doc);

using EnvLookup = std::function<std::optional<std::string>(const char*)>;

std::optional<std::string> process_env(const char* name);

/// Defaults, then `config_file` (when given), then EFLOWS_BIND and
/// EFLOWS_DATA_DIR from `env`.
ServiceConfig load_service_config(const std::optional<std::filesystem::path>& config_file,
                                  const EnvLookup& env = process_env);

codec::Json to_json(const ServiceConfig& config);

}  // namespace eflows::service
