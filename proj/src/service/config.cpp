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

#include "eflows/service/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace eflows::service {

void ServiceConfig::validate() const {
  if (max_request_stations < 1) throw std::invalid_argument("max_request_stations: must be >= 1");
  if (data_directory.empty()) throw std::invalid_argument("data_directory: must not be empty");
  if (report_ttl.count() <= 0) throw std::invalid_argument("report_ttl_seconds: must be > 0");
  parse_bind_address(bind_address);
  default_method.validate();
}

BindAddress parse_bind_address(const std::string& address) {
  const auto colon = address.rfind(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == address.size()) {
    throw std::invalid_argument("bind_address: expected host:port, got '" + address + "'");
  }
  BindAddress out;
  out.host = address.substr(0, colon);
  const auto port_text = address.substr(colon + 1);
  for (char c : port_text) {
    if (c < '0' || c > '9') throw std::invalid_argument("bind_address: port must be numeric");
  }
  out.port = std::stoi(port_text);
  if (out.port < 0 || out.port > 65535) throw std::invalid_argument("bind_address: port out of range");
  return out;
}

ServiceConfig apply_config_document(ServiceConfig c, const codec::Json& doc) {
  if (!doc.is_object()) throw codec::SchemaError("config", "expected an object");
  for (const auto& [key, value] : doc.items()) {
    if (key == "bind_address") {
      if (!value.is_string()) throw codec::SchemaError(key, "expected a string");
      c.bind_address = value.get<std::string>();
    } else if (key == "data_directory") {
      if (!value.is_string()) throw codec::SchemaError(key, "expected a string");
      c.data_directory = value.get<std::string>();
    } else if (key == "max_request_stations") {
      if (!value.is_number_integer() || value.get<long long>() < 1) {
        throw codec::SchemaError(key, "expected an integer >= 1");
      }
      c.max_request_stations = value.get<std::size_t>();
    } else if (key == "report_ttl_seconds") {
      if (!value.is_number_integer() || value.get<long long>() < 1) {
        throw codec::SchemaError(key, "expected an integer >= 1");
      }
      c.report_ttl = std::chrono::seconds{value.get<long long>()};
    } else if (key == "default_calendar") {
      c.default_calendar = codec::calendar_from_json(value, key);
    } else if (key == "default_method") {
      c.default_method = codec::apply_method_overrides(c.default_method, value, key);
    } else {
      throw codec::SchemaError(key, "unknown field");
    }
  }
  return c;
}

std::optional<std::string> process_env(const char* name) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::string(v);
}

ServiceConfig load_service_config(const std::optional<std::filesystem::path>& config_file,
                                  const EnvLookup& env) {
  ServiceConfig config;
  if (config_file) {
    std::ifstream in(*config_file, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read config file " + config_file->string());
    std::ostringstream ss;
    ss << in.rdbuf();
    config = apply_config_document(config, codec::parse(ss.str()));
  }
  if (auto bind = env("EFLOWS_BIND")) config.bind_address = *bind;
  if (auto dir = env("EFLOWS_DATA_DIR")) config.data_directory = *dir;
  config.validate();
  return config;
}

codec::Json to_json(const ServiceConfig& c) {
  return codec::Json{{"bind_address", c.bind_address},
                     {"data_directory", c.data_directory.string()},
                     {"max_request_stations", c.max_request_stations},
                     {"report_ttl_seconds", c.report_ttl.count()},
                     {"default_calendar", codec::to_json(c.default_calendar)},
                     {"default_method", codec::to_json(c.default_method)}};
}

}  // namespace eflows::service
