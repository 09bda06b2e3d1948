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

#include "eflows/service/server.hpp"

#include <httplib.h>

#include <stdexcept>
#include <thread>

#include "eflows/codec.hpp"
#include "eflows/compliance/export.hpp"
#include "eflows/errors.hpp"

namespace eflows::service {

using codec::Json;

// ---------------------------------------------------------------------------
// ReportCache

ReportCache::ReportCache(std::chrono::seconds ttl, Clock clock) : ttl_(ttl), clock_(std::move(clock)) {}

void ReportCache::evict_expired_locked(std::chrono::steady_clock::time_point now) const {
  std::erase_if(entries_, [now](const auto& kv) { return kv.second.expires <= now; });
}

void ReportCache::put(const std::string& id,
                      std::shared_ptr<const compliance::ComplianceReport> report) {
  const auto now = clock_();
  std::lock_guard lock(mutex_);
  evict_expired_locked(now);
  entries_[id] = Entry{std::move(report), now + ttl_};
}

std::shared_ptr<const compliance::ComplianceReport> ReportCache::get(const std::string& id) const {
  const auto now = clock_();
  std::lock_guard lock(mutex_);
  evict_expired_locked(now);
  auto it = entries_.find(id);
  return it == entries_.end() ? nullptr : it->second.report;
}

std::size_t ReportCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

// ---------------------------------------------------------------------------
// Server

namespace {

/// An ApiError raised inside a handler.
struct ApiError : std::runtime_error {
  ApiError(ErrorCode code, const std::string& message, Json detail = nullptr)
      : std::runtime_error(message), code(code), detail(std::move(detail)) {}
  ErrorCode code;
  Json detail;
};

void send_json(httplib::Response& res, int status, const Json& doc) {
  res.status = status;
  res.set_content(codec::dump(doc), "application/json");
}

void send_error(httplib::Response& res, ErrorCode code, const std::string& message,
                const Json& detail = nullptr) {
  Json error{{"code", to_string(code)}, {"message", message}};
  if (!detail.is_null()) error["detail"] = detail;
  send_json(res, http_status(code), Json{{"error", std::move(error)}});
}

template <typename Handler>
void guarded(httplib::Response& res, Handler&& handler) {
  try {
    handler();
  } catch (const ApiError& e) {
    send_error(res, e.code, e.what(), e.detail);
  } catch (const codec::SchemaError& e) {
    send_error(res, ErrorCode::bad_request, e.what(), Json{{"field", e.field()}});
  } catch (const std::exception& e) {
    send_error(res, classify_current_exception(), e.what());
  }
}

std::chrono::sys_seconds timestamp(bool reproducible) {
  if (reproducible) return {};
  return std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
}

bool read_reproducible(const Json& body) {
  auto it = body.find("reproducible");
  if (it == body.end() || it->is_null()) return false;
  if (!it->is_boolean()) throw codec::SchemaError("reproducible", "expected a boolean");
  return it->get<bool>();
}

Date date_param(const httplib::Request& req, const char* name) {
  if (!req.has_param(name)) throw ApiError(ErrorCode::bad_request, std::string("missing parameter '") + name + "'",
                                           Json{{"field", name}});
  auto d = parse_date(req.get_param_value(name));
  if (!d) throw ApiError(ErrorCode::bad_request, std::string("parameter '") + name + "' must be YYYY-MM-DD",
                         Json{{"field", name}});
  return *d;
}

}  // namespace

struct Server::Impl {
  httplib::Server http;
  std::thread thread;
  int port = 0;
};

Server::Server(ServiceConfig config, std::shared_ptr<hydro::RecordStore> store)
    : config_(std::move(config)),
      store_(std::move(store)),
      reports_(config_.report_ttl),
      impl_(std::make_unique<Impl>()) {
  config_.validate();
  if (!store_) throw std::invalid_argument("server needs a record store");
  auto& http = impl_->http;
  http.set_keep_alive_max_count(100000);
  http.set_tcp_nodelay(true);

  http.Get("/v1/health", [this](const httplib::Request&, httplib::Response& res) {
    send_json(res, 200, Json{{"status", "ok"}, {"records", store_->snapshot().record_count()}});
  });

  http.Get("/v1/stations", [this](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] {
      Json out = Json::array();
      for (const auto& s : store_->snapshot().stations()) out.push_back(codec::to_json(s));
      send_json(res, 200, out);
    });
  });

  http.Get(R"(/v1/stations/([^/]+)/series)", [this](const httplib::Request& req,
                                                    httplib::Response& res) {
    guarded(res, [&] {
      const std::string id = req.matches[1];
      const auto var_text = req.has_param("var") ? req.get_param_value("var") : "Q";
      const auto stat_text = req.has_param("stat") ? req.get_param_value("stat") : "avg";
      auto var = hydro::parse_variable(var_text);
      if (!var) throw ApiError(ErrorCode::bad_request, "var must be Q, WL or TW", Json{{"field", "var"}});
      auto stat = hydro::parse_statistic(stat_text);
      if (!stat) throw ApiError(ErrorCode::bad_request, "stat must be min, avg or max", Json{{"field", "stat"}});
      const Date from = date_param(req, "from");
      const Date to = date_param(req, "to");
      if (to < from) throw ApiError(ErrorCode::bad_request, "from is after to", Json{{"field", "from"}});
      const auto snapshot = store_->snapshot();
      send_json(res, 200, codec::to_json(snapshot.query_series(id, *var, *stat, from, to)));
    });
  });

  http.Post("/v1/eflows", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const Json body = codec::parse(req.body);
      if (!body.is_object()) throw codec::SchemaError("body", "expected an object");
      for (const auto& [key, value] : body.items()) {
        if (key != "station_ids" && key != "method_config" && key != "reproducible") {
          throw codec::SchemaError(key, "unknown field");
        }
      }
      auto ids_it = body.find("station_ids");
      if (ids_it == body.end() || !ids_it->is_array() || ids_it->empty()) {
        throw codec::SchemaError("station_ids", "expected a non-empty array of station ids");
      }
      if (ids_it->size() > config_.max_request_stations) {
        throw ApiError(ErrorCode::bad_request,
                       "at most " + std::to_string(config_.max_request_stations) + " stations per request",
                       Json{{"field", "station_ids"}});
      }
      std::vector<std::string> ids;
      for (const auto& id : *ids_it) {
        if (!id.is_string()) throw codec::SchemaError("station_ids", "expected strings");
        ids.push_back(id.get<std::string>());
      }
      auto method_it = body.find("method_config");
      const auto config = method_it == body.end()
                              ? config_.default_method
                              : codec::apply_method_overrides(config_.default_method, *method_it);
      const auto computed_at = timestamp(read_reproducible(body));

      const auto snapshot = store_->snapshot();
      Json out = Json::array();
      for (const auto& id : ids) {
        try {
          out.push_back(codec::to_json(methods::compute_eflow(id, config, snapshot, computed_at)));
        } catch (const std::exception& e) {
          out.push_back(Json{{"station_id", id},
                             {"error", Json{{"code", to_string(classify_current_exception())},
                                            {"message", e.what()}}}});
        }
      }
      send_json(res, 200, out);
    });
  });

  http.Post("/v1/compliance", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const Json body = codec::parse(req.body);
      const auto query = codec::query_from_json(body, config_.default_calendar,
                                                config_.default_method, {"reproducible"});
      if (query.station_ids.size() > config_.max_request_stations) {
        throw ApiError(ErrorCode::bad_request,
                       "at most " + std::to_string(config_.max_request_stations) + " stations per request",
                       Json{{"field", "station_ids"}});
      }
      const auto computed_at = timestamp(read_reproducible(body));
      auto report = std::make_shared<compliance::ComplianceReport>(
          compliance::compliance_report(query, store_->snapshot(), computed_at));
      const std::string document = compliance::report_document(*report);
      const std::string id = compliance::report_id(document);
      reports_.put(id, std::move(report));
      res.status = 200;
      res.set_header("X-Report-Id", id);
      res.set_content(document, "application/json");
    });
  });

  http.Get("/v1/export", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      if (!req.has_param("report_id")) {
        throw ApiError(ErrorCode::bad_request, "missing parameter 'report_id'", Json{{"field", "report_id"}});
      }
      const auto format = req.has_param("format") ? req.get_param_value("format") : "csv";
      if (format != "csv") {
        throw ApiError(ErrorCode::bad_request, "unsupported format '" + format + "'", Json{{"field", "format"}});
      }
      const auto part_text = req.has_param("part") ? req.get_param_value("part") : "compliance";
      auto part = compliance::parse_export_part(part_text);
      if (!part) {
        throw ApiError(ErrorCode::bad_request, "part must be compliance, summary, thresholds or errors",
                       Json{{"field", "part"}});
      }
      auto report = reports_.get(req.get_param_value("report_id"));
      if (!report) throw ApiError(ErrorCode::not_found, "unknown or expired report_id");
      res.status = 200;
      res.set_header("Content-Disposition",
                     "attachment; filename=\"" + compliance::download_file_name(*report, *part) + "\"");
      res.set_content(compliance::export_csv(*report, *part), "text/csv");
    });
  });

  http.Post("/v1/ingest", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const Json body = codec::parse(req.body);
      if (!body.is_array()) throw codec::SchemaError("body", "expected an array of daily records");

      hydro::IngestReport report;
      std::vector<hydro::DailyRecord> valid;
      std::vector<std::size_t> origin;
      for (std::size_t i = 0; i < body.size(); ++i) {
        try {
          valid.push_back(codec::record_from_json(body[i], "[" + std::to_string(i) + "]"));
          origin.push_back(i);
        } catch (const codec::SchemaError& e) {
          const auto& item = body[i];
          auto text_field = [&](const char* key) -> std::string {
            if (!item.is_object()) return {};
            auto it = item.find(key);
            return it != item.end() && it->is_string() ? it->get<std::string>() : std::string{};
          };
          ++report.rejected;
          report.rejections.push_back({i, text_field("station_id"), text_field("date"), e.what()});
        }
      }
      const auto stored = store_->store_records(valid);
      report.inserted = stored.inserted;
      report.replaced = stored.replaced;
      report.rejected += stored.rejected;
      for (auto r : stored.rejections) {
        r.index = origin[r.index];
        report.rejections.push_back(std::move(r));
      }
      std::sort(report.rejections.begin(), report.rejections.end(),
                [](const auto& a, const auto& b) { return a.index < b.index; });
      send_json(res, 200, codec::to_json(report));
    });
  });

  http.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) {
      const auto code = res.status == 404 ? ErrorCode::not_found
                        : res.status >= 500 ? ErrorCode::internal
                                            : ErrorCode::bad_request;
      send_error(res, code, "no such endpoint or method");
    }
  });
}

Server::~Server() { stop(); }

namespace {

int bind_server(httplib::Server& http, const std::string& address) {
  const auto bind = parse_bind_address(address);
  if (bind.port == 0) {
    const int port = http.bind_to_any_port(bind.host);
    if (port < 0) throw std::runtime_error("cannot bind " + address);
    return port;
  }
  if (!http.bind_to_port(bind.host, bind.port)) throw std::runtime_error("cannot bind " + address);
  return bind.port;
}

}  // namespace

int Server::start() {
  impl_->port = bind_server(impl_->http, config_.bind_address);
  impl_->thread = std::thread([this] { impl_->http.listen_after_bind(); });
  impl_->http.wait_until_ready();
  return impl_->port;
}

void Server::run() {
  impl_->port = bind_server(impl_->http, config_.bind_address);
  impl_->http.listen_after_bind();
}

void Server::stop() {
  if (!impl_) return;
  impl_->http.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

int Server::port() const { return impl_->port; }

}  // namespace eflows::service
