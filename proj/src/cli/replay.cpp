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

#include "eflows/cli/replay.hpp"

#include <httplib.h>

#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "eflows/codec.hpp"
#include "eflows/errors.hpp"
#include "eflows/hydro/csv.hpp"

namespace eflows::cli {

void ReplaySpec::validate() const {
  if (batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
  if (pace.count() < 0) throw std::invalid_argument("pace must be >= 0");
  if (!(jitter_fraction >= 0.0 && jitter_fraction < 1.0)) {
    throw std::invalid_argument("jitter_fraction must be in [0, 1)");
  }
  if (target_url.empty()) throw std::invalid_argument("target url must not be empty");
}

namespace {

struct Target {
  std::string base;
  std::string path;
};

Target split_target(const std::string& url) {
  const auto scheme = url.find("://");
  const auto path_start = url.find('/', scheme == std::string::npos ? 0 : scheme + 3);
  Target t;
  t.base = path_start == std::string::npos ? url : url.substr(0, path_start);
  std::string path = path_start == std::string::npos ? "" : url.substr(path_start);
  while (!path.empty() && path.back() == '/') path.pop_back();
  t.path = path.ends_with("/v1/ingest") ? path : path + "/v1/ingest";
  return t;
}

enum class SendStatus { ok, rejected, unreachable };

}  // namespace

ReplayOutcome replay(const ReplaySpec& spec, std::ostream& acks, std::ostream& diagnostics) {
  ReplayOutcome outcome;
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    diagnostics << "replay: " << e.what() << "\n";
    outcome.exit_code = 2;
    return outcome;
  }

  std::ifstream in(spec.source_file, std::ios::binary);
  if (!in) {
    diagnostics << "replay: cannot read " << spec.source_file.string() << "\n";
    outcome.exit_code = 2;
    return outcome;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  hydro::ParseResult parsed;
  try {
    parsed = hydro::parse_daily_csv(ss.str());
  } catch (const FormatError& e) {
    diagnostics << "replay: " << spec.source_file.string() << ": " << e.what() << "\n";
    outcome.exit_code = 2;
    return outcome;
  }
  for (const auto& e : parsed.errors) {
    diagnostics << "replay: " << spec.source_file.string() << ":" << e.line << ": " << e.reason
                << " (row not sent)\n";
  }

  const auto target = split_target(spec.target_url);
  httplib::Client client(target.base);
  client.set_keep_alive(true);
  client.set_tcp_nodelay(true);
  client.set_connection_timeout(std::chrono::seconds{5});
  client.set_read_timeout(std::chrono::seconds{60});

  std::mt19937_64 jitter_rng(spec.jitter_seed);
  const auto& records = parsed.records;

  auto send = [&](const std::string& body, hydro::IngestReport& ack, std::string& problem) {
    auto res = client.Post(target.path, body, "application/json");
    if (!res) {
      problem = httplib::to_string(res.error());
      return SendStatus::unreachable;
    }
    if (res->status != 200) {
      problem = "HTTP " + std::to_string(res->status) + " " + res->body;
      return SendStatus::rejected;
    }
    try {
      const auto doc = codec::parse(res->body);
      ack.inserted = doc.at("inserted").get<std::size_t>();
      ack.replaced = doc.at("replaced").get<std::size_t>();
      ack.rejected = doc.at("rejected").get<std::size_t>();
      for (const auto& r : doc.at("rejections")) {
        ack.rejections.push_back({r.at("index").get<std::size_t>(), r.at("station_id").get<std::string>(),
                                  r.at("date").get<std::string>(), r.at("reason").get<std::string>()});
      }
    } catch (const std::exception& e) {
      problem = std::string("unreadable acknowledgement: ") + e.what();
      return SendStatus::rejected;
    }
    return SendStatus::ok;
  };

  std::size_t batch_no = 0;
  for (std::size_t first = 0; first < records.size(); first += spec.batch_size) {
    const std::size_t last = std::min(records.size(), first + spec.batch_size);
    codec::Json body = codec::Json::array();
    for (std::size_t i = first; i < last; ++i) body.push_back(codec::to_json(records[i]));
    const std::string payload = body.dump();
    ++batch_no;

    hydro::IngestReport ack;
    std::string problem;
    SendStatus status = send(payload, ack, problem);
    if (status != SendStatus::ok) {
      ack = {};
      status = send(payload, ack, problem);
    }
    if (status == SendStatus::unreachable) {
      diagnostics << "replay: batch " << batch_no << ": target unreachable: " << problem << "\n";
      outcome.exit_code = 3;
      return outcome;
    }
    if (status == SendStatus::rejected) {
      diagnostics << "replay: batch " << batch_no << " (records " << first + 1 << "-" << last
                  << ") skipped after retry: " << problem << "\n";
      ++outcome.batches_skipped;
    } else {
      ++outcome.batches_sent;
      outcome.records_delivered += last - first;
      outcome.totals += ack;
      acks << "batch " << batch_no << " records " << first + 1 << "-" << last << " inserted "
           << ack.inserted << " replaced " << ack.replaced << " rejected " << ack.rejected << "\n";
      for (const auto& r : ack.rejections) {
        diagnostics << "replay: batch " << batch_no << ": record " << first + r.index + 1 << " ("
                    << r.station_id << " " << r.date << ") rejected: " << r.reason << "\n";
      }
    }

    if (spec.pace.count() > 0) {
      auto pause = std::chrono::duration<double, std::milli>(spec.pace);
      if (spec.jitter_fraction > 0.0) {
        const double u = static_cast<double>(jitter_rng() >> 11) * 0x1.0p-53;
        pause += pause * (spec.jitter_fraction * u);
      }
      std::this_thread::sleep_for(pause);
    }
  }
  return outcome;
}

}  // namespace eflows::cli
