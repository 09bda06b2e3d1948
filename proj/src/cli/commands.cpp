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

#include "eflows/cli/commands.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "eflows/codec.hpp"
#include "eflows/compliance/export.hpp"
#include "eflows/compliance/report.hpp"
#include "eflows/errors.hpp"
#include "eflows/hydro/csv.hpp"
#include "eflows/hydro/store.hpp"
#include "eflows/service/config.hpp"
#include "eflows/service/server.hpp"

namespace eflows::cli {

namespace {

std::optional<std::string> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return ss.str();
}

bool write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  return static_cast<bool>(out.flush());
}

}  // namespace

int run_ingest(const IngestOptions& options, std::ostream& out, std::ostream& err) {
  if (options.files.empty()) {
    err << "ingest: no input files\n";
    return kExitInput;
  }
  std::vector<std::pair<std::filesystem::path, std::string>> inputs;
  for (const auto& file : options.files) {
    auto content = std::filesystem::is_regular_file(file) ? read_file(file) : std::nullopt;
    if (!content) {
      err << "ingest: cannot read " << file.string() << "\n";
      return kExitInput;
    }
    inputs.emplace_back(file, std::move(*content));
  }

  hydro::RecordStore store(options.data_dir);
  hydro::IngestReport total;
  std::size_t stations = 0;
  bool fatal = false;
  for (const auto& [file, content] : inputs) {
    try {
      if (hydro::looks_like_station_csv(content)) {
        auto parsed = hydro::parse_station_csv(content);
        for (const auto& e : parsed.errors) {
          err << file.string() << ":" << e.line << ": " << e.reason << "\n";
        }
        stations += store.upsert_stations(parsed.stations);
        continue;
      }
      auto parsed = hydro::parse_daily_csv(content);
      for (const auto& e : parsed.errors) {
        err << file.string() << ":" << e.line << ": rejected: " << e.reason << "\n";
      }
      auto report = store.store_records(parsed.records);
      for (const auto& r : report.rejections) {
        err << file.string() << ": record " << r.station_id << " " << r.date << " rejected: " << r.reason
            << "\n";
      }
      report.rejected += parsed.errors.size();
      total.inserted += report.inserted;
      total.replaced += report.replaced;
      total.rejected += report.rejected;
    } catch (const FormatError& e) {
      err << file.string() << ": " << e.what() << "\n";
      fatal = true;
    }
  }
  out << codec::dump(codec::Json{{"inserted", total.inserted},
                                 {"replaced", total.replaced},
                                 {"rejected", total.rejected},
                                 {"stations", stations}});
  return fatal ? kExitInput : kExitOk;
}

int run_report(const ReportOptions& options, std::ostream& out, std::ostream& err) {
  if (options.stations.empty()) {
    err << "report: empty station set\n";
    return kExitInput;
  }
  if (options.format != "csv" && options.format != "json") {
    err << "report: --format must be csv or json\n";
    return kExitInput;
  }
  if (!std::filesystem::is_directory(options.data_dir)) {
    err << "report: data directory " << options.data_dir.string() << " does not exist\n";
    return kExitInput;
  }

  compliance::ComplianceQuery query;
  query.station_ids = options.stations;
  query.years = {options.from_year, options.to_year};
  try {
    if (options.config_file) {
      auto text = read_file(*options.config_file);
      if (!text) {
        err << "report: cannot read " << options.config_file->string() << "\n";
        return kExitInput;
      }
      const auto doc = codec::parse(*text);
      if (doc.is_object() && (doc.contains("default_method") || doc.contains("default_calendar") ||
                              doc.contains("bind_address") || doc.contains("data_directory"))) {
        const auto config = service::apply_config_document(service::ServiceConfig{}, doc);
        query.calendar = config.default_calendar;
        query.method = config.default_method;
      } else {
        query.method = codec::apply_method_overrides(query.method, doc, "config");
      }
    }
    query.validate();
  } catch (const std::exception& e) {
    err << "report: " << e.what() << "\n";
    return kExitInput;
  }

  hydro::RecordStore store(options.data_dir);
  const auto computed_at = options.reproducible
                               ? std::chrono::sys_seconds{}
                               : std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
  const auto report = compliance::compliance_report(query, store.snapshot(), computed_at);

  std::filesystem::create_directories(options.out_dir);
  std::vector<std::filesystem::path> written;
  if (options.format == "json") {
    written.push_back(options.out_dir / "report.json");
    if (!write_file(written.back(), compliance::report_document(report))) {
      err << "report: cannot write " << written.back().string() << "\n";
      return kExitInput;
    }
  } else {
    for (auto part : {compliance::ExportPart::compliance, compliance::ExportPart::summary,
                      compliance::ExportPart::thresholds, compliance::ExportPart::errors}) {
      written.push_back(options.out_dir / compliance::export_file_name(part));
      if (!write_file(written.back(), compliance::export_csv(report, part))) {
        err << "report: cannot write " << written.back().string() << "\n";
        return kExitInput;
      }
    }
  }

  for (const auto& e : report.errors) {
    err << "report: " << e.station_id << ": " << to_string(e.code) << ": " << e.message << "\n";
  }
  for (const auto& s : report.summaries) {
    out << s.station_id << "\t" << s.bioperiod << "\t" << s.formatted() << "\n";
  }
  for (const auto& path : written) out << "wrote " << path.string() << "\n";
  return kExitOk;
}

std::vector<SynthStation> read_synth_spec(const std::filesystem::path& file) {
  auto text = read_file(file);
  if (!text) throw InvalidSpec("cannot read " + file.string());
  codec::Json doc;
  try {
    doc = codec::parse(*text);
  } catch (const std::exception& e) {
    throw InvalidSpec(e.what());
  }
  auto date_field = [](const codec::Json& obj, const char* key, std::optional<Date> fallback) {
    auto it = obj.find(key);
    if (it == obj.end()) {
      if (!fallback) throw InvalidSpec(std::string(key) + " is required");
      return *fallback;
    }
    if (!it->is_string()) throw InvalidSpec(std::string(key) + " must be a YYYY-MM-DD string");
    auto d = parse_date(it->get<std::string>());
    if (!d) throw InvalidSpec(std::string(key) + " must be a YYYY-MM-DD string");
    return *d;
  };
  auto number = [](const codec::Json& obj, const char* key, std::optional<double> fallback) {
    auto it = obj.find(key);
    if (it == obj.end()) {
      if (!fallback) throw InvalidSpec(std::string(key) + " is required");
      return *fallback;
    }
    if (!it->is_number()) throw InvalidSpec(std::string(key) + " must be a number");
    return it->get<double>();
  };
  auto string = [](const codec::Json& obj, const char* key, const std::string& fallback) {
    auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_string()) throw InvalidSpec(std::string(key) + " must be a string");
    return it->get<std::string>();
  };

  if (!doc.is_object()) throw InvalidSpec("spec must be an object");
  std::optional<Date> start;
  std::optional<Date> end;
  if (doc.contains("start_date")) start = date_field(doc, "start_date", std::nullopt);
  if (doc.contains("end_date")) end = date_field(doc, "end_date", std::nullopt);
  auto list = doc.find("stations");
  if (list == doc.end() || !list->is_array() || list->empty()) {
    throw InvalidSpec("stations must be a non-empty array");
  }

  std::vector<SynthStation> out;
  for (const auto& item : *list) {
    if (!item.is_object()) throw InvalidSpec("stations entries must be objects");
    SynthStation s;
    s.spec.station_id = string(item, "station_id", "");
    s.spec.start_date = date_field(item, "start_date", start);
    s.spec.end_date = date_field(item, "end_date", end);
    s.spec.base_q = number(item, "base_q", std::nullopt);
    s.spec.seasonal_amplitude = number(item, "seasonal_amplitude", std::nullopt);
    s.spec.noise_scale = number(item, "noise_scale", std::nullopt);
    s.spec.gap_fraction = number(item, "gap_fraction", 0.0);
    s.station_name = string(item, "station_name", s.spec.station_id);
    s.river_name = string(item, "river_name", "");
    s.latitude = number(item, "latitude", 0.0);
    s.longitude = number(item, "longitude", 0.0);
    hydro::validate(s.spec);
    hydro::Station meta{s.spec.station_id, s.station_name, s.river_name, s.latitude, s.longitude, {}, {}};
    if (auto problem = hydro::validate(meta)) throw InvalidSpec(s.spec.station_id + ": " + *problem);
    for (const auto& prior : out) {
      if (prior.spec.station_id == s.spec.station_id) {
        throw InvalidSpec("duplicate station_id '" + s.spec.station_id + "'");
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

int run_synth(const SynthOptions& options, std::ostream& out, std::ostream& err) {
  std::vector<SynthStation> stations;
  try {
    stations = read_synth_spec(options.spec_file);
  } catch (const std::exception& e) {
    err << "synth: invalid spec: " << e.what() << "\n";
    return kExitInput;
  }

  std::vector<hydro::DailyRecord> records;
  std::vector<hydro::Station> metas;
  for (const auto& s : stations) {
    auto generated = hydro::generate_synthetic(s.spec, hydro::station_seed(options.seed, s.spec.station_id));
    records.insert(records.end(), std::make_move_iterator(generated.begin()),
                   std::make_move_iterator(generated.end()));
    metas.push_back({s.spec.station_id, s.station_name, s.river_name, s.latitude, s.longitude, {}, {}});
  }

  const std::string csv = hydro::serialize_daily_csv(records);
  if (options.out) {
    if (!write_file(*options.out, csv)) {
      err << "synth: cannot write " << options.out->string() << "\n";
      return kExitInput;
    }
  } else {
    out << csv;
  }
  if (options.stations_out && !write_file(*options.stations_out, hydro::serialize_station_csv(metas))) {
    err << "synth: cannot write " << options.stations_out->string() << "\n";
    return kExitInput;
  }
  err << "synth: " << records.size() << " records for " << stations.size() << " stations\n";
  return kExitOk;
}

int run_serve(const ServeOptions& options, std::ostream& out, std::ostream& err) {
  service::ServiceConfig config;
  try {
    config = service::load_service_config(options.config_file);
    if (options.bind) config.bind_address = *options.bind;
    if (options.data_dir) config.data_directory = *options.data_dir;
    config.validate();
  } catch (const std::exception& e) {
    err << "serve: " << e.what() << "\n";
    return kExitInput;
  }
  try {
    auto store = std::make_shared<hydro::RecordStore>(config.data_directory);
    service::Server server(config, store);
    out << "eflows service on " << config.bind_address << " (data: " << config.data_directory.string()
        << ")" << std::endl;
    server.run();
  } catch (const std::exception& e) {
    err << "serve: " << e.what() << "\n";
    return kExitConnectivity;
  }
  return kExitOk;
}

}  // namespace eflows::cli
