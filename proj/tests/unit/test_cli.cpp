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

#include <gtest/gtest.h>

#include <httplib.h>

#include <sstream>

#include "eflows/cli/commands.hpp"
#include "eflows/cli/replay.hpp"
#include "eflows/codec.hpp"
#include "eflows/hydro/csv.hpp"
#include "eflows/service/server.hpp"
#include "test_support.hpp"

namespace eflows::cli {
namespace {

using testing::run_eflows;
using testing::shell_quote;

const std::string kFixture = std::string(EFLOWS_FIXTURE_DIR) + "/three_stations.json";

TEST(CliExitCodes, UsageAndInputErrors) {
  testing::TempDir dir("cli");
  EXPECT_EQ(run_eflows("").exit_code, kExitInput);
  EXPECT_EQ(run_eflows("frobnicate").exit_code, kExitInput);
  EXPECT_EQ(run_eflows("--help").exit_code, kExitOk);
  EXPECT_EQ(run_eflows("ingest /nonexistent.csv --data-dir " + shell_quote((dir / "d").string())).exit_code,
            kExitInput);
  testing::write_file(dir / "bad.csv", "station,date\nA,2012-01-01\n");
  const auto bad = run_eflows("ingest " + shell_quote((dir / "bad.csv").string()) + " --data-dir " +
                              shell_quote((dir / "d").string()));
  EXPECT_EQ(bad.exit_code, kExitInput);
  EXPECT_NE(bad.output.find("header mismatch"), std::string::npos) << bad.output;
  EXPECT_EQ(run_eflows("report --from 2009 --to 2018 --out " + shell_quote((dir / "o").string()) +
                       " --data-dir " + shell_quote((dir / "d").string()))
                .exit_code,
            kExitInput);
  EXPECT_EQ(run_eflows("synth --spec /nonexistent.json --seed 1").exit_code, kExitInput);
}

TEST(CliExitCodes, ReplayToUnreachableTargetIsConnectivityError) {
  testing::TempDir dir("cli");
  testing::write_file(dir / "r.csv", hydro::serialize_daily_csv({testing::q_record("A", make_date(2012, 5, 1), 1)}));
  // Port 9 on loopback: nothing listens there in the test sandbox.
  const auto result = run_eflows("replay " + shell_quote((dir / "r.csv").string()) + " --target http://127.0.0.1:9");
  EXPECT_EQ(result.exit_code, kExitConnectivity) << result.output;
}

TEST(CliSynth, SameSeedSameFiles) {
  testing::TempDir dir("cli");
  const auto a = dir / "a.csv";
  const auto b = dir / "b.csv";
  const auto c = dir / "c.csv";
  ASSERT_EQ(run_eflows("synth --spec " + shell_quote(kFixture) + " --seed 42 --out " + shell_quote(a.string()))
                .exit_code,
            0);
  ASSERT_EQ(run_eflows("synth --spec " + shell_quote(kFixture) + " --seed 42 --out " + shell_quote(b.string()))
                .exit_code,
            0);
  ASSERT_EQ(run_eflows("synth --spec " + shell_quote(kFixture) + " --seed 43 --out " + shell_quote(c.string()))
                .exit_code,
            0);
  EXPECT_EQ(testing::read_file(a), testing::read_file(b));
  EXPECT_NE(testing::read_file(a), testing::read_file(c));
}

TEST(CliSynth, ReadsTheFixtureSpec) {
  const auto stations = read_synth_spec(kFixture);
  ASSERT_EQ(stations.size(), 3u);
  EXPECT_EQ(stations[0].spec.station_id, "NARVA");
  EXPECT_EQ(stations[0].station_name, "Narva linn");
  EXPECT_EQ(stations[2].spec.gap_fraction, 0.1);
}

TEST(CliIngestReport, JsonAndCsvOutputs) {
  testing::TempDir dir("cli");
  const std::string data = shell_quote((dir / "data").string());
  ASSERT_EQ(run_eflows("synth --spec " + shell_quote(kFixture) + " --seed 42 --out " +
                       shell_quote((dir / "r.csv").string()) + " --stations-out " +
                       shell_quote((dir / "s.csv").string()))
                .exit_code,
            0);
  const auto ingest = run_eflows("ingest " + shell_quote((dir / "s.csv").string()) + " " +
                                 shell_quote((dir / "r.csv").string()) + " --data-dir " + data);
  ASSERT_EQ(ingest.exit_code, 0) << ingest.output;
  EXPECT_NE(ingest.output.find("\"inserted\": 10335"), std::string::npos) << ingest.output;

  const auto csv = run_eflows("report --stations NARVA,KORELA --from 2009 --to 2018 --reproducible --out " +
                              shell_quote((dir / "csv").string()) + " --data-dir " + data);
  ASSERT_EQ(csv.exit_code, 0) << csv.output;
  for (const char* f : {"compliance.csv", "summary.csv", "thresholds.csv", "errors.csv"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / "csv" / f)) << f;
  }
  const auto json = run_eflows("report --stations NARVA,KORELA --from 2009 --to 2018 --reproducible --format json "
                               "--out " + shell_quote((dir / "json").string()) + " --data-dir " + data);
  ASSERT_EQ(json.exit_code, 0) << json.output;
  const auto doc = codec::parse(testing::read_file(dir / "json" / "report.json"));
  EXPECT_EQ(doc["thresholds"].size(), 2u);

  // The service serves the same CSV bytes as the batch report.
  auto store = std::make_shared<hydro::RecordStore>(dir / "data");
  service::ServiceConfig config;
  config.bind_address = "127.0.0.1:0";
  service::Server server(config, store);
  httplib::Client client("127.0.0.1", server.start());
  const codec::Json query{{"station_ids", {"NARVA", "KORELA"}},
                          {"year_range", {{"from", 2009}, {"to", 2018}}},
                          {"reproducible", true}};
  auto res = client.Post("/v1/compliance", query.dump(), "application/json");
  ASSERT_EQ(res->status, 200);
  EXPECT_EQ(res->body, testing::read_file(dir / "json" / "report.json"));
  const auto id = res->get_header_value("X-Report-Id");
  for (const char* part : {"compliance", "summary", "thresholds", "errors"}) {
    auto exported = client.Get("/v1/export?format=csv&report_id=" + id + "&part=" + part);
    ASSERT_EQ(exported->status, 200);
    EXPECT_EQ(exported->body, testing::read_file(dir / "csv" / (std::string(part) + ".csv"))) << part;
  }
}

class ReplayTest : public ::testing::Test {
 protected:
  void SetUp() override {
    service::ServiceConfig config;
    config.bind_address = "127.0.0.1:0";
    server = std::make_unique<service::Server>(config, store);
    target = "http://127.0.0.1:" + std::to_string(server->start());
  }

  std::shared_ptr<hydro::RecordStore> store = std::make_shared<hydro::RecordStore>();
  std::unique_ptr<service::Server> server;
  std::string target;
  testing::TempDir dir{"replay"};
};

TEST_F(ReplayTest, DeliversEveryRecordAndAcknowledgesBatches) {
  auto records = testing::synthetic_network(1, 2012, 2012, 4);
  records.resize(25);
  auto bad = testing::q_record("S00", make_date(2013, 1, 1), 1.0);
  bad.values.q = hydro::Triple{3, 2, 1};
  records.push_back(bad);
  testing::write_file(dir / "r.csv", hydro::serialize_daily_csv(records));
  ReplaySpec spec;
  spec.source_file = dir / "r.csv";
  spec.target_url = target;
  spec.batch_size = 10;
  std::ostringstream acks, diag;
  const auto outcome = replay(spec, acks, diag);
  EXPECT_EQ(outcome.exit_code, 0) << diag.str();
  EXPECT_EQ(outcome.batches_sent, 3u);
  EXPECT_EQ(outcome.totals.inserted, 25u);
  // The invalid row never leaves the client: the CSV reader reports it.
  EXPECT_EQ(outcome.totals.rejected, 0u);
  EXPECT_NE(diag.str().find(":27:"), std::string::npos) << diag.str();
  EXPECT_NE(acks.str().find("batch 1 records 1-10 inserted 10 replaced 0 rejected 0"), std::string::npos)
      << acks.str();
  EXPECT_EQ(store->snapshot().record_count(), 25u);
}

TEST_F(ReplayTest, PacingSpreadsBatchesOverTime) {
  std::vector<hydro::DailyRecord> records;
  for (unsigned d = 1; d <= 12; ++d) records.push_back(testing::q_record("A", make_date(2012, 5, d), d));
  testing::write_file(dir / "r.csv", hydro::serialize_daily_csv(records));
  ReplaySpec spec;
  spec.source_file = dir / "r.csv";
  spec.target_url = target + "/v1/ingest";
  spec.batch_size = 1;
  spec.pace = std::chrono::milliseconds{100};
  spec.jitter_fraction = 0.5;
  std::ostringstream acks, diag;
  const auto t0 = std::chrono::steady_clock::now();
  const auto outcome = replay(spec, acks, diag);
  const auto elapsed = std::chrono::steady_clock::now() - t0;
  EXPECT_EQ(outcome.exit_code, 0);
  EXPECT_EQ(outcome.batches_sent, 12u);
  EXPECT_GE(elapsed, std::chrono::milliseconds{1000});
}

TEST_F(ReplayTest, MissingSourceIsInputError) {
  ReplaySpec spec;
  spec.source_file = dir / "missing.csv";
  spec.target_url = target;
  std::ostringstream acks, diag;
  EXPECT_EQ(replay(spec, acks, diag).exit_code, kExitInput);
}

}  // namespace
}  // namespace eflows::cli
