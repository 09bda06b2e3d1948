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

#include "eflows/compliance/export.hpp"
#include "eflows/compliance/report.hpp"
#include "test_support.hpp"

namespace eflows::compliance {
namespace {

ComplianceQuery query(std::vector<std::string> ids, int from, int to) {
  ComplianceQuery q;
  q.station_ids = std::move(ids);
  q.years = {from, to};
  return q;
}

class ReportTest : public ::testing::Test {
 protected:
  void SetUp() override {
    store.store_records(testing::synthetic_network(3, 2009, 2018, 42));
    // SHORT has two seasons only: fewer than ten monthly minima.
    std::vector<hydro::DailyRecord> short_records;
    for (Date d = make_date(2017, 1, 1); d <= make_date(2018, 12, 31); d += std::chrono::days{1}) {
      short_records.push_back(testing::q_record("SHORT", d, 3.0));
    }
    store.store_records(short_records);
  }

  hydro::RecordStore store;
};

TEST_F(ReportTest, OneFailingStationDoesNotAffectTheOthers) {
  const auto report = compliance_report(query({"S02", "MISSING", "S00", "SHORT", "S00"}, 2009, 2018), store.snapshot());
  EXPECT_EQ(report.effective.station_ids, (std::vector<std::string>{"MISSING", "S00", "S02", "SHORT"}));
  ASSERT_EQ(report.thresholds.size(), 2u);
  EXPECT_EQ(report.thresholds[0].station_id, "S00");
  EXPECT_EQ(report.compliance.size(), 80u);
  EXPECT_EQ(report.summaries.size(), 8u);
  ASSERT_EQ(report.errors.size(), 2u);
  EXPECT_EQ(report.errors[0].station_id, "MISSING");
  EXPECT_EQ(report.errors[0].code, ErrorCode::not_found);
  EXPECT_EQ(report.errors[1].station_id, "SHORT");
  EXPECT_EQ(report.errors[1].code, ErrorCode::insufficient_data);
}

TEST_F(ReportTest, RowsAreOrderedByStationCalendarYear) {
  const auto report = compliance_report(query({"S01"}, 2009, 2018), store.snapshot());
  ASSERT_EQ(report.compliance.size(), 40u);
  EXPECT_EQ(report.compliance[0].bioperiod, "overwintering");
  EXPECT_EQ(report.compliance[0].year, 2009);
  EXPECT_EQ(report.compliance[9].year, 2018);
  EXPECT_EQ(report.compliance[10].bioperiod, "spring_spawning");
  EXPECT_EQ(report.summaries[3].bioperiod, "fall_spawning");
  for (const auto& r : report.compliance) {
    EXPECT_EQ(r.observed_days + r.missing_days, r.total_days);
  }
}

TEST_F(ReportTest, ReferencePeriodDefaultsToTheYearRange) {
  const auto report = compliance_report(query({"S00"}, 2012, 2018), store.snapshot());
  ASSERT_TRUE(report.effective.method.reference_period);
  EXPECT_EQ(report.effective.method.reference_period->start, make_date(2012, 1, 1));
  EXPECT_EQ(report.effective.method.reference_period->end, make_date(2018, 12, 31));
  EXPECT_EQ(report.thresholds.at(0).n, 42u);
}

TEST_F(ReportTest, SingleYearSummaryHasZeroSd) {
  auto q = query({"S00"}, 2015, 2015);
  q.method.reference_period = methods::DateRange{make_date(2009, 1, 1), make_date(2018, 12, 31)};
  const auto report = compliance_report(q, store.snapshot());
  ASSERT_EQ(report.summaries.size(), 4u);
  for (const auto& s : report.summaries) {
    EXPECT_EQ(s.years_covered, 1u);
    EXPECT_EQ(s.sd, 0.0);
  }
}

TEST_F(ReportTest, DocumentIsDeterministic) {
  const auto q = query({"S00", "S01", "S02"}, 2009, 2018);
  const auto a = report_document(compliance_report(q, store.snapshot()));
  const auto b = report_document(compliance_report(q, store.snapshot()));
  EXPECT_EQ(a, b);
  EXPECT_EQ(report_id(a), report_id(b));
  EXPECT_EQ(report_id(a).size(), 16u);
}

TEST_F(ReportTest, CsvExports) {
  const auto report = compliance_report(query({"S00", "NOPE"}, 2009, 2018), store.snapshot());
  const auto compliance_csv = export_csv(report, ExportPart::compliance);
  EXPECT_EQ(compliance_csv.substr(0, kComplianceCsvHeader.size()), kComplianceCsvHeader);
  EXPECT_EQ(std::count(compliance_csv.begin(), compliance_csv.end(), '\n'), 41);
  const auto errors_csv = export_csv(report, ExportPart::errors);
  EXPECT_NE(errors_csv.find("\nNOPE,not_found,"), std::string::npos);
  EXPECT_EQ(download_file_name(report, ExportPart::summary), "eflows_NOPE-S00_2009-2018_summary.csv");
  EXPECT_EQ(parse_export_part("thresholds"), ExportPart::thresholds);
  EXPECT_FALSE(parse_export_part("xml"));
}

TEST(ComplianceQuery, Validation) {
  EXPECT_THROW(query({}, 2009, 2018).validate(), std::invalid_argument);
  EXPECT_THROW(query({"A"}, 2018, 2009).validate(), std::invalid_argument);
  EXPECT_THROW(query({""}, 2009, 2018).validate(), std::invalid_argument);
  EXPECT_NO_THROW(query({"A"}, 2009, 2009).validate());
}

}  // namespace
}  // namespace eflows::compliance
