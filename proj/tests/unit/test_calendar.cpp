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

#include "eflows/compliance/compliance.hpp"

namespace eflows::compliance {
namespace {

TEST(BioperiodCalendar, StandardCoversTheYear) {
  const auto cal = BioperiodCalendar::standard();
  ASSERT_EQ(cal.periods().size(), 4u);
  EXPECT_EQ(cal.periods()[0].name, "overwintering");
  EXPECT_EQ(cal.periods()[3].end, (MonthDay{12, 31}));
}

TEST(BioperiodCalendar, RejectsInvalidCalendars) {
  EXPECT_THROW(BioperiodCalendar({{"a", {1, 1}, {3, 1}}, {"b", {3, 1}, {4, 1}}}), std::invalid_argument);
  EXPECT_THROW(BioperiodCalendar({{"wrap", {11, 1}, {2, 1}}}), std::invalid_argument);
  EXPECT_THROW(BioperiodCalendar({{"a", {1, 1}, {1, 2}}, {"a", {2, 1}, {2, 2}}}), std::invalid_argument);
  EXPECT_THROW(BioperiodCalendar({{"bad", {2, 30}, {3, 1}}}), std::invalid_argument);
  EXPECT_THROW(BioperiodCalendar({{"", {1, 1}, {1, 2}}}), std::invalid_argument);
  EXPECT_NO_THROW(BioperiodCalendar({{"leap", {2, 29}, {2, 29}}}));
}

TEST(WindowInYear, LeapDayBounds) {
  const auto cal = BioperiodCalendar::standard();
  EXPECT_EQ(window_in_year(cal.periods()[0], 2016)->end, make_date(2016, 2, 29));
  EXPECT_EQ(window_in_year(cal.periods()[0], 2017)->end, make_date(2017, 2, 28));
  EXPECT_FALSE(window_in_year(Bioperiod{"leap", {2, 29}, {2, 29}}, 2017));
  EXPECT_EQ(window_in_year(Bioperiod{"leap", {2, 29}, {2, 29}}, 2016)->start, make_date(2016, 2, 29));
}

TEST(Partition, TenYearsGiveFortySegments) {
  const auto segments =
      partition_bioperiods(make_date(2009, 1, 1), make_date(2018, 12, 31), BioperiodCalendar::standard());
  ASSERT_EQ(segments.size(), 40u);
  EXPECT_EQ(segments[0], (Segment{"overwintering", 2009, make_date(2009, 1, 1), make_date(2009, 2, 28)}));
  EXPECT_EQ(segments[29].bioperiod, "spring_spawning");
  EXPECT_EQ(segments[29].start, make_date(2016, 3, 1));
  EXPECT_EQ(segments[28].end, make_date(2016, 2, 29));
  long days = 0;
  for (const auto& s : segments) days += days_inclusive(s.start, s.end);
  EXPECT_EQ(days, 3652);
}

TEST(Partition, ClipsToTheQueryWindow) {
  const auto segments =
      partition_bioperiods(make_date(2017, 2, 1), make_date(2017, 3, 15), BioperiodCalendar::standard());
  ASSERT_EQ(segments.size(), 2u);
  EXPECT_EQ(segments[0], (Segment{"overwintering", 2017, make_date(2017, 2, 1), make_date(2017, 2, 28)}));
  EXPECT_EQ(segments[1], (Segment{"spring_spawning", 2017, make_date(2017, 3, 1), make_date(2017, 3, 15)}));
}

TEST(Partition, WindowOutsideEveryPeriodIsEmpty) {
  const BioperiodCalendar summer({{"summer", {6, 1}, {8, 31}}});
  EXPECT_TRUE(partition_bioperiods(make_date(2017, 9, 1), make_date(2018, 5, 31), summer).empty());
  EXPECT_TRUE(partition_bioperiods(make_date(2017, 9, 1), make_date(2017, 8, 1), summer).empty());
}

}  // namespace
}  // namespace eflows::compliance
