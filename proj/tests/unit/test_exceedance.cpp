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

#include <algorithm>
#include <numeric>
#include <random>

#include "eflows/methods/eflow.hpp"

namespace eflows::methods {
namespace {

TEST(ExceedanceIndex, WorkedExamples) {
  EXPECT_EQ(exceedance_index(95, 19), 19u);   // 95 * 20 / 100 = 19
  EXPECT_EQ(exceedance_index(95, 100), 96u);  // 95.95 rounds up
  EXPECT_EQ(exceedance_index(95, 5), 5u);     // 5.7 -> 6, clamped to n
  EXPECT_EQ(exceedance_index(50, 1), 1u);     // 1.0
  EXPECT_EQ(exceedance_index(50, 2), 2u);     // 1.5 rounds half away from zero
  EXPECT_EQ(exceedance_index(1, 10), 1u);     // 0.11 -> 0, clamped to 1
}

TEST(ExceedanceIndex, RejectsOutOfRangeArguments) {
  EXPECT_THROW(exceedance_index(0, 10), std::invalid_argument);
  EXPECT_THROW(exceedance_index(100, 10), std::invalid_argument);
  EXPECT_THROW(exceedance_index(50, 0), std::invalid_argument);
}

TEST(ExceedanceQuantile, OneToHundred) {
  std::vector<double> v(100);
  std::iota(v.begin(), v.end(), 1.0);
  std::shuffle(v.begin(), v.end(), std::mt19937_64(3));
  EXPECT_EQ(exceedance_quantile(DischargeSample(v), 95), 5.0);
  for (auto& x : v) x *= 3;
  EXPECT_EQ(exceedance_quantile(DischargeSample(v), 95), 15.0);
}

TEST(ExceedanceQuantile, ConstantSample) {
  const DischargeSample s(std::vector<double>(37, 4.25));
  for (int p = 1; p < 100; ++p) EXPECT_EQ(exceedance_quantile(s, p), 4.25);
}

TEST(DischargeSample, SortsDescendingAndValidates) {
  const DischargeSample s({2, 9, 0, 9, 4}, "test");
  EXPECT_EQ(std::vector<double>(s.values_desc().begin(), s.values_desc().end()),
            (std::vector<double>{9, 9, 4, 2, 0}));
  EXPECT_EQ(s.source_description(), "test");
  EXPECT_THROW(DischargeSample({}), std::invalid_argument);
  EXPECT_THROW(DischargeSample({1, -0.5}), std::invalid_argument);
}

TEST(ExceedanceQuantile, PropertiesOnRandomSamples) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 300;
    std::vector<double> v(n);
    for (auto& x : v) x = static_cast<double>(rng() % 50) / 4.0;  // plenty of ties
    const DischargeSample sample(v);
    auto shuffled = v;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    double previous = -1;
    for (int p = 99; p >= 1; --p) {
      const double q = exceedance_quantile(sample, p);
      EXPECT_NE(std::find(v.begin(), v.end(), q), v.end());
      EXPECT_EQ(q, exceedance_quantile(DischargeSample(shuffled), p));
      EXPECT_GE(q, previous);  // lower p, higher discharge
      previous = q;
    }
  }
}

}  // namespace
}  // namespace eflows::methods
