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

#include <cstdint>
#include <string>
#include <vector>

#include "eflows/hydro/records.hpp"

namespace eflows::hydro {

struct SyntheticSpec {
  std::string station_id;
  Date start_date;
  Date end_date;
  double base_q = 0.0;              // m3/s
  double seasonal_amplitude = 0.0;  // m3/s
  double noise_scale = 0.0;         // m3/s, standard deviation of daily noise
  double gap_fraction = 0.0;        // [0, 1)
};

/// Lag-one autocorrelation of the daily discharge noise. The marginal standard
/// deviation stays noise_scale, so low-flow spells last several days.
inline constexpr double kNoisePersistence = 0.9;

/// Noise is treated as bounded by this many standard deviations when checking
/// that discharge stays non-negative.
inline constexpr double kNoiseBoundSigmas = 4.0;

/// Throws InvalidSpec when `spec` cannot keep discharge non-negative or the
/// gap fraction is outside [0, 1).
void validate(const SyntheticSpec& spec);

/// Deterministic daily records for one station. q_avg follows
/// base + amplitude * sin(2*pi*doy/365) + AR(1) noise, and exactly
/// round(gap_fraction * days) days are omitted. Values are rounded to 0.001.
std::vector<DailyRecord> generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed);

/// Seed for the i-th station of a multi-station fixture.
std::uint64_t station_seed(std::uint64_t seed, const std::string& station_id);

}  // namespace eflows::hydro
