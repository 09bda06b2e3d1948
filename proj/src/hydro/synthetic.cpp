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

#include "eflows/hydro/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "eflows/errors.hpp"

namespace eflows::hydro {

namespace {

// std distributions are implementation-defined; these transforms keep the
// fixture bytes identical across standard libraries.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double standard_normal(std::mt19937_64& rng) {
  const double u1 = 1.0 - uniform01(rng);  // (0, 1]
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

double round3(double x) { return std::round(x * 1000.0) / 1000.0; }

double stage_cm(double q) { return 40.0 + 25.0 * std::sqrt(std::max(q, 0.0)); }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

void validate(const SyntheticSpec& spec) {
  if (spec.station_id.empty()) throw InvalidSpec("station_id must be non-empty");
  if (spec.end_date < spec.start_date) throw InvalidSpec("start_date after end_date");
  if (!(spec.seasonal_amplitude >= 0.0) || !(spec.noise_scale >= 0.0)) {
    throw InvalidSpec("seasonal_amplitude and noise_scale must be >= 0");
  }
  if (!(spec.base_q > spec.seasonal_amplitude + kNoiseBoundSigmas * spec.noise_scale)) {
    throw InvalidSpec("base_q must exceed seasonal_amplitude + 4 * noise_scale");
  }
  if (!(spec.gap_fraction >= 0.0 && spec.gap_fraction < 1.0)) {
    throw InvalidSpec("gap_fraction must be in [0, 1)");
  }
}

std::uint64_t station_seed(std::uint64_t seed, const std::string& station_id) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : station_id) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return splitmix64(seed ^ h);
}

std::vector<DailyRecord> generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed) {
  validate(spec);
  const auto days = static_cast<std::size_t>(days_inclusive(spec.start_date, spec.end_date));

  // Partial Fisher-Yates over day indices picks exactly `gaps` distinct days.
  std::vector<bool> omitted(days, false);
  {
    std::mt19937_64 gap_rng(splitmix64(seed ^ 0x6761707300000000ull));
    const auto gaps = static_cast<std::size_t>(std::llround(spec.gap_fraction * static_cast<double>(days)));
    std::vector<std::size_t> order(days);
    for (std::size_t i = 0; i < days; ++i) order[i] = i;
    for (std::size_t i = 0; i < gaps; ++i) {
      const auto j = i + uniform_below(gap_rng, days - i);
      std::swap(order[i], order[j]);
      omitted[order[i]] = true;
    }
  }

  std::mt19937_64 rng(seed);
  const double innovation = std::sqrt(1.0 - kNoisePersistence * kNoisePersistence);
  double noise = 0.0;
  std::vector<DailyRecord> out;
  out.reserve(days);
  for (std::size_t i = 0; i < days; ++i) {
    const Date date = spec.start_date + std::chrono::days{static_cast<int>(i)};
    const double doy = day_of_year(date);

    // Every day consumes the same draws so values do not depend on gap placement.
    const double z = standard_normal(rng);
    noise = i == 0 ? z : kNoisePersistence * noise + innovation * z;
    const double q_low = uniform01(rng);
    const double q_high = uniform01(rng);
    const double t_noise = standard_normal(rng);
    const double t_spread = uniform01(rng);
    if (omitted[i]) continue;

    const double season = std::sin(2.0 * std::numbers::pi * doy / 365.0);
    const double q_avg =
        round3(std::max(0.0, spec.base_q + spec.seasonal_amplitude * season + spec.noise_scale * noise));
    const double q_min = round3(q_avg * (1.0 - 0.15 * q_low));
    const double q_max = round3(q_avg * (1.0 + 0.15 * q_high));

    const double tw_avg =
        round3(std::max(0.5, 9.0 + 9.0 * std::sin(2.0 * std::numbers::pi * (doy - 105.0) / 365.0) +
                                 0.5 * t_noise));
    const double tw_min = round3(std::max(0.0, tw_avg - 1.5 * t_spread));
    const double tw_max = round3(tw_avg + 1.5 * t_spread);

    DailyRecord r;
    r.station_id = spec.station_id;
    r.date = date;
    r.values.q = Triple{q_min, q_avg, q_max};
    r.values.wl = Triple{round3(stage_cm(q_min)), round3(stage_cm(q_avg)), round3(stage_cm(q_max))};
    r.values.tw = Triple{tw_min, tw_avg, tw_max};
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace eflows::hydro
