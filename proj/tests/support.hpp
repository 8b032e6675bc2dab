// Copyright 2026 The rulegauge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RULEGAUGE_TESTS__SUPPORT_HPP_
#define RULEGAUGE_TESTS__SUPPORT_HPP_

#include "rulegauge/types.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace rulegauge::test
{

inline VehicleState vehicle(
  std::string id, Vec2 center, Vec2 velocity, double heading = 0.0, double length = 4.0,
  double width = 2.0)
{
  VehicleState v;
  v.vehicle_id = std::move(id);
  v.center = center;
  v.velocity = velocity;
  v.heading = heading;
  v.length = length;
  v.width = width;
  v.valid = true;
  return v;
}

inline Lane straight_lane(std::string id, double y, std::optional<double> limit, double x0 = -100.0, double x1 = 100.0, double step = 1.0)
{
  Lane lane;
  lane.lane_id = std::move(id);
  lane.speed_limit_mps = limit;
  for (double x = x0; x <= x1; x += step) {
    lane.polyline.push_back({x, y});
  }
  return lane;
}

/// Scenario at `rate_hz` repeating the same vehicles in every frame.
inline Scenario repeated_scenario(
  std::string id, const std::vector<VehicleState> & vehicles, std::size_t frames, double rate_hz = 1.0,
  std::vector<Lane> lanes = {})
{
  Scenario s;
  s.scenario_id = std::move(id);
  s.sample_rate_hz = rate_hz;
  s.lanes = std::move(lanes);
  for (std::size_t f = 0; f < frames; ++f) {
    Frame frame;
    frame.frame_index = static_cast<std::int64_t>(f);
    frame.time_s = static_cast<double>(f) / rate_hz;
    frame.vehicles = vehicles;
    s.frames.push_back(std::move(frame));
  }
  return s;
}

/// Kolmogorov-Smirnov statistic of `values` against uniform(lo, hi).
inline double ks_uniform(std::vector<double> values, double lo, double hi)
{
  std::sort(values.begin(), values.end());
  const auto n = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double cdf = std::clamp((values[i] - lo) / (hi - lo), 0.0, 1.0);
    d = std::max({d, static_cast<double>(i + 1) / n - cdf, cdf - static_cast<double>(i) / n});
  }
  return d;
}

/// Asymptotic two-sided KS critical value at alpha = 0.01.
inline double ks_critical_001(std::size_t n) { return 1.6276 / std::sqrt(static_cast<double>(n)); }

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir
{
public:
  explicit TempDir(const std::string & tag)
  {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("rulegauge-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir()
  {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir &) = delete;
  TempDir & operator=(const TempDir &) = delete;

  [[nodiscard]] const std::filesystem::path & path() const { return path_; }

private:
  std::filesystem::path path_;
};

}  // namespace rulegauge::test

#endif  // RULEGAUGE_TESTS__SUPPORT_HPP_
