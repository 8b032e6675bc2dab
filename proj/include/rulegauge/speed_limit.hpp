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

#ifndef RULEGAUGE__SPEED_LIMIT_HPP_
#define RULEGAUGE__SPEED_LIMIT_HPP_

#include "rulegauge/types.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace rulegauge::speed_limit
{

struct SpeedLimitConfig
{
  double max_lane_dist_m{10.0};
  double min_fraction_of_limit{0.8};

  /// Throws std::invalid_argument on out-of-range values.
  void check() const;
};

/// Nearest lane by vertex distance, then gated: returns nullptr if that lane is farther than
/// `cfg.max_lane_dist_m` or carries no speed limit. Equal distances resolve to the smallest
/// lane_id. Brute-force scan over every vertex.
const Lane * assign_lane(
  const VehicleState & v, std::span<const Lane> lanes, const SpeedLimitConfig & cfg = {});

/// Uniform grid over lane vertices with cell size `max_lane_dist_m`. `assign` returns the same
/// lane as `assign_lane` for the lanes it was built from, looking only at the 3x3 neighbourhood.
class LaneIndex
{
public:
  LaneIndex(std::span<const Lane> lanes, const SpeedLimitConfig & cfg);

  [[nodiscard]] const Lane * assign(const VehicleState & v) const;

private:
  struct Entry
  {
    Vec2 point;
    std::uint32_t lane;
  };

  [[nodiscard]] std::int64_t cell_key(std::int64_t cx, std::int64_t cy) const;

  std::span<const Lane> lanes_;
  SpeedLimitConfig cfg_;
  double cell_;
  std::unordered_map<std::int64_t, std::vector<Entry>> cells_;
};

/// Conformity `min(1, limit / speed)`. Empty for vehicles slower than the configured fraction of the
/// limit or lanes without a limit.
std::optional<double> rc_speed_frame(
  const VehicleState & v, const Lane & lane, const SpeedLimitConfig & cfg = {});

/// One sample per scored (vehicle, frame), frame-major then by vehicle_id. Uses LaneIndex.
std::vector<RcSample> score_scenario_speed(
  const Scenario & scenario, const SpeedLimitConfig & cfg = {});

}  // namespace rulegauge::speed_limit

#endif  // RULEGAUGE__SPEED_LIMIT_HPP_
