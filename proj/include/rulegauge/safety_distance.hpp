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

#ifndef RULEGAUGE__SAFETY_DISTANCE_HPP_
#define RULEGAUGE__SAFETY_DISTANCE_HPP_

#include "rulegauge/types.hpp"

#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rulegauge::safety_distance
{

enum class RayCombiner { Min, Mean };

/// Three-second rule parameters.
struct SafetyDistanceConfig
{
  double horizon_s{3.0};
  double min_speed_mps{5.0 / 3.6};
  // 20 % of a half turn.
  double max_heading_dev_rad{0.2 * std::numbers::pi};
  RayCombiner combiner{RayCombiner::Min};
  // Below this speed a lead vehicle's direction is taken from its box heading.
  double direction_from_heading_below_mps{0.1};
  // Also drop leads slower than min_speed_mps. Off: a parked car ahead still obstructs.
  bool filter_slow_leads{false};

  /// Throws std::invalid_argument if any threshold is not positive.
  void check() const;
};

enum class Ray { Center, Left, Right };

std::string_view ray_name(Ray ray);

struct DistanceViolationDetail
{
  std::string ego_id;
  std::string lead_id;
  Ray ray{Ray::Center};
  double c{0.0};
  double z_len{0.0};
  double rc{1.0};
};

struct DistanceScore
{
  double rc{1.0};
  // Worst ray's hit. Empty when no ray meets another vehicle.
  std::optional<DistanceViolationDetail> detail;
};

/// Conformity of `ego` in one frame. Empty when the ego is invalid or slower than
/// `cfg.min_speed_mps`. `others` may contain the ego itself; it is skipped by id.
std::optional<DistanceScore> rc_dist_frame(
  const VehicleState & ego, std::span<const VehicleState> others,
  const SafetyDistanceConfig & cfg = {});

/// One sample per scored (vehicle, frame), frame-major then by vehicle_id.
std::vector<RcSample> score_scenario_dist(
  const Scenario & scenario, const SafetyDistanceConfig & cfg = {});

}  // namespace rulegauge::safety_distance

#endif  // RULEGAUGE__SAFETY_DISTANCE_HPP_
