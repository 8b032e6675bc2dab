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

#include "rulegauge/safety_distance.hpp"

#include "rulegauge/geometry.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>

namespace rulegauge::safety_distance
{

void SafetyDistanceConfig::check() const
{
  if (!(horizon_s > 0.0) || !(min_speed_mps > 0.0) || !(max_heading_dev_rad > 0.0)) {
    throw std::invalid_argument("safety distance thresholds must be positive");
  }
}

std::string_view ray_name(Ray ray)
{
  switch (ray) {
    case Ray::Center:
      return "center";
    case Ray::Left:
      return "left";
    case Ray::Right:
      return "right";
  }
  return "unknown";
}

namespace
{
Vec2 travel_direction(const VehicleState & v, double from_heading_below)
{
  if (v.speed() < from_heading_below) {
    return geometry::unit_from_heading(v.heading);
  }
  return v.velocity;
}

bool is_lead_candidate(
  const VehicleState & ego, const VehicleState & other, const SafetyDistanceConfig & cfg)
{
  if (!other.valid || other.vehicle_id == ego.vehicle_id) {
    return false;
  }
  if (cfg.filter_slow_leads && other.speed() < cfg.min_speed_mps) {
    return false;
  }
  const Vec2 dir = travel_direction(other, cfg.direction_from_heading_below_mps);
  return geometry::heading_angle_between(ego.velocity, dir) <= cfg.max_heading_dev_rad;
}

struct RayHit
{
  double c;
  const VehicleState * lead;
};
}  // namespace

std::optional<DistanceScore> rc_dist_frame(
  const VehicleState & ego, std::span<const VehicleState> others, const SafetyDistanceConfig & cfg)
{
  const double speed = ego.speed();
  if (!ego.valid || speed < cfg.min_speed_mps || speed == 0.0) {
    return std::nullopt;
  }

  const auto front = geometry::front_points(ego);
  const std::array<Ray, 3> rays{Ray::Center, Ray::Left, Ray::Right};
  const std::array<geometry::Segment, 3> segments{
    geometry::projection_segment(front.center, ego.velocity, cfg.horizon_s),
    geometry::projection_segment(front.left, ego.velocity, cfg.horizon_s),
    geometry::projection_segment(front.right, ego.velocity, cfg.horizon_s)};
  const double z_len = cfg.horizon_s * speed;

  std::array<std::optional<RayHit>, 3> hits;
  for (const auto & other : others) {
    if (!is_lead_candidate(ego, other, cfg)) {
      continue;
    }
    const auto box = geometry::footprint(other);
    for (std::size_t r = 0; r < segments.size(); ++r) {
      const auto c = geometry::segment_box_entry_distance(segments[r], box);
      if (c && (!hits[r] || *c < hits[r]->c)) {
        hits[r] = RayHit{*c, &other};
      }
    }
  }

  std::array<double, 3> ray_rc{1.0, 1.0, 1.0};
  std::optional<std::size_t> worst;
  for (std::size_t r = 0; r < hits.size(); ++r) {
    if (!hits[r]) {
      continue;
    }
    ray_rc[r] = std::clamp(hits[r]->c / z_len, 0.0, 1.0);
    if (!worst || ray_rc[r] < ray_rc[*worst]) {
      worst = r;
    }
  }

  DistanceScore score;
  if (cfg.combiner == RayCombiner::Min) {
    score.rc = *std::min_element(ray_rc.begin(), ray_rc.end());
  } else {
    score.rc = std::clamp(std::accumulate(ray_rc.begin(), ray_rc.end(), 0.0) / 3.0, 0.0, 1.0);
  }
  if (worst) {
    const auto & hit = *hits[*worst];
    score.detail = DistanceViolationDetail{
      ego.vehicle_id, hit.lead->vehicle_id, rays[*worst], std::min(hit.c, z_len), z_len,
      ray_rc[*worst]};
  }
  return score;
}

std::vector<RcSample> score_scenario_dist(const Scenario & scenario, const SafetyDistanceConfig & cfg)
{
  std::vector<RcSample> samples;
  std::vector<const VehicleState *> order;
  for (const auto & frame : scenario.frames) {
    order.clear();
    for (const auto & v : frame.vehicles) {
      order.push_back(&v);
    }
    std::sort(order.begin(), order.end(), [](const auto * a, const auto * b) {
      return a->vehicle_id < b->vehicle_id;
    });
    for (const auto * ego : order) {
      const auto score = rc_dist_frame(*ego, frame.vehicles, cfg);
      if (score) {
        samples.emplace_back(
          Rule::SafetyDistance, scenario.scenario_id, ego->vehicle_id, frame.frame_index, score->rc);
      }
    }
  }
  return samples;
}

}  // namespace rulegauge::safety_distance
