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

#include "rulegauge/speed_limit.hpp"

#include "rulegauge/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rulegauge::speed_limit
{

void SpeedLimitConfig::check() const
{
  if (!(max_lane_dist_m > 0.0)) {
    throw std::invalid_argument("max_lane_dist_m must be > 0");
  }
  if (!(min_fraction_of_limit > 0.0 && min_fraction_of_limit <= 1.0)) {
    throw std::invalid_argument("min_fraction_of_limit must be in (0, 1]");
  }
}

namespace
{
bool closer(double d, const Lane & lane, double best_d, const Lane * best)
{
  return best == nullptr || d < best_d || (d == best_d && lane.lane_id < best->lane_id);
}

const Lane * gate(const Lane * best, double best_d, const SpeedLimitConfig & cfg)
{
  if (best == nullptr || best_d > cfg.max_lane_dist_m || !best->speed_limit_mps) {
    return nullptr;
  }
  return best;
}
}  // namespace

const Lane * assign_lane(
  const VehicleState & v, std::span<const Lane> lanes, const SpeedLimitConfig & cfg)
{
  const Lane * best = nullptr;
  double best_d = std::numeric_limits<double>::infinity();
  for (const auto & lane : lanes) {
    if (lane.polyline.empty()) {
      continue;
    }
    const double d = geometry::point_polyline_distance(v.center, lane.polyline).distance;
    if (closer(d, lane, best_d, best)) {
      best = &lane;
      best_d = d;
    }
  }
  return gate(best, best_d, cfg);
}

LaneIndex::LaneIndex(std::span<const Lane> lanes, const SpeedLimitConfig & cfg)
: lanes_(lanes), cfg_(cfg), cell_(cfg.max_lane_dist_m)
{
  for (std::size_t l = 0; l < lanes.size(); ++l) {
    for (const auto & p : lanes[l].polyline) {
      const auto cx = static_cast<std::int64_t>(std::floor(p.x / cell_));
      const auto cy = static_cast<std::int64_t>(std::floor(p.y / cell_));
      cells_[cell_key(cx, cy)].push_back({p, static_cast<std::uint32_t>(l)});
    }
  }
}

std::int64_t LaneIndex::cell_key(std::int64_t cx, std::int64_t cy) const
{
  return static_cast<std::int64_t>(
    (static_cast<std::uint64_t>(cx) << 32) ^ (static_cast<std::uint64_t>(cy) & 0xffffffffULL));
}

const Lane * LaneIndex::assign(const VehicleState & v) const
{
  const auto cx = static_cast<std::int64_t>(std::floor(v.center.x / cell_));
  const auto cy = static_cast<std::int64_t>(std::floor(v.center.y / cell_));

  // Per-lane minimum squared distance over the vertices in the 3x3 neighbourhood.
  std::vector<std::pair<std::uint32_t, double>> nearest;
  for (std::int64_t dx = -1; dx <= 1; ++dx) {
    for (std::int64_t dy = -1; dy <= 1; ++dy) {
      const auto it = cells_.find(cell_key(cx + dx, cy + dy));
      if (it == cells_.end()) {
        continue;
      }
      for (const auto & e : it->second) {
        const double ex = e.point.x - v.center.x;
        const double ey = e.point.y - v.center.y;
        const double sq = ex * ex + ey * ey;
        auto slot = std::find_if(
          nearest.begin(), nearest.end(), [&](const auto & n) { return n.first == e.lane; });
        if (slot == nearest.end()) {
          nearest.emplace_back(e.lane, sq);
        } else if (sq < slot->second) {
          slot->second = sq;
        }
      }
    }
  }

  const Lane * best = nullptr;
  double best_d = std::numeric_limits<double>::infinity();
  for (const auto & [lane_pos, sq] : nearest) {
    const auto & lane = lanes_[lane_pos];
    const double d = std::sqrt(sq);
    if (closer(d, lane, best_d, best)) {
      best = &lane;
      best_d = d;
    }
  }
  return gate(best, best_d, cfg_);
}

std::optional<double> rc_speed_frame(
  const VehicleState & v, const Lane & lane, const SpeedLimitConfig & cfg)
{
  if (!lane.speed_limit_mps) {
    return std::nullopt;
  }
  const double limit = *lane.speed_limit_mps;
  const double speed = v.speed();
  if (speed < cfg.min_fraction_of_limit * limit || speed == 0.0) {
    return std::nullopt;
  }
  return std::min(1.0, limit / speed);
}

std::vector<RcSample> score_scenario_speed(const Scenario & scenario, const SpeedLimitConfig & cfg)
{
  std::vector<RcSample> samples;
  if (scenario.lanes.empty()) {
    return samples;
  }
  const LaneIndex index(scenario.lanes, cfg);
  std::vector<const VehicleState *> order;
  for (const auto & frame : scenario.frames) {
    order.clear();
    for (const auto & v : frame.vehicles) {
      if (v.valid) {
        order.push_back(&v);
      }
    }
    std::sort(order.begin(), order.end(), [](const auto * a, const auto * b) {
      return a->vehicle_id < b->vehicle_id;
    });
    for (const auto * v : order) {
      const Lane * lane = index.assign(*v);
      if (lane == nullptr) {
        continue;
      }
      if (const auto rc = rc_speed_frame(*v, *lane, cfg)) {
        samples.emplace_back(Rule::SpeedLimit, scenario.scenario_id, v->vehicle_id, frame.frame_index, *rc);
      }
    }
  }
  return samples;
}

}  // namespace rulegauge::speed_limit
