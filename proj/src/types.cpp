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

#include "rulegauge/types.hpp"

#include <numbers>
#include <sstream>
#include <stdexcept>
#include <unordered_set>
#include <utility>

namespace rulegauge
{

std::string_view rule_name(Rule rule)
{
  switch (rule) {
    case Rule::SafetyDistance:
      return "dist";
    case Rule::SpeedLimit:
      return "speed";
  }
  return "unknown";
}

std::optional<Rule> parse_rule(std::string_view name)
{
  if (name == "dist") {
    return Rule::SafetyDistance;
  }
  if (name == "speed") {
    return Rule::SpeedLimit;
  }
  return std::nullopt;
}

RcSample::RcSample(
  Rule rule, std::string scenario_id, std::string vehicle_id, std::int64_t frame_index, double rc)
: rule_(rule),
  scenario_id_(std::move(scenario_id)),
  vehicle_id_(std::move(vehicle_id)),
  frame_index_(frame_index),
  rc_(rc)
{
  if (!(rc >= 0.0 && rc <= 1.0)) {
    throw std::invalid_argument("rc outside [0, 1]: " + std::to_string(rc));
  }
}

namespace
{
template <typename... Parts>
std::string cat(const Parts &... parts)
{
  std::ostringstream os;
  (os << ... << parts);
  return os.str();
}

void check_vehicle(
  const VehicleState & v, std::size_t frame_pos, std::size_t vehicle_pos,
  std::vector<std::string> & out)
{
  const auto where = cat("Frame ", frame_pos, ", vehicle ", vehicle_pos, " ('", v.vehicle_id, "')");
  if (!v.center.finite()) {
    out.push_back(where + ": center not finite");
  }
  if (!v.velocity.finite()) {
    out.push_back(where + ": velocity not finite");
  }
  if (!std::isfinite(v.heading)) {
    out.push_back(where + ": heading not finite");
  } else if (v.heading < -std::numbers::pi || v.heading > std::numbers::pi) {
    out.push_back(cat(where, ": heading ", v.heading, " outside [-pi, pi]"));
  }
  if (!std::isfinite(v.length) || !std::isfinite(v.width)) {
    out.push_back(where + ": dimensions not finite");
  } else if (v.valid && (v.length <= 0.0 || v.width <= 0.0)) {
    out.push_back(cat(where, ": length/width must be > 0 (", v.length, " x ", v.width, ")"));
  }
}
}  // namespace

std::vector<std::string> validate_scenario(const Scenario & scenario)
{
  std::vector<std::string> out;

  if (!(scenario.sample_rate_hz > 0.0) || !std::isfinite(scenario.sample_rate_hz)) {
    out.push_back(cat("Scenario: sample_rate_hz must be finite and > 0 (", scenario.sample_rate_hz, ")"));
  }
  if (scenario.frames.empty()) {
    out.emplace_back("Scenario: no frames");
  }

  std::unordered_set<std::string> lane_ids;
  for (std::size_t i = 0; i < scenario.lanes.size(); ++i) {
    const auto & lane = scenario.lanes[i];
    const auto where = cat("Lane ", i, " ('", lane.lane_id, "')");
    if (!lane_ids.insert(lane.lane_id).second) {
      out.push_back(cat(where, ": duplicate lane_id"));
    }
    if (lane.polyline.size() < 2) {
      out.push_back(cat(where, ": polyline has ", lane.polyline.size(), " point(s), need >= 2"));
    }
    for (std::size_t p = 0; p < lane.polyline.size(); ++p) {
      if (!lane.polyline[p].finite()) {
        out.push_back(cat(where, ": polyline point ", p, " not finite"));
      } else if (p > 0 && lane.polyline[p] == lane.polyline[p - 1]) {
        out.push_back(cat(where, ": polyline points ", p - 1, " and ", p, " identical"));
      }
    }
    if (lane.speed_limit_mps && !(*lane.speed_limit_mps > 0.0 && std::isfinite(*lane.speed_limit_mps))) {
      out.push_back(cat(where, ": speed_limit_mps must be finite and > 0"));
    }
  }

  for (std::size_t f = 0; f < scenario.frames.size(); ++f) {
    const auto & frame = scenario.frames[f];
    if (frame.frame_index < 0) {
      out.push_back(cat("Frame ", f, ": negative frame_index ", frame.frame_index));
    }
    if (!std::isfinite(frame.time_s) || frame.time_s < 0.0) {
      out.push_back(cat("Frame ", f, ": time_s must be finite and >= 0"));
    }
    if (f > 0) {
      const auto & prev = scenario.frames[f - 1];
      if (frame.frame_index <= prev.frame_index) {
        out.push_back(cat("Frame ", f, ": frame_index not strictly increasing"));
      }
      if (!(frame.time_s > prev.time_s)) {
        out.push_back(cat("Frame ", f, ": time_s not strictly increasing"));
      }
    }
    std::unordered_set<std::string> ids;
    for (std::size_t v = 0; v < frame.vehicles.size(); ++v) {
      const auto & vehicle = frame.vehicles[v];
      if (!ids.insert(vehicle.vehicle_id).second) {
        out.push_back(cat("Frame ", f, ": duplicate vehicle_id '", vehicle.vehicle_id, "'"));
      }
      check_vehicle(vehicle, f, v, out);
    }
  }
  return out;
}

}  // namespace rulegauge
