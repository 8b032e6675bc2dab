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

#ifndef RULEGAUGE__TYPES_HPP_
#define RULEGAUGE__TYPES_HPP_

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rulegauge
{

/// Planar vector in meters (east, north) or meters per second.
struct Vec2
{
  double x{0.0};
  double y{0.0};

  friend constexpr Vec2 operator+(const Vec2 & a, const Vec2 & b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(const Vec2 & a, const Vec2 & b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double s, const Vec2 & v) { return {s * v.x, s * v.y}; }
  friend constexpr bool operator==(const Vec2 &, const Vec2 &) = default;

  [[nodiscard]] double norm() const { return std::hypot(x, y); }
  [[nodiscard]] bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

constexpr double dot(const Vec2 & a, const Vec2 & b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(const Vec2 & a, const Vec2 & b) { return a.x * b.y - a.y * b.x; }

struct VehicleState
{
  std::string vehicle_id;
  Vec2 center;
  double heading{0.0};  // box orientation, radians
  Vec2 velocity;
  double length{0.0};
  double width{0.0};
  bool valid{true};

  [[nodiscard]] double speed() const { return velocity.norm(); }
  friend bool operator==(const VehicleState &, const VehicleState &) = default;
};

/// One scene.
struct Frame
{
  std::int64_t frame_index{0};
  double time_s{0.0};
  std::vector<VehicleState> vehicles;

  friend bool operator==(const Frame &, const Frame &) = default;
};

struct Lane
{
  std::string lane_id;
  std::vector<Vec2> polyline;
  std::optional<double> speed_limit_mps;

  friend bool operator==(const Lane &, const Lane &) = default;
};

struct Scenario
{
  std::string scenario_id;
  double sample_rate_hz{10.0};
  std::vector<Lane> lanes;
  std::vector<Frame> frames;

  friend bool operator==(const Scenario &, const Scenario &) = default;
};

enum class Rule { SafetyDistance, SpeedLimit };

/// Short name used in file names and CLI flags ("dist", "speed").
std::string_view rule_name(Rule rule);
std::optional<Rule> parse_rule(std::string_view name);

/// One conformity value for a (rule, scenario, driver, frame). The constructor rejects
/// values outside [0, 1].
class RcSample
{
public:
  RcSample(
    Rule rule, std::string scenario_id, std::string vehicle_id, std::int64_t frame_index,
    double rc);

  [[nodiscard]] Rule rule() const { return rule_; }
  [[nodiscard]] const std::string & scenario_id() const { return scenario_id_; }
  [[nodiscard]] const std::string & vehicle_id() const { return vehicle_id_; }
  [[nodiscard]] std::int64_t frame_index() const { return frame_index_; }
  [[nodiscard]] double rc() const { return rc_; }

private:
  Rule rule_;
  std::string scenario_id_;
  std::string vehicle_id_;
  std::int64_t frame_index_;
  double rc_;
};

struct DriverScenarioScore
{
  Rule rule{Rule::SafetyDistance};
  std::string scenario_id;
  std::string vehicle_id;
  double rc_mean{1.0};
  std::int64_t frame_count{0};
};

struct Histogram
{
  std::size_t bin_count{20};
  std::vector<double> bin_edges;
  std::vector<std::int64_t> counts;
};

/// Quarter-interval shares [0,.25) [.25,.5) [.5,.75) [.75,1] and the share exactly at 1.0.
struct RelativeBins
{
  std::array<double, 4> quarters{};
  double strict_share{0.0};
};

struct AggregateReport
{
  Rule rule{Rule::SafetyDistance};
  std::map<std::string, double> scenario_scores;
  // Empty when no driver was scored for this rule.
  std::optional<double> dataset_mean;
  std::vector<DriverScenarioScore> driver_scores;
  Histogram histogram;
  std::optional<RelativeBins> relative_bins;
  std::int64_t sample_count{0};
  // Scenarios that were processed, including those where nobody was scored.
  std::int64_t scenarios_processed{0};
};

/// Checks every structural invariant of a scenario. Never throws; an empty result means
/// the scenario is well formed.
std::vector<std::string> validate_scenario(const Scenario & scenario);

}  // namespace rulegauge

#endif  // RULEGAUGE__TYPES_HPP_
