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

#include "../support.hpp"

#include <gtest/gtest.h>

#include <limits>
#include <stdexcept>

using rulegauge::Lane;
using rulegauge::RcSample;
using rulegauge::Rule;
using rulegauge::Scenario;
using rulegauge::validate_scenario;
using rulegauge::test::repeated_scenario;
using rulegauge::test::vehicle;

namespace
{
Scenario one_frame()
{
  Lane lane;
  lane.lane_id = "L0";
  lane.polyline = {{0.0, 0.0}, {10.0, 0.0}};
  lane.speed_limit_mps = 13.4;
  return repeated_scenario("s", {vehicle("a", {0, 0}, {5, 0})}, 1, 10.0, {lane});
}
}  // namespace

TEST(ValidateScenario, WellFormedHasNoViolations)
{
  EXPECT_TRUE(validate_scenario(one_frame()).empty());
}

TEST(ValidateScenario, DuplicateVehicleIdNamesFrame)
{
  auto s = one_frame();
  s.frames[0].vehicles.push_back(vehicle("a", {20, 0}, {5, 0}));
  const auto v = validate_scenario(s);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0], "Frame 0: duplicate vehicle_id 'a'");
}

TEST(ValidateScenario, SinglePointLaneIsReported)
{
  auto s = one_frame();
  s.lanes[0].polyline.resize(1);
  const auto v = validate_scenario(s);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_NE(v[0].find("Lane 0 ('L0')"), std::string::npos);
}

TEST(ValidateScenario, CollectsEveryViolation)
{
  auto s = one_frame();
  s.sample_rate_hz = 0.0;
  s.lanes.push_back(s.lanes[0]);                      // duplicate lane id
  s.lanes[1].polyline = {{1, 1}, {1, 1}};             // repeated point
  s.lanes[1].speed_limit_mps = -3.0;                  // bad limit
  s.frames[0].vehicles[0].length = 0.0;               // degenerate valid vehicle
  s.frames[0].vehicles[0].velocity.x = std::numeric_limits<double>::quiet_NaN();
  auto second = s.frames[0];
  second.frame_index = 0;                             // not increasing
  s.frames.push_back(second);
  EXPECT_EQ(validate_scenario(s).size(), 10u);
}

TEST(ValidateScenario, InvalidVehicleMayHaveZeroSize)
{
  auto s = one_frame();
  s.frames[0].vehicles[0].valid = false;
  s.frames[0].vehicles[0].length = 0.0;
  EXPECT_TRUE(validate_scenario(s).empty());
}

TEST(ValidateScenario, NoFrames)
{
  auto s = one_frame();
  s.frames.clear();
  const auto v = validate_scenario(s);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0], "Scenario: no frames");
}

TEST(ValidateScenario, IsIdempotentAndPure)
{
  auto s = one_frame();
  s.frames[0].vehicles.push_back(vehicle("a", {20, 0}, {5, 0}));
  const auto copy = s;
  EXPECT_EQ(validate_scenario(s), validate_scenario(s));
  EXPECT_EQ(s, copy);
}

TEST(RcSample, RejectsValuesOutsideUnitInterval)
{
  EXPECT_NO_THROW(RcSample(Rule::SpeedLimit, "s", "v", 0, 0.0));
  EXPECT_NO_THROW(RcSample(Rule::SpeedLimit, "s", "v", 0, 1.0));
  EXPECT_THROW(RcSample(Rule::SpeedLimit, "s", "v", 0, 1.0000001), std::invalid_argument);
  EXPECT_THROW(RcSample(Rule::SpeedLimit, "s", "v", 0, -1e-12), std::invalid_argument);
  EXPECT_THROW(
    RcSample(Rule::SpeedLimit, "s", "v", 0, std::numeric_limits<double>::quiet_NaN()),
    std::invalid_argument);
}

TEST(Rule, NamesRoundTrip)
{
  for (const auto r : {Rule::SafetyDistance, Rule::SpeedLimit}) {
    EXPECT_EQ(rulegauge::parse_rule(rulegauge::rule_name(r)), r);
  }
  EXPECT_FALSE(rulegauge::parse_rule("headway"));
}
