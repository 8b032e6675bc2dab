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

#ifndef RULEGAUGE__SYNTH_HPP_
#define RULEGAUGE__SYNTH_HPP_

#include "rulegauge/geometry.hpp"
#include "rulegauge/types.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rulegauge::synth
{

/// Distribution of planted per-driver conformity values on [0, 1].
struct PlantedDistribution
{
  enum class Kind { Constant, Uniform, Mixture };

  Kind kind{Kind::Constant};
  double a{1.0};  // constant value, or lower bound
  double b{1.0};  // upper bound
  double p{0.0};  // mixture: probability of exactly 1.0, otherwise uniform(a, b)

  static PlantedDistribution constant(double v) { return {Kind::Constant, v, v, 0.0}; }
  static PlantedDistribution uniform(double lo, double hi) { return {Kind::Uniform, lo, hi, 0.0}; }
  static PlantedDistribution mixture(double strict_mass, double lo, double hi)
  {
    return {Kind::Mixture, lo, hi, strict_mass};
  }

  /// "const:V", "uniform:A,B" or "mixture:P,A,B". Throws InfeasibleSpec.
  static PlantedDistribution parse(std::string_view text);

  /// Throws InfeasibleSpec if the support leaves [0, 1], or includes 0 when `allow_zero` is
  /// false.
  void check(bool allow_zero) const;
  double sample(std::mt19937_64 & rng) const;
};

struct SynthSpec
{
  std::uint64_t seed{0};
  std::size_t n_scenarios{10};
  // Scored drivers per scenario. Each has its own corridor and a pace vehicle ahead.
  std::size_t n_vehicles{10};
  double duration_s{20.0};
  double sample_rate_hz{10.0};
  PlantedDistribution planted_dist{PlantedDistribution::constant(1.0)};
  PlantedDistribution planted_speed{PlantedDistribution::constant(1.0)};
  // Lateral spacing of the straight corridors, and the limits drawn for them.
  double corridor_spacing_m{20.0};
  std::vector<double> lane_limits_mps{11.176, 13.4112, 15.6464, 17.8816};
  double horizon_s{3.0};

  /// Throws InfeasibleSpec.
  void check() const;
};

struct PlantedDriver
{
  std::string scenario_id;
  std::string vehicle_id;
  double rc_dist{1.0};
  double rc_speed{1.0};
};

struct SynthCorpus
{
  std::vector<Scenario> scenarios;
  std::vector<PlantedDriver> planted;
};

/// Deterministic in `spec.seed`; each scenario draws from its own sub-seeded generator.
///
/// Every driver follows a straight corridor at constant speed limit / rc_speed. Ahead of it
/// sits a pace vehicle whose rear face is rc_dist * horizon * speed beyond the driver's front
/// face, so the distance rule sees exactly rc_dist (drivers planted at 1.0 get no pace vehicle
/// in reach). Pace vehicles report zero velocity: they never score as egos under either rule
/// and their direction comes from the box heading. Each frame is scored on its own, so their
/// displacement between frames does not matter. The whole scene uses one of the four axis
/// directions and a random offset.
///
/// A mixture marks exactly round(p * n_scenarios * n_vehicles) drivers as strict, spread over the
/// corpus by a seeded shuffle; the others draw from uniform(a, b).
SynthCorpus generate(const SynthSpec & spec);

/// Samples the segment at t = i / samples, i = 0..samples, and returns the first parameter
/// whose point lies inside or on the box, times the segment length. Containment uses
/// half-plane tests against the box corners.
std::optional<double> brute_force_entry_distance(
  const geometry::Segment & seg, const geometry::OrientedBox & box, std::size_t samples = 100000);

/// Naive evaluation of every aggregation level straight from the samples. Throws MixedRules.
AggregateReport brute_force_aggregate(std::span<const RcSample> samples, std::size_t bin_count = 20);

}  // namespace rulegauge::synth

#endif  // RULEGAUGE__SYNTH_HPP_
