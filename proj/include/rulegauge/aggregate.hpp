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

#ifndef RULEGAUGE__AGGREGATE_HPP_
#define RULEGAUGE__AGGREGATE_HPP_

#include "rulegauge/types.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rulegauge::aggregate
{

/// Mean over each driver's scored frames, one entry per (scenario_id, vehicle_id), sorted by
/// that key. Throws MixedRules if the samples do not share one rule.
std::vector<DriverScenarioScore> driver_scenario_means(std::span<const RcSample> samples);

/// Unweighted mean of the drivers' means. Throws EmptyScenario.
double scenario_mean(std::span<const DriverScenarioScore> scores);

/// Unweighted mean over scenarios. Throws EmptyDataset.
double dataset_mean(std::span<const double> scenario_means);

/// Uniform bins over [0, 1]; bin i is [i/B, (i+1)/B) and the last bin also holds 1.0.
Histogram build_histogram(std::span<const DriverScenarioScore> scores, std::size_t bin_count = 20);

/// Index of the bin holding `value` (in [0, 1]) for the given edges.
std::size_t bin_index(double value, std::span<const double> edges);

/// Throws EmptyInput.
RelativeBins build_relative_bins(std::span<const DriverScenarioScore> scores);

/// Mergeable running state for one rule. Each worker owns one; `merge` is associative and
/// commutative with an empty partial as identity.
class PartialAggregate
{
public:
  struct Accumulator
  {
    double sum{0.0};
    std::int64_t count{0};
  };
  using DriverKey = std::pair<std::string, std::string>;  // (scenario_id, vehicle_id)

  explicit PartialAggregate(Rule rule) : rule_(rule) {}

  /// Throws MixedRules.
  void add(const RcSample & sample);
  void add(std::span<const RcSample> samples);
  /// Records that a scenario was processed even if nobody in it was scored.
  void note_scenario(const std::string & scenario_id);

  /// Throws MixedRules.
  void merge_from(const PartialAggregate & other);

  [[nodiscard]] Rule rule() const { return rule_; }
  [[nodiscard]] std::int64_t sample_count() const { return sample_count_; }
  [[nodiscard]] const std::map<DriverKey, Accumulator> & drivers() const { return drivers_; }
  [[nodiscard]] const std::set<std::string> & scenarios() const { return scenarios_; }

  /// Deterministic: iteration follows (scenario_id, vehicle_id) order.
  [[nodiscard]] AggregateReport finalize(std::size_t bin_count = 20) const;

  friend bool operator==(const PartialAggregate & a, const PartialAggregate & b);

private:
  Rule rule_;
  std::map<DriverKey, Accumulator> drivers_;
  std::set<std::string> scenarios_;
  std::int64_t sample_count_{0};
};

/// Throws MixedRules.
PartialAggregate merge(const PartialAggregate & a, const PartialAggregate & b);

}  // namespace rulegauge::aggregate

#endif  // RULEGAUGE__AGGREGATE_HPP_
