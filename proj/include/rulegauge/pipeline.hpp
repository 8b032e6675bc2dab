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

#ifndef RULEGAUGE__PIPELINE_HPP_
#define RULEGAUGE__PIPELINE_HPP_

#include "rulegauge/aggregate.hpp"
#include "rulegauge/ingest.hpp"
#include "rulegauge/safety_distance.hpp"
#include "rulegauge/speed_limit.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace rulegauge::pipeline
{

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitStrictParse = 3;

struct RunConfig
{
  std::vector<Rule> rules{Rule::SafetyDistance, Rule::SpeedLimit};
  ingest::IngestConfig ingest;
  safety_distance::SafetyDistanceConfig dist_cfg;
  speed_limit::SpeedLimitConfig speed_cfg;
  std::size_t histogram_bins{20};
  std::filesystem::path output_dir{"."};
  int workers{1};
  std::uint64_t seed{0};

  /// Throws std::invalid_argument describing the first bad field.
  void check() const;
  /// Everything that influences results; worker count and paths are left out so reports from
  /// different machines compare equal.
  [[nodiscard]] nlohmann::json parameters() const;
};

struct AnalysisResult
{
  // One per entry of RunConfig::rules, same order.
  std::vector<aggregate::PartialAggregate> partials;
  std::vector<ingest::Diagnostic> diagnostics;
  std::size_t files{0};
  std::size_t scenarios{0};
  // Set in strict mode: the first failing file in path order.
  std::optional<ingest::Diagnostic> strict_failure;
};

/// Scores every selected rule on one scenario and folds the samples into `partials`.
void score_into(
  const Scenario & scenario, const RunConfig & cfg, std::vector<aggregate::PartialAggregate> & partials);

/// Reference implementation: one scenario at a time through ScenarioStream.
AnalysisResult analyze_serial(const RunConfig & cfg);

/// OpenMP over files with `cfg.workers` threads; each thread owns its partials and they are
/// merged in thread order. Same result as analyze_serial.
AnalysisResult analyze_parallel(const RunConfig & cfg);

/// Writes report_<rule>.json, driver_scores_<rule>.csv, histogram_<rule>.svg and
/// relative_<rule>.svg into cfg.output_dir. Returns the finalized reports.
std::vector<AggregateReport> write_outputs(const AnalysisResult & result, const RunConfig & cfg);

/// Full `analyze` command. Diagnostics go to `sink`; returns the process exit code.
int run(const RunConfig & cfg, const ingest::DiagnosticSink & sink);

}  // namespace rulegauge::pipeline

#endif  // RULEGAUGE__PIPELINE_HPP_
