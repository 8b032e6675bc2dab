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

#include "rulegauge/pipeline.hpp"

#include "rulegauge/errors.hpp"
#include "rulegauge/report.hpp"

#include <omp.h>

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <string>

namespace rulegauge::pipeline
{

namespace fs = std::filesystem;

void RunConfig::check() const
{
  if (rules.empty()) {
    throw std::invalid_argument("at least one rule must be selected");
  }
  if (workers < 1) {
    throw std::invalid_argument("workers must be >= 1");
  }
  if (histogram_bins < 1) {
    throw std::invalid_argument("bins must be >= 1");
  }
  if (!(ingest.target_rate_hz > 0.0)) {
    throw std::invalid_argument("sample rate must be > 0");
  }
  dist_cfg.check();
  speed_cfg.check();
}

nlohmann::json RunConfig::parameters() const
{
  nlohmann::json rule_names = nlohmann::json::array();
  for (const auto r : rules) {
    rule_names.push_back(std::string(rule_name(r)));
  }
  return {
    {"rules", rule_names},
    {"sample_hz", ingest.target_rate_hz},
    {"strict", ingest.strict},
    {"bins", histogram_bins},
    {"horizon_s", dist_cfg.horizon_s},
    {"min_speed_mps", dist_cfg.min_speed_mps},
    {"max_heading_dev_rad", dist_cfg.max_heading_dev_rad},
    {"ray_combiner", dist_cfg.combiner == safety_distance::RayCombiner::Min ? "min" : "mean"},
    {"filter_slow_leads", dist_cfg.filter_slow_leads},
    {"lane_dist_m", speed_cfg.max_lane_dist_m},
    {"speed_floor_frac", speed_cfg.min_fraction_of_limit},
    {"seed", seed}};
}

namespace
{
std::vector<aggregate::PartialAggregate> empty_partials(const RunConfig & cfg)
{
  std::vector<aggregate::PartialAggregate> out;
  out.reserve(cfg.rules.size());
  for (const auto r : cfg.rules) {
    out.emplace_back(r);
  }
  return out;
}

void write_text(const fs::path & path, const std::string & text)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot write " + path.string());
  }
  out << text;
  if (!out) {
    throw IoError("write failed: " + path.string());
  }
}
}  // namespace

void score_into(
  const Scenario & scenario, const RunConfig & cfg, std::vector<aggregate::PartialAggregate> & partials)
{
  for (std::size_t r = 0; r < cfg.rules.size(); ++r) {
    auto & partial = partials[r];
    partial.note_scenario(scenario.scenario_id);
    if (cfg.rules[r] == Rule::SafetyDistance) {
      partial.add(safety_distance::score_scenario_dist(scenario, cfg.dist_cfg));
    } else {
      partial.add(speed_limit::score_scenario_speed(scenario, cfg.speed_cfg));
    }
  }
}

AnalysisResult analyze_serial(const RunConfig & cfg)
{
  AnalysisResult result;
  result.partials = empty_partials(cfg);
  ingest::ScenarioStream stream(
    cfg.ingest, [&](const ingest::Diagnostic & d) { result.diagnostics.push_back(d); });
  result.files = stream.file_count();

  try {
    while (const auto scenario = stream.next()) {
      score_into(*scenario, cfg, result.partials);
      ++result.scenarios;
    }
  } catch (const Error & e) {
    // Only reachable in strict mode; otherwise the stream reports and skips.
    const auto pos = stream.position();
    result.strict_failure = ingest::Diagnostic{
      "error", ingest::error_kind(e), pos > 0 ? stream.files()[pos - 1] : fs::path{}, e.what()};
  }
  return result;
}

AnalysisResult analyze_parallel(const RunConfig & cfg)
{
  AnalysisResult result;
  const auto files = ingest::list_scenario_files(cfg.ingest);
  result.files = files.size();
  const auto n = static_cast<std::int64_t>(files.size());

  std::vector<std::optional<ingest::Diagnostic>> failures(files.size());
  std::vector<std::vector<aggregate::PartialAggregate>> per_thread(
    static_cast<std::size_t>(cfg.workers));
  std::size_t loaded = 0;

#pragma omp parallel num_threads(cfg.workers) reduction(+ : loaded)
  {
    auto local = empty_partials(cfg);
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i) {
      const auto & path = files[static_cast<std::size_t>(i)];
      try {
        const auto scenario = ingest::load_scenario_file(path, cfg.ingest.target_rate_hz);
        score_into(scenario, cfg, local);
        ++loaded;
      } catch (const std::exception & e) {
        failures[static_cast<std::size_t>(i)] =
          ingest::Diagnostic{"error", ingest::error_kind(e), path, e.what()};
      }
    }
    per_thread[static_cast<std::size_t>(omp_get_thread_num())] = std::move(local);
  }

  result.scenarios = loaded;
  result.partials = empty_partials(cfg);
  for (const auto & local : per_thread) {
    for (std::size_t r = 0; r < local.size(); ++r) {
      result.partials[r].merge_from(local[r]);
    }
  }
  for (auto & f : failures) {
    if (!f) {
      continue;
    }
    if (cfg.ingest.strict) {
      result.strict_failure = std::move(f);
      break;
    }
    result.diagnostics.push_back(std::move(*f));
  }
  return result;
}

std::vector<AggregateReport> write_outputs(const AnalysisResult & result, const RunConfig & cfg)
{
  fs::create_directories(cfg.output_dir);
  auto params = cfg.parameters();
  params["files"] = result.files;
  params["scenarios_loaded"] = result.scenarios;

  std::vector<AggregateReport> reports;
  for (const auto & partial : result.partials) {
    auto report = partial.finalize(cfg.histogram_bins);
    const std::string name(rule_name(report.rule));
    write_text(
      cfg.output_dir / ("report_" + name + ".json"), report::report_json(report, params).dump(2) + "\n");
    write_text(cfg.output_dir / ("driver_scores_" + name + ".csv"), report::driver_scores_csv(report));
    write_text(cfg.output_dir / ("histogram_" + name + ".svg"), report::histogram_svg(report));
    write_text(cfg.output_dir / ("relative_" + name + ".svg"), report::relative_svg(report));
    reports.push_back(std::move(report));
  }
  return reports;
}

int run(const RunConfig & cfg, const ingest::DiagnosticSink & sink)
{
  const auto emit = [&](const ingest::Diagnostic & d) {
    if (sink) {
      sink(d);
    }
  };
  try {
    cfg.check();
  } catch (const std::invalid_argument & e) {
    emit({"error", "ConfigError", {}, e.what()});
    return kExitConfig;
  }

  AnalysisResult result;
  try {
    result = cfg.workers == 1 ? analyze_serial(cfg) : analyze_parallel(cfg);
  } catch (const IoError & e) {
    emit({"error", "IoError", {}, e.what()});
    return kExitConfig;
  }
  for (const auto & d : result.diagnostics) {
    emit(d);
  }
  if (result.strict_failure) {
    emit(*result.strict_failure);
    return kExitStrictParse;
  }
  if (result.scenarios == 0) {
    emit({"error", "NoInput", {}, "no scenarios found"});
    return kExitConfig;
  }

  try {
    const auto reports = write_outputs(result, cfg);
    for (const auto & r : reports) {
      if (!r.dataset_mean) {
        emit({"warning", "EmptyDataset", {}, "no driver was scored for rule '" + std::string(rule_name(r.rule)) + "'"});
      }
    }
  } catch (const std::exception & e) {
    emit({"error", "IoError", cfg.output_dir, e.what()});
    return kExitConfig;
  }
  return kExitOk;
}

}  // namespace rulegauge::pipeline
