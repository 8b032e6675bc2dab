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

#include "rulegauge/errors.hpp"
#include "rulegauge/ingest.hpp"
#include "rulegauge/pipeline.hpp"
#include "rulegauge/report.hpp"
#include "rulegauge/synth.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace rulegauge;

namespace
{
void print_diagnostic(const ingest::Diagnostic & d)
{
  nlohmann::json line{
    {"level", d.level}, {"kind", d.kind}, {"path", d.path.string()}, {"message", d.message}};
  std::cerr << line.dump() << '\n';
}

std::vector<Rule> parse_rules(const std::string & text)
{
  std::vector<Rule> rules;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto rule = parse_rule(item);
    if (!rule) {
      throw std::invalid_argument("unknown rule '" + item + "' (expected dist, speed)");
    }
    if (std::find(rules.begin(), rules.end(), *rule) == rules.end()) {
      rules.push_back(*rule);
    }
  }
  return rules;
}

struct AnalyzeArgs
{
  std::vector<std::string> inputs;
  std::string rules{"dist,speed"};
  double sample_hz{1.0};
  std::size_t bins{20};
  double min_speed_kmh{5.0};
  double heading_dev_pct{20.0};
  double lane_dist_m{10.0};
  double speed_floor_frac{0.8};
  double horizon_s{3.0};
  std::string combiner{"min"};
  bool filter_slow_leads{false};
  int workers{1};
  std::uint64_t seed{0};
  std::string out{"."};
  bool strict{false};
};

int run_analyze(const AnalyzeArgs & a)
{
  pipeline::RunConfig cfg;
  try {
    cfg.rules = parse_rules(a.rules);
  } catch (const std::invalid_argument & e) {
    print_diagnostic({"error", "ConfigError", {}, e.what()});
    return pipeline::kExitConfig;
  }
  for (const auto & in : a.inputs) {
    cfg.ingest.input_paths.emplace_back(in);
  }
  cfg.ingest.target_rate_hz = a.sample_hz;
  cfg.ingest.strict = a.strict;
  cfg.histogram_bins = a.bins;
  cfg.dist_cfg.min_speed_mps = a.min_speed_kmh / 3.6;
  cfg.dist_cfg.max_heading_dev_rad = a.heading_dev_pct / 100.0 * std::numbers::pi;
  cfg.dist_cfg.horizon_s = a.horizon_s;
  cfg.dist_cfg.combiner =
    a.combiner == "mean" ? safety_distance::RayCombiner::Mean : safety_distance::RayCombiner::Min;
  cfg.dist_cfg.filter_slow_leads = a.filter_slow_leads;
  cfg.speed_cfg.max_lane_dist_m = a.lane_dist_m;
  cfg.speed_cfg.min_fraction_of_limit = a.speed_floor_frac;
  cfg.workers = a.workers;
  cfg.seed = a.seed;
  cfg.output_dir = a.out;
  return pipeline::run(cfg, print_diagnostic);
}

int run_validate(const std::vector<std::string> & inputs)
{
  ingest::IngestConfig cfg;
  for (const auto & in : inputs) {
    cfg.input_paths.emplace_back(in);
  }
  std::vector<fs::path> files;
  try {
    files = ingest::list_scenario_files(cfg);
  } catch (const IoError & e) {
    print_diagnostic({"error", "IoError", {}, e.what()});
    return pipeline::kExitConfig;
  }
  if (files.empty()) {
    print_diagnostic({"error", "NoInput", {}, "no scenarios found"});
    return pipeline::kExitConfig;
  }

  int bad = 0;
  for (const auto & path : files) {
    std::vector<std::string> problems;
    try {
      problems = validate_scenario(ingest::parse_scenario_unchecked(ingest::read_file(path)));
    } catch (const Error & e) {
      problems.push_back(ingest::error_kind(e) + ": " + e.what());
    }
    if (problems.empty()) {
      std::cout << path.string() << ": ok\n";
      continue;
    }
    ++bad;
    for (const auto & p : problems) {
      std::cout << path.string() << ": " << p << '\n';
    }
  }
  std::cout << files.size() - static_cast<std::size_t>(bad) << "/" << files.size()
            << " scenario files valid\n";
  return bad == 0 ? 0 : 1;
}

struct SynthArgs
{
  synth::SynthSpec spec;
  std::string plant_dist{"const:1.0"};
  std::string plant_speed{"const:1.0"};
  std::string out{"."};
};

int run_synth(SynthArgs a)
{
  try {
    a.spec.planted_dist = synth::PlantedDistribution::parse(a.plant_dist);
    a.spec.planted_speed = synth::PlantedDistribution::parse(a.plant_speed);
    const auto corpus = synth::generate(a.spec);
    fs::create_directories(a.out);
    for (const auto & s : corpus.scenarios) {
      std::ofstream f(fs::path(a.out) / (s.scenario_id + std::string(ingest::kFileExtension)), std::ios::binary);
      f << report::write_scenario(s);
      if (!f) {
        throw IoError("cannot write scenario " + s.scenario_id);
      }
    }
    std::ofstream truth(fs::path(a.out) / "planted.csv");
    truth << "scenario_id,vehicle_id,rc_dist,rc_speed\n";
    for (const auto & p : corpus.planted) {
      truth << p.scenario_id << ',' << p.vehicle_id << ',' << report::format_double(p.rc_dist) << ','
            << report::format_double(p.rc_speed) << '\n';
    }
    std::cerr << nlohmann::json{{"level", "info"}, {"kind", "SynthDone"},
                                {"scenarios", corpus.scenarios.size()}, {"out", a.out}}.dump()
              << '\n';
  } catch (const std::exception & e) {
    print_diagnostic({"error", "InfeasibleSpec", {}, e.what()});
    return pipeline::kExitConfig;
  }
  return 0;
}
}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"rulegauge: rule-conformity statistics for recorded driving scenarios"};
  app.require_subcommand(1);

  AnalyzeArgs analyze;
  auto * an = app.add_subcommand("analyze", "score scenarios and write reports");
  an->add_option("--input", analyze.inputs, "scenario files or directories")->required()->expected(1, -1);
  an->add_option("--rules", analyze.rules, "comma separated subset of dist,speed");
  an->add_option("--sample-hz", analyze.sample_hz, "analysis rate in Hz");
  an->add_option("--bins", analyze.bins, "histogram bins");
  an->add_option("--min-speed-kmh", analyze.min_speed_kmh, "ego speed floor for the distance rule");
  an->add_option("--heading-dev-pct", analyze.heading_dev_pct, "allowed heading deviation, percent of pi");
  an->add_option("--lane-dist-m", analyze.lane_dist_m, "max distance to the assigned centerline");
  an->add_option("--speed-floor-frac", analyze.speed_floor_frac, "skip vehicles below this fraction of the limit");
  an->add_option("--horizon-s", analyze.horizon_s, "projection horizon of the distance rule");
  an->add_option("--ray-combiner", analyze.combiner, "min or mean over the three rays")
    ->check(CLI::IsMember({"min", "mean"}));
  an->add_flag("--filter-slow-leads", analyze.filter_slow_leads, "ignore slow vehicles as leads");
  an->add_option("--workers", analyze.workers, "worker threads");
  an->add_option("--seed", analyze.seed, "recorded in the report parameters");
  an->add_option("--out", analyze.out, "output directory");
  an->add_flag("--strict", analyze.strict, "fail on the first malformed file");

  std::vector<std::string> validate_inputs;
  auto * va = app.add_subcommand("validate", "check scenario files against the format invariants");
  va->add_option("--input", validate_inputs, "scenario files or directories")->required()->expected(1, -1);

  SynthArgs synth_args;
  auto * sy = app.add_subcommand("synth", "write synthetic scenarios with planted conformity");
  sy->add_option("--seed", synth_args.spec.seed);
  sy->add_option("--scenarios", synth_args.spec.n_scenarios);
  sy->add_option("--vehicles", synth_args.spec.n_vehicles, "scored drivers per scenario");
  sy->add_option("--duration-s", synth_args.spec.duration_s);
  sy->add_option("--sample-hz", synth_args.spec.sample_rate_hz);
  sy->add_option("--plant-dist", synth_args.plant_dist, "const:V | uniform:A,B | mixture:P,A,B");
  sy->add_option("--plant-speed", synth_args.plant_speed, "const:V | uniform:A,B | mixture:P,A,B");
  sy->add_option("--out", synth_args.out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success & e) {
    return app.exit(e);
  } catch (const CLI::ParseError & e) {
    app.exit(e);
    return pipeline::kExitConfig;
  }

  if (an->parsed()) {
    return run_analyze(analyze);
  }
  if (va->parsed()) {
    return run_validate(validate_inputs);
  }
  return run_synth(synth_args);
}
