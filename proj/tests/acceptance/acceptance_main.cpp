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

// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any criterion fails.

#include "rulegauge/aggregate.hpp"
#include "rulegauge/geometry.hpp"
#include "rulegauge/pipeline.hpp"
#include "rulegauge/report.hpp"
#include "rulegauge/safety_distance.hpp"
#include "rulegauge/speed_limit.hpp"
#include "rulegauge/synth.hpp"

#include "../support.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace rulegauge;
using rulegauge::test::TempDir;
using rulegauge::test::straight_lane;
using rulegauge::test::vehicle;

namespace
{
struct Outcome
{
  bool pass{false};
  std::string detail;
};

struct Criterion
{
  std::string name;
  double budget_s;  // 0 means no runtime limit
  std::function<Outcome()> check;
};

std::string fmt(const char * pattern, double a, double b = 0.0, double c = 0.0)
{
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

std::string slurp(const std::filesystem::path & p)
{
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_corpus(const std::filesystem::path & dir, const synth::SynthSpec & spec)
{
  std::filesystem::create_directories(dir);
  for (const auto & s : synth::generate(spec).scenarios) {
    std::ofstream(dir / (s.scenario_id + ".rgsf.json"), std::ios::binary) << report::write_scenario(s);
  }
}

pipeline::RunConfig run_config(const std::filesystem::path & in, const std::filesystem::path & out, int workers)
{
  pipeline::RunConfig cfg;
  cfg.ingest.input_paths = {in};
  cfg.output_dir = out;
  cfg.workers = workers;
  return cfg;
}

Outcome worked_example()
{
  // Ego at 3 m/s sweeps |z| = 9 m; the lead's rear face is 8.5 m beyond the ego's front.
  const std::vector<VehicleState> scene{
    vehicle("ego", {0.0, 0.0}, {3.0, 0.0}), vehicle("lead", {2.0 + 8.5 + 2.25, 0.0}, {3.0, 0.0}, 0.0, 4.5)};
  const auto score = safety_distance::rc_dist_frame(scene[0], scene);
  if (!score || !score->detail) {
    return {false, "no score"};
  }
  const double expected = 8.5 / 9.0;
  const double err = std::abs(score->rc - expected);
  return {err <= 1e-9 && std::abs(score->detail->z_len - 9.0) <= 1e-12,
          fmt("rc=%.12f c=%.12f |err|=%.2e", score->rc, score->detail->c, err)};
}

Outcome speed_spot_values()
{
  const auto lane = straight_lane("L", 0.0, 20.0);
  const auto at = [&](double speed) { return speed_limit::rc_speed_frame(vehicle("v", {0, 0}, {speed, 0}), lane); };
  bool ok = at(25.0) == 0.8;
  for (const double s : {16.0, 17.5, 19.999, 20.0}) {
    ok = ok && at(s) == 1.0;
  }
  for (const double s : {15.999, 10.0, 0.0}) {
    ok = ok && !at(s).has_value();
  }
  return {ok, "25->0.8, [16,20]->1.0, <16->none"};
}

Outcome geometry_oracle()
{
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> pos(-30.0, 30.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> half(0.3, 4.0);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  int hits = 0;
  int mismatches = 0;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const geometry::Segment seg{{pos(rng), pos(rng)}, {pos(rng), pos(rng)}};
    Vec2 center{pos(rng), pos(rng)};
    if (i % 2 == 0) {
      // Aim half of the boxes at the segment so both outcomes are well represented.
      const double t = unit(rng);
      center = seg.origin + t * (seg.tip - seg.origin) + Vec2{unit(rng) * 4.0 - 2.0, unit(rng) * 4.0 - 2.0};
    }
    const geometry::OrientedBox box{center, angle(rng), half(rng), half(rng)};
    const auto fast = geometry::segment_box_entry_distance(seg, box);
    const auto slow = synth::brute_force_entry_distance(seg, box);
    const double tol = std::max(1e-3, seg.length() / 1e5);
    if (fast.has_value() != slow.has_value()) {
      ++mismatches;
      continue;
    }
    if (fast) {
      ++hits;
      const double err = std::abs(*fast - *slow);
      worst = std::max(worst, err / tol);
      if (err > tol) {
        ++mismatches;
      }
    }
  }
  return {mismatches == 0 && hits > 100,
          fmt("hits=%.0f mismatches=%.0f worst err/tol=%.3f", hits, mismatches, worst)};
}

Outcome planted_round_trip()
{
  TempDir dir("accept-planted");
  bool ok = true;
  std::string detail;
  for (const double planted : {0.5, 0.9, 1.0}) {
    synth::SynthSpec spec;
    spec.seed = 1;
    spec.n_scenarios = 100;
    spec.n_vehicles = 10;
    spec.planted_dist = synth::PlantedDistribution::constant(planted);
    spec.planted_speed = synth::PlantedDistribution::constant(planted);
    const auto in = dir.path() / fmt("in-%.1f", planted);
    write_corpus(in, spec);
    const auto cfg = run_config(in, dir.path() / "out", 1);
    const auto result = pipeline::analyze_parallel(cfg);
    for (const auto & partial : result.partials) {
      const auto r = partial.finalize();
      const double mean = r.dataset_mean.value_or(-1.0);
      const double err = std::abs(mean - planted);
      ok = ok && err <= 1e-6 && r.driver_scores.size() == 1000;
      detail += std::string(rule_name(r.rule)) + fmt("@%.1f err=%.1e ", planted, err);
    }
  }
  return {ok, detail};
}

Outcome strict_share()
{
  synth::SynthSpec spec;
  spec.seed = 0;
  spec.n_scenarios = 100;
  spec.n_vehicles = 10;
  spec.duration_s = 5.0;
  spec.planted_dist = synth::PlantedDistribution::mixture(0.55, 0.2, 0.95);
  spec.planted_speed = synth::PlantedDistribution::mixture(0.55, 0.8, 0.95);
  std::vector<aggregate::PartialAggregate> partials{
    aggregate::PartialAggregate(Rule::SafetyDistance), aggregate::PartialAggregate(Rule::SpeedLimit)};
  pipeline::RunConfig cfg;
  for (const auto & s : synth::generate(spec).scenarios) {
    pipeline::score_into(ingest::subsample(s, 1.0), cfg, partials);
  }
  bool ok = true;
  std::string detail;
  for (const auto & p : partials) {
    const auto r = p.finalize();
    const double share = r.relative_bins ? r.relative_bins->strict_share : -1.0;
    ok = ok && r.driver_scores.size() == 1000 && share >= 0.53 && share <= 0.57;
    detail += std::string(rule_name(r.rule)) + fmt("=%.3f ", share);
  }
  return {ok, detail + "target [0.53, 0.57]"};
}

std::vector<RcSample> random_samples(std::mt19937_64 & rng, std::size_t n)
{
  std::uniform_int_distribution<int> scenario(0, 8);
  std::uniform_int_distribution<int> driver(0, 12);
  std::uniform_real_distribution<double> rc(0.0, 1.0);
  std::vector<RcSample> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = rc(rng);
    out.emplace_back(
      Rule::SafetyDistance, "s" + std::to_string(scenario(rng)), "d" + std::to_string(driver(rng)),
      static_cast<std::int64_t>(i), v < 0.3 ? 1.0 : v);
  }
  return out;
}

double report_distance(const AggregateReport & a, const AggregateReport & b)
{
  if (a.driver_scores.size() != b.driver_scores.size() || a.scenario_scores.size() != b.scenario_scores.size() ||
      a.histogram.counts != b.histogram.counts || a.sample_count != b.sample_count) {
    return 1.0;
  }
  double d = std::abs(a.dataset_mean.value_or(0.0) - b.dataset_mean.value_or(0.0));
  for (std::size_t i = 0; i < a.driver_scores.size(); ++i) {
    d = std::max(d, std::abs(a.driver_scores[i].rc_mean - b.driver_scores[i].rc_mean));
  }
  for (const auto & [id, v] : a.scenario_scores) {
    const auto it = b.scenario_scores.find(id);
    d = std::max(d, it == b.scenario_scores.end() ? 1.0 : std::abs(v - it->second));
  }
  return d;
}

Outcome aggregation_algebra()
{
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<std::size_t> size(0, 80);
  std::vector<aggregate::PartialAggregate> partials;
  std::vector<RcSample> all;
  for (int i = 0; i < 1000; ++i) {
    const auto samples = random_samples(rng, size(rng));
    all.insert(all.end(), samples.begin(), samples.end());
    partials.emplace_back(Rule::SafetyDistance);
    partials.back().add(samples);
  }
  double worst = 0.0;
  bool conserved = true;
  for (std::size_t i = 0; i + 2 < partials.size(); ++i) {
    const auto & a = partials[i];
    const auto & b = partials[i + 1];
    const auto & c = partials[i + 2];
    worst = std::max(worst, report_distance(merge(a, b).finalize(), merge(b, a).finalize()));
    worst = std::max(worst, report_distance(merge(merge(a, b), c).finalize(), merge(a, merge(b, c)).finalize()));
    const auto r = merge(a, b).finalize();
    std::int64_t total = 0;
    for (const auto n : r.histogram.counts) {
      total += n;
    }
    conserved = conserved && total == static_cast<std::int64_t>(r.driver_scores.size());
  }
  aggregate::PartialAggregate merged(Rule::SafetyDistance);
  for (const auto & p : partials) {
    merged.merge_from(p);
  }
  aggregate::PartialAggregate serial(Rule::SafetyDistance);
  serial.add(all);
  const auto fr = merged.finalize();
  worst = std::max(worst, report_distance(fr, serial.finalize()));
  worst = std::max(worst, report_distance(fr, synth::brute_force_aggregate(all)));
  return {worst <= 1e-12 && conserved, fmt("max deviation %.2e, counts conserved=%.0f", worst, conserved ? 1 : 0)};
}

Outcome determinism()
{
  TempDir dir("accept-det");
  synth::SynthSpec spec;
  spec.seed = 77;
  spec.n_scenarios = 40;
  spec.n_vehicles = 6;
  spec.planted_dist = synth::PlantedDistribution::uniform(0.0, 1.0);
  spec.planted_speed = synth::PlantedDistribution::mixture(0.5, 0.5, 1.0);
  write_corpus(dir.path() / "in", spec);
  std::vector<std::string> bytes;
  for (const int workers : {1, 8}) {
    const auto out = dir.path() / ("w" + std::to_string(workers));
    if (pipeline::run(run_config(dir.path() / "in", out, workers), {}) != pipeline::kExitOk) {
      return {false, "analyze failed"};
    }
    bytes.push_back(slurp(out / "report_dist.json") + slurp(out / "report_speed.json"));
  }
  return {bytes[0] == bytes[1] && !bytes[0].empty(), fmt("%.0f report bytes compared", static_cast<double>(bytes[0].size()))};
}

Outcome filters()
{
  const auto scored = [](double ego_speed, double lead_angle) {
    const std::vector<VehicleState> scene{
      vehicle("ego", {0, 0}, {ego_speed, 0}),
      vehicle("lead", {8, 0}, {5.0 * std::cos(lead_angle), 5.0 * std::sin(lead_angle)}, lead_angle)};
    return safety_distance::rc_dist_frame(scene[0], scene);
  };
  const double deg = std::numbers::pi / 180.0;
  std::vector<std::pair<std::string, bool>> checks;
  checks.emplace_back("4.9 km/h not scored", !scored(4.9 / 3.6, 0.0).has_value());
  checks.emplace_back("5.1 km/h scored", scored(5.1 / 3.6, 0.0).has_value());
  checks.emplace_back("35 deg lead is a violation", scored(10.0, 35 * deg)->rc < 1.0);
  checks.emplace_back("37 deg lead ignored", scored(10.0, 37 * deg)->rc == 1.0);
  checks.emplace_back("crossing lead ignored", scored(10.0, 90 * deg)->rc == 1.0);

  const auto assigned = [](double offset) {
    const std::vector<Lane> lanes{straight_lane("L", offset, 13.4)};
    return speed_limit::assign_lane(vehicle("v", {0, 0}, {15, 0}), lanes) != nullptr;
  };
  checks.emplace_back("lane at 10 m accepted", assigned(10.0));
  checks.emplace_back("lane at 10.01 m rejected", !assigned(10.01));

  bool ok = true;
  std::string failed;
  for (const auto & [name, pass] : checks) {
    ok = ok && pass;
    if (!pass) {
      failed += name + "; ";
    }
  }
  return {ok, ok ? "5 km/h, 36 deg, 10 m gates hold" : "failed: " + failed};
}
}  // namespace

int main()
{
  const std::vector<Criterion> criteria{
    {"worked-example-rc-dist", 1.0, worked_example},
    {"speed-spot-values", 0.0, speed_spot_values},
    {"geometry-oracle-1000", 30.0, geometry_oracle},
    {"planted-round-trip", 60.0, planted_round_trip},
    {"strict-share-recovery", 0.0, strict_share},
    {"aggregation-algebra", 0.0, aggregation_algebra},
    {"determinism-workers-1-vs-8", 0.0, determinism},
    {"preprocessing-filters", 0.0, filters},
  };
  int failures = 0;
  for (const auto & c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.check();
    } catch (const std::exception & e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = c.budget_s <= 0.0 || secs < c.budget_s;
    const bool pass = out.pass && in_budget;
    failures += pass ? 0 : 1;
    std::printf(
      "%s %-28s %8.3fs%s  %s\n", pass ? "PASS" : "FAIL", c.name.c_str(), secs,
      in_budget ? "" : " (over budget)", out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
