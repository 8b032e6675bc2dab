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
#include "rulegauge/report.hpp"
#include "rulegauge/speed_limit.hpp"
#include "rulegauge/synth.hpp"

#include <benchmark/benchmark.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

namespace fs = std::filesystem;
using namespace rulegauge;

namespace
{
/// Synthetic corpus written once per process and removed at exit.
class Corpus
{
public:
  Corpus()
  {
    dir_ = fs::temp_directory_path() / ("rulegauge-bench-" + std::to_string(std::random_device{}()));
    synth::SynthSpec spec;
    spec.seed = 17;
    spec.n_scenarios = 64;
    spec.n_vehicles = 8;
    spec.planted_dist = synth::PlantedDistribution::uniform(0.2, 1.0);
    spec.planted_speed = synth::PlantedDistribution::mixture(0.6, 0.7, 1.0);
    fs::create_directories(dir_ / "in");
    for (const auto & s : synth::generate(spec).scenarios) {
      std::ofstream(dir_ / "in" / (s.scenario_id + ".rgsf.json"), std::ios::binary) << report::write_scenario(s);
    }
  }
  ~Corpus()
  {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }
  Corpus(const Corpus &) = delete;
  Corpus & operator=(const Corpus &) = delete;

  [[nodiscard]] pipeline::RunConfig config(int workers) const
  {
    pipeline::RunConfig cfg;
    cfg.ingest.input_paths = {dir_ / "in"};
    cfg.output_dir = dir_ / "out";
    cfg.workers = workers;
    return cfg;
  }

private:
  fs::path dir_;
};

const Corpus & corpus()
{
  static const Corpus c;
  return c;
}

void BM_AnalyzeSerial(benchmark::State & state)
{
  const auto cfg = corpus().config(1);
  for (auto _ : state) {
    auto result = pipeline::analyze_serial(cfg);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_AnalyzeSerial)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_AnalyzeParallel(benchmark::State & state)
{
  const auto cfg = corpus().config(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto result = pipeline::analyze_parallel(cfg);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_AnalyzeParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

std::vector<Lane> grid_lanes(std::size_t count)
{
  std::vector<Lane> lanes;
  for (std::size_t i = 0; i < count; ++i) {
    Lane lane;
    lane.lane_id = "lane-" + std::to_string(i);
    lane.speed_limit_mps = 13.4112;
    const double y = 4.0 * static_cast<double>(i);
    for (int k = 0; k <= 250; ++k) {
      lane.polyline.push_back({2.0 * k, y});
    }
    lanes.push_back(std::move(lane));
  }
  return lanes;
}

std::vector<VehicleState> random_vehicles(std::size_t count, double y_max)
{
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> x(0.0, 500.0);
  std::uniform_real_distribution<double> y(-5.0, y_max + 5.0);
  std::vector<VehicleState> out(count);
  for (auto & v : out) {
    v.center = {x(rng), y(rng)};
    v.velocity = {15.0, 0.0};
    v.length = 4.5;
    v.width = 1.9;
  }
  return out;
}

void BM_AssignLaneBruteForce(benchmark::State & state)
{
  const auto lanes = grid_lanes(static_cast<std::size_t>(state.range(0)));
  const auto vehicles = random_vehicles(256, 4.0 * static_cast<double>(lanes.size()));
  for (auto _ : state) {
    for (const auto & v : vehicles) {
      benchmark::DoNotOptimize(speed_limit::assign_lane(v, lanes));
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(vehicles.size()));
}
BENCHMARK(BM_AssignLaneBruteForce)->Arg(8)->Arg(64);

void BM_AssignLaneIndexed(benchmark::State & state)
{
  const auto lanes = grid_lanes(static_cast<std::size_t>(state.range(0)));
  const auto vehicles = random_vehicles(256, 4.0 * static_cast<double>(lanes.size()));
  const speed_limit::LaneIndex index(lanes, {});
  for (auto _ : state) {
    for (const auto & v : vehicles) {
      benchmark::DoNotOptimize(index.assign(v));
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(vehicles.size()));
}
BENCHMARK(BM_AssignLaneIndexed)->Arg(8)->Arg(64);
}  // namespace

BENCHMARK_MAIN();
