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

#include "rulegauge/synth.hpp"

#include "rulegauge/errors.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <utility>

namespace rulegauge::synth
{

namespace
{
std::vector<double> parse_numbers(std::string_view text)
{
  std::vector<double> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto part = text.substr(0, comma);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc{} || ptr != part.data() + part.size()) {
      throw InfeasibleSpec("bad number '" + std::string(part) + "'");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) {
      break;
    }
    text.remove_prefix(comma + 1);
  }
  return out;
}
}  // namespace

PlantedDistribution PlantedDistribution::parse(std::string_view text)
{
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw InfeasibleSpec("distribution must look like kind:params, got '" + std::string(text) + "'");
  }
  const auto kind = text.substr(0, colon);
  const auto args = parse_numbers(text.substr(colon + 1));
  if (kind == "const" && args.size() == 1) {
    return constant(args[0]);
  }
  if (kind == "uniform" && args.size() == 2) {
    return uniform(args[0], args[1]);
  }
  if (kind == "mixture" && args.size() == 3) {
    return mixture(args[0], args[1], args[2]);
  }
  throw InfeasibleSpec("unknown distribution '" + std::string(text) + "'");
}

void PlantedDistribution::check(bool allow_zero) const
{
  const auto in_range = [&](double v) {
    return std::isfinite(v) && v <= 1.0 && (allow_zero ? v >= 0.0 : v > 0.0);
  };
  if (!in_range(a) || !in_range(b) || a > b) {
    throw InfeasibleSpec("planted distribution must satisfy lo <= hi within the unit interval");
  }
  if (kind == Kind::Mixture && !(p >= 0.0 && p <= 1.0)) {
    throw InfeasibleSpec("mixture strict mass must lie in [0, 1]");
  }
}

double PlantedDistribution::sample(std::mt19937_64 & rng) const
{
  std::uniform_real_distribution<double> uni(a, b);
  switch (kind) {
    case Kind::Constant:
      return a;
    case Kind::Uniform:
      return a == b ? a : uni(rng);
    case Kind::Mixture: {
      std::bernoulli_distribution strict(p);
      const bool is_strict = strict(rng);
      const double v = a == b ? a : uni(rng);
      return is_strict ? 1.0 : v;
    }
  }
  return a;
}

void SynthSpec::check() const
{
  if (n_vehicles == 0) {
    throw InfeasibleSpec("n_vehicles must be >= 1");
  }
  if (!(duration_s > 0.0) || !(sample_rate_hz > 0.0) || !(horizon_s > 0.0)) {
    throw InfeasibleSpec("duration, sample rate and horizon must be > 0");
  }
  if (!(corridor_spacing_m > 0.0)) {
    throw InfeasibleSpec("corridor spacing must be > 0");
  }
  if (lane_limits_mps.empty() ||
      std::any_of(lane_limits_mps.begin(), lane_limits_mps.end(), [](double l) { return !(l > 0.0); })) {
    throw InfeasibleSpec("lane limits must be positive");
  }
  planted_dist.check(true);
  planted_speed.check(false);
}

namespace
{
constexpr double kPaceLength = 4.5;
constexpr double kVertexSpacing = 2.0;

/// Maps corridor-frame vectors (along, left) onto one of the four axis directions exactly.
struct AxisPose
{
  int dir{0};
  Vec2 offset;

  [[nodiscard]] Vec2 rotate(const Vec2 & v) const
  {
    switch (dir) {
      case 1:
        return {-v.x, -v.y};
      case 2:
        return {-v.y, v.x};
      case 3:
        return {v.y, -v.x};
      default:
        return v;
    }
  }
  [[nodiscard]] Vec2 place(const Vec2 & p) const { return offset + rotate(p); }
  [[nodiscard]] double heading() const
  {
    constexpr std::array<double, 4> headings{
      0.0, std::numbers::pi, 0.5 * std::numbers::pi, -0.5 * std::numbers::pi};
    return headings[static_cast<std::size_t>(dir)];
  }
};

struct DriverPlan
{
  double rc_dist;
  double rc_speed;
  double limit;
  double speed;
  double start;
  double length;
  double width;
};

std::string indexed(const char * prefix, std::size_t i)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%03zu", prefix, i);
  return buf;
}

/// Corpus-wide strict flags for a mixture: exactly round(p * total) drivers, placed by a seeded
/// shuffle. Empty for the other kinds.
std::vector<bool> strict_flags(const PlantedDistribution & dist, const SynthSpec & spec, std::uint32_t stream)
{
  if (dist.kind != PlantedDistribution::Kind::Mixture) {
    return {};
  }
  const std::size_t total = spec.n_scenarios * spec.n_vehicles;
  const auto strict = static_cast<std::size_t>(std::llround(dist.p * static_cast<double>(total)));
  std::vector<bool> flags(total, false);
  std::fill_n(flags.begin(), std::min(strict, total), true);
  std::seed_seq seq{
    static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32), stream};
  std::mt19937_64 rng(seq);
  std::shuffle(flags.begin(), flags.end(), rng);
  return flags;
}

double planted_value(
  const PlantedDistribution & dist, const std::vector<bool> & flags, std::size_t driver, std::mt19937_64 & rng)
{
  if (flags.empty()) {
    return dist.sample(rng);
  }
  if (flags[driver]) {
    return 1.0;
  }
  std::uniform_real_distribution<double> uni(dist.a, dist.b);
  return dist.a == dist.b ? dist.a : uni(rng);
}

struct StrictPlan
{
  std::vector<bool> dist;
  std::vector<bool> speed;
};

Scenario generate_one(
  const SynthSpec & spec, std::size_t idx, const StrictPlan & strict, std::vector<PlantedDriver> & planted)
{
  std::seed_seq seq{
    static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
    static_cast<std::uint32_t>(idx), static_cast<std::uint32_t>(idx >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<int> pick_dir(0, 3);
  std::uniform_real_distribution<double> offset(-5000.0, 5000.0);
  std::uniform_int_distribution<std::size_t> pick_limit(0, spec.lane_limits_mps.size() - 1);
  std::uniform_real_distribution<double> start(0.0, 20.0);
  std::uniform_real_distribution<double> length(4.0, 5.2);
  std::uniform_real_distribution<double> width(1.7, 2.1);

  char id[64];
  std::snprintf(id, sizeof(id), "synth-%llu-%05zu", static_cast<unsigned long long>(spec.seed), idx);

  Scenario s;
  s.scenario_id = id;
  s.sample_rate_hz = spec.sample_rate_hz;

  AxisPose pose;
  pose.dir = pick_dir(rng);
  pose.offset = {offset(rng), offset(rng)};

  const auto frame_count = std::max<std::size_t>(
    1, static_cast<std::size_t>(std::llround(spec.duration_s * spec.sample_rate_hz)));
  const double t_end = static_cast<double>(frame_count - 1) / spec.sample_rate_hz;

  std::vector<DriverPlan> plans;
  double reach = 0.0;
  for (std::size_t j = 0; j < spec.n_vehicles; ++j) {
    DriverPlan d{};
    const std::size_t global = idx * spec.n_vehicles + j;
    d.rc_dist = planted_value(spec.planted_dist, strict.dist, global, rng);
    d.rc_speed = planted_value(spec.planted_speed, strict.speed, global, rng);
    d.limit = spec.lane_limits_mps[pick_limit(rng)];
    d.speed = d.limit / d.rc_speed;
    d.start = start(rng);
    d.length = length(rng);
    d.width = width(rng);
    reach = std::max(reach, d.start + d.speed * (t_end + spec.horizon_s) + 0.5 * d.length + kPaceLength + 20.0);
    plans.push_back(d);
    planted.push_back({s.scenario_id, indexed("d", j), d.rc_dist, d.rc_speed});
  }

  const auto vertices = static_cast<std::size_t>(std::ceil((reach + 50.0) / kVertexSpacing)) + 1;
  for (std::size_t j = 0; j < spec.n_vehicles; ++j) {
    Lane lane;
    lane.lane_id = indexed("lane-", j);
    lane.speed_limit_mps = plans[j].limit;
    const double lateral = static_cast<double>(j) * spec.corridor_spacing_m;
    lane.polyline.reserve(vertices);
    for (std::size_t k = 0; k < vertices; ++k) {
      lane.polyline.push_back(pose.place({-50.0 + kVertexSpacing * static_cast<double>(k), lateral}));
    }
    s.lanes.push_back(std::move(lane));
  }

  for (std::size_t f = 0; f < frame_count; ++f) {
    Frame frame;
    frame.frame_index = static_cast<std::int64_t>(f);
    frame.time_s = static_cast<double>(f) / spec.sample_rate_hz;
    for (std::size_t j = 0; j < spec.n_vehicles; ++j) {
      const auto & d = plans[j];
      const double lateral = static_cast<double>(j) * spec.corridor_spacing_m;
      const double along = d.start + d.speed * frame.time_s;
      const double front = along + 0.5 * d.length;
      const double gap = d.rc_dist >= 1.0 ? spec.horizon_s * d.speed + 10.0
                                          : d.rc_dist * spec.horizon_s * d.speed;

      VehicleState driver;
      driver.vehicle_id = indexed("d", j);
      driver.center = pose.place({along, lateral});
      driver.heading = pose.heading();
      driver.velocity = pose.rotate({d.speed, 0.0});
      driver.length = d.length;
      driver.width = d.width;
      frame.vehicles.push_back(std::move(driver));

      VehicleState pace;
      pace.vehicle_id = indexed("p", j);
      pace.center = pose.place({front + gap + 0.5 * kPaceLength, lateral});
      pace.heading = pose.heading();
      pace.velocity = {0.0, 0.0};
      pace.length = kPaceLength;
      pace.width = d.width + 0.4;
      frame.vehicles.push_back(std::move(pace));
    }
    s.frames.push_back(std::move(frame));
  }
  return s;
}
}  // namespace

SynthCorpus generate(const SynthSpec & spec)
{
  spec.check();
  const auto n = static_cast<std::int64_t>(spec.n_scenarios);
  std::vector<Scenario> scenarios(spec.n_scenarios);
  std::vector<std::vector<PlantedDriver>> planted(spec.n_scenarios);
  const StrictPlan strict{strict_flags(spec.planted_dist, spec, 1), strict_flags(spec.planted_speed, spec, 2)};

#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    scenarios[idx] = generate_one(spec, idx, strict, planted[idx]);
  }

  SynthCorpus corpus;
  corpus.scenarios = std::move(scenarios);
  for (auto & p : planted) {
    corpus.planted.insert(corpus.planted.end(), p.begin(), p.end());
  }
  return corpus;
}

std::optional<double> brute_force_entry_distance(
  const geometry::Segment & seg, const geometry::OrientedBox & box, std::size_t samples)
{
  if (samples < 2) {
    samples = 2;
  }
  const Vec2 u{std::cos(box.heading), std::sin(box.heading)};
  const Vec2 w{-u.y, u.x};
  const Vec2 a = box.center + box.half_length * u + box.half_width * w;
  const Vec2 b = box.center - box.half_length * u + box.half_width * w;
  const Vec2 c = box.center - box.half_length * u - box.half_width * w;
  const Vec2 d = box.center + box.half_length * u - box.half_width * w;
  const std::array<Vec2, 4> ring{a, b, c, d};  // counter-clockwise
  const double scale = std::max({1.0, box.half_length, box.half_width});

  const auto inside = [&](const Vec2 & p) {
    for (std::size_t i = 0; i < 4; ++i) {
      const Vec2 & from = ring[i];
      const Vec2 & to = ring[(i + 1) % 4];
      const Vec2 edge = to - from;
      if (cross(edge, p - from) < -1e-12 * scale * edge.norm()) {
        return false;
      }
    }
    return true;
  };

  const Vec2 delta = seg.tip - seg.origin;
  const double len = delta.norm();
  for (std::size_t i = 0; i <= samples; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(samples);
    if (inside(seg.origin + t * delta)) {
      return t * len;
    }
  }
  return std::nullopt;
}

AggregateReport brute_force_aggregate(std::span<const RcSample> samples, std::size_t bin_count)
{
  AggregateReport out;
  if (!samples.empty()) {
    out.rule = samples.front().rule();
  }
  std::map<std::string, std::map<std::string, std::vector<double>>> tree;
  for (const auto & s : samples) {
    if (s.rule() != out.rule) {
      throw MixedRules("samples mix rules");
    }
    tree[s.scenario_id()][s.vehicle_id()].push_back(s.rc());
  }
  out.sample_count = static_cast<std::int64_t>(samples.size());
  out.scenarios_processed = static_cast<std::int64_t>(tree.size());

  double total = 0.0;
  for (const auto & [scenario_id, drivers] : tree) {
    double scenario_sum = 0.0;
    for (const auto & [vehicle_id, values] : drivers) {
      double sum = 0.0;
      for (const double v : values) {
        sum += v;
      }
      const double mean = sum / static_cast<double>(values.size());
      out.driver_scores.push_back(
        {out.rule, scenario_id, vehicle_id, mean, static_cast<std::int64_t>(values.size())});
      scenario_sum += mean;
    }
    const double scenario_mean = scenario_sum / static_cast<double>(drivers.size());
    out.scenario_scores[scenario_id] = scenario_mean;
    total += scenario_mean;
  }

  out.histogram.bin_count = bin_count;
  for (std::size_t i = 0; i <= bin_count; ++i) {
    out.histogram.bin_edges.push_back(static_cast<double>(i) / static_cast<double>(bin_count));
  }
  out.histogram.counts.assign(bin_count, 0);
  for (const auto & d : out.driver_scores) {
    // Highest bin whose lower edge does not exceed the value.
    std::size_t bin = 0;
    for (std::size_t i = 0; i < bin_count; ++i) {
      if (d.rc_mean >= out.histogram.bin_edges[i]) {
        bin = i;
      }
    }
    ++out.histogram.counts[bin];
  }

  if (!tree.empty()) {
    out.dataset_mean = total / static_cast<double>(tree.size());
    RelativeBins rel;
    const auto n = static_cast<double>(out.driver_scores.size());
    for (const auto & d : out.driver_scores) {
      const std::size_t q = d.rc_mean >= 0.75 ? 3 : d.rc_mean >= 0.5 ? 2 : d.rc_mean >= 0.25 ? 1 : 0;
      rel.quarters[q] += 1.0 / n;
      if (d.rc_mean == 1.0) {
        rel.strict_share += 1.0 / n;
      }
    }
    out.relative_bins = rel;
  }
  return out;
}

}  // namespace rulegauge::synth
