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

#include "rulegauge/aggregate.hpp"

#include "rulegauge/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rulegauge::aggregate
{

namespace
{
void require_rule(Rule expected, Rule got)
{
  if (expected != got) {
    throw MixedRules(
      "expected rule '" + std::string(rule_name(expected)) + "', got '" +
      std::string(rule_name(got)) + "'");
  }
}
}  // namespace

std::vector<DriverScenarioScore> driver_scenario_means(std::span<const RcSample> samples)
{
  if (samples.empty()) {
    return {};
  }
  PartialAggregate partial(samples.front().rule());
  partial.add(samples);
  std::vector<DriverScenarioScore> out;
  out.reserve(partial.drivers().size());
  for (const auto & [key, acc] : partial.drivers()) {
    out.push_back(
      {partial.rule(), key.first, key.second, acc.sum / static_cast<double>(acc.count), acc.count});
  }
  return out;
}

double scenario_mean(std::span<const DriverScenarioScore> scores)
{
  if (scores.empty()) {
    throw EmptyScenario("scenario has no scored drivers");
  }
  double sum = 0.0;
  for (const auto & s : scores) {
    sum += s.rc_mean;
  }
  return sum / static_cast<double>(scores.size());
}

double dataset_mean(std::span<const double> scenario_means)
{
  if (scenario_means.empty()) {
    throw EmptyDataset("no scenario scores");
  }
  double sum = 0.0;
  for (const double m : scenario_means) {
    sum += m;
  }
  return sum / static_cast<double>(scenario_means.size());
}

std::size_t bin_index(double value, std::span<const double> edges)
{
  const std::size_t bins = edges.size() - 1;
  const double scaled = std::floor(value * static_cast<double>(bins));
  auto idx = static_cast<std::size_t>(std::clamp(scaled, 0.0, static_cast<double>(bins - 1)));
  // Correct the rare off-by-one from rounding in value * bins against the stored edges.
  if (idx > 0 && value < edges[idx]) {
    --idx;
  } else if (idx + 1 < bins && value >= edges[idx + 1]) {
    ++idx;
  }
  return idx;
}

Histogram build_histogram(std::span<const DriverScenarioScore> scores, std::size_t bin_count)
{
  if (bin_count == 0) {
    throw std::invalid_argument("bin_count must be >= 1");
  }
  Histogram h;
  h.bin_count = bin_count;
  h.bin_edges.resize(bin_count + 1);
  for (std::size_t i = 0; i <= bin_count; ++i) {
    h.bin_edges[i] = static_cast<double>(i) / static_cast<double>(bin_count);
  }
  h.counts.assign(bin_count, 0);
  for (const auto & s : scores) {
    ++h.counts[bin_index(s.rc_mean, h.bin_edges)];
  }
  return h;
}

RelativeBins build_relative_bins(std::span<const DriverScenarioScore> scores)
{
  if (scores.empty()) {
    throw EmptyInput("no driver scores");
  }
  std::array<std::int64_t, 4> counts{};
  std::int64_t strict = 0;
  for (const auto & s : scores) {
    const double v = s.rc_mean;
    const std::size_t q = v < 0.25 ? 0 : v < 0.5 ? 1 : v < 0.75 ? 2 : 3;
    ++counts[q];
    if (v == 1.0) {
      ++strict;
    }
  }
  const auto n = static_cast<double>(scores.size());
  RelativeBins out;
  for (std::size_t q = 0; q < 4; ++q) {
    out.quarters[q] = static_cast<double>(counts[q]) / n;
  }
  out.strict_share = static_cast<double>(strict) / n;
  return out;
}

void PartialAggregate::add(const RcSample & sample)
{
  require_rule(rule_, sample.rule());
  auto & acc = drivers_[{sample.scenario_id(), sample.vehicle_id()}];
  acc.sum += sample.rc();
  ++acc.count;
  ++sample_count_;
  scenarios_.insert(sample.scenario_id());
}

void PartialAggregate::add(std::span<const RcSample> samples)
{
  for (const auto & s : samples) {
    add(s);
  }
}

void PartialAggregate::note_scenario(const std::string & scenario_id)
{
  scenarios_.insert(scenario_id);
}

void PartialAggregate::merge_from(const PartialAggregate & other)
{
  require_rule(rule_, other.rule_);
  for (const auto & [key, acc] : other.drivers_) {
    auto & mine = drivers_[key];
    mine.sum += acc.sum;
    mine.count += acc.count;
  }
  scenarios_.insert(other.scenarios_.begin(), other.scenarios_.end());
  sample_count_ += other.sample_count_;
}

AggregateReport PartialAggregate::finalize(std::size_t bin_count) const
{
  AggregateReport report;
  report.rule = rule_;
  report.sample_count = sample_count_;
  report.scenarios_processed = static_cast<std::int64_t>(scenarios_.size());

  report.driver_scores.reserve(drivers_.size());
  for (const auto & [key, acc] : drivers_) {
    report.driver_scores.push_back(
      {rule_, key.first, key.second, acc.sum / static_cast<double>(acc.count), acc.count});
  }

  // driver_scores is grouped by scenario_id (map order).
  std::vector<double> means;
  auto begin = report.driver_scores.begin();
  while (begin != report.driver_scores.end()) {
    auto end = std::find_if(begin, report.driver_scores.end(), [&](const auto & s) {
      return s.scenario_id != begin->scenario_id;
    });
    const double m = scenario_mean(std::span<const DriverScenarioScore>(&*begin, end - begin));
    report.scenario_scores.emplace(begin->scenario_id, m);
    means.push_back(m);
    begin = end;
  }

  report.histogram = build_histogram(report.driver_scores, bin_count);
  if (!means.empty()) {
    report.dataset_mean = dataset_mean(means);
    report.relative_bins = build_relative_bins(report.driver_scores);
  }
  return report;
}

bool operator==(const PartialAggregate & a, const PartialAggregate & b)
{
  if (a.rule_ != b.rule_ || a.sample_count_ != b.sample_count_ || a.scenarios_ != b.scenarios_ ||
      a.drivers_.size() != b.drivers_.size()) {
    return false;
  }
  return std::equal(
    a.drivers_.begin(), a.drivers_.end(), b.drivers_.begin(), [](const auto & x, const auto & y) {
      return x.first == y.first && x.second.sum == y.second.sum && x.second.count == y.second.count;
    });
}

PartialAggregate merge(const PartialAggregate & a, const PartialAggregate & b)
{
  PartialAggregate out = a;
  out.merge_from(b);
  return out;
}

}  // namespace rulegauge::aggregate
