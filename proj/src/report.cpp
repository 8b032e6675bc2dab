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

#include "rulegauge/report.hpp"

#include "rulegauge/errors.hpp"
#include "rulegauge/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace rulegauge::report
{

using nlohmann::json;

std::string format_double(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace
{
std::string fixed(double v, int digits)
{
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

class ScenarioWriter
{
public:
  std::string write(const Scenario & s)
  {
    out_ << "{\"frames\":[";
    for (std::size_t f = 0; f < s.frames.size(); ++f) {
      out_ << (f ? ",\n" : "\n");
      frame(s.frames[f], "/frames/" + std::to_string(f));
    }
    out_ << "],\"lanes\":[";
    for (std::size_t l = 0; l < s.lanes.size(); ++l) {
      out_ << (l ? ",\n" : "\n");
      lane(s.lanes[l], "/lanes/" + std::to_string(l));
    }
    out_ << "],\"sample_rate_hz\":" << number(s.sample_rate_hz, "/sample_rate_hz")
         << ",\"scenario_id\":" << str(s.scenario_id) << ",\"schema_version\":"
         << ingest::kSchemaVersion << "}\n";
    return out_.str();
  }

private:
  static std::string number(double v, const std::string & path)
  {
    if (!std::isfinite(v)) {
      throw SchemaViolation(path, "refusing to serialize non-finite number");
    }
    return format_double(v);
  }

  static std::string str(const std::string & s) { return json(s).dump(); }

  void frame(const Frame & f, const std::string & path)
  {
    out_ << "{\"frame_index\":" << f.frame_index
         << ",\"time_s\":" << number(f.time_s, path + "/time_s") << ",\"vehicles\":[";
    for (std::size_t i = 0; i < f.vehicles.size(); ++i) {
      const auto & v = f.vehicles[i];
      const auto vp = path + "/vehicles/" + std::to_string(i);
      out_ << (i ? "," : "") << "{\"heading_rad\":" << number(v.heading, vp + "/heading_rad")
           << ",\"id\":" << str(v.vehicle_id)
           << ",\"length_m\":" << number(v.length, vp + "/length_m")
           << ",\"valid\":" << (v.valid ? "true" : "false")
           << ",\"vx\":" << number(v.velocity.x, vp + "/vx")
           << ",\"vy\":" << number(v.velocity.y, vp + "/vy")
           << ",\"width_m\":" << number(v.width, vp + "/width_m")
           << ",\"x\":" << number(v.center.x, vp + "/x")
           << ",\"y\":" << number(v.center.y, vp + "/y") << "}";
    }
    out_ << "]}";
  }

  void lane(const Lane & l, const std::string & path)
  {
    out_ << "{\"lane_id\":" << str(l.lane_id) << ",\"polyline\":[";
    for (std::size_t i = 0; i < l.polyline.size(); ++i) {
      const auto pp = path + "/polyline/" + std::to_string(i);
      out_ << (i ? "," : "") << "[" << number(l.polyline[i].x, pp) << ","
           << number(l.polyline[i].y, pp) << "]";
    }
    out_ << "],\"speed_limit_mps\":";
    if (l.speed_limit_mps) {
      out_ << number(*l.speed_limit_mps, path + "/speed_limit_mps");
    } else {
      out_ << "null";
    }
    out_ << "}";
  }

  std::ostringstream out_;
};

std::string csv_field(const std::string & s)
{
  if (s.find_first_of(",\"\r\n") == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') {
      out += '"';
    }
    out += c;
  }
  return out + "\"";
}

std::string rule_title(Rule rule)
{
  return rule == Rule::SafetyDistance ? "Safety distance" : "Speed limit";
}

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

std::string svg_open(const std::string & title)
{
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\" font-family=\"sans-serif\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << title
     << "</text>\n";
  return os.str();
}

std::string axes(const std::string & x_label, const std::string & y_label)
{
  const double x0 = kLeft;
  const double y0 = kHeight - kBottom;
  std::ostringstream os;
  os << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << kWidth - kRight << "\" y2=\"" << y0
     << "\" stroke=\"black\"/>\n"
     << "<line x1=\"" << x0 << "\" y1=\"" << kTop << "\" x2=\"" << x0 << "\" y2=\"" << y0
     << "\" stroke=\"black\"/>\n"
     << "<text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\"" << kHeight - 10
     << "\" text-anchor=\"middle\" font-size=\"12\">" << x_label << "</text>\n"
     << "<text x=\"16\" y=\"" << (kTop + y0) / 2 << "\" text-anchor=\"middle\" font-size=\"12\" "
     << "transform=\"rotate(-90 16 " << (kTop + y0) / 2 << ")\">" << y_label << "</text>\n";
  return os.str();
}
}  // namespace

std::string write_scenario(const Scenario & scenario) { return ScenarioWriter{}.write(scenario); }

json report_json(const AggregateReport & report, const json & parameters)
{
  json doc;
  doc["rule"] = std::string(rule_name(report.rule));
  doc["dataset_mean"] = report.dataset_mean ? json(*report.dataset_mean) : json(nullptr);
  doc["sample_count"] = report.sample_count;
  doc["scenarios_processed"] = report.scenarios_processed;
  doc["scenario_count"] = report.scenario_scores.size();
  doc["driver_score_count"] = report.driver_scores.size();

  json scenarios = json::object();
  for (const auto & [id, rc] : report.scenario_scores) {
    scenarios[id] = rc;
  }
  doc["scenario_scores"] = std::move(scenarios);

  json drivers = json::array();
  for (const auto & d : report.driver_scores) {
    drivers.push_back(
      {{"scenario_id", d.scenario_id},
       {"vehicle_id", d.vehicle_id},
       {"rc_mean", d.rc_mean},
       {"frame_count", d.frame_count}});
  }
  doc["driver_scores"] = std::move(drivers);

  doc["histogram"] = {
    {"bin_count", report.histogram.bin_count},
    {"bin_edges", report.histogram.bin_edges},
    {"counts", report.histogram.counts}};

  if (report.relative_bins) {
    doc["relative_bins"] = {
      {"quarters", report.relative_bins->quarters},
      {"strict_share", report.relative_bins->strict_share}};
  } else {
    doc["relative_bins"] = nullptr;
  }
  doc["parameters"] = parameters.is_null() ? json::object() : parameters;
  return doc;
}

std::string driver_scores_csv(const AggregateReport & report)
{
  std::ostringstream os;
  os << "rule,scenario_id,vehicle_id,rc_mean,frame_count\n";
  for (const auto & d : report.driver_scores) {
    os << rule_name(d.rule) << ',' << csv_field(d.scenario_id) << ',' << csv_field(d.vehicle_id)
       << ',' << format_double(d.rc_mean) << ',' << d.frame_count << '\n';
  }
  return os.str();
}

std::string histogram_svg(const AggregateReport & report)
{
  const auto & h = report.histogram;
  const std::int64_t max_count =
    h.counts.empty() ? 0 : *std::max_element(h.counts.begin(), h.counts.end());
  // Axis spans [0.5, 10^decades] so a single count still draws a visible bar.
  const int decades = std::max(1, static_cast<int>(std::ceil(std::log10(std::max<std::int64_t>(max_count, 1)))));
  const double log_lo = std::log10(0.5);
  const double log_hi = static_cast<double>(decades);
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const double y0 = kHeight - kBottom;
  const auto y_of = [&](double count) {
    return y0 - (std::log10(count) - log_lo) / (log_hi - log_lo) * plot_h;
  };

  std::ostringstream os;
  os << svg_open(
    rule_title(report.rule) + " conformity per driver and scenario (n=" +
    std::to_string(report.driver_scores.size()) + ")");
  for (int d = 0; d <= decades; ++d) {
    const double y = y_of(std::pow(10.0, d));
    os << "<line x1=\"" << kLeft - 4 << "\" y1=\"" << fixed(y, 2) << "\" x2=\"" << kWidth - kRight
       << "\" y2=\"" << fixed(y, 2) << "\" stroke=\"#dddddd\"/>\n"
       << "<text x=\"" << kLeft - 8 << "\" y=\"" << fixed(y + 4, 2)
       << "\" text-anchor=\"end\" font-size=\"11\">1e" << d << "</text>\n";
  }
  const double bar_w = plot_w / static_cast<double>(h.bin_count);
  for (std::size_t i = 0; i < h.bin_count; ++i) {
    if (h.counts[i] == 0) {
      continue;
    }
    const double top = y_of(static_cast<double>(h.counts[i]));
    os << "<rect x=\"" << fixed(kLeft + bar_w * static_cast<double>(i) + 1, 2) << "\" y=\""
       << fixed(top, 2) << "\" width=\"" << fixed(bar_w - 2, 2) << "\" height=\""
       << fixed(y0 - top, 2) << "\" fill=\"#7b3fa0\"><title>[" << fixed(h.bin_edges[i], 3) << ", "
       << fixed(h.bin_edges[i + 1], 3) << (i + 1 == h.bin_count ? "]" : ")") << ": " << h.counts[i]
       << "</title></rect>\n";
  }
  for (std::size_t i = 0; i <= h.bin_count; i += std::max<std::size_t>(1, h.bin_count / 10)) {
    const double x = kLeft + bar_w * static_cast<double>(i);
    os << "<text x=\"" << fixed(x, 2) << "\" y=\"" << y0 + 16
       << "\" text-anchor=\"middle\" font-size=\"11\">" << fixed(h.bin_edges[i], 2) << "</text>\n";
  }
  os << axes("rule conformity", "count (log scale)") << "</svg>\n";
  return os.str();
}

std::string relative_svg(const AggregateReport & report)
{
  const std::array<std::string, 5> labels{
    "[0, 0.25)", "[0.25, 0.5)", "[0.5, 0.75)", "[0.75, 1.0]", "= 1.0"};
  std::array<double, 5> shares{};
  if (report.relative_bins) {
    for (std::size_t q = 0; q < 4; ++q) {
      shares[q] = report.relative_bins->quarters[q];
    }
    shares[4] = report.relative_bins->strict_share;
  }
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const double y0 = kHeight - kBottom;
  const double slot = plot_w / static_cast<double>(labels.size());

  std::ostringstream os;
  os << svg_open(rule_title(report.rule) + " conformity, relative shares");
  for (int pct = 0; pct <= 100; pct += 25) {
    const double y = y0 - plot_h * pct / 100.0;
    os << "<line x1=\"" << kLeft - 4 << "\" y1=\"" << fixed(y, 2) << "\" x2=\"" << kWidth - kRight
       << "\" y2=\"" << fixed(y, 2) << "\" stroke=\"#dddddd\"/>\n"
       << "<text x=\"" << kLeft - 8 << "\" y=\"" << fixed(y + 4, 2)
       << "\" text-anchor=\"end\" font-size=\"11\">" << pct << "%</text>\n";
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double h = plot_h * shares[i];
    const double x = kLeft + slot * static_cast<double>(i);
    const char * fill = i == 4 ? "#e0457b" : "#f39c34";
    os << "<rect x=\"" << fixed(x + slot * 0.15, 2) << "\" y=\"" << fixed(y0 - h, 2)
       << "\" width=\"" << fixed(slot * 0.7, 2) << "\" height=\"" << fixed(h, 2) << "\" fill=\""
       << fill << "\"/>\n"
       << "<text x=\"" << fixed(x + slot / 2, 2) << "\" y=\"" << fixed(y0 - h - 5, 2)
       << "\" text-anchor=\"middle\" font-size=\"11\">" << fixed(100.0 * shares[i], 1) << "%</text>\n"
       << "<text x=\"" << fixed(x + slot / 2, 2) << "\" y=\"" << y0 + 16
       << "\" text-anchor=\"middle\" font-size=\"11\">" << labels[i] << "</text>\n";
  }
  os << axes("rule conformity interval", "share of driver-scenario scores") << "</svg>\n";
  return os.str();
}

}  // namespace rulegauge::report
