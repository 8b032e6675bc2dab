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

#include "rulegauge/ingest.hpp"

#include "rulegauge/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

namespace rulegauge::ingest
{

namespace fs = std::filesystem;
using nlohmann::json;

namespace
{
const json & field(const json & obj, const char * key, const std::string & path)
{
  const auto it = obj.find(key);
  if (it == obj.end()) {
    throw SchemaViolation(path + "/" + key, "missing required field");
  }
  return *it;
}

double number_at(const json & obj, const char * key, const std::string & path)
{
  const auto & v = field(obj, key, path);
  if (!v.is_number()) {
    throw SchemaViolation(path + "/" + key, "expected number");
  }
  const double d = v.get<double>();
  if (!std::isfinite(d)) {
    throw SchemaViolation(path + "/" + key, "number not finite");
  }
  return d;
}

std::int64_t integer_at(const json & obj, const char * key, const std::string & path)
{
  const auto & v = field(obj, key, path);
  if (v.is_number_integer()) {
    return v.get<std::int64_t>();
  }
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::isfinite(d) && std::trunc(d) == d && std::abs(d) < 9.0e15) {
      return static_cast<std::int64_t>(d);
    }
  }
  throw SchemaViolation(path + "/" + key, "expected integer");
}

std::string string_at(const json & obj, const char * key, const std::string & path)
{
  const auto & v = field(obj, key, path);
  if (!v.is_string()) {
    throw SchemaViolation(path + "/" + key, "expected string");
  }
  return v.get<std::string>();
}

bool bool_at(const json & obj, const char * key, const std::string & path)
{
  const auto & v = field(obj, key, path);
  if (!v.is_boolean()) {
    throw SchemaViolation(path + "/" + key, "expected boolean");
  }
  return v.get<bool>();
}

const json & array_at(const json & obj, const char * key, const std::string & path)
{
  const auto & v = field(obj, key, path);
  if (!v.is_array()) {
    throw SchemaViolation(path + "/" + key, "expected array");
  }
  return v;
}

void require_object(const json & v, const std::string & path)
{
  if (!v.is_object()) {
    throw SchemaViolation(path.empty() ? "/" : path, "expected object");
  }
}

Vec2 point_at(const json & v, const std::string & path)
{
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw SchemaViolation(path, "expected [x, y]");
  }
  const Vec2 p{v[0].get<double>(), v[1].get<double>()};
  if (!p.finite()) {
    throw SchemaViolation(path, "point not finite");
  }
  return p;
}

Lane parse_lane(const json & v, const std::string & path)
{
  require_object(v, path);
  Lane lane;
  lane.lane_id = string_at(v, "lane_id", path);
  const auto & limit = field(v, "speed_limit_mps", path);
  if (!limit.is_null()) {
    lane.speed_limit_mps = number_at(v, "speed_limit_mps", path);
  }
  const auto & poly = array_at(v, "polyline", path);
  lane.polyline.reserve(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i) {
    lane.polyline.push_back(point_at(poly[i], path + "/polyline/" + std::to_string(i)));
  }
  return lane;
}

VehicleState parse_vehicle(const json & v, const std::string & path)
{
  require_object(v, path);
  VehicleState s;
  s.vehicle_id = string_at(v, "id", path);
  s.center = {number_at(v, "x", path), number_at(v, "y", path)};
  s.heading = number_at(v, "heading_rad", path);
  s.velocity = {number_at(v, "vx", path), number_at(v, "vy", path)};
  s.length = number_at(v, "length_m", path);
  s.width = number_at(v, "width_m", path);
  s.valid = bool_at(v, "valid", path);
  return s;
}

Frame parse_frame(const json & v, const std::string & path)
{
  require_object(v, path);
  Frame f;
  f.frame_index = integer_at(v, "frame_index", path);
  f.time_s = number_at(v, "time_s", path);
  const auto & vehicles = array_at(v, "vehicles", path);
  f.vehicles.reserve(vehicles.size());
  for (std::size_t i = 0; i < vehicles.size(); ++i) {
    f.vehicles.push_back(parse_vehicle(vehicles[i], path + "/vehicles/" + std::to_string(i)));
  }
  return f;
}
}  // namespace

Scenario parse_scenario_unchecked(std::string_view bytes)
{
  json doc;
  try {
    doc = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error & e) {
    throw MalformedDocument(e.what());
  }
  require_object(doc, "");

  const auto version = integer_at(doc, "schema_version", "");
  if (version != kSchemaVersion) {
    throw UnsupportedVersion("schema_version " + std::to_string(version) + " is not supported");
  }

  Scenario s;
  s.scenario_id = string_at(doc, "scenario_id", "");
  s.sample_rate_hz = number_at(doc, "sample_rate_hz", "");
  const auto & lanes = array_at(doc, "lanes", "");
  s.lanes.reserve(lanes.size());
  for (std::size_t i = 0; i < lanes.size(); ++i) {
    s.lanes.push_back(parse_lane(lanes[i], "/lanes/" + std::to_string(i)));
  }
  const auto & frames = array_at(doc, "frames", "");
  s.frames.reserve(frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    s.frames.push_back(parse_frame(frames[i], "/frames/" + std::to_string(i)));
  }
  return s;
}

Scenario parse_scenario(std::string_view bytes)
{
  auto s = parse_scenario_unchecked(bytes);
  const auto violations = validate_scenario(s);
  if (!violations.empty()) {
    throw SchemaViolation("/", violations.front());
  }
  return s;
}

Scenario subsample(const Scenario & scenario, double target_rate_hz)
{
  if (!(target_rate_hz > 0.0) || !std::isfinite(target_rate_hz)) {
    throw InvalidRate("target rate must be finite and > 0");
  }
  if (target_rate_hz > scenario.sample_rate_hz) {
    throw InvalidRate(
      "target rate " + std::to_string(target_rate_hz) + " Hz exceeds native rate " +
      std::to_string(scenario.sample_rate_hz) + " Hz");
  }
  // std::llround rounds halves away from zero.
  const auto k = static_cast<std::size_t>(std::llround(scenario.sample_rate_hz / target_rate_hz));

  Scenario out;
  out.scenario_id = scenario.scenario_id;
  out.sample_rate_hz = scenario.sample_rate_hz / static_cast<double>(k);
  out.lanes = scenario.lanes;
  out.frames.reserve(scenario.frames.size() / k + 1);
  for (std::size_t i = 0; i < scenario.frames.size(); i += k) {
    out.frames.push_back(scenario.frames[i]);
  }
  return out;
}

namespace
{
bool has_scenario_extension(const fs::path & p)
{
  const auto name = p.filename().string();
  return name.size() > kFileExtension.size() && name.ends_with(kFileExtension);
}
}  // namespace

std::vector<fs::path> list_scenario_files(const IngestConfig & cfg)
{
  std::vector<fs::path> files;
  for (const auto & input : cfg.input_paths) {
    std::error_code ec;
    const auto status = fs::status(input, ec);
    if (ec || !fs::exists(status)) {
      throw IoError("input path does not exist: " + input.string());
    }
    if (fs::is_directory(status)) {
      for (const auto & entry : fs::recursive_directory_iterator(input)) {
        if (entry.is_regular_file() && has_scenario_extension(entry.path())) {
          files.push_back(entry.path());
        }
      }
    } else {
      files.push_back(input);
    }
  }
  std::sort(files.begin(), files.end());
  files.erase(std::unique(files.begin(), files.end()), files.end());
  return files;
}

std::string read_file(const fs::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) {
    throw IoError("read failed: " + path.string());
  }
  return os.str();
}

Scenario load_scenario_file(const fs::path & path, double target_rate_hz)
{
  return subsample(parse_scenario(read_file(path)), target_rate_hz);
}

std::string error_kind(const std::exception & e)
{
  if (dynamic_cast<const MalformedDocument *>(&e)) {
    return "MalformedDocument";
  }
  if (dynamic_cast<const SchemaViolation *>(&e)) {
    return "SchemaViolation";
  }
  if (dynamic_cast<const UnsupportedVersion *>(&e)) {
    return "UnsupportedVersion";
  }
  if (dynamic_cast<const InvalidRate *>(&e)) {
    return "InvalidRate";
  }
  if (dynamic_cast<const IoError *>(&e)) {
    return "IoError";
  }
  return "Error";
}

ScenarioStream::ScenarioStream(IngestConfig cfg, DiagnosticSink sink)
: cfg_(std::move(cfg)), sink_(std::move(sink)), files_(list_scenario_files(cfg_))
{
}

std::optional<Scenario> ScenarioStream::next()
{
  while (pos_ < files_.size()) {
    const auto & path = files_[pos_++];
    try {
      return load_scenario_file(path, cfg_.target_rate_hz);
    } catch (const Error & e) {
      if (cfg_.strict) {
        throw;
      }
      ++skipped_;
      if (sink_) {
        sink_({"error", error_kind(e), path, e.what()});
      }
    }
  }
  return std::nullopt;
}

std::vector<Scenario> stream_scenarios(const IngestConfig & cfg, const DiagnosticSink & sink)
{
  ScenarioStream stream(cfg, sink);
  std::vector<Scenario> out;
  while (auto s = stream.next()) {
    out.push_back(std::move(*s));
  }
  return out;
}

}  // namespace rulegauge::ingest
