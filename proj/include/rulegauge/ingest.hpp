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

#ifndef RULEGAUGE__INGEST_HPP_
#define RULEGAUGE__INGEST_HPP_

#include "rulegauge/types.hpp"

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rulegauge::ingest
{

inline constexpr int kSchemaVersion = 1;
inline constexpr std::string_view kFileExtension = ".rgsf.json";

struct IngestConfig
{
  std::vector<std::filesystem::path> input_paths;
  double target_rate_hz{1.0};
  bool strict{false};
};

/// A problem with one input file, reported instead of aborting in non-strict mode.
struct Diagnostic
{
  std::string level;  // "warning" | "error"
  std::string kind;   // exception class name, e.g. "SchemaViolation"
  std::filesystem::path path;
  std::string message;
};

using DiagnosticSink = std::function<void(const Diagnostic &)>;

/// Structural parse of one RGSF v1 document; does not run validate_scenario.
/// Throws MalformedDocument, SchemaViolation or UnsupportedVersion.
Scenario parse_scenario_unchecked(std::string_view bytes);

/// As parse_scenario_unchecked, then throws SchemaViolation on the first invariant violation.
Scenario parse_scenario(std::string_view bytes);

/// Keeps every k-th frame from frame 0, k = round(native / target) with halves away from zero.
/// Throws InvalidRate if the target is not positive or exceeds the native rate.
Scenario subsample(const Scenario & scenario, double target_rate_hz);

/// Files to read: directories are searched recursively for `*.rgsf.json`, plain file arguments
/// are taken as given. Sorted lexicographically. Throws IoError for a missing path.
std::vector<std::filesystem::path> list_scenario_files(const IngestConfig & cfg);

std::string read_file(const std::filesystem::path & path);

/// Parse, validate and subsample one file. Throws like parse_scenario and subsample.
Scenario load_scenario_file(const std::filesystem::path & path, double target_rate_hz);

/// Pulls scenarios one file at a time in path order. In non-strict mode a bad file is reported
/// to the sink and skipped; in strict mode the error propagates out of `next`.
class ScenarioStream
{
public:
  ScenarioStream(IngestConfig cfg, DiagnosticSink sink = {});

  std::optional<Scenario> next();
  [[nodiscard]] std::size_t file_count() const { return files_.size(); }
  [[nodiscard]] std::size_t skipped() const { return skipped_; }
  [[nodiscard]] const std::vector<std::filesystem::path> & files() const { return files_; }
  /// Number of files consumed so far, including the one that just failed.
  [[nodiscard]] std::size_t position() const { return pos_; }

private:
  IngestConfig cfg_;
  DiagnosticSink sink_;
  std::vector<std::filesystem::path> files_;
  std::size_t pos_{0};
  std::size_t skipped_{0};
};

/// Convenience: drains a ScenarioStream.
std::vector<Scenario> stream_scenarios(const IngestConfig & cfg, const DiagnosticSink & sink = {});

/// Name of the library exception type of `e`, for diagnostics.
std::string error_kind(const std::exception & e);

}  // namespace rulegauge::ingest

#endif  // RULEGAUGE__INGEST_HPP_
