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

#ifndef RULEGAUGE__REPORT_HPP_
#define RULEGAUGE__REPORT_HPP_

#include "rulegauge/types.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace rulegauge::report
{

/// Canonical RGSF v1 text: keys sorted, doubles printed with 17 significant digits, one frame
/// or lane per line. Throws SchemaViolation (with the offending field path) on non-finite
/// numbers.
std::string write_scenario(const Scenario & scenario);

/// Full report document. `parameters` is embedded verbatim under "parameters".
nlohmann::json report_json(const AggregateReport & report, const nlohmann::json & parameters = {});

/// `rule,scenario_id,vehicle_id,rc_mean,frame_count` with a header row.
std::string driver_scores_csv(const AggregateReport & report);

/// Count per bin on a logarithmic axis.
std::string histogram_svg(const AggregateReport & report);

/// Share of driver-scenario scores per quarter interval plus the strict-compliance share.
std::string relative_svg(const AggregateReport & report);

/// "%.17g"; round-trips every finite double.
std::string format_double(double v);

}  // namespace rulegauge::report

#endif  // RULEGAUGE__REPORT_HPP_
