// Copyright 2026 The qgroup Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON forms of solver and attack reports.

#pragma once

#include <nlohmann/json.hpp>

#include "qgroup/hsp.hpp"
#include "qgroup/qep.hpp"

namespace qgroup {

using Json = nlohmann::ordered_json;

inline constexpr int kReportVersion = 1;

Json to_json(const SolverReport& report);
Json to_json(const AttackReport& report);
Json generators_json(const Subgroup& H);

// Fresh report document: {"report_version": 1, "command": ...}.
Json report_header(std::string_view command);
// ISO 8601 UTC wall-clock time.
std::string utc_timestamp();

}  // namespace qgroup
