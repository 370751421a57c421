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

#include "qgroup/report.hpp"

#include <chrono>
#include <ctime>

namespace qgroup {

Json to_json(const SolverReport& report) {
  Json j;
  j["recovered_generators"] = report.recovered_generators;
  j["oracle_evaluations"] = report.oracle_evaluations;
  j["rounds"] = report.rounds;
  j["success"] = report.success;
  j["budget_exceeded"] = report.budget_exceeded;
  return j;
}

Json generators_json(const Subgroup& H) {
  Json gens = Json::array();
  for (const auto& g : H.generators()) gens.push_back(to_string(g));
  return gens;
}

Json to_json(const AttackReport& report) {
  Json j;
  j["oracle_level"] = std::string(to_string(report.level));
  if (report.recovered_subgroup) {
    j["recovered_subgroup"] = {{"order", report.recovered_subgroup->order()},
                               {"generators", generators_json(*report.recovered_subgroup)}};
  } else {
    j["recovered_subgroup"] = nullptr;
  }
  j["subgroup_correct"] = report.subgroup_correct;
  j["decoded"] = report.decoded_plaintext.has_value();
  j["success"] = report.success;
  j["budget_exceeded"] = report.budget_exceeded;
  j["oracle_evaluations"] = report.oracle_evaluations;
  j["generators_tried"] = report.generators_tried;
  j["candidate_subgroups"] = report.candidate_subgroups;
  j["work"] = report.work();
  return j;
}

Json report_header(std::string_view command) {
  Json j;
  j["report_version"] = kReportVersion;
  j["command"] = std::string(command);
  return j;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace qgroup
