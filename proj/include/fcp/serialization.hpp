// Copyright 2026 The FCP Authors
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


#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "fcp/harness.hpp"
#include "fcp/planner.hpp"

namespace fcp
{

nlohmann::json to_json(const Corridor & corridor);

// Per-step rows plus a diagnostics block.
nlohmann::json to_json(const PlannerSolution & solution, const Corridor & corridor);

// Wall-clock fields are left out so that equal inputs give equal bytes.
nlohmann::json to_json(const EpisodeLog & log);
nlohmann::json to_json(const MetricsReport & metrics);
nlohmann::json aggregate_json(const MonteCarloReport & report);

std::string trials_csv(const MonteCarloReport & report);
std::string histogram_csv(const std::vector<std::pair<double, int>> & bins);

}  // namespace fcp
