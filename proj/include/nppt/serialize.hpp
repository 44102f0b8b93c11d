// Copyright 2026 The nppt-lab Authors
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

#include <string>

#include <json.hpp>

#include "nppt/states.hpp"
#include "nppt/witness.hpp"

namespace nppt {

inline constexpr int kReportSchema = 1;

// {"d": d, "rho": [row-major d*d], "z": [{"i", "j", "re", "im"}, ...]} with
// one z entry per pair i < j, indices 1-based.
nlohmann::json to_json(const DiagonalInvariantPT& fp);
DiagonalInvariantPT family_from_json(const nlohmann::json& j);

// Comparison report; `subject` is the alpha value or the family object.
nlohmann::json to_json(const ComparisonReport& report, const nlohmann::json& subject);

// %.17g; round-trips every binary64 value.
std::string format_double(double x);

}  // namespace nppt
