// Copyright 2026 The QHDL Authors
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


#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qhdl/dynamics/simulate.hpp"

namespace qhdl::dynamics {

/// Header `t,<obs>_re,<obs>_im,...,condition`, one row per sample, numbers
/// with 17 significant digits.
void write_trace_csv(const std::string& path, const ExpectationTrace& trace);
ExpectationTrace read_trace_csv(const std::string& path);

/// Header `trajectory,t,channel`.
void write_jumps_csv(const std::string& path, const std::vector<JumpRecord>& jumps);

/// Parses [{"condition": "SET", "duration": 0.5, "inputs": {"s_bar": [re, im]}}, ...].
/// Ports not mentioned get vacuum input. Throws DynamicsError on unknown
/// conditions or ports.
std::vector<Segment> schedule_from_json(const nlohmann::json& doc, const std::vector<std::string>& input_ports);

}  // namespace qhdl::dynamics
