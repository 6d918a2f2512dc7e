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

#include <nlohmann/json.hpp>

#include "qhdl/slh/triplet.hpp"

namespace qhdl::slh {

/// Compiled-model document:
///   {"n", "space": [{"label", "dim"}], "S": [[op]], "L": [op], "H": op}
/// with op = {"shape": [d, d], "entries": [[row, col, re, im], ...]},
/// 0-based and sorted row-major. Every operator is written on the full
/// model space. Extra top-level keys are ignored on load.
nlohmann::json model_to_json(const SLHTriplet& q);
SLHTriplet model_from_json(const nlohmann::json& j);

nlohmann::json operator_to_json(const Operator& op);
Operator operator_from_json(const nlohmann::json& j, const HilbertSpace& space);

void write_model(const std::string& path, const nlohmann::json& doc);
nlohmann::json read_model(const std::string& path);

}  // namespace qhdl::slh
