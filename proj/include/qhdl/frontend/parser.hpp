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
#include <string_view>
#include <vector>

#include "qhdl/frontend/design.hpp"
#include "qhdl/frontend/lexer.hpp"

namespace qhdl::frontend {

/// Recursive-descent parser for the structural QHDL subset:
///
///   file         := { entity | architecture }
///   entity       := "entity" ID "is" [generic-clause] port-clause "end" [ID] ";"
///   architecture := "architecture" ID "of" ID "is" {component} {signal}
///                   "begin" {instance | assignment} "end" [ID] ";"
///   component    := "component" ID [generic-clause] port-clause
///                   "end" "component" [ID] ";"
///   signal       := "signal" ID {"," ID} ":" "fieldmode" ";"
///   instance     := ID ":" ID ["generic" "map" "(" assocs ")"]
///                   "port" "map" "(" assocs ")" ";"
///   assignment   := ID "<=" ID ";"
///
/// Besides syntax, the parser enforces the per-declaration rules: `in` ports
/// before `out` ports, unique port/generic names, architectures that name an
/// entity declared earlier in the same file.
DesignFile parse(const std::vector<Token>& tokens, const std::string& file = "<input>");

/// tokenize + parse.
DesignFile parse_source(std::string_view source, const std::string& file = "<input>");

/// Reads and parses a file from disk.
DesignFile parse_file(const std::string& path);

}  // namespace qhdl::frontend
