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

#include "qhdl/circuit/expression.hpp"

namespace qhdl::circuit {

/// Box-drawing diagram of `e`, UTF-8, lines joined by '\n'.
///
/// Signals run left to right. Components and permutations are boxes,
/// identities are bare wires, concatenation stacks vertically, series
/// products are laid out horizontally and feedback loops are drawn
/// underneath the block they close.
std::string render_text(const Expression& e);

}  // namespace qhdl::circuit
