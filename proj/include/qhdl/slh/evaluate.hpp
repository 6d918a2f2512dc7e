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

#include <map>
#include <string>

#include "qhdl/circuit/expression.hpp"
#include "qhdl/slh/triplet.hpp"

namespace qhdl::slh {

/// Component label -> triplet.
using Bindings = std::map<std::string, SLHTriplet>;

/// Folds the expression tree into a single triplet.
SLHTriplet evaluate(const circuit::Expression& e, const Bindings& bindings);

}  // namespace qhdl::slh
