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

#include <stdexcept>

#include "qhdl/circuit/expression.hpp"
#include "qhdl/frontend/netlist.hpp"

namespace qhdl::synthesis {

/// Raised when the channel bookkeeping goes out of sync. Always a defect;
/// validated netlists never trigger it.
class SynthesisDefect : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Converts a validated netlist into a circuit expression whose channel i
/// corresponds to the i-th entity in-port and i-th entity out-port.
///
/// Leaves are the instances in declaration order, concatenated and padded
/// with one identity channel per internal signal (and per entity-to-entity
/// connection). Each internal signal is then closed with two feedback
/// operations and the remaining channels are permuted into entity port
/// order. Channel indices are looked up by label at every step.
circuit::Expression synthesize(const frontend::NetlistGraph& netlist);

}  // namespace qhdl::synthesis
