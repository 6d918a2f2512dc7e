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

#include "qhdl/circuit/expression.hpp"

namespace qhdl::circuit {

/// Rewrites `e` to the fixpoint of the local rules
///
///   R1  P(s2) << P(s1)        -> P(s2 o s1), identity permutations -> 1_n
///   R2  1_n << X, X << 1_n    -> X
///   R3  ... + 1_a + 1_b + ... -> ... + 1_(a+b) + ...
///   R4  series chains re-associated to the right: x << (y << z)
///   R5  (A + B) << (C + D)    -> (A << C) + (B << D)  when the channel
///       boundaries line up (identities may be split to align them)
///
/// The result has the same cdim and evaluates to the same triplet.
/// simplify(simplify(e)) == simplify(e).
Expression simplify(const Expression& e);

}  // namespace qhdl::circuit
