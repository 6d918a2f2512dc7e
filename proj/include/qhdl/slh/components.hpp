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
#include <utility>

#include "qhdl/slh/triplet.hpp"

namespace qhdl::slh {

/// S = [[cos θ, -sin θ], [sin θ, cos θ]].
SLHTriplet beamsplitter(double theta);
/// S = [[e^{iφ}]].
SLHTriplet phase(double phi);
/// Coherent drive: (1, α, 0).
SLHTriplet displace(Complex alpha);
/// Two-port ring cavity: S = 1, L = (√κ₁ a, √κ₂ a), H = Δ a†a + χ a†a†aa.
SLHTriplet kerr_cavity(double delta, double chi, double kappa_1, double kappa_2, const std::string& mode,
                       std::size_t fock_dim);
/// One-port variant: S = 1, L = √κ a, same H.
SLHTriplet cavity(double delta, double chi, double kappa, const std::string& mode, std::size_t fock_dim);

enum class HamiltonianPlacement { First, Second };

/// Splits a triplet whose S and L decompose into the first `first_channels`
/// channels and the rest. S must be block diagonal. H goes entirely to the
/// chosen block.
std::pair<SLHTriplet, SLHTriplet> split_block_diagonal(const SLHTriplet& q, std::size_t first_channels,
                                                       HamiltonianPlacement placement = HamiltonianPlacement::First);

}  // namespace qhdl::slh
