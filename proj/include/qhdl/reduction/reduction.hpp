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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qhdl/dynamics/simulate.hpp"
#include "qhdl/slh/triplet.hpp"

namespace qhdl::reduction {

using slh::Complex;

class ReductionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mode label of the reduced state space.
inline constexpr const char* kReducedMode = "r";

/// Binning of D = <A> - <B> into states.
struct BinningSpec {
  std::string observable_a = "n:nand1.k";
  std::string observable_b = "n:nand2.k";
  double bin_width = 1.0;
  double origin = 0.0;
  /// Pad the state count up to the next 4k + 2 (k >= 1).
  bool pad = true;
};

/// bins[i] is the bin index of state i + 1. Bins are ordered by descending
/// D, so state 1 holds the largest D.
struct StateTable {
  std::vector<long> bins;
  /// Number of bins actually visited; the rest are padding.
  std::size_t visited = 0;

  std::size_t size() const { return bins.size(); }
  /// 1-based state of a bin. Throws if the bin is not in the table.
  std::size_t state_of(long bin) const;
};

/// A run of samples under one input condition, as 1-based states.
struct StateSequence {
  std::string condition;
  std::vector<std::size_t> states;
};

struct CoarseGrained {
  StateTable table;
  std::vector<StateSequence> sequences;
};

/// floor((D - origin) / width) per sample. Each trace is cut into runs of
/// constant condition; an empty condition counts as HOLD.
CoarseGrained coarse_grain(const std::vector<dynamics::ExpectationTrace>& traces, const BinningSpec& spec);

/// Smallest M >= n with M = 4k + 2 and k >= 1.
std::size_t padded_size(std::size_t n);

struct MarkovChainEstimate {
  std::size_t M = 0;
  double delta_t = 0.0;
  /// Lag-one transition counts per condition.
  std::map<std::string, Eigen::MatrixXd> counts;
  /// Row-normalized counts; empty rows become P_ii = 1.
  std::map<std::string, Eigen::MatrixXd> P;
};

/// M = 0 takes the largest state index present.
MarkovChainEstimate estimate_markov(const std::vector<StateSequence>& sequences, double delta_t, std::size_t M = 0);

/// Q = (P - 1) / δt.
Eigen::MatrixXd to_rate_matrix(const Eigen::MatrixXd& P, double delta_t);
std::map<std::string, Eigen::MatrixXd> to_rate_matrix(const MarkovChainEstimate& est);

/// One channel per positive rate γ_ij, in row-major order, each with
/// L = √γ_ij |j><i| on the reduced mode. S = 1, H = 0.
slh::SLHTriplet jump_slh(const Eigen::MatrixXd& Q);

/// Drift operators on an M-state mode.
slh::Operator sigma_set(std::size_t M);
slh::Operator sigma_reset(std::size_t M);

/// Four-channel drive model (S_1, L_1, 0). M must be 4k + 2 with k >= 1.
slh::SLHTriplet drive_slh(std::size_t M, Complex alpha);

/// (drive ◁ (W(S̄) ⊞ W(R̄) ⊞ 1_2)) ⊞ jump.
slh::SLHTriplet compose_reduced(const slh::SLHTriplet& jump, const slh::SLHTriplet& drive, Complex s_bar,
                                Complex r_bar);

/// Per-state scattering {θ_i, φ_1i, φ_2i}.
struct OutputParams {
  double theta = 0.0;
  double phi_1 = 0.0;
  double phi_2 = 0.0;
};

/// Two-channel output emulation with L_out = S_out (β', 0)^T.
slh::SLHTriplet output_slh(const std::vector<OutputParams>& params, Complex beta_prime);

/// Least-squares |α| from the excess SET and RESET rates along the drift
/// transitions over the HOLD rates. Empty when no SET or RESET data exist.
std::optional<double> suggest_alpha(const std::map<std::string, Eigen::MatrixXd>& rates, std::size_t M);

struct ReducedModel {
  StateTable table;
  MarkovChainEstimate estimate;
  std::map<std::string, Eigen::MatrixXd> rates;
  Complex alpha;
  /// drive ⊞ jump with undriven inputs s_bar, r_bar, then vacuum ports.
  slh::SLHTriplet triplet;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
};

/// Full pipeline: coarse-grain, estimate, build the HOLD jump model and the
/// drive model.
ReducedModel reduce(const std::vector<dynamics::ExpectationTrace>& traces, const BinningSpec& spec, double delta_t,
                    Complex alpha);

/// Compiled-model document plus {"metadata": {"M", "delta_t", "bin_width", "conditions", ...}}.
nlohmann::json reduced_to_json(const ReducedModel& model, const BinningSpec& spec);

/// Integer counts, one row per line.
void write_counts_csv(const std::string& path, const Eigen::MatrixXd& counts);

}  // namespace qhdl::reduction
