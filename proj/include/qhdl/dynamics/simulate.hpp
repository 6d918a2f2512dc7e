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

#include <cstdint>
#include <string>
#include <vector>

#include "qhdl/dynamics/system.hpp"

namespace qhdl::dynamics {

enum class Method { Master, Mcwf };

struct SimulationConfig {
  double t_final = 1.0;
  /// Integrator step. Rounded down so that it divides the sample interval.
  double dt = 1e-3;
  /// Spacing of recorded samples.
  double sample_interval = 1e-2;
  Method method = Method::Master;
  std::size_t trajectories = 1;
  std::uint64_t seed = 0;
  std::vector<std::string> observables;
  /// Worker threads for trajectories; 0 picks the hardware concurrency.
  unsigned threads = 0;

  /// Requires 0 < dt <= sample_interval <= t_final.
  void validate() const;
};

struct JumpRecord {
  std::size_t trajectory = 0;
  double t = 0.0;
  /// 1-based output channel.
  std::size_t channel = 0;
};

struct ExpectationTrace {
  std::vector<double> times;
  std::vector<std::string> observables;
  /// values[k][s] is observable k at sample s.
  std::vector<std::vector<Complex>> values;
  /// Input condition active at each sample, empty when not scheduled.
  std::vector<std::string> conditions;
  std::vector<JumpRecord> jumps;

  std::size_t samples() const { return times.size(); }
  /// Index of an observable by name. Throws DynamicsError if absent.
  std::size_t column(const std::string& name) const;
};

struct MasterResult {
  ExpectationTrace trace;
  DenseMatrix final_state;
  /// Largest |tr ρ - 1| seen at any step.
  double max_trace_error = 0.0;
  /// Largest ‖ρ - ρ†‖_max seen at any sample.
  double max_hermiticity_error = 0.0;
};

/// Fixed-step RK4 on the master equation. Aborts with DynamicsError when the
/// trace drifts by more than 1e-4.
MasterResult integrate_master(const slh::SLHTriplet& m, const DenseMatrix& rho0, const SimulationConfig& config);

struct TrajectoryResult {
  ExpectationTrace trace;
  StateVector final_state;
};

/// One quantum jump trajectory. The random stream depends only on
/// (config.seed, index), so results do not depend on scheduling.
TrajectoryResult mcwf_trajectory(const slh::SLHTriplet& m, const StateVector& psi0, const SimulationConfig& config,
                                 std::size_t index);

/// config.trajectories trajectories, run in parallel.
std::vector<TrajectoryResult> mcwf_ensemble(const slh::SLHTriplet& m, const StateVector& psi0,
                                            const SimulationConfig& config);

/// Mean over trajectories sample by sample. Jump records are concatenated.
ExpectationTrace average(const std::vector<ExpectationTrace>& traces);

/// One stretch of constant input. `drive[c]` is the coherent amplitude fed
/// into input channel c.
struct Segment {
  std::string condition;
  double duration = 0.0;
  std::vector<Complex> drive;
};

/// HOLD, SET and RESET.
const std::vector<std::string>& known_conditions();

/// base ◁ (W(d_1) ⊞ ... ⊞ W(d_n)).
slh::SLHTriplet driven_model(const slh::SLHTriplet& base, const std::vector<Complex>& drive);

struct SequenceResult {
  /// One trace for the master method, one per trajectory for mcwf.
  std::vector<ExpectationTrace> traces;
  /// Mixed for the master method, pure otherwise (last trajectory).
  QuantumState final_state;
};

/// Piecewise simulation over a schedule. The state (and, for trajectories,
/// the random stream and pending jump threshold) carries over from one
/// segment to the next. Zero-length segments are skipped. config.t_final is
/// ignored in favour of the schedule's total duration.
SequenceResult run_input_sequence(const slh::SLHTriplet& base, const std::vector<Segment>& schedule,
                                  const QuantumState& initial, const SimulationConfig& config);

}  // namespace qhdl::dynamics
