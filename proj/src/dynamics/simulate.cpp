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


#include "qhdl/dynamics/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <random>
#include <sstream>
#include <thread>

#include "qhdl/slh/components.hpp"

namespace qhdl::dynamics {

namespace {

const Complex kI(0.0, 1.0);

struct PreparedSegment {
  std::string condition;
  double duration;
  SystemOperators sys;
};

/// Sample count and step layout of one segment.
struct Grid {
  std::size_t samples = 0;
  std::size_t steps_per_sample = 1;
  double h = 0.0;
  /// Unsampled tail shorter than one sample interval.
  std::size_t tail_steps = 0;
  double tail_h = 0.0;
};

Grid make_grid(double duration, const SimulationConfig& config) {
  Grid g;
  const double ds = config.sample_interval;
  g.samples = static_cast<std::size_t>(std::floor(duration / ds + 1e-9));
  g.steps_per_sample = static_cast<std::size_t>(std::ceil(ds / config.dt - 1e-9));
  g.h = ds / static_cast<double>(g.steps_per_sample);
  double tail = duration - static_cast<double>(g.samples) * ds;
  if (tail > 1e-9 * ds) {
    g.tail_steps = static_cast<std::size_t>(std::ceil(tail / config.dt - 1e-9));
    g.tail_h = tail / static_cast<double>(g.tail_steps);
  }
  return g;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

ExpectationTrace empty_trace(const std::vector<Observable>& obs) {
  ExpectationTrace t;
  for (const auto& o : obs) t.observables.push_back(o.name);
  t.values.resize(obs.size());
  return t;
}

template <typename State>
void record(ExpectationTrace& trace, const std::vector<Observable>& obs, double t, const std::string* condition,
            const State& state) {
  trace.times.push_back(t);
  for (std::size_t k = 0; k < obs.size(); ++k) {
    trace.values[k].push_back(expectation(obs[k].op, state));
  }
  if (condition) trace.conditions.push_back(*condition);
}

// ---------------------------------------------------------------- master

class MasterRun {
 public:
  MasterRun(DenseMatrix rho, const std::vector<Observable>& obs, bool scheduled)
      : rho_(std::move(rho)), obs_(obs), scheduled_(scheduled) {
    result_.trace = empty_trace(obs);
  }

  void segment(const PreparedSegment& seg, const SimulationConfig& config) {
    auto grid = make_grid(seg.duration, config);
    const std::string* cond = scheduled_ ? &seg.condition : nullptr;
    if (!started_) {
      sample(cond);
      started_ = true;
    }
    const double t0 = t_;
    for (std::size_t s = 1; s <= grid.samples; ++s) {
      for (std::size_t k = 0; k < grid.steps_per_sample; ++k) step(seg.sys, grid.h);
      t_ = t0 + static_cast<double>(s) * config.sample_interval;
      sample(cond);
    }
    for (std::size_t k = 0; k < grid.tail_steps; ++k) step(seg.sys, grid.tail_h);
    t_ = t0 + seg.duration;
  }

  MasterResult finish() {
    result_.final_state = std::move(rho_);
    return std::move(result_);
  }

 private:
  void step(const SystemOperators& sys, double h) {
    DenseMatrix k1 = liouvillian_apply(sys, rho_);
    DenseMatrix k2 = liouvillian_apply(sys, rho_ + (h / 2) * k1);
    DenseMatrix k3 = liouvillian_apply(sys, rho_ + (h / 2) * k2);
    DenseMatrix k4 = liouvillian_apply(sys, rho_ + h * k3);
    rho_ += (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    double err = std::abs(rho_.trace() - 1.0);
    result_.max_trace_error = std::max(result_.max_trace_error, err);
    if (!(err <= 1e-4)) {
      throw DynamicsError("master equation: trace drifted to " + fmt(std::abs(rho_.trace())) + " near t = " +
                          fmt(t_) + " with step " + fmt(h) + "; reduce dt");
    }
  }

  void sample(const std::string* cond) {
    record(result_.trace, obs_, t_, cond, rho_);
    double herm = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
    result_.max_hermiticity_error = std::max(result_.max_hermiticity_error, herm);
  }

  DenseMatrix rho_;
  const std::vector<Observable>& obs_;
  bool scheduled_;
  bool started_ = false;
  double t_ = 0.0;
  MasterResult result_;
};

// ---------------------------------------------------------------- mcwf

std::mt19937_64 stream(std::uint64_t seed, std::size_t index) {
  auto k = static_cast<std::uint64_t>(index);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
  return std::mt19937_64(seq);
}

StateVector rk4(const SparseMatrix& h_eff, const StateVector& psi, double h) {
  StateVector k1 = -kI * (h_eff * psi);
  StateVector k2 = -kI * (h_eff * (psi + (h / 2) * k1));
  StateVector k3 = -kI * (h_eff * (psi + (h / 2) * k2));
  StateVector k4 = -kI * (h_eff * (psi + h * k3));
  return psi + (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

bool has_jumps(const SystemOperators& sys) {
  return std::any_of(sys.L.begin(), sys.L.end(), [](const SparseMatrix& l) { return l.nonZeros() > 0; });
}

class TrajectoryRun {
 public:
  TrajectoryRun(StateVector psi, const std::vector<Observable>& obs, const SimulationConfig& config,
                std::size_t index, bool scheduled)
      : psi_(std::move(psi)), obs_(obs), index_(index), scheduled_(scheduled), rng_(stream(config.seed, index)) {
    psi_ /= psi_.norm();
    threshold_ = draw_threshold();
    result_.trace = empty_trace(obs);
  }

  void segment(const PreparedSegment& seg, const SimulationConfig& config) {
    auto grid = make_grid(seg.duration, config);
    const std::string* cond = scheduled_ ? &seg.condition : nullptr;
    const bool jumps = has_jumps(seg.sys);
    if (!started_) {
      record(result_.trace, obs_, t_, cond, psi_);
      started_ = true;
    }
    const double t0 = t_;
    for (std::size_t s = 1; s <= grid.samples; ++s) {
      for (std::size_t k = 0; k < grid.steps_per_sample; ++k) advance(seg.sys, grid.h, jumps);
      t_ = t0 + static_cast<double>(s) * config.sample_interval;
      record(result_.trace, obs_, t_, cond, psi_);
    }
    for (std::size_t k = 0; k < grid.tail_steps; ++k) advance(seg.sys, grid.tail_h, jumps);
    t_ = t0 + seg.duration;
  }

  TrajectoryResult finish() {
    result_.final_state = psi_ / psi_.norm();
    return std::move(result_);
  }

 private:
  double draw_threshold() {
    // In (0, 1]: a zero threshold would never trigger.
    return 1.0 - std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
  }

  /// One step of length h, jumping wherever the norm crosses the threshold.
  void advance(const SystemOperators& sys, double h, bool jumps) {
    if (!jumps) {
      psi_ = rk4(sys.H_eff, psi_, h);
      psi_ /= psi_.norm();
      t_ += h;
      return;
    }
    const double resolution = h / 100.0;
    double remaining = h;
    while (remaining > 1e-12 * h) {
      StateVector next = rk4(sys.H_eff, psi_, remaining);
      if (next.squaredNorm() > threshold_) {
        psi_ = std::move(next);
        t_ += remaining;
        return;
      }
      // Bisect for the crossing; `hi` always lies at or past it.
      double lo = 0.0;
      double hi = remaining;
      while (hi - lo > resolution) {
        double mid = 0.5 * (lo + hi);
        if (rk4(sys.H_eff, psi_, mid).squaredNorm() > threshold_) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      psi_ = rk4(sys.H_eff, psi_, hi);
      t_ += hi;
      remaining -= hi;
      jump(sys);
    }
  }

  void jump(const SystemOperators& sys) {
    std::vector<StateVector> out(sys.L.size());
    std::vector<double> weights(sys.L.size());
    double total = 0.0;
    for (std::size_t j = 0; j < sys.L.size(); ++j) {
      out[j] = sys.L[j] * psi_;
      weights[j] = out[j].squaredNorm();
      total += weights[j];
    }
    if (!(total > 0.0) || !std::isfinite(total)) {
      throw DynamicsError("quantum jump at t = " + fmt(t_) + " in trajectory " + std::to_string(index_) +
                          ": every jump weight vanishes (norm " + fmt(psi_.squaredNorm()) + ", threshold " +
                          fmt(threshold_) + ")");
    }
    double u = std::uniform_real_distribution<double>(0.0, total)(rng_);
    std::size_t chosen = 0;
    double acc = 0.0;
    for (std::size_t j = 0; j < weights.size(); ++j) {
      if (weights[j] <= 0.0) continue;
      chosen = j;
      acc += weights[j];
      if (u < acc) break;
    }
    psi_ = out[chosen] / std::sqrt(weights[chosen]);
    result_.trace.jumps.push_back(JumpRecord{index_, t_, chosen + 1});
    threshold_ = draw_threshold();
  }

  StateVector psi_;
  const std::vector<Observable>& obs_;
  std::size_t index_;
  bool scheduled_;
  std::mt19937_64 rng_;
  double threshold_ = 1.0;
  bool started_ = false;
  double t_ = 0.0;
  TrajectoryResult result_;
};

TrajectoryResult run_trajectory(const std::vector<PreparedSegment>& segments, const StateVector& psi0,
                                const std::vector<Observable>& obs, const SimulationConfig& config,
                                std::size_t index, bool scheduled) {
  TrajectoryRun run(psi0, obs, config, index, scheduled);
  for (const auto& seg : segments) run.segment(seg, config);
  return run.finish();
}

std::vector<TrajectoryResult> run_ensemble(const std::vector<PreparedSegment>& segments, const StateVector& psi0,
                                           const std::vector<Observable>& obs, const SimulationConfig& config,
                                           bool scheduled) {
  const std::size_t n = config.trajectories;
  std::vector<TrajectoryResult> results(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < n; k = next++) {
      try {
        results[k] = run_trajectory(segments, psi0, obs, config, k, scheduled);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

void check_state_dim(const slh::HilbertSpace& space, Eigen::Index rows, const char* what) {
  if (rows != static_cast<Eigen::Index>(space.dim())) {
    throw DynamicsError(std::string(what) + " has dimension " + std::to_string(rows) + " but the model space " +
                        space.str() + " has dimension " + std::to_string(space.dim()));
  }
}

}  // namespace

void SimulationConfig::validate() const {
  if (!(dt > 0.0 && dt <= sample_interval && sample_interval <= t_final)) {
    throw DynamicsError("need 0 < dt <= sample interval <= t_final, got dt = " + fmt(dt) + ", sample interval = " +
                        fmt(sample_interval) + ", t_final = " + fmt(t_final));
  }
  if (method == Method::Mcwf && trajectories == 0) throw DynamicsError("need at least one trajectory");
}

std::size_t ExpectationTrace::column(const std::string& name) const {
  auto it = std::find(observables.begin(), observables.end(), name);
  if (it == observables.end()) throw DynamicsError("trace has no observable '" + name + "'");
  return static_cast<std::size_t>(it - observables.begin());
}

MasterResult integrate_master(const slh::SLHTriplet& m, const DenseMatrix& rho0, const SimulationConfig& config) {
  config.validate();
  PreparedSegment seg{"", config.t_final, SystemOperators::from(m)};
  check_state_dim(seg.sys.space, rho0.rows(), "initial density matrix");
  if (std::abs(rho0.trace() - 1.0) > 1e-6) throw DynamicsError("initial density matrix does not have unit trace");
  auto obs = make_observables(config.observables, seg.sys.space);
  MasterRun run(rho0, obs, false);
  run.segment(seg, config);
  return run.finish();
}

TrajectoryResult mcwf_trajectory(const slh::SLHTriplet& m, const StateVector& psi0, const SimulationConfig& config,
                                 std::size_t index) {
  config.validate();
  std::vector<PreparedSegment> segs{{"", config.t_final, SystemOperators::from(m)}};
  check_state_dim(segs[0].sys.space, psi0.size(), "initial state vector");
  auto obs = make_observables(config.observables, segs[0].sys.space);
  return run_trajectory(segs, psi0, obs, config, index, false);
}

std::vector<TrajectoryResult> mcwf_ensemble(const slh::SLHTriplet& m, const StateVector& psi0,
                                            const SimulationConfig& config) {
  config.validate();
  std::vector<PreparedSegment> segs{{"", config.t_final, SystemOperators::from(m)}};
  check_state_dim(segs[0].sys.space, psi0.size(), "initial state vector");
  auto obs = make_observables(config.observables, segs[0].sys.space);
  return run_ensemble(segs, psi0, obs, config, false);
}

ExpectationTrace average(const std::vector<ExpectationTrace>& traces) {
  if (traces.empty()) throw DynamicsError("cannot average zero traces");
  ExpectationTrace out = traces.front();
  out.jumps.clear();
  for (auto& series : out.values) std::fill(series.begin(), series.end(), Complex(0.0));
  for (const auto& t : traces) {
    if (t.times.size() != out.times.size() || t.observables != out.observables) {
      throw DynamicsError("cannot average traces with different grids or observables");
    }
    for (std::size_t k = 0; k < out.values.size(); ++k) {
      for (std::size_t s = 0; s < out.times.size(); ++s) out.values[k][s] += t.values[k][s];
    }
    out.jumps.insert(out.jumps.end(), t.jumps.begin(), t.jumps.end());
  }
  for (auto& series : out.values) {
    for (auto& v : series) v /= static_cast<double>(traces.size());
  }
  return out;
}

const std::vector<std::string>& known_conditions() {
  static const std::vector<std::string> names{"HOLD", "SET", "RESET"};
  return names;
}

slh::SLHTriplet driven_model(const slh::SLHTriplet& base, const std::vector<Complex>& drive) {
  if (drive.size() != base.channels()) {
    throw DynamicsError("drive has " + std::to_string(drive.size()) + " amplitudes for a model with " +
                        std::to_string(base.channels()) + " inputs");
  }
  slh::SLHTriplet sources = slh::trivial_system();
  for (auto d : drive) sources = slh::concatenate(sources, slh::displace(d));
  return slh::series_product(base, sources);
}

SequenceResult run_input_sequence(const slh::SLHTriplet& base, const std::vector<Segment>& schedule,
                                  const QuantumState& initial, const SimulationConfig& config) {
  const auto space = base.space();
  std::vector<PreparedSegment> segs;
  double total = 0.0;
  for (const auto& s : schedule) {
    if (s.duration < 0.0) throw DynamicsError("segment '" + s.condition + "' has negative duration");
    if (s.duration == 0.0) continue;
    if (std::find(known_conditions().begin(), known_conditions().end(), s.condition) == known_conditions().end()) {
      throw DynamicsError("unknown input condition '" + s.condition + "' (known: HOLD, SET, RESET)");
    }
    segs.push_back({s.condition, s.duration, SystemOperators::from(driven_model(base, s.drive), space)});
    total += s.duration;
  }
  if (segs.empty()) throw DynamicsError("schedule has no segment of positive duration");
  SimulationConfig cfg = config;
  cfg.t_final = total;
  cfg.validate();
  if (!(initial.space == space)) {
    throw DynamicsError("initial state lives on " + initial.space.str() + ", model on " + space.str());
  }
  auto obs = make_observables(config.observables, space);

  SequenceResult out;
  out.final_state.space = space;
  if (cfg.method == Method::Master) {
    MasterRun run(initial.density(), obs, true);
    for (const auto& seg : segs) run.segment(seg, cfg);
    auto r = run.finish();
    out.traces.push_back(std::move(r.trace));
    out.final_state.data = std::move(r.final_state);
    return out;
  }
  const auto& psi0 = initial.vector();
  check_state_dim(space, psi0.size(), "initial state vector");
  auto results = run_ensemble(segs, psi0, obs, cfg, true);
  for (auto& r : results) out.traces.push_back(std::move(r.trace));
  out.final_state.data = results.back().final_state;
  return out;
}

}  // namespace qhdl::dynamics
