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


// Acceptance checks A1..A12. Each criterion prints one line:
//   A<n> PASS|FAIL <measured values and thresholds>
// With arguments, only the named criteria run (e.g. `acceptance A5 A6`).
// The exit status is nonzero when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qhdl/circuit/expression.hpp"
#include "qhdl/dynamics/simulate.hpp"
#include "qhdl/frontend/netlist.hpp"
#include "qhdl/frontend/parser.hpp"
#include "qhdl/pipeline/compiler.hpp"
#include "qhdl/reduction/reduction.hpp"
#include "qhdl/slh/components.hpp"
#include "qhdl/slh/evaluate.hpp"
#include "support/oracles.hpp"

using namespace qhdl;
using slh::Complex;
using slh::Operator;
using slh::SLHTriplet;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::string source_path(const std::string& rel) { return std::string(QHDL_SOURCE_DIR) + "/" + rel; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Paper parameters of the pseudo-NAND gate.
constexpr double kTheta = 0.891, kChi = -5.0 / 6.0, kDelta = 50.0, kKappa = 25.0, kPhi = 2.546;
const Complex kBeta(-34.289, -11.909);
constexpr double kAlphaOn = 22.6274;

pipeline::ParamValues gate_params(double amplitude_scale = 1.0) {
  return {{"delta", kDelta}, {"chi", kChi},  {"kappa", kKappa},
          {"theta", kTheta}, {"phi", kPhi}, {"beta", amplitude_scale * kBeta}};
}

pipeline::Library latch_library() {
  return pipeline::Library::load({source_path("examples_qhdl/latch.qhdl"), source_path("examples_qhdl/pseudo_nand.qhdl")});
}

SLHTriplet feed_latch_inputs(const SLHTriplet& latch, Complex s_bar, Complex r_bar) {
  auto drive = slh::concatenate(
      slh::concatenate(slh::concatenate(slh::displace(s_bar), slh::identity_system(2)), slh::displace(r_bar)),
      slh::identity_system(2));
  return slh::series_product(latch, drive);
}

// ---------------------------------------------------------------------------

Outcome a1_closure() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1001);
  std::uniform_int_distribution<int> dim(1, 4);
  double worst_u = 0.0, worst_h = 0.0;
  int results = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = dim(rng);
    auto a = testing::random_static(n, rng), b = testing::random_static(n, rng);
    auto c = testing::random_static(std::uniform_int_distribution<int>(1, 5 - std::min(n, 4))(rng), rng);
    std::vector<SLHTriplet> outs{slh::concatenate(testing::to_slh(a), testing::to_slh(c)),
                                 slh::series_product(testing::to_slh(b), testing::to_slh(a))};
    auto wide = testing::to_slh(testing::oracle_concat(a, c));
    const auto m = wide.channels();
    std::uniform_int_distribution<std::size_t> ch(1, m);
    outs.push_back(slh::feedback_reduce(wide, ch(rng), ch(rng)));
    for (const auto& q : outs) {
      auto r = slh::residuals(q);
      worst_u = std::max(worst_u, r.unitarity);
      worst_h = std::max(worst_h, r.hermiticity);
      ++results;
    }
  }
  const double secs = seconds_since(t0);
  return {worst_u < 1e-10 && worst_h < 1e-12 && secs < 10.0,
          fmt("%d results: max unitarity residual %.2e (< 1e-10), max hermiticity residual %.2e (< 1e-12), %.2f s (< 10 s)",
              results, worst_u, worst_h, secs)};
}

Outcome a2_series_as_feedback() {
  std::mt19937_64 rng(1002);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    auto q1 = testing::to_slh(testing::random_static(1, rng)), q2 = testing::to_slh(testing::random_static(1, rng));
    worst = std::max(worst, slh::max_abs_diff(slh::feedback_reduce(slh::concatenate(q1, q2), 1, 2),
                                              slh::series_product(q2, q1)));
  }
  return {worst < 1e-12, fmt("200 pairs: max |[Q1+Q2]_(1->2) - Q2<<Q1| = %.2e (< 1e-12)", worst)};
}

Outcome a3_feedback_order() {
  std::mt19937_64 rng(1003);
  std::uniform_int_distribution<std::size_t> pick(1, 3);
  double worst = 0.0, worst_rel = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    auto q = testing::to_slh(testing::random_static(3, rng));
    std::size_t k1 = pick(rng), l1 = pick(rng), k2, l2;
    do k2 = pick(rng); while (k2 == k1);
    do l2 = pick(rng); while (l2 == l1);
    auto shift = [](std::size_t idx, std::size_t removed) { return idx > removed ? idx - 1 : idx; };
    auto first = slh::feedback_reduce(slh::feedback_reduce(q, k1, l1), shift(k2, k1), shift(l2, l1));
    auto second = slh::feedback_reduce(slh::feedback_reduce(q, k2, l2), shift(k1, k2), shift(l1, l2));
    const double d = slh::max_abs_diff(first, second);
    const double scale = std::max({1.0, first.H.max_abs(), first.L[0].max_abs()});
    worst = std::max(worst, d);
    worst_rel = std::max(worst_rel, d / scale);
  }
  return {worst < 1e-12, fmt("100 triplets: max difference between loop orders %.2e (< 1e-12); "
                             "relative to the entry scale %.2e",
                             worst, worst_rel)};
}

Outcome a4_permutations() {
  std::size_t pairs = 0, mismatches = 0;
  for (std::size_t n = 1; n <= 5; ++n) {
    std::vector<std::size_t> s1(n);
    std::iota(s1.begin(), s1.end(), 1);
    std::vector<std::vector<std::size_t>> all;
    do all.push_back(s1);
    while (std::next_permutation(s1.begin(), s1.end()));
    for (const auto& a : all) {
      for (const auto& b : all) {
        std::vector<std::size_t> ab(n);
        for (std::size_t l = 0; l < n; ++l) ab[l] = b[a[l] - 1];  // (b∘a)(l)
        auto lhs = slh::series_product(slh::permutation_system(b), slh::permutation_system(a));
        if (slh::max_abs_diff(lhs, slh::permutation_system(ab)) != 0.0) ++mismatches;
        ++pairs;
      }
    }
  }
  return {mismatches == 0, fmt("%zu permutation pairs (n <= 5): %zu inexact compositions", pairs, mismatches)};
}

dynamics::SimulationConfig sim_config(double t_final, double dt, double sample, std::vector<std::string> obs) {
  dynamics::SimulationConfig c;
  c.t_final = t_final;
  c.dt = dt;
  c.sample_interval = sample;
  c.observables = std::move(obs);
  return c;
}

SLHTriplet decaying_cavity(std::size_t N) {
  auto lib = pipeline::Library::load({source_path("examples_qhdl/decaying_cavity.qhdl")});
  pipeline::FockDims fock;
  fock.fallback = N;
  return pipeline::compile(lib, "leaky", "", {{"kappa", 1.0}}, fock).triplet;
}

Outcome a5_master_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  auto m = decaying_cavity(20);
  auto psi = dynamics::fock_state(m.space(), {{"c", 5}});
  auto res = dynamics::integrate_master(m, psi * psi.adjoint(), sim_config(5.0, 1e-3, 0.01, {"n:c"}));
  double worst = 0.0;
  for (std::size_t s = 0; s < res.trace.samples(); ++s) {
    worst = std::max(worst, std::abs(res.trace.values[0][s].real() - 5.0 * std::exp(-res.trace.times[s])));
  }
  const double secs = seconds_since(t0);
  return {worst < 1e-3 && res.max_trace_error < 1e-6 && secs < 30.0,
          fmt("max |<n> - 5 exp(-t)| = %.2e (< 1e-3), max |tr rho - 1| = %.2e (< 1e-6), %.2f s (< 30 s)", worst,
              res.max_trace_error, secs)};
}

Outcome a6_mcwf_consistency() {
  auto m = decaying_cavity(20);
  auto psi = dynamics::fock_state(m.space(), {{"c", 5}});
  auto cfg = sim_config(2.0, 1e-3, 0.5, {"n:c"});
  auto master = dynamics::integrate_master(m, psi * psi.adjoint(), cfg).trace;
  cfg.method = dynamics::Method::Mcwf;
  cfg.trajectories = 500;
  cfg.seed = 6006;
  auto runs = dynamics::mcwf_ensemble(m, psi, cfg);
  bool ok = true;
  std::string detail;
  for (double t : {0.5, 1.0, 2.0}) {
    const auto s = static_cast<std::size_t>(std::lround(t / 0.5));
    double sum = 0.0, sq = 0.0;
    for (const auto& r : runs) {
      const double v = r.trace.values[0][s].real();
      sum += v;
      sq += v * v;
    }
    const double n = static_cast<double>(runs.size());
    const double mean = sum / n, se = std::sqrt((sq / n - mean * mean) / (n - 1));
    const double z = std::abs(mean - master.values[0][s].real()) / se;
    ok = ok && z < 3.0;
    detail += fmt("t=%.1f: %.3f vs %.3f (%.2f SE); ", t, mean, master.values[0][s].real(), z);
  }

  auto one = decaying_cavity(2);
  auto jcfg = sim_config(15.0, 1e-3, 0.5, {"n:c"});
  jcfg.method = dynamics::Method::Mcwf;
  jcfg.trajectories = 2000;
  jcfg.seed = 6007;
  std::vector<double> times;
  bool single = true;
  for (const auto& r : dynamics::mcwf_ensemble(one, dynamics::fock_state(one.space(), {{"c", 1}}), jcfg)) {
    single = single && r.trace.jumps.size() == 1;
    if (!r.trace.jumps.empty()) times.push_back(r.trace.jumps.front().t);
  }
  const double ks = testing::ks_exponential(times, 1.0);
  ok = ok && single && ks < 0.05;
  detail += fmt("one-photon jump times KS = %.4f (< 0.05)%s", ks, single ? "" : ", some trajectory did not jump once");
  return {ok, "within 3 SE at " + detail};
}

Outcome a7_latch_formulas() {
  const std::size_t N = 12;
  pipeline::FockDims fock;
  fock.fallback = N;
  auto compiled = pipeline::compile(latch_library(), "latch", "", gate_params(), fock);
  const Complex s_bar(kAlphaOn, 0.0), r_bar(3.1, -0.7);  // distinct inputs expose any mix-up
  auto q = feed_latch_inputs(compiled.triplet, s_bar, r_bar);

  slh::HilbertSpace space({{"nand1.k", N}, {"nand2.k", N}});
  auto a = Operator::annihilation("nand1.k", N).embed(space);
  auto b = Operator::annihilation("nand2.k", N).embed(space);
  auto one = Operator::identity(space);
  auto ad = a.adjoint(), bd = b.adjoint();
  const Complex e = std::polar(1.0, kPhi), I(0.0, 1.0);
  const double r2 = std::sqrt(2.0), c = std::cos(kTheta), s = std::sin(kTheta), k = kKappa;

  Eigen::Matrix3cd S1;
  S1 << 1 / r2, -c * e / r2, s * e / r2, 1 / r2, c * e / r2, -s * e / r2, 0, s, c;
  double dS = 0.0;
  for (int row = 0; row < 6; ++row) {
    for (int col = 0; col < 6; ++col) {
      const Complex want = row / 3 == col / 3 ? S1(row % 3, col % 3) : Complex(0.0);
      dS = std::max(dS, slh::max_abs_diff(q.S[row][col], want * one));
    }
  }
  std::vector<Operator> L{
      std::sqrt(k / 2) * s * e * b + (s_bar / r2 - kBeta / r2 * c * e) * one,
      std::sqrt(k) * a - std::sqrt(k / 2) * s * e * b + (s_bar / r2 + kBeta / r2 * c * e) * one,
      std::sqrt(k) * c * b + kBeta * s * one,
      std::sqrt(k / 2) * s * e * a + (r_bar / r2 - kBeta / r2 * c * e) * one,
      std::sqrt(k) * b - std::sqrt(k / 2) * s * e * a + (r_bar / r2 + kBeta / r2 * c * e) * one,
      std::sqrt(k) * c * a + kBeta * s * one};
  double dL = 0.0;
  for (int j = 0; j < 6; ++j) dL = std::max(dL, slh::max_abs_diff(q.L[j], L[j]));
  const Complex ca = std::conj(s_bar) + std::conj(kBeta) * c * std::conj(e);
  const Complex cb = std::conj(r_bar) + std::conj(kBeta) * c * std::conj(e);
  const double g = std::sqrt(2 * k) / 4;
  Operator H = kDelta * (ad * a + bd * b) + kChi * (ad * ad * a * a + bd * bd * b * b) -
               (k / r2 * s * std::sin(kPhi)) * (a * bd + ad * b) + (g * I) * (ca * a - std::conj(ca) * ad) +
               (g * I) * (cb * b - std::conj(cb) * bd);
  const double dH = slh::max_abs_diff(q.H, H);

  // Exchange symmetry: swap the inputs, then relabel the modes.
  auto swapped = feed_latch_inputs(compiled.triplet, r_bar, s_bar);
  Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(N * N, N * N);
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) U(j * N + i, i * N + j) = 1.0;
  }
  auto relabel = [&](const Operator& op) {
    return Operator::from_dense(space, U * op.embed(space).dense() * U.adjoint());
  };
  double dSym = slh::max_abs_diff(relabel(swapped.H), q.H);
  for (int j = 0; j < 6; ++j) {
    dSym = std::max(dSym, slh::max_abs_diff(relabel(swapped.L[(j + 3) % 6]), q.L[j]));
    for (int i = 0; i < 6; ++i) {
      dSym = std::max(dSym, slh::max_abs_diff(relabel(swapped.S[(j + 3) % 6][(i + 3) % 6]), q.S[j][i]));
    }
  }
  const bool ok = dS < 1e-9 && dL < 1e-9 && dH < 1e-9 && dSym < 1e-9;
  return {ok, fmt("N=%zu: max diff S %.2e, L %.2e, H %.2e (< 1e-9); exchange symmetry residual %.2e", N, dS, dL, dH,
                  dSym)};
}

Outcome a8_pseudo_nand_forms() {
  namespace c = qhdl::circuit;
  auto kerr = slh::kerr_cavity(kDelta, kChi, kKappa, kKappa, "k", 8);
  auto [k1, k2] = slh::split_block_diagonal(kerr, 1);
  slh::Bindings bind{{"B1", slh::beamsplitter(kPi / 4)}, {"B2", slh::beamsplitter(kTheta)}, {"Phi", slh::phase(kPhi)},
                     {"W", slh::displace(kBeta)},        {"K", kerr},                       {"K1", k1},
                     {"K2", k2}};
  auto C = [](const char* name, std::size_t d) { return c::component(name, name, d); };
  auto id1 = c::identity(1);
  auto nested = c::series(
      c::concat({C("B1", 2), c::series_chain({c::concat({C("W", 1), id1}), c::permutation({2, 1})})}),
      c::concat({id1, c::series_chain({c::concat({C("K", 2), id1}), c::permutation({1, 3, 2}),
                                       c::concat({id1, c::series_chain({C("B2", 2), c::concat({C("Phi", 1), id1})})})})}));
  auto split = c::concat({c::series_chain({C("B1", 2), c::concat({id1, C("K1", 1)})}),
                        c::series_chain({c::concat({C("W", 1), C("K2", 1)}), C("B2", 2), c::concat({C("Phi", 1), id1})})});
  const double d = slh::max_abs_diff(slh::evaluate(nested, bind), slh::evaluate(split, bind));
  return {d < 1e-10, fmt("N=8: max |nested - split form| = %.2e (< 1e-10)", d)};
}

Outcome a9_bistability() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t N = 15;
  const double scale = 15.0 / 75.0;
  pipeline::FockDims fock;
  fock.fallback = N;
  auto latch = pipeline::compile(latch_library(), "latch", "", gate_params(scale), fock);
  const Complex on = scale * kAlphaOn;
  // Port order: s_bar, bias2_in, vac2_in, r_bar, bias1_in, vac1_in.
  auto drive = [&](Complex s, Complex r) { return std::vector<Complex>{s, 0.0, 0.0, r, 0.0, 0.0}; };
  std::vector<dynamics::Segment> schedule;
  for (int rep = 0; rep < 2; ++rep) {
    schedule.push_back({"SET", 0.5, drive(0.0, on)});
    schedule.push_back({"HOLD", 5.0, drive(on, on)});
    schedule.push_back({"RESET", 0.5, drive(on, 0.0)});
    schedule.push_back({"HOLD", 5.0, drive(on, on)});
  }
  auto cfg = sim_config(22.0, 1e-3, 0.01, {"n:nand1.k", "n:nand2.k"});
  cfg.method = dynamics::Method::Mcwf;
  cfg.trajectories = 20;
  cfg.seed = 9009;
  dynamics::QuantumState vac{latch.triplet.space(), dynamics::fock_state(latch.triplet.space())};
  auto result = dynamics::run_input_sequence(latch.triplet, schedule, vac, cfg);

  std::size_t good = 0;
  std::string signs;
  for (const auto& tr : result.traces) {
    // Sign of the mean difference over the last fifth of each segment.
    std::vector<int> seg_sign;
    double start = 0.0;
    for (const auto& seg : schedule) {
      const double end = start + seg.duration, from = end - 0.2 * seg.duration;
      double sum = 0.0;
      for (std::size_t s = 0; s < tr.samples(); ++s) {
        if (tr.times[s] > from + 1e-9 && tr.times[s] <= end + 1e-9) sum += tr.values[0][s].real() - tr.values[1][s].real();
      }
      seg_sign.push_back(sum >= 0 ? 1 : -1);
      start = end;
    }
    bool ok = true;
    for (std::size_t k = 1; k < schedule.size(); ++k) {
      const bool switching = schedule[k].condition != "HOLD";
      ok = ok && (switching ? seg_sign[k] != seg_sign[k - 1] : seg_sign[k] == seg_sign[k - 1]);
    }
    good += ok;
    for (int v : seg_sign) signs += v > 0 ? '+' : '-';
    signs += ' ';
  }
  const double frac = static_cast<double>(good) / static_cast<double>(result.traces.size());
  const double secs = seconds_since(t0);
  return {frac >= 0.9 && secs < 600.0,
          fmt("N=%zu, amplitudes x%.2f: %zu/%zu trajectories keep sign through HOLD and flip on SET/RESET "
              "(%.0f%%, need >= 90%%), %.0f s (< 600 s); segment signs: %s",
              N, scale, good, result.traces.size(), 100 * frac, secs, signs.c_str())};
}

Outcome a10_reduction_pipeline() {
  Eigen::Matrix4d Q;
  Q << -1.0, 1.0, 0.0, 0.0, 0.5, -1.5, 1.0, 0.0, 0.0, 1.0, -1.5, 0.5, 0.0, 0.0, 1.0, -1.0;
  const double dt = 0.01 / Q.cwiseAbs().maxCoeff();
  const std::size_t samples = 1000000;
  std::mt19937_64 rng(1010);
  auto path = testing::sample_ctmc(Q, 0, dt, samples, rng);
  reduction::StateSequence seq{"HOLD", {}};
  for (auto s : path) seq.states.push_back(s + 1);
  auto est = reduction::estimate_markov({seq}, dt, 4);
  Eigen::MatrixXd Qhat = reduction::to_rate_matrix(est).at("HOLD");
  double worst_rel = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i != j && Q(i, j) > 0) worst_rel = std::max(worst_rel, std::abs(Qhat(i, j) / Q(i, j) - 1.0));
    }
  }

  auto model = reduction::jump_slh(Qhat);
  const double T = 2.0;
  auto cfg = sim_config(T, 1e-3, 0.1, {"proj:r:0", "proj:r:1", "proj:r:2", "proj:r:3"});
  cfg.method = dynamics::Method::Mcwf;
  cfg.trajectories = 2000;
  cfg.seed = 1011;
  auto runs = dynamics::mcwf_ensemble(model, dynamics::basis_state(model.space(), 0), cfg);
  const Eigen::MatrixXd expT = testing::expm(T * Qhat);
  double worst_z = 0.0;
  std::string occ;
  for (int k = 0; k < 4; ++k) {
    double sum = 0.0;
    for (const auto& r : runs) sum += r.trace.values[k].back().real();
    const double n = static_cast<double>(runs.size());
    const double p = expT(0, k), se = std::sqrt(p * (1 - p) / n);
    worst_z = std::max(worst_z, std::abs(sum / n - p) / se);
    occ += fmt("%.3f/%.3f ", sum / n, p);
  }
  return {worst_rel < 0.10 && worst_z < 3.0,
          fmt("%zu samples at dt=%.5f: worst off-diagonal rate error %.1f%% (< 10%%); occupancy at T=%.0f "
              "(mcwf/exp) %sworst %.2f SE (< 3)",
              samples, dt, 100 * worst_rel, T, occ.c_str(), worst_z)};
}

Outcome a11_reduced_identities() {
  double drift = 0.0, unitarity = 0.0, hold = 0.0;
  for (std::size_t M : {6, 10, 38}) {
    for (const auto& s : {reduction::sigma_set(M), reduction::sigma_reset(M)}) {
      auto sd = s.adjoint();
      drift = std::max({drift, (s * s).max_abs(), slh::max_abs_diff((sd * s) * (sd * s), sd * s),
                        slh::max_abs_diff(s * sd * s, s)});
    }
    auto drive = reduction::drive_slh(M, kAlphaOn);
    unitarity = std::max(unitarity, slh::residuals(drive).unitarity);
    auto composed = reduction::compose_reduced(reduction::jump_slh(Eigen::MatrixXd::Zero(M, M)), drive, kAlphaOn, kAlphaOn);
    for (const auto& l : composed.L) hold = std::max(hold, l.max_abs());
  }
  return {drift == 0.0 && unitarity == 0.0 && hold < 1e-13,
          fmt("M in {6,10,38}: drift relation residual %.1e (exact), S1 unitarity residual %.1e (exact), "
              "HOLD coupling %.1e (< 1e-13)",
              drift, unitarity, hold)};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome a12_frontend_corpus() {
  std::string detail;
  bool ok = true;
  for (auto files : {std::vector<std::string>{"mach_zehnder.qhdl"}, std::vector<std::string>{"latch.qhdl", "pseudo_nand.qhdl"}}) {
    for (const auto& f : files) {
      try {
        auto d = frontend::parse_file(source_path("examples_qhdl/" + f));
        for (const auto& arch : d.architectures) frontend::validate(d, arch.entity, arch.name);
        auto again = frontend::parse_source(frontend::print_qhdl(d));
        if (frontend::to_json(again) != frontend::to_json(d)) {
          ok = false;
          detail += f + " does not round-trip; ";
        }
      } catch (const std::exception& e) {
        ok = false;
        detail += f + ": " + e.what() + "; ";
      }
    }
  }
  const std::string dir = source_path("tests/data/invalid/");
  auto manifest = nlohmann::json::parse(slurp(dir + "expected.json"));
  std::size_t matched = 0, single = 0;
  for (const auto& [file, want] : manifest.items()) {
    std::vector<frontend::Diagnostic> ds;
    try {
      auto d = frontend::parse_file(dir + file);
      for (const auto& arch : d.architectures) frontend::validate(d, arch.entity, arch.name);
    } catch (const frontend::DiagnosticError& e) {
      ds = e.diagnostics();
    }
    const bool hit = !ds.empty() && ds.size() == want["count"].get<std::size_t>() &&
                     ds[0].loc.line == want["line"].get<int>() && ds[0].loc.col == want["col"].get<int>() &&
                     ds[0].message == want["message"].get<std::string>();
    if (hit) {
      ++matched;
      single += ds.size() == 1;
    } else {
      ok = false;
      detail += file + " missed; ";
    }
  }
  ok = ok && single >= 10;
  return {ok, detail + fmt("Mach-Zehnder and latch parse, validate and round-trip; %zu/%zu invalid files give their "
                           "targeted diagnostic, %zu of them as the only diagnostic (need >= 10)",
                           matched, manifest.size(), single)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"A1", a1_closure},           {"A2", a2_series_as_feedback}, {"A3", a3_feedback_order},
      {"A4", a4_permutations},      {"A5", a5_master_oracle},      {"A6", a6_mcwf_consistency},
      {"A7", a7_latch_formulas},    {"A8", a8_pseudo_nand_forms},  {"A9", a9_bistability},
      {"A10", a10_reduction_pipeline}, {"A11", a11_reduced_identities}, {"A12", a12_frontend_corpus}};
  std::set<std::string> wanted(argv + 1, argv + argc);
  for (const auto& w : wanted) {
    if (std::none_of(criteria.begin(), criteria.end(), [&](const auto& c) { return c.first == w; })) {
      std::fprintf(stderr, "unknown criterion '%s'\n", w.c_str());
      return 2;
    }
  }
  int failures = 0;
  for (const auto& [id, run] : criteria) {
    if (!wanted.empty() && !wanted.count(id)) continue;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    std::printf("%s %s %s\n", id.c_str(), o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
