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


#include <cmath>
#include <random>

#include "doctest.h"
#include "qhdl/reduction/reduction.hpp"
#include "qhdl/slh/components.hpp"
#include "support/oracles.hpp"

using namespace qhdl;
using namespace qhdl::reduction;
using slh::Operator;

namespace {

dynamics::ExpectationTrace d_trace(const std::vector<double>& d, const std::vector<std::string>& conditions = {}) {
  dynamics::ExpectationTrace tr;
  tr.observables = {"n:nand1.k", "n:nand2.k"};
  tr.values.assign(2, {});
  for (std::size_t s = 0; s < d.size(); ++s) {
    tr.times.push_back(0.1 * static_cast<double>(s));
    tr.values[0].push_back(d[s] + 2.0);
    tr.values[1].push_back(2.0);
  }
  tr.conditions = conditions;
  return tr;
}

Operator ket_bra(std::size_t M, std::size_t row, std::size_t col) {
  return Operator::transition(kReducedMode, M, row - 1, col - 1);
}

double zero_norm(const Operator& op) { return op.max_abs(); }

}  // namespace

TEST_CASE("padding sizes") {
  CHECK(padded_size(1) == 6);
  CHECK(padded_size(6) == 6);
  CHECK(padded_size(7) == 10);
  CHECK(padded_size(38) == 38);
  CHECK(padded_size(39) == 42);
}

TEST_CASE("constant trace occupies one state") {
  BinningSpec spec;
  spec.pad = false;
  auto cg = coarse_grain({d_trace({0.3, 0.3, 0.3, 0.3})}, spec);
  CHECK(cg.table.size() == 1);
  CHECK(cg.table.visited == 1);
  spec.pad = true;
  CHECK(coarse_grain({d_trace({0.3, 0.3})}, spec).table.size() == 6);
}

TEST_CASE("binning uses floor of the scaled difference; larger D comes first") {
  BinningSpec spec;
  spec.pad = false;
  auto cg = coarse_grain({d_trace({0.4, 1.6, 1.4})}, spec);
  CHECK(cg.table.bins == std::vector<long>{1, 0});
  REQUIRE(cg.sequences.size() == 1);
  CHECK(cg.sequences[0].states == std::vector<std::size_t>{2, 1, 1});

  spec.bin_width = 0.5;
  spec.origin = -1.0;
  cg = coarse_grain({d_trace({-0.9, 0.1, -0.4})}, spec);
  CHECK(cg.table.bins == std::vector<long>{2, 1, 0});
  CHECK_THROWS_AS(cg.table.state_of(7), ReductionError);
}

TEST_CASE("padding keeps visited bins contiguous in the middle") {
  BinningSpec spec;
  auto cg = coarse_grain({d_trace({0.5, 1.5, 2.5})}, spec);
  REQUIRE(cg.table.size() == 6);
  CHECK(cg.table.visited == 3);
  for (std::size_t k = 1; k < cg.table.size(); ++k) CHECK(cg.table.bins[k] == cg.table.bins[k - 1] - 1);
}

TEST_CASE("sequences split where the input condition changes") {
  BinningSpec spec;
  spec.pad = false;
  auto cg = coarse_grain({d_trace({0.5, 0.5, 1.5, 1.5, 0.5}, {"SET", "SET", "HOLD", "HOLD", ""})}, spec);
  REQUIRE(cg.sequences.size() == 2);
  CHECK(cg.sequences[0].condition == "SET");
  CHECK(cg.sequences[0].states.size() == 2);
  CHECK(cg.sequences[1].condition == "HOLD");
  CHECK(cg.sequences[1].states.size() == 3);
}

TEST_CASE("lag-one transition counts") {
  auto est = estimate_markov({{"HOLD", {1, 1, 2, 2, 1}}}, 1.0);
  Eigen::Matrix2d counts;
  counts << 1, 1, 1, 1;
  CHECK(est.counts.at("HOLD") == counts);
  CHECK(est.P.at("HOLD") == Eigen::Matrix2d::Constant(0.5));

  est = estimate_markov({{"HOLD", {2, 2, 2}}}, 1.0, 3);
  Eigen::Matrix3d P = Eigen::Matrix3d::Identity();
  CHECK(est.P.at("HOLD") == P);
}

TEST_CASE("transition matrix estimate converges for a sampled chain") {
  Eigen::Matrix2d P;
  P << 0.9, 0.1, 0.2, 0.8;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u;
  std::vector<std::size_t> states{1};
  for (int s = 1; s < 100000; ++s) states.push_back(u(rng) < P(states.back() - 1, 0) ? 1 : 2);
  auto est = estimate_markov({{"HOLD", states}}, 1.0);
  CHECK((est.P.at("HOLD") - P).cwiseAbs().maxCoeff() < 0.01);
}

TEST_CASE("rate matrices") {
  CHECK(to_rate_matrix(Eigen::Matrix3d::Identity(), 0.1).isZero());
  Eigen::Matrix2d Q;
  Q << -0.5, 0.5, 0.5, -0.5;
  CHECK((to_rate_matrix(Eigen::Matrix2d::Constant(0.5), 1.0) - Q).cwiseAbs().maxCoeff() < 1e-15);
  Eigen::Matrix3d P;
  P << 0.7, 0.2, 0.1, 0.0, 1.0, 0.0, 0.25, 0.25, 0.5;
  auto R = to_rate_matrix(P, 0.5);
  CHECK((R.rowwise().sum()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("jump model") {
  auto trivial = jump_slh(Eigen::Matrix3d::Zero());
  CHECK(trivial.channels() == 0);

  const double g = 0.8;
  Eigen::Matrix2d Q;
  Q << -g, g, g, -g;
  auto q = jump_slh(Q);
  REQUIRE(q.channels() == 2);
  CHECK(slh::max_abs_diff(q.L[0], std::sqrt(g) * ket_bra(2, 2, 1)) < 1e-15);
  CHECK(slh::max_abs_diff(q.L[1], std::sqrt(g) * ket_bra(2, 1, 2)) < 1e-15);
  CHECK(q.H.max_abs() == 0.0);
  CHECK(slh::residuals(q).unitarity == 0.0);
}

TEST_CASE("drift operators for six states") {
  CHECK(slh::max_abs_diff(sigma_set(6), ket_bra(6, 2, 5)) == 0.0);
  CHECK(slh::max_abs_diff(sigma_reset(6), ket_bra(6, 5, 2)) == 0.0);
  CHECK_THROWS_AS(drive_slh(8, 1.0), ReductionError);
  CHECK_THROWS_AS(drive_slh(2, 1.0), ReductionError);
}

TEST_CASE("drift relations and drive unitarity") {
  for (std::size_t M : {6, 10, 14, 38}) {
    CAPTURE(M);
    for (const auto& s : {sigma_set(M), sigma_reset(M)}) {
      auto sd = s.adjoint();
      CHECK(zero_norm(s * s) == 0.0);
      CHECK(slh::max_abs_diff((sd * s) * (sd * s), sd * s) == 0.0);
      CHECK(slh::max_abs_diff(s * sd * s, s) == 0.0);
    }
    CHECK(slh::residuals(drive_slh(M, 2.0)).unitarity == 0.0);
  }
}

TEST_CASE("input conditions of the reduced drive") {
  const std::size_t M = 10;
  const slh::Complex alpha(1.7, 0.4);
  auto drive = drive_slh(M, alpha);
  auto trivial = jump_slh(Eigen::MatrixXd::Zero(M, M));
  auto space = slh::HilbertSpace::single(kReducedMode, M);
  auto one = Operator::identity(space);
  auto sS = sigma_set(M), sR = sigma_reset(M);

  auto hold = compose_reduced(trivial, drive, alpha, alpha);
  for (const auto& l : hold.L) CHECK(zero_norm(l) < 1e-13);

  auto set = compose_reduced(trivial, drive, 0.0, alpha);
  CHECK(slh::max_abs_diff(set.L[0], -alpha * (one - sS.adjoint() * sS)) < 1e-13);
  CHECK(zero_norm(set.L[1]) < 1e-13);
  CHECK(slh::max_abs_diff(set.L[2], -alpha * sS) < 1e-13);
  CHECK(zero_norm(set.L[3]) < 1e-13);

  auto reset = compose_reduced(trivial, drive, alpha, 0.0);
  CHECK(zero_norm(reset.L[0]) < 1e-13);
  CHECK(slh::max_abs_diff(reset.L[1], -alpha * (one - sR.adjoint() * sR)) < 1e-13);
  CHECK(zero_norm(reset.L[2]) < 1e-13);
  CHECK(slh::max_abs_diff(reset.L[3], -alpha * sR) < 1e-13);

  // For M = 10 the SET drift moves population 9 -> 6 and 7 -> 4 at rate |alpha|^2.
  auto L = set.L[2].dense();
  CHECK(std::norm(L(5, 8)) == doctest::Approx(std::norm(alpha)));
  CHECK(std::norm(L(3, 6)) == doctest::Approx(std::norm(alpha)));
  CHECK(std::abs(L.sum()) == doctest::Approx(2 * std::abs(alpha)));
}

TEST_CASE("output emulation") {
  const slh::Complex beta(0.6, -1.1);
  auto plain = output_slh(std::vector<OutputParams>(4), beta);
  auto space = slh::HilbertSpace::single(kReducedMode, 4);
  CHECK(slh::max_abs_diff(plain.S[0][0], Operator::identity(space)) == 0.0);
  CHECK(zero_norm(plain.S[0][1]) == 0.0);
  CHECK(slh::max_abs_diff(plain.L[0], beta * Operator::identity(space)) == 0.0);
  CHECK(zero_norm(plain.L[1]) == 0.0);

  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  std::vector<OutputParams> params(5);
  for (auto& p : params) p = {ang(rng), ang(rng), ang(rng)};
  auto q = output_slh(params, beta);
  CHECK(slh::residuals(q).unitarity < 1e-15);
  for (std::size_t i = 0; i < params.size(); ++i) {
    const auto& p = params[i];
    const auto k = static_cast<Eigen::Index>(i);
    const slh::Complex out1 = std::polar(1.0, p.phi_1) * std::cos(p.theta) * beta;
    const slh::Complex out2 = std::polar(1.0, p.phi_2) * std::sin(p.theta) * beta;
    CHECK(std::abs(q.L[0].dense()(k, k) - out1) < 1e-15);
    CHECK(std::abs(q.L[1].dense()(k, k) - out2) < 1e-15);
  }
}

TEST_CASE("drive strength suggestion recovers the excess drift rate") {
  const std::size_t M = 6;
  const double alpha = 1.5;
  Eigen::MatrixXd hold = Eigen::MatrixXd::Zero(M, M), set = hold, reset = hold;
  hold(1, 0) = 0.2;
  set(1, 0) = 0.2;
  set(4, 1) = alpha * alpha;  // state 5 -> 2
  reset(1, 4) = alpha * alpha;  // state 2 -> 5
  auto s = suggest_alpha({{"HOLD", hold}, {"SET", set}, {"RESET", reset}}, M);
  REQUIRE(s.has_value());
  CHECK(*s == doctest::Approx(alpha));
  CHECK_FALSE(suggest_alpha({{"HOLD", hold}}, M).has_value());
}

TEST_CASE("reduction from traces records its metadata") {
  std::mt19937_64 rng(12);
  Eigen::Matrix2d Q;
  Q << -0.5, 0.5, 1.0, -1.0;
  auto path = qhdl::testing::sample_ctmc(Q, 0, 0.01, 20000, rng);
  std::vector<double> d;
  for (auto s : path) d.push_back(s == 0 ? 3.5 : -3.5);
  auto tr = d_trace(d, std::vector<std::string>(d.size(), "HOLD"));
  BinningSpec spec;
  spec.bin_width = 7.0;
  spec.origin = -3.5;
  auto model = reduce({tr}, spec, 0.01, 2.0);
  CHECK(model.table.size() == 6);
  CHECK(model.table.visited == 2);
  CHECK(model.triplet.channels() == 4 + 2);
  CHECK(model.inputs.front() == "s_bar");
  CHECK(model.outputs.back() == "jump_out_2");
  auto doc = reduced_to_json(model, spec);
  CHECK(doc["metadata"]["M"] == 6);
  CHECK(doc["metadata"]["delta_t"] == 0.01);
  CHECK(doc["metadata"]["visited"] == 2);
  CHECK(doc["metadata"]["conditions"] == nlohmann::json::array({"HOLD"}));
  CHECK(doc["ports"]["in"].size() == 6);

  CHECK_THROWS_AS(reduce({d_trace({1.0, 1.0}, {"SET", "SET"})}, spec, 0.1, 1.0), ReductionError);
}
