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
#include <numbers>
#include <random>

#include "doctest.h"
#include "qhdl/circuit/expression.hpp"
#include "qhdl/slh/components.hpp"
#include "qhdl/slh/evaluate.hpp"
#include "qhdl/slh/model_json.hpp"
#include "qhdl/slh/triplet.hpp"
#include "support/oracles.hpp"

using namespace qhdl::slh;
using qhdl::testing::from_slh;
using qhdl::testing::random_static;
using qhdl::testing::to_slh;

namespace {

constexpr double kPi = std::numbers::pi;
const Complex I(0.0, 1.0);

DenseMatrix scalar_S(const SLHTriplet& q) {
  const auto n = static_cast<Eigen::Index>(q.channels());
  DenseMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = q.S[r][c].value();
  }
  return m;
}

double dist(const DenseMatrix& a, const DenseMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("Hilbert spaces unite by label") {
  auto a = HilbertSpace::single("a", 3), b = HilbertSpace::single("b", 2);
  auto ab = a.unite(b);
  CHECK(ab.dim() == 6);
  CHECK(ab.unite(a) == ab);
  CHECK(ab.contains(b));
  CHECK_THROWS_AS(a.unite(HilbertSpace::single("a", 4)), SLHError);
  CHECK(HilbertSpace().dim() == 1);
}

TEST_CASE("truncated annihilation operator") {
  DenseMatrix expect(2, 2);
  expect << 0, 1, 0, 0;
  CHECK(dist(Operator::annihilation("k", 2).dense(), expect) == 0.0);
  auto a = Operator::annihilation("k", 5).dense();
  for (int n = 0; n < 4; ++n) CHECK(a(n, n + 1).real() == doctest::Approx(std::sqrt(n + 1.0)));
}

TEST_CASE("operator inverse and singularity threshold") {
  auto space = HilbertSpace::single("k", 3);
  DenseMatrix m(3, 3);
  m << 2, 1, 0, 0, 1, 0, I, 0, 3;
  auto inv = inverse(Operator::from_dense(space, m));
  CHECK(dist(inv.dense() * m, DenseMatrix::Identity(3, 3)) < 1e-14);
  CHECK_THROWS_AS(inverse(Operator::scalar(1e-12)), SLHError);
  CHECK(inverse(Operator::scalar(4.0)).value() == Complex(0.25));
}

TEST_CASE("beamsplitter matrices") {
  CHECK(dist(scalar_S(beamsplitter(0.0)), DenseMatrix::Identity(2, 2)) == 0.0);
  DenseMatrix b(2, 2);
  const double h = 1.0 / std::sqrt(2.0);
  b << h, -h, h, h;
  CHECK(dist(scalar_S(beamsplitter(kPi / 4)), b) < 1e-15);
  auto s = scalar_S(beamsplitter(0.891));
  CHECK(std::round(s(0, 0).real() * 1e4) / 1e4 == 0.6286);
  CHECK(std::round(s(1, 0).real() * 1e4) / 1e4 == 0.7777);
  CHECK(beamsplitter(0.891).L[0].value() == Complex(0.0));
}

TEST_CASE("phase and displacement primitives") {
  CHECK(max_abs_diff(phase(0.0), identity_system(1)) == 0.0);
  CHECK(std::abs(phase(kPi).S[0][0].value() - Complex(-1.0)) < 1e-15);
  CHECK(max_abs_diff(displace(0.0), identity_system(1)) == 0.0);
  const Complex beta(-34.289, -11.909);
  CHECK(displace(beta).L[0].value() == beta);
}

TEST_CASE("series of two displacements") {
  const Complex alpha(0.7, -1.2), beta(-0.3, 2.1);
  auto q = series_product(displace(beta), displace(alpha));
  CHECK(q.S[0][0].value() == Complex(1.0));
  CHECK(std::abs(q.L[0].value() - (alpha + beta)) < 1e-15);
  CHECK(std::abs(q.H.value() - Complex((std::conj(beta) * alpha).imag())) < 1e-15);
}

TEST_CASE("Kerr cavity model") {
  auto small = kerr_cavity(1.0, 5.0, 1.0, 1.0, "k", 2);
  CHECK(dist(small.H.dense(), DenseMatrix(Eigen::Vector2cd(0, 1).asDiagonal())) == 0.0);

  auto k4 = kerr_cavity(0.0, 1.0, 1.0, 1.0, "k", 4);
  Eigen::Vector4cd diag(0, 0, 2, 6);
  CHECK(dist(k4.H.dense(), DenseMatrix(diag.asDiagonal())) < 1e-13);

  auto paper = kerr_cavity(50.0, -5.0 / 6.0, 25.0, 25.0, "k", 6);
  CHECK(paper.channels() == 2);
  CHECK(dist(scalar_S(paper), DenseMatrix::Identity(2, 2)) == 0.0);
  auto a = Operator::annihilation("k", 6);
  CHECK(max_abs_diff(paper.L[0], Complex(5.0) * a) < 1e-15);
  CHECK(max_abs_diff(paper.L[1], Complex(5.0) * a) < 1e-15);
  CHECK_THROWS_AS(kerr_cavity(1.0, 0.0, 1.0, 1.0, "k", 1), SLHError);
  CHECK_THROWS_AS(kerr_cavity(1.0, 0.0, -1.0, 1.0, "k", 4), SLHError);
}

TEST_CASE("concatenation stacks blocks") {
  CHECK(max_abs_diff(concatenate(identity_system(1), identity_system(1)), identity_system(2)) == 0.0);
  const Complex alpha(1.0, 2.0), beta(-3.0, 0.5);
  auto d = concatenate(displace(alpha), displace(beta));
  CHECK(d.L[0].value() == alpha);
  CHECK(d.L[1].value() == beta);

  const double theta = 0.4;
  auto kb = concatenate(kerr_cavity(1.0, 0.5, 4.0, 9.0, "k", 3), beamsplitter(theta));
  REQUIRE(kb.channels() == 4);
  auto space = HilbertSpace::single("k", 3);
  auto a = Operator::annihilation("k", 3);
  DenseMatrix S = DenseMatrix::Zero(4, 4);
  S(0, 0) = S(1, 1) = 1.0;
  S(2, 2) = S(3, 3) = std::cos(theta);
  S(2, 3) = -std::sin(theta);
  S(3, 2) = std::sin(theta);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) CHECK(max_abs_diff(kb.S[r][c], Operator::scalar(S(r, c)).embed(space)) < 1e-15);
  }
  CHECK(max_abs_diff(kb.L[0], Complex(2.0) * a) < 1e-15);
  CHECK(max_abs_diff(kb.L[1], Complex(3.0) * a) < 1e-15);
  CHECK(kb.L[2].max_abs() == 0.0);
  CHECK(kb.L[3].max_abs() == 0.0);

  CHECK_THROWS_AS(concatenate(cavity(0, 0, 1, "k", 3), cavity(0, 0, 1, "k", 4)), SLHError);
}

TEST_CASE("series product identity laws and phases") {
  std::mt19937_64 rng(3);
  auto q = to_slh(random_static(3, rng));
  CHECK(max_abs_diff(series_product(q, identity_system(3)), q) < 1e-15);
  CHECK(max_abs_diff(series_product(identity_system(3), q), q) < 1e-15);
  CHECK(max_abs_diff(series_product(phase(0.4), phase(1.1)), phase(1.5)) < 1e-15);
  CHECK_THROWS_AS(series_product(q, identity_system(2)), SLHError);
}

TEST_CASE("coherent drive into a cavity") {
  const double delta = 0.7, kappa = 2.0;
  const Complex alpha(0.3, -0.8);
  auto q = series_product(cavity(delta, 0.0, kappa, "c", 5), displace(alpha));
  auto a = Operator::annihilation("c", 5);
  auto ad = a.adjoint();
  auto id = Operator::identity(HilbertSpace::single("c", 5));
  CHECK(max_abs_diff(q.L[0], Complex(std::sqrt(kappa)) * a + alpha * id) < 1e-15);
  Operator H = Complex(delta) * (ad * a) + (std::sqrt(kappa) / (2.0 * I)) * (alpha * ad - std::conj(alpha) * a);
  CHECK(max_abs_diff(q.H, H) < 1e-15);
}

TEST_CASE("feeding a beamsplitter output back gives a perfect reflector") {
  for (double theta : {0.3, 1.0, 2.5}) {
    CAPTURE(theta);
    auto q = feedback_reduce(beamsplitter(theta), 1, 1);
    REQUIRE(q.channels() == 1);
    CHECK(std::abs(q.S[0][0].value() - Complex(-1.0)) < 1e-14);
  }
  CHECK_THROWS_AS(feedback_reduce(identity_system(2), 1, 1), SingularFeedbackError);
  CHECK_THROWS_AS(feedback_reduce(identity_system(1), 1, 1), SLHError);
}

TEST_CASE("series product equals feedback of the concatenation") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    auto q1 = to_slh(random_static(1, rng)), q2 = to_slh(random_static(1, rng));
    CHECK(max_abs_diff(feedback_reduce(concatenate(q1, q2), 1, 2), series_product(q2, q1)) < 1e-12);
  }
}

TEST_CASE("operations agree with an independent dense oracle") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    auto a = random_static(2, rng), b = random_static(2, rng), c = random_static(3, rng);
    CHECK(qhdl::testing::max_diff(from_slh(concatenate(to_slh(a), to_slh(c))), qhdl::testing::oracle_concat(a, c)) <
          1e-14);
    CHECK(qhdl::testing::max_diff(from_slh(series_product(to_slh(b), to_slh(a))), qhdl::testing::oracle_series(b, a)) <
          1e-13);
    CHECK(qhdl::testing::max_diff(from_slh(feedback_reduce(to_slh(c), 3, 2)), qhdl::testing::oracle_feedback(c, 2, 1)) <
          1e-12);
  }
}

TEST_CASE("series product is associative") {
  std::mt19937_64 rng(29);
  auto space = HilbertSpace::single("m", 3);
  auto a = Operator::annihilation("m", 3);
  for (int trial = 0; trial < 30; ++trial) {
    auto q1 = to_slh(random_static(2, rng)), q2 = to_slh(random_static(2, rng)), q3 = to_slh(random_static(2, rng));
    q2.L[1] = q2.L[1] * Operator::identity(space) + Complex(0.5) * a;  // operator-valued coupling
    auto lhs = series_product(series_product(q3, q2), q1);
    auto rhs = series_product(q3, series_product(q2, q1));
    CHECK(max_abs_diff(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("closure over random compositions") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    auto q1 = to_slh(random_static(2, rng)), q2 = to_slh(random_static(2, rng));
    for (const auto& q : {concatenate(q1, q2), series_product(q2, q1), feedback_reduce(concatenate(q1, q2), 2, 3)}) {
      auto r = residuals(q);
      CHECK(r.unitarity < 1e-10);
      CHECK(r.hermiticity < 1e-12);
      CHECK(check_invariants(q).empty());
    }
  }
}

TEST_CASE("feedback loops commute up to index bookkeeping") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    auto q = to_slh(random_static(3, rng));
    // Loops 1->2 and 3->1; removing one shifts the later indices down.
    auto first = feedback_reduce(feedback_reduce(q, 1, 2), 2, 1);
    auto second = feedback_reduce(feedback_reduce(q, 3, 1), 1, 1);
    CHECK(max_abs_diff(first, second) < 1e-12);
  }
}

TEST_CASE("permutation systems") {
  CHECK(max_abs_diff(permutation_system({1, 2, 3}), identity_system(3)) == 0.0);
  DenseMatrix swap(2, 2);
  swap << 0, 1, 1, 0;
  CHECK(dist(scalar_S(permutation_system({2, 1})), swap) == 0.0);
  DenseMatrix cyc = DenseMatrix::Zero(3, 3);
  cyc(1, 0) = cyc(2, 1) = cyc(0, 2) = 1.0;  // channel l goes to σ(l)
  CHECK(dist(scalar_S(permutation_system({2, 3, 1})), cyc) == 0.0);
  CHECK_THROWS_AS(permutation_system({1, 1}), SLHError);
  auto composed = series_product(permutation_system({2, 3, 1}), permutation_system({1, 3, 2}));
  CHECK(max_abs_diff(composed, permutation_system({2, 1, 3})) == 0.0);
}

TEST_CASE("Mach-Zehnder expression evaluates to B diag(e^{i phi}, 1) B") {
  namespace c = qhdl::circuit;
  const double phi = 0.37;
  auto e = c::series_chain({c::component("beamsplitter", "b1", 2), c::concat({c::component("phase", "p", 1), c::identity(1)}),
                            c::component("beamsplitter", "b2", 2)});
  Bindings bind{{"b1", beamsplitter(kPi / 4)}, {"b2", beamsplitter(kPi / 4)}, {"p", phase(phi)}};
  auto q = evaluate(e, bind);
  DenseMatrix B = scalar_S(beamsplitter(kPi / 4));
  DenseMatrix D = DenseMatrix::Identity(2, 2);
  D(0, 0) = std::polar(1.0, phi);
  CHECK(dist(scalar_S(q), B * D * B) < 1e-15);
  CHECK_THROWS_AS(evaluate(e, Bindings{{"b1", beamsplitter(0.1)}}), SLHError);
}

TEST_CASE("block-diagonal split") {
  auto k = kerr_cavity(50.0, -5.0 / 6.0, 25.0, 25.0, "k", 4);
  auto [k1, k2] = split_block_diagonal(k, 1);
  CHECK(k1.channels() == 1);
  CHECK(k2.channels() == 1);
  CHECK(max_abs_diff(k1.H, k.H) == 0.0);
  CHECK(k2.H.max_abs() == 0.0);
  CHECK(max_abs_diff(concatenate(k1, k2), k) == 0.0);
  CHECK_THROWS_AS(split_block_diagonal(beamsplitter(0.3), 1), SLHError);
}

TEST_CASE("model JSON round trip is exact") {
  auto q = series_product(concatenate(kerr_cavity(1.0, -0.5, 2.0, 3.0, "x", 4), displace(Complex(0.25, -1.0 / 3.0))),
                          concatenate(beamsplitter(0.891), phase(2.546)));
  auto back = model_from_json(model_to_json(q));
  CHECK(back.space() == q.space());
  CHECK(max_abs_diff(back, q) == 0.0);
}
