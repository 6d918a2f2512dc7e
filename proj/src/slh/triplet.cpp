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

#include "qhdl/slh/triplet.hpp"

#include <algorithm>
#include <cstdio>

#include "qhdl/circuit/expression.hpp"

namespace qhdl::slh {

namespace {

std::string format_residual(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

}  // namespace

HilbertSpace SLHTriplet::space() const {
  HilbertSpace out = H.space();
  for (const auto& row : S) {
    for (const auto& s : row) out = out.unite(s.space());
  }
  for (const auto& l : L) out = out.unite(l.space());
  return out;
}

SLHTriplet SLHTriplet::embedded(const HilbertSpace& target) const {
  SLHTriplet out = *this;
  for (auto& row : out.S) {
    for (auto& s : row) s = s.embed(target);
  }
  for (auto& l : out.L) l = l.embed(target);
  out.H = out.H.embed(target);
  return out;
}

SLHTriplet concatenate(const SLHTriplet& q1, const SLHTriplet& q2) {
  const auto n1 = q1.channels();
  const auto n2 = q2.channels();
  // Fails early on conflicting mode dimensions.
  (void)q1.space().unite(q2.space());
  SLHTriplet out;
  out.S.assign(n1 + n2, std::vector<Operator>(n1 + n2));
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n1; ++j) out.S[i][j] = q1.S[i][j];
  }
  for (std::size_t i = 0; i < n2; ++i) {
    for (std::size_t j = 0; j < n2; ++j) out.S[n1 + i][n1 + j] = q2.S[i][j];
  }
  out.L = q1.L;
  out.L.insert(out.L.end(), q2.L.begin(), q2.L.end());
  out.H = q1.H + q2.H;
  return out;
}

SLHTriplet series_product(const SLHTriplet& q2, const SLHTriplet& q1) {
  const auto n = q1.channels();
  if (q2.channels() != n) {
    throw SLHError("series product needs equal channel counts, got " + std::to_string(q2.channels()) + " and " +
                   std::to_string(n));
  }
  SLHTriplet out;
  out.S.assign(n, std::vector<Operator>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Operator acc;
      for (std::size_t m = 0; m < n; ++m) acc += q2.S[i][m] * q1.S[m][j];
      out.S[i][j] = acc;
    }
  }
  // S2 L1, reused for both L and the interaction term.
  std::vector<Operator> s2l1(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t m = 0; m < n; ++m) s2l1[i] += q2.S[i][m] * q1.L[m];
  }
  out.L.resize(n);
  Operator coupling;
  for (std::size_t i = 0; i < n; ++i) {
    out.L[i] = q2.L[i] + s2l1[i];
    coupling += q2.L[i].adjoint() * s2l1[i];
  }
  out.H = q1.H + q2.H + coupling.imag_part();
  return out;
}

SLHTriplet feedback_reduce(const SLHTriplet& q, std::size_t k, std::size_t l) {
  const auto n = q.channels();
  if (n < 2) throw SLHError("feedback needs at least 2 channels, got " + std::to_string(n));
  if (k < 1 || k > n || l < 1 || l > n) {
    throw SLHError("feedback indices (" + std::to_string(k) + ", " + std::to_string(l) + ") out of range 1.." +
                   std::to_string(n));
  }
  --k;
  --l;
  Operator gap = Operator::identity(q.S[k][l].space()) - q.S[k][l];
  Operator inv;
  try {
    inv = inverse(gap);
  } catch (const SLHError& e) {
    throw SingularFeedbackError("feedback from output " + std::to_string(k + 1) + " to input " + std::to_string(l + 1) +
                                " is not well-posed: 1 - S_kl is singular (" + e.what() + ")");
  }

  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  for (std::size_t i = 0; i < n; ++i) {
    if (i != k) rows.push_back(i);
    if (i != l) cols.push_back(i);
  }
  // Column (S_il)_{i != k} times (1 - S_kl)^-1, shared by S and L.
  std::vector<Operator> left(n - 1);
  for (std::size_t a = 0; a < rows.size(); ++a) left[a] = q.S[rows[a]][l] * inv;

  SLHTriplet out;
  out.S.assign(n - 1, std::vector<Operator>(n - 1));
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = 0; b < cols.size(); ++b) {
      out.S[a][b] = q.S[rows[a]][cols[b]] + left[a] * q.S[k][cols[b]];
    }
  }
  out.L.resize(n - 1);
  for (std::size_t a = 0; a < rows.size(); ++a) out.L[a] = q.L[rows[a]] + left[a] * q.L[k];

  Operator weighted;
  for (std::size_t j = 0; j < n; ++j) weighted += q.L[j].adjoint() * q.S[j][l];
  out.H = q.H + (weighted * inv * q.L[k]).imag_part();
  return out;
}

SLHTriplet identity_system(std::size_t n) {
  if (n == 0) throw SLHError("identity system needs at least one channel");
  std::vector<std::size_t> image(n);
  for (std::size_t i = 0; i < n; ++i) image[i] = i + 1;
  return permutation_system(image);
}

SLHTriplet permutation_system(const std::vector<std::size_t>& image) {
  if (!circuit::is_bijection(image)) throw SLHError("permutation image is not a bijection");
  const auto n = image.size();
  SLHTriplet out;
  out.S.assign(n, std::vector<Operator>(n));
  for (std::size_t l = 0; l < n; ++l) out.S[image[l] - 1][l] = Operator::scalar(1.0);
  out.L.assign(n, Operator());
  return out;
}

SLHTriplet trivial_system() { return SLHTriplet{}; }

Residuals residuals(const SLHTriplet& q) {
  const auto n = q.channels();
  Residuals out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Operator sts;
      Operator sst;
      for (std::size_t m = 0; m < n; ++m) {
        sts += q.S[m][i].adjoint() * q.S[m][j];
        sst += q.S[i][m] * q.S[j][m].adjoint();
      }
      if (i == j) {
        sts -= Operator::scalar(1.0);
        sst -= Operator::scalar(1.0);
      }
      out.unitarity = std::max({out.unitarity, sts.max_abs(), sst.max_abs()});
    }
  }
  out.hermiticity = (q.H - q.H.adjoint()).max_abs();
  return out;
}

std::vector<std::string> check_invariants(const SLHTriplet& q) {
  auto r = residuals(q);
  std::vector<std::string> warnings;
  auto check = [&](double value, const char* what) {
    if (value > 1e-6) throw SLHError(std::string(what) + " residual " + format_residual(value) + " exceeds 1e-6");
    if (value > 1e-10) warnings.push_back(std::string(what) + " residual " + format_residual(value) + " exceeds 1e-10");
  };
  check(r.unitarity, "unitarity");
  check(r.hermiticity, "hermiticity");
  return warnings;
}

double max_abs_diff(const SLHTriplet& a, const SLHTriplet& b) {
  if (a.channels() != b.channels()) {
    throw SLHError("comparing triplets with " + std::to_string(a.channels()) + " and " +
                   std::to_string(b.channels()) + " channels");
  }
  double out = max_abs_diff(a.H, b.H);
  for (std::size_t i = 0; i < a.channels(); ++i) {
    out = std::max(out, max_abs_diff(a.L[i], b.L[i]));
    for (std::size_t j = 0; j < a.channels(); ++j) out = std::max(out, max_abs_diff(a.S[i][j], b.S[i][j]));
  }
  return out;
}

}  // namespace qhdl::slh
