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

#include "qhdl/slh/components.hpp"

#include <cmath>

namespace qhdl::slh {

namespace {

Operator kerr_hamiltonian(double delta, double chi, const std::string& mode, std::size_t fock_dim) {
  Operator a = Operator::annihilation(mode, fock_dim);
  Operator ad = a.adjoint();
  return Complex(delta) * (ad * a) + Complex(chi) * (ad * ad * a * a);
}

void check_cavity(const std::string& mode, std::size_t fock_dim) {
  if (fock_dim < 2) throw SLHError("cavity mode '" + mode + "' needs Fock dimension >= 2, got " + std::to_string(fock_dim));
}

}  // namespace

SLHTriplet beamsplitter(double theta) {
  SLHTriplet out = identity_system(2);
  out.S[0][0] = Operator::scalar(std::cos(theta));
  out.S[0][1] = Operator::scalar(-std::sin(theta));
  out.S[1][0] = Operator::scalar(std::sin(theta));
  out.S[1][1] = Operator::scalar(std::cos(theta));
  return out;
}

SLHTriplet phase(double phi) {
  SLHTriplet out = identity_system(1);
  out.S[0][0] = Operator::scalar(std::polar(1.0, phi));
  return out;
}

SLHTriplet displace(Complex alpha) {
  SLHTriplet out = identity_system(1);
  out.L[0] = Operator::scalar(alpha);
  return out;
}

SLHTriplet kerr_cavity(double delta, double chi, double kappa_1, double kappa_2, const std::string& mode,
                       std::size_t fock_dim) {
  check_cavity(mode, fock_dim);
  if (kappa_1 < 0 || kappa_2 < 0) throw SLHError("cavity decay rates must be nonnegative");
  Operator a = Operator::annihilation(mode, fock_dim);
  SLHTriplet out = identity_system(2);
  out.L[0] = Complex(std::sqrt(kappa_1)) * a;
  out.L[1] = Complex(std::sqrt(kappa_2)) * a;
  out.H = kerr_hamiltonian(delta, chi, mode, fock_dim);
  return out;
}

SLHTriplet cavity(double delta, double chi, double kappa, const std::string& mode, std::size_t fock_dim) {
  check_cavity(mode, fock_dim);
  if (kappa < 0) throw SLHError("cavity decay rate must be nonnegative");
  SLHTriplet out = identity_system(1);
  out.L[0] = Complex(std::sqrt(kappa)) * Operator::annihilation(mode, fock_dim);
  out.H = kerr_hamiltonian(delta, chi, mode, fock_dim);
  return out;
}

std::pair<SLHTriplet, SLHTriplet> split_block_diagonal(const SLHTriplet& q, std::size_t first_channels,
                                                       HamiltonianPlacement placement) {
  const auto n = q.channels();
  if (first_channels == 0 || first_channels >= n) {
    throw SLHError("split point " + std::to_string(first_channels) + " must lie strictly inside 1.." +
                   std::to_string(n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      bool off_block = (i < first_channels) != (j < first_channels);
      if (off_block && q.S[i][j].max_abs() != 0.0) {
        throw SLHError("scattering matrix is not block diagonal at (" + std::to_string(i + 1) + ", " +
                       std::to_string(j + 1) + ")");
      }
    }
  }
  SLHTriplet first;
  SLHTriplet second;
  auto take = [&](SLHTriplet& dst, std::size_t from, std::size_t to) {
    dst.S.assign(to - from, std::vector<Operator>(to - from));
    for (std::size_t i = from; i < to; ++i) {
      for (std::size_t j = from; j < to; ++j) dst.S[i - from][j - from] = q.S[i][j];
      dst.L.push_back(q.L[i]);
    }
  };
  take(first, 0, first_channels);
  take(second, first_channels, n);
  (placement == HamiltonianPlacement::First ? first : second).H = q.H;
  return {first, second};
}

}  // namespace qhdl::slh
