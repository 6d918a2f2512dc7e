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
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qhdl/slh/triplet.hpp"

namespace qhdl::dynamics {

using slh::Complex;
using slh::DenseMatrix;
using slh::SparseMatrix;
using StateVector = Eigen::VectorXcd;

class DynamicsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// H and L of a triplet as plain matrices on a fixed space, plus the
/// effective non-Hermitian Hamiltonian H - (i/2) Σ L†L. S is dropped: it
/// does not enter the master equation.
struct SystemOperators {
  slh::HilbertSpace space;
  SparseMatrix H;
  std::vector<SparseMatrix> L;
  SparseMatrix H_eff;

  /// `space` defaults to the triplet's own space. Throws DynamicsError if
  /// the triplet does not fit into it.
  static SystemOperators from(const slh::SLHTriplet& m, const slh::HilbertSpace& space);
  static SystemOperators from(const slh::SLHTriplet& m) { return from(m, m.space()); }

  std::size_t dim() const { return space.dim(); }
};

/// Pure or mixed state on a space.
struct QuantumState {
  slh::HilbertSpace space;
  std::variant<DenseMatrix, StateVector> data;

  bool is_pure() const { return std::holds_alternative<StateVector>(data); }
  /// ψψ† for pure states.
  DenseMatrix density() const;
  const StateVector& vector() const;
};

/// Product of Fock states. Modes not listed are in vacuum.
StateVector fock_state(const slh::HilbertSpace& space, const std::map<std::string, std::size_t>& occupation = {});
/// Basis vector |index> of the joint space (0-based).
StateVector basis_state(const slh::HilbertSpace& space, std::size_t index);

/// A named operator whose expectation value is recorded.
struct Observable {
  std::string name;
  SparseMatrix op;
  bool hermitian = true;
};

/// Builds observables from names:
///   n:<mode>          photon number a†a
///   a:<mode>          annihilation operator
///   proj:<mode>:<k>   projector onto Fock state k of the mode
Observable make_observable(const std::string& name, const slh::HilbertSpace& space);
std::vector<Observable> make_observables(const std::vector<std::string>& names, const slh::HilbertSpace& space);

/// tr(Aρ).
Complex expectation(const SparseMatrix& a, const DenseMatrix& rho);
/// <ψ|A|ψ> / <ψ|ψ>.
Complex expectation(const SparseMatrix& a, const StateVector& psi);

/// dρ/dt = -i[H, ρ] + Σ_j (L_j ρ L_j† - ½{L_j†L_j, ρ}).
DenseMatrix liouvillian_apply(const SystemOperators& sys, const DenseMatrix& rho);
DenseMatrix liouvillian_apply(const slh::SLHTriplet& m, const DenseMatrix& rho);

}  // namespace qhdl::dynamics
