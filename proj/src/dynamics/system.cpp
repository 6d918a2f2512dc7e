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


#include "qhdl/dynamics/system.hpp"

#include <charconv>

namespace qhdl::dynamics {

namespace {

const Complex kI(0.0, 1.0);

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) return out;
    start = pos + 1;
  }
}

const slh::Mode& find_mode(const slh::HilbertSpace& space, const std::string& label, const std::string& context) {
  auto i = space.index_of(label);
  if (!i) throw DynamicsError(context + ": no mode '" + label + "' in model space " + space.str());
  return space.modes()[*i];
}

}  // namespace

SystemOperators SystemOperators::from(const slh::SLHTriplet& m, const slh::HilbertSpace& space) {
  if (!space.contains(m.space())) {
    throw DynamicsError("model space " + m.space().str() + " does not fit into " + space.str());
  }
  SystemOperators out;
  out.space = space;
  out.H = m.H.embed(space).matrix();
  SparseMatrix decay(out.H.rows(), out.H.cols());
  for (const auto& l : m.L) {
    out.L.push_back(l.embed(space).matrix());
    decay += SparseMatrix(out.L.back().adjoint()) * out.L.back();
  }
  out.H_eff = out.H - Complex(0.0, 0.5) * decay;
  out.H_eff.prune(Complex(0.0));
  return out;
}

DenseMatrix QuantumState::density() const {
  if (const auto* rho = std::get_if<DenseMatrix>(&data)) return *rho;
  const auto& psi = std::get<StateVector>(data);
  return psi * psi.adjoint();
}

const StateVector& QuantumState::vector() const {
  if (const auto* psi = std::get_if<StateVector>(&data)) return *psi;
  throw DynamicsError("a density matrix cannot be used where a state vector is required");
}

StateVector fock_state(const slh::HilbertSpace& space, const std::map<std::string, std::size_t>& occupation) {
  const auto& modes = space.modes();
  for (const auto& [label, n] : occupation) {
    const auto& mode = find_mode(space, label, "initial state");
    if (n >= mode.dim) {
      throw DynamicsError("initial state: occupation " + std::to_string(n) + " of mode '" + label +
                          "' exceeds its dimension " + std::to_string(mode.dim));
    }
  }
  std::size_t index = 0;
  for (const auto& mode : modes) {
    auto it = occupation.find(mode.label);
    index = index * mode.dim + (it == occupation.end() ? 0 : it->second);
  }
  return basis_state(space, index);
}

StateVector basis_state(const slh::HilbertSpace& space, std::size_t index) {
  if (index >= space.dim()) throw DynamicsError("basis index " + std::to_string(index) + " out of range");
  StateVector psi = StateVector::Zero(static_cast<Eigen::Index>(space.dim()));
  psi(static_cast<Eigen::Index>(index)) = 1.0;
  return psi;
}

Observable make_observable(const std::string& name, const slh::HilbertSpace& space) {
  auto parts = split(name, ':');
  Observable out{name, {}, true};
  if ((parts[0] == "n" || parts[0] == "a") && parts.size() == 2) {
    const auto& mode = find_mode(space, parts[1], "observable '" + name + "'");
    auto a = slh::Operator::annihilation(mode.label, mode.dim);
    auto op = parts[0] == "n" ? a.adjoint() * a : a;
    out.op = op.embed(space).matrix();
    out.hermitian = parts[0] == "n";
    return out;
  }
  if (parts[0] == "proj" && parts.size() == 3) {
    const auto& mode = find_mode(space, parts[1], "observable '" + name + "'");
    std::size_t k = 0;
    const auto& text = parts[2];
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), k);
    if (ec != std::errc() || end != text.data() + text.size() || k >= mode.dim) {
      throw DynamicsError("observable '" + name + "': bad Fock index '" + text + "'");
    }
    out.op = slh::Operator::transition(mode.label, mode.dim, k, k).embed(space).matrix();
    return out;
  }
  throw DynamicsError("unknown observable '" + name + "' (expected n:<mode>, a:<mode> or proj:<mode>:<k>)");
}

std::vector<Observable> make_observables(const std::vector<std::string>& names, const slh::HilbertSpace& space) {
  std::vector<Observable> out;
  out.reserve(names.size());
  for (const auto& n : names) out.push_back(make_observable(n, space));
  return out;
}

Complex expectation(const SparseMatrix& a, const DenseMatrix& rho) {
  Complex out = 0.0;
  for (Eigen::Index k = 0; k < a.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(a, k); it; ++it) out += it.value() * rho(it.col(), it.row());
  }
  return out;
}

Complex expectation(const SparseMatrix& a, const StateVector& psi) {
  StateVector apsi = a * psi;
  return psi.dot(apsi) / psi.squaredNorm();
}

DenseMatrix liouvillian_apply(const SystemOperators& sys, const DenseMatrix& rho) {
  auto d = static_cast<Eigen::Index>(sys.dim());
  if (rho.rows() != d || rho.cols() != d) {
    throw DynamicsError("density matrix is " + std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()) +
                        " but the model space " + sys.space.str() + " has dimension " + std::to_string(d));
  }
  DenseMatrix out = -kI * (sys.H_eff * rho);
  out += kI * (rho * SparseMatrix(sys.H_eff.adjoint()));
  for (const auto& l : sys.L) {
    DenseMatrix lr = l * rho;
    out += lr * SparseMatrix(l.adjoint());
  }
  return out;
}

DenseMatrix liouvillian_apply(const slh::SLHTriplet& m, const DenseMatrix& rho) {
  return liouvillian_apply(SystemOperators::from(m), rho);
}

}  // namespace qhdl::dynamics
