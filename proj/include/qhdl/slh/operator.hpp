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

#include <complex>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "qhdl/slh/hilbert_space.hpp"

namespace qhdl::slh {

using Complex = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<Complex>;
using DenseMatrix = Eigen::MatrixXcd;

/// Sparse complex operator on a HilbertSpace. Operators on different spaces
/// can be combined freely; both sides are embedded into the union space
/// first, acting as identity on modes they do not mention. A scalar lives on
/// the trivial space as a 1x1 matrix.
class Operator {
 public:
  /// The scalar zero.
  Operator();
  Operator(HilbertSpace space, SparseMatrix matrix);

  static Operator scalar(Complex value);
  static Operator identity(const HilbertSpace& space = {});
  /// Truncated annihilation operator, <n|a|n+1> = sqrt(n+1).
  static Operator annihilation(const std::string& label, std::size_t dim);
  /// |row><col| on a single mode, 0-based.
  static Operator transition(const std::string& label, std::size_t dim, std::size_t row, std::size_t col);
  static Operator from_dense(const HilbertSpace& space, const DenseMatrix& m);

  const HilbertSpace& space() const { return space_; }
  const SparseMatrix& matrix() const { return matrix_; }
  bool is_scalar() const { return space_.trivial(); }
  /// Value of a scalar operator.
  Complex value() const;

  Operator embed(const HilbertSpace& target) const;
  Operator adjoint() const;
  /// (A - A†) / 2i.
  Operator imag_part() const;
  DenseMatrix dense() const;
  /// Largest entry magnitude.
  double max_abs() const;
  /// Drops entries with magnitude at or below `tol`.
  Operator pruned(double tol = 0.0) const;

  Operator operator-() const;
  Operator& operator+=(const Operator& other);
  Operator& operator-=(const Operator& other);
  Operator& operator*=(const Operator& other);

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator*(Operator a, const Operator& b) { return a *= b; }
  friend Operator operator*(Complex c, const Operator& a);
  friend Operator operator*(const Operator& a, Complex c) { return c * a; }

 private:
  HilbertSpace space_;
  SparseMatrix matrix_;
};

/// max |a - b| over entries after embedding into the union space.
double max_abs_diff(const Operator& a, const Operator& b);

/// Inverse of a square operator by dense LU. Throws SLHError when the
/// smallest pivot magnitude is below `pivot_tol`.
Operator inverse(const Operator& a, double pivot_tol = 1e-10);

/// Kronecker product helper used by tests and model builders.
SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b);

}  // namespace qhdl::slh
