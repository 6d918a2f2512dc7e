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

#include "qhdl/slh/operator.hpp"

#include <cmath>
#include <vector>

#include <Eigen/LU>

namespace qhdl::slh {

namespace {

using Triplet = Eigen::Triplet<Complex>;

SparseMatrix scalar_matrix(Complex value) {
  SparseMatrix m(1, 1);
  if (value != Complex(0.0)) m.insert(0, 0) = value;
  m.makeCompressed();
  return m;
}

void drop_zeros(SparseMatrix& m) {
  m.prune([](Eigen::Index, Eigen::Index, const Complex& v) { return v != Complex(0.0); });
}

}  // namespace

Operator::Operator() : matrix_(scalar_matrix(0.0)) {}

Operator::Operator(HilbertSpace space, SparseMatrix matrix) : space_(std::move(space)), matrix_(std::move(matrix)) {
  auto d = static_cast<Eigen::Index>(space_.dim());
  if (matrix_.rows() != d || matrix_.cols() != d) {
    throw SLHError("operator matrix is " + std::to_string(matrix_.rows()) + "x" + std::to_string(matrix_.cols()) +
                   " but space " + space_.str() + " has dimension " + std::to_string(d));
  }
  matrix_.makeCompressed();
}

Operator Operator::scalar(Complex value) { return Operator(HilbertSpace(), scalar_matrix(value)); }

Operator Operator::identity(const HilbertSpace& space) {
  auto d = static_cast<Eigen::Index>(space.dim());
  SparseMatrix m(d, d);
  m.setIdentity();
  return Operator(space, std::move(m));
}

Operator Operator::annihilation(const std::string& label, std::size_t dim) {
  auto d = static_cast<Eigen::Index>(dim);
  std::vector<Triplet> entries;
  for (Eigen::Index n = 0; n + 1 < d; ++n) entries.emplace_back(n, n + 1, std::sqrt(static_cast<double>(n + 1)));
  SparseMatrix m(d, d);
  m.setFromTriplets(entries.begin(), entries.end());
  return Operator(HilbertSpace::single(label, dim), std::move(m));
}

Operator Operator::transition(const std::string& label, std::size_t dim, std::size_t row, std::size_t col) {
  if (row >= dim || col >= dim) throw SLHError("transition index out of range for mode '" + label + "'");
  auto d = static_cast<Eigen::Index>(dim);
  SparseMatrix m(d, d);
  m.insert(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = 1.0;
  return Operator(HilbertSpace::single(label, dim), std::move(m));
}

Operator Operator::from_dense(const HilbertSpace& space, const DenseMatrix& m) {
  SparseMatrix s = m.sparseView();
  drop_zeros(s);
  return Operator(space, std::move(s));
}

Complex Operator::value() const {
  if (!is_scalar()) throw SLHError("operator on " + space_.str() + " is not a scalar");
  return matrix_.coeff(0, 0);
}

Operator Operator::embed(const HilbertSpace& target) const {
  if (space_ == target) return *this;
  if (!target.contains(space_)) {
    throw SLHError("cannot embed operator on " + space_.str() + " into " + target.str());
  }
  if (is_scalar()) {
    Complex v = value();
    auto d = static_cast<Eigen::Index>(target.dim());
    SparseMatrix m(d, d);
    if (v != Complex(0.0)) {
      m.setIdentity();
      m *= v;
    }
    return Operator(target, std::move(m));
  }

  // Mixed-radix offsets: every joint index splits into a digit for the
  // operator's own modes and a digit for the spectator modes.
  const auto& modes = target.modes();
  std::vector<std::size_t> stride(modes.size());
  std::size_t s = 1;
  for (std::size_t i = modes.size(); i-- > 0;) {
    stride[i] = s;
    s *= modes[i].dim;
  }
  std::vector<std::size_t> own;
  std::vector<std::size_t> spectator;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    (space_.index_of(modes[i].label) ? own : spectator).push_back(i);
  }
  auto offsets = [&](const std::vector<std::size_t>& which) {
    std::vector<std::size_t> out{0};
    for (auto i : which) {
      std::vector<std::size_t> next;
      next.reserve(out.size() * modes[i].dim);
      for (auto base : out) {
        for (std::size_t digit = 0; digit < modes[i].dim; ++digit) next.push_back(base + digit * stride[i]);
      }
      out = std::move(next);
    }
    return out;
  };
  auto own_off = offsets(own);
  auto spec_off = offsets(spectator);

  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(matrix_.nonZeros()) * spec_off.size());
  for (Eigen::Index k = 0; k < matrix_.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(matrix_, k); it; ++it) {
      auto r = own_off[static_cast<std::size_t>(it.row())];
      auto c = own_off[static_cast<std::size_t>(it.col())];
      for (auto off : spec_off) {
        entries.emplace_back(static_cast<Eigen::Index>(r + off), static_cast<Eigen::Index>(c + off), it.value());
      }
    }
  }
  auto d = static_cast<Eigen::Index>(target.dim());
  SparseMatrix m(d, d);
  m.setFromTriplets(entries.begin(), entries.end());
  return Operator(target, std::move(m));
}

Operator Operator::adjoint() const {
  SparseMatrix m = matrix_.adjoint();
  return Operator(space_, std::move(m));
}

Operator Operator::imag_part() const {
  SparseMatrix m = (matrix_ - SparseMatrix(matrix_.adjoint())) * Complex(0.0, -0.5);
  drop_zeros(m);
  return Operator(space_, std::move(m));
}

DenseMatrix Operator::dense() const { return DenseMatrix(matrix_); }

double Operator::max_abs() const {
  double out = 0.0;
  for (Eigen::Index k = 0; k < matrix_.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(matrix_, k); it; ++it) out = std::max(out, std::abs(it.value()));
  }
  return out;
}

Operator Operator::pruned(double tol) const {
  SparseMatrix m = matrix_;
  m.prune([tol](Eigen::Index, Eigen::Index, const Complex& v) { return std::abs(v) > tol; });
  return Operator(space_, std::move(m));
}

Operator Operator::operator-() const {
  SparseMatrix m = -matrix_;
  return Operator(space_, std::move(m));
}

Operator& Operator::operator+=(const Operator& other) {
  if (space_ == other.space_) {
    matrix_ += other.matrix_;
  } else {
    auto joint = space_.unite(other.space_);
    *this = embed(joint);
    matrix_ += other.embed(joint).matrix_;
  }
  drop_zeros(matrix_);
  return *this;
}

Operator& Operator::operator-=(const Operator& other) { return *this += -other; }

Operator& Operator::operator*=(const Operator& other) {
  if (other.is_scalar()) {
    matrix_ *= other.value();
  } else if (is_scalar()) {
    Complex v = value();
    *this = other;
    matrix_ *= v;
  } else if (space_ == other.space_) {
    matrix_ = SparseMatrix(matrix_ * other.matrix_);
  } else {
    auto joint = space_.unite(other.space_);
    *this = embed(joint);
    matrix_ = SparseMatrix(matrix_ * other.embed(joint).matrix_);
  }
  drop_zeros(matrix_);
  return *this;
}

Operator operator*(Complex c, const Operator& a) {
  Operator out = a;
  out.matrix_ *= c;
  drop_zeros(out.matrix_);
  return out;
}

double max_abs_diff(const Operator& a, const Operator& b) { return (a - b).max_abs(); }

Operator inverse(const Operator& a, double pivot_tol) {
  if (a.is_scalar()) {
    Complex v = a.value();
    if (std::abs(v) < pivot_tol) throw SLHError("operator is singular (|value| = " + std::to_string(std::abs(v)) + ")");
    return Operator::scalar(1.0 / v);
  }
  Eigen::PartialPivLU<DenseMatrix> lu(a.dense());
  double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (min_pivot < pivot_tol) {
    throw SLHError("operator is singular (smallest LU pivot " + std::to_string(min_pivot) + ")");
  }
  // Entries many orders below the largest one are rounding residue.
  DenseMatrix inv = lu.inverse();
  double scale = inv.cwiseAbs().maxCoeff();
  return Operator::from_dense(a.space(), inv).pruned(scale * 1e-15);
}

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
  for (Eigen::Index ka = 0; ka < a.outerSize(); ++ka) {
    for (SparseMatrix::InnerIterator ia(a, ka); ia; ++ia) {
      for (Eigen::Index kb = 0; kb < b.outerSize(); ++kb) {
        for (SparseMatrix::InnerIterator ib(b, kb); ib; ++ib) {
          entries.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(),
                               ia.value() * ib.value());
        }
      }
    }
  }
  SparseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  out.setFromTriplets(entries.begin(), entries.end());
  return out;
}

}  // namespace qhdl::slh
