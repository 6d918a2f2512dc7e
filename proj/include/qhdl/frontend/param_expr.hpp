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
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qhdl/frontend/diagnostic.hpp"

namespace qhdl::frontend {

/// Numeric kinds of generics, ordered by width: int < real < complex.
enum class NumericKind { Int, Real, Complex };

std::string_view to_string(NumericKind kind);

/// Arithmetic expression over generic names and numeric literals, as it
/// appears in generic defaults and generic maps. Immutable; cheap to copy.
class ParamExpr {
 public:
  enum class Op { Add, Sub, Mul, Div };

  struct Literal {
    std::complex<double> value;
    NumericKind kind;
  };
  struct Ref {
    std::string name;
    SourceLoc loc;
  };
  struct Negate;
  struct Binary;
  struct ComplexPair;
  using Node = std::variant<Literal, Ref, Negate, Binary, ComplexPair>;

  static ParamExpr literal(std::complex<double> value, NumericKind kind);
  static ParamExpr real(double value) { return literal(value, NumericKind::Real); }
  static ParamExpr ref(std::string name, SourceLoc loc = {});
  static ParamExpr negate(ParamExpr operand);
  static ParamExpr binary(Op op, ParamExpr lhs, ParamExpr rhs);
  /// The `(re, im)` complex literal form; both parts may be expressions.
  static ParamExpr complex_pair(ParamExpr re, ParamExpr im);

  const Node& node() const;

  using Lookup = std::function<std::optional<std::complex<double>>(const std::string&)>;

  /// Throws std::invalid_argument naming the first unresolved identifier.
  std::complex<double> evaluate(const Lookup& lookup) const;

  /// Widest kind produced by the expression, given the kinds of referenced
  /// names. Names the lookup does not know count as int.
  NumericKind kind(const std::function<std::optional<NumericKind>(const std::string&)>& lookup) const;

  /// Every identifier reference, in source order.
  std::vector<Ref> refs() const;

  /// Canonical text; parses back to a structurally identical expression.
  std::string str() const;

  friend bool operator==(const ParamExpr& a, const ParamExpr& b) { return a.str() == b.str(); }

 private:
  explicit ParamExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct ParamExpr::Negate {
  ParamExpr operand;
};
struct ParamExpr::Binary {
  Op op;
  ParamExpr lhs;
  ParamExpr rhs;
};
struct ParamExpr::ComplexPair {
  ParamExpr re;
  ParamExpr im;
};

inline const ParamExpr::Node& ParamExpr::node() const { return *node_; }

/// Parses a standalone expression (e.g. from JSON or the command line).
ParamExpr parse_param_expr(std::string_view text);

/// Formats a double so that it re-lexes to the same value and kind.
std::string format_real(double value);

}  // namespace qhdl::frontend
