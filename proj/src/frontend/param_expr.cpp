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

#include "qhdl/frontend/param_expr.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace qhdl::frontend {

std::string_view to_string(NumericKind kind) {
  switch (kind) {
    case NumericKind::Int: return "int";
    case NumericKind::Real: return "real";
    case NumericKind::Complex: return "complex";
  }
  return "?";
}

ParamExpr ParamExpr::literal(std::complex<double> value, NumericKind kind) {
  return ParamExpr(std::make_shared<const Node>(Literal{value, kind}));
}

ParamExpr ParamExpr::ref(std::string name, SourceLoc loc) {
  return ParamExpr(std::make_shared<const Node>(Ref{std::move(name), loc}));
}

ParamExpr ParamExpr::negate(ParamExpr operand) {
  return ParamExpr(std::make_shared<const Node>(Negate{std::move(operand)}));
}

ParamExpr ParamExpr::binary(Op op, ParamExpr lhs, ParamExpr rhs) {
  return ParamExpr(std::make_shared<const Node>(Binary{op, std::move(lhs), std::move(rhs)}));
}

ParamExpr ParamExpr::complex_pair(ParamExpr re, ParamExpr im) {
  return ParamExpr(std::make_shared<const Node>(ComplexPair{std::move(re), std::move(im)}));
}

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

int precedence(const ParamExpr::Node& node) {
  if (const auto* b = std::get_if<ParamExpr::Binary>(&node)) {
    return (b->op == ParamExpr::Op::Add || b->op == ParamExpr::Op::Sub) ? 1 : 2;
  }
  if (std::holds_alternative<ParamExpr::Negate>(node)) return 3;
  return 4;
}

char op_char(ParamExpr::Op op) {
  switch (op) {
    case ParamExpr::Op::Add: return '+';
    case ParamExpr::Op::Sub: return '-';
    case ParamExpr::Op::Mul: return '*';
    case ParamExpr::Op::Div: return '/';
  }
  return '?';
}

}  // namespace

std::string format_real(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  std::string text(buf, res.ptr);
  if (text.find_first_of(".e") == std::string::npos) text += ".0";
  return text;
}

std::complex<double> ParamExpr::evaluate(const Lookup& lookup) const {
  return std::visit(
      Overloaded{
          [](const Literal& lit) { return lit.value; },
          [&](const Ref& ref) {
            auto value = lookup(ref.name);
            if (!value) throw std::invalid_argument("unresolved identifier '" + ref.name + "'");
            return *value;
          },
          [&](const Negate& neg) { return -neg.operand.evaluate(lookup); },
          [&](const Binary& bin) {
            auto lhs = bin.lhs.evaluate(lookup);
            auto rhs = bin.rhs.evaluate(lookup);
            switch (bin.op) {
              case Op::Add: return lhs + rhs;
              case Op::Sub: return lhs - rhs;
              case Op::Mul: return lhs * rhs;
              case Op::Div:
                if (rhs == std::complex<double>(0.0)) throw std::invalid_argument("division by zero");
                return lhs / rhs;
            }
            return std::complex<double>{};
          },
          [&](const ComplexPair& pair) {
            auto re = pair.re.evaluate(lookup);
            auto im = pair.im.evaluate(lookup);
            return re + std::complex<double>(0.0, 1.0) * im;
          },
      },
      *node_);
}

NumericKind ParamExpr::kind(const std::function<std::optional<NumericKind>(const std::string&)>& lookup) const {
  return std::visit(
      Overloaded{
          [](const Literal& lit) { return lit.kind; },
          [&](const Ref& ref) { return lookup(ref.name).value_or(NumericKind::Int); },
          [&](const Negate& neg) { return neg.operand.kind(lookup); },
          [&](const Binary& bin) {
            auto k = std::max(bin.lhs.kind(lookup), bin.rhs.kind(lookup));
            // int / int is not closed over the integers
            if (bin.op == Op::Div && k == NumericKind::Int) k = NumericKind::Real;
            return k;
          },
          [](const ComplexPair&) { return NumericKind::Complex; },
      },
      *node_);
}

std::vector<ParamExpr::Ref> ParamExpr::refs() const {
  std::vector<Ref> out;
  std::function<void(const ParamExpr&)> walk = [&](const ParamExpr& e) {
    std::visit(Overloaded{
                   [](const Literal&) {},
                   [&](const Ref& ref) { out.push_back(ref); },
                   [&](const Negate& neg) { walk(neg.operand); },
                   [&](const Binary& bin) {
                     walk(bin.lhs);
                     walk(bin.rhs);
                   },
                   [&](const ComplexPair& pair) {
                     walk(pair.re);
                     walk(pair.im);
                   },
               },
               e.node());
  };
  walk(*this);
  return out;
}

std::string ParamExpr::str() const {
  return std::visit(
      Overloaded{
          [](const Literal& lit) {
            if (lit.kind == NumericKind::Int) {
              return std::to_string(static_cast<long long>(std::llround(lit.value.real())));
            }
            if (lit.kind == NumericKind::Complex) {
              return "(" + format_real(lit.value.real()) + ", " + format_real(lit.value.imag()) + ")";
            }
            return format_real(lit.value.real());
          },
          [](const Ref& ref) { return ref.name; },
          [](const Negate& neg) {
            // "--" would start a comment
            bool wrap = precedence(neg.operand.node()) <= 3;
            return wrap ? "-(" + neg.operand.str() + ")" : "-" + neg.operand.str();
          },
          [](const Binary& bin) {
            int prec = (bin.op == Op::Add || bin.op == Op::Sub) ? 1 : 2;
            std::string lhs = bin.lhs.str();
            std::string rhs = bin.rhs.str();
            if (precedence(bin.lhs.node()) < prec) lhs = "(" + lhs + ")";
            if (precedence(bin.rhs.node()) <= prec) rhs = "(" + rhs + ")";
            return lhs + " " + op_char(bin.op) + " " + rhs;
          },
          [](const ComplexPair& pair) { return "(" + pair.re.str() + ", " + pair.im.str() + ")"; },
      },
      *node_);
}

}  // namespace qhdl::frontend
