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

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "qhdl/frontend/param_expr.hpp"

namespace qhdl::circuit {

class CircuitError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ComponentRef;
struct Series;
struct Concatenation;
struct Feedback;
struct Permutation;
struct Identity;

/// Immutable circuit-algebra expression tree. Every node knows its channel
/// count (cdim). Channel and permutation indices are 1-based throughout.
class Expression {
 public:
  using Node = std::variant<ComponentRef, Series, Concatenation, Feedback, Permutation, Identity>;

  const Node& node() const;
  std::size_t cdim() const { return cdim_; }

  template <class T>
  const T* as() const;
  template <class T>
  bool is() const;

  /// Structural equality.
  friend bool operator==(const Expression& a, const Expression& b);

  /// One-line algebraic form, e.g. `(1_1 + B) << P(2 1)`.
  std::string str() const;

 private:
  Expression(std::shared_ptr<const Node> node, std::size_t cdim) : node_(std::move(node)), cdim_(cdim) {}

  friend Expression make_node(Node node, std::size_t cdim);

  std::shared_ptr<const Node> node_;
  std::size_t cdim_;
};

struct ComponentRef {
  std::string component;
  std::string label;
  std::size_t cdim;
  std::vector<std::pair<std::string, frontend::ParamExpr>> params;
};

/// downstream ◁ upstream: all outputs of `upstream` feed `downstream`.
struct Series {
  Expression downstream;
  Expression upstream;
};

struct Concatenation {
  std::vector<Expression> operands;
};

/// Output channel `out_channel` fed back into input channel `in_channel`.
struct Feedback {
  Expression inner;
  std::size_t out_channel;
  std::size_t in_channel;
};

/// Channel permutation stored by its image tuple: input l goes to output image[l-1].
struct Permutation {
  std::vector<std::size_t> image;
};

struct Identity {
  std::size_t channels;
};

inline const Expression::Node& Expression::node() const { return *node_; }

template <class T>
const T* Expression::as() const {
  return std::get_if<T>(node_.get());
}

template <class T>
bool Expression::is() const {
  return std::holds_alternative<T>(*node_);
}

Expression component(std::string name, std::string label, std::size_t cdim,
                     std::vector<std::pair<std::string, frontend::ParamExpr>> params = {});
/// Builds `downstream ◁ upstream`. Argument order is upstream first.
Expression series(const Expression& upstream, const Expression& downstream);
/// Chain in signal-flow order: series_chain({a, b, c}) = c ◁ b ◁ a.
Expression series_chain(const std::vector<Expression>& flow);
/// Flattens nested concatenations; a single operand is returned unchanged.
Expression concat(const std::vector<Expression>& operands);
Expression feedback(const Expression& inner, std::size_t out_channel, std::size_t in_channel);
Expression permutation(std::vector<std::size_t> image);
Expression identity(std::size_t channels);

bool is_bijection(const std::vector<std::size_t>& image);
/// (outer ∘ inner)(l) = outer(inner(l)).
std::vector<std::size_t> compose(const std::vector<std::size_t>& outer, const std::vector<std::size_t>& inner);
std::vector<std::size_t> invert(const std::vector<std::size_t>& image);
bool is_identity_permutation(const std::vector<std::size_t>& image);

/// Tagged-union JSON: {"op": "series"|"concat"|"feedback"|"perm"|"id"|"ref", ...}.
nlohmann::json to_json(const Expression& e);
Expression expression_from_json(const nlohmann::json& j);

/// Number of nodes of type T in the tree.
template <class T>
std::size_t count_nodes(const Expression& e) {
  std::size_t n = e.is<T>() ? 1 : 0;
  if (const auto* s = e.as<Series>()) return n + count_nodes<T>(s->downstream) + count_nodes<T>(s->upstream);
  if (const auto* c = e.as<Concatenation>()) {
    for (const auto& op : c->operands) n += count_nodes<T>(op);
  }
  if (const auto* f = e.as<Feedback>()) n += count_nodes<T>(f->inner);
  return n;
}

/// Leaves in left-to-right order.
std::vector<ComponentRef> component_refs(const Expression& e);

}  // namespace qhdl::circuit
