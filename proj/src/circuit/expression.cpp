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

#include "qhdl/circuit/expression.hpp"

#include <algorithm>
#include <functional>

namespace qhdl::circuit {

Expression make_node(Expression::Node node, std::size_t cdim) {
  return Expression(std::make_shared<const Expression::Node>(std::move(node)), cdim);
}

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

std::string image_str(const std::vector<std::size_t>& image) {
  std::string out;
  for (auto v : image) {
    if (!out.empty()) out += ' ';
    out += std::to_string(v);
  }
  return out;
}

}  // namespace

bool operator==(const Expression& a, const Expression& b) {
  if (a.node_ == b.node_) return true;
  if (a.cdim_ != b.cdim_ || a.node_->index() != b.node_->index()) return false;
  return std::visit(
      Overloaded{
          [&](const ComponentRef& x) {
            const auto& y = std::get<ComponentRef>(*b.node_);
            return x.component == y.component && x.label == y.label && x.cdim == y.cdim && x.params == y.params;
          },
          [&](const Series& x) {
            const auto& y = std::get<Series>(*b.node_);
            return x.downstream == y.downstream && x.upstream == y.upstream;
          },
          [&](const Concatenation& x) { return x.operands == std::get<Concatenation>(*b.node_).operands; },
          [&](const Feedback& x) {
            const auto& y = std::get<Feedback>(*b.node_);
            return x.out_channel == y.out_channel && x.in_channel == y.in_channel && x.inner == y.inner;
          },
          [&](const Permutation& x) { return x.image == std::get<Permutation>(*b.node_).image; },
          [&](const Identity& x) { return x.channels == std::get<Identity>(*b.node_).channels; },
      },
      *a.node_);
}

std::string Expression::str() const {
  return std::visit(
      Overloaded{
          [](const ComponentRef& x) { return x.label; },
          [](const Series& x) {
            auto wrap = [](const Expression& e) {
              return e.is<Concatenation>() ? "(" + e.str() + ")" : e.str();
            };
            return wrap(x.downstream) + " << " + wrap(x.upstream);
          },
          [](const Concatenation& x) {
            std::string out;
            for (const auto& op : x.operands) {
              if (!out.empty()) out += " + ";
              out += op.is<Series>() ? "(" + op.str() + ")" : op.str();
            }
            return out;
          },
          [](const Feedback& x) {
            return "[" + x.inner.str() + "]_(" + std::to_string(x.out_channel) + "->" + std::to_string(x.in_channel) + ")";
          },
          [](const Permutation& x) { return "P(" + image_str(x.image) + ")"; },
          [](const Identity& x) { return "1_" + std::to_string(x.channels); },
      },
      *node_);
}

Expression component(std::string name, std::string label, std::size_t cdim,
                     std::vector<std::pair<std::string, frontend::ParamExpr>> params) {
  if (cdim == 0) throw CircuitError("component '" + label + "' must have at least one channel");
  return make_node(ComponentRef{std::move(name), std::move(label), cdim, std::move(params)}, cdim);
}

Expression series(const Expression& upstream, const Expression& downstream) {
  if (upstream.cdim() != downstream.cdim()) {
    throw CircuitError("series product channel mismatch: " + std::to_string(upstream.cdim()) + " vs " +
                       std::to_string(downstream.cdim()));
  }
  return make_node(Series{downstream, upstream}, upstream.cdim());
}

Expression series_chain(const std::vector<Expression>& flow) {
  if (flow.empty()) throw CircuitError("empty series chain");
  Expression acc = flow.back();
  for (std::size_t i = flow.size() - 1; i-- > 0;) acc = series(flow[i], acc);
  return acc;
}

Expression concat(const std::vector<Expression>& operands) {
  if (operands.empty()) throw CircuitError("concatenation of an empty list");
  std::vector<Expression> flat;
  std::size_t cdim = 0;
  for (const auto& op : operands) {
    if (const auto* c = op.as<Concatenation>()) {
      flat.insert(flat.end(), c->operands.begin(), c->operands.end());
    } else {
      flat.push_back(op);
    }
    cdim += op.cdim();
  }
  if (flat.size() == 1) return flat.front();
  return make_node(Concatenation{std::move(flat)}, cdim);
}

Expression feedback(const Expression& inner, std::size_t out_channel, std::size_t in_channel) {
  auto n = inner.cdim();
  if (n < 2) throw CircuitError("feedback requires at least 2 channels, got " + std::to_string(n));
  if (out_channel < 1 || out_channel > n || in_channel < 1 || in_channel > n) {
    throw CircuitError("feedback indices (" + std::to_string(out_channel) + ", " + std::to_string(in_channel) +
                       ") out of range 1.." + std::to_string(n));
  }
  return make_node(Feedback{inner, out_channel, in_channel}, n - 1);
}

Expression permutation(std::vector<std::size_t> image) {
  if (!is_bijection(image)) throw CircuitError("permutation image (" + image_str(image) + ") is not a bijection");
  auto n = image.size();
  return make_node(Permutation{std::move(image)}, n);
}

Expression identity(std::size_t channels) {
  if (channels == 0) throw CircuitError("identity system needs at least one channel");
  return make_node(Identity{channels}, channels);
}

bool is_bijection(const std::vector<std::size_t>& image) {
  if (image.empty()) return false;
  std::vector<bool> seen(image.size(), false);
  for (auto v : image) {
    if (v < 1 || v > image.size() || seen[v - 1]) return false;
    seen[v - 1] = true;
  }
  return true;
}

std::vector<std::size_t> compose(const std::vector<std::size_t>& outer, const std::vector<std::size_t>& inner) {
  if (outer.size() != inner.size()) throw CircuitError("composing permutations of different size");
  std::vector<std::size_t> out(inner.size());
  for (std::size_t l = 0; l < inner.size(); ++l) out[l] = outer[inner[l] - 1];
  return out;
}

std::vector<std::size_t> invert(const std::vector<std::size_t>& image) {
  std::vector<std::size_t> out(image.size());
  for (std::size_t l = 0; l < image.size(); ++l) out[image[l] - 1] = l + 1;
  return out;
}

bool is_identity_permutation(const std::vector<std::size_t>& image) {
  for (std::size_t l = 0; l < image.size(); ++l) {
    if (image[l] != l + 1) return false;
  }
  return true;
}

nlohmann::json to_json(const Expression& e) {
  using nlohmann::json;
  json out = std::visit(
      Overloaded{
          [](const ComponentRef& x) {
            json params = json::array();
            for (const auto& [name, value] : x.params) params.push_back({name, value.str()});
            return json{{"op", "ref"}, {"component", x.component}, {"label", x.label}, {"cdim", x.cdim},
                        {"params", params}};
          },
          [](const Series& x) {
            return json{{"op", "series"}, {"downstream", to_json(x.downstream)}, {"upstream", to_json(x.upstream)}};
          },
          [](const Concatenation& x) {
            json ops = json::array();
            for (const auto& op : x.operands) ops.push_back(to_json(op));
            return json{{"op", "concat"}, {"operands", ops}};
          },
          [](const Feedback& x) {
            return json{{"op", "feedback"}, {"inner", to_json(x.inner)}, {"out", x.out_channel}, {"in", x.in_channel}};
          },
          [](const Permutation& x) { return json{{"op", "perm"}, {"image", x.image}}; },
          [](const Identity& x) { return json{{"op", "id"}, {"n", x.channels}}; },
      },
      e.node());
  out["cdim"] = e.cdim();
  return out;
}

Expression expression_from_json(const nlohmann::json& j) {
  const std::string op = j.at("op").get<std::string>();
  if (op == "ref") {
    std::vector<std::pair<std::string, frontend::ParamExpr>> params;
    if (j.contains("params")) {
      for (const auto& item : j.at("params")) {
        params.emplace_back(item.at(0).get<std::string>(), frontend::parse_param_expr(item.at(1).get<std::string>()));
      }
    }
    return component(j.at("component").get<std::string>(), j.at("label").get<std::string>(),
                     j.at("cdim").get<std::size_t>(), std::move(params));
  }
  if (op == "series") {
    return series(expression_from_json(j.at("upstream")), expression_from_json(j.at("downstream")));
  }
  if (op == "concat") {
    std::vector<Expression> ops;
    for (const auto& item : j.at("operands")) ops.push_back(expression_from_json(item));
    return concat(ops);
  }
  if (op == "feedback") {
    return feedback(expression_from_json(j.at("inner")), j.at("out").get<std::size_t>(), j.at("in").get<std::size_t>());
  }
  if (op == "perm") return permutation(j.at("image").get<std::vector<std::size_t>>());
  if (op == "id") return identity(j.at("n").get<std::size_t>());
  throw CircuitError("unknown expression op '" + op + "'");
}

std::vector<ComponentRef> component_refs(const Expression& e) {
  std::vector<ComponentRef> out;
  std::function<void(const Expression&)> walk = [&](const Expression& x) {
    std::visit(Overloaded{
                   [&](const ComponentRef& r) { out.push_back(r); },
                   [&](const Series& s) {
                     walk(s.upstream);
                     walk(s.downstream);
                   },
                   [&](const Concatenation& c) {
                     for (const auto& op : c.operands) walk(op);
                   },
                   [&](const Feedback& f) { walk(f.inner); },
                   [](const Permutation&) {},
                   [](const Identity&) {},
               },
               x.node());
  };
  walk(e);
  return out;
}

}  // namespace qhdl::circuit
