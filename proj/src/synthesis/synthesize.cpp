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

#include "qhdl/synthesis/synthesize.hpp"

#include <algorithm>
#include <optional>

namespace qhdl::synthesis {

using circuit::Expression;
using frontend::Direction;
using frontend::NetlistGraph;

namespace {

std::string port_label(const std::string& instance, const std::string& port) { return instance + ":" + port; }
std::string signal_label(std::size_t net) { return "net:" + std::to_string(net); }

class LabelList {
 public:
  void push(std::string label) { labels_.push_back(std::move(label)); }
  std::size_t size() const { return labels_.size(); }
  const std::string& at(std::size_t i) const { return labels_.at(i); }

  /// 1-based position of `label`.
  std::size_t index(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw SynthesisDefect("channel label '" + label + "' not found");
    return static_cast<std::size_t>(it - labels_.begin()) + 1;
  }
  void erase(std::size_t one_based) { labels_.erase(labels_.begin() + static_cast<std::ptrdiff_t>(one_based) - 1); }

 private:
  std::vector<std::string> labels_;
};

std::size_t entity_port_index(const NetlistGraph& g, Direction dir, const std::string& port) {
  auto names = g.entity.port_names(dir);
  auto it = std::find(names.begin(), names.end(), port);
  if (it == names.end()) throw SynthesisDefect("no entity port '" + port + "'");
  return static_cast<std::size_t>(it - names.begin()) + 1;
}

}  // namespace

Expression synthesize(const NetlistGraph& g) {
  std::vector<Expression> blocks;
  LabelList outs;
  LabelList ins;
  for (const auto& inst : g.instances) {
    std::vector<std::pair<std::string, frontend::ParamExpr>> params;
    for (const auto& assoc : inst.generic_map) params.emplace_back(assoc.formal, assoc.actual);
    auto in_ports = inst.ports(Direction::In);
    blocks.push_back(circuit::component(inst.component.name, inst.name, in_ports.size(), std::move(params)));
    for (const auto& p : in_ports) ins.push(port_label(inst.name, p));
    for (const auto& p : inst.ports(Direction::Out)) outs.push(port_label(inst.name, p));
  }

  // One identity channel per instance-to-instance net and per
  // entity-to-entity net.
  std::size_t padding = 0;
  for (std::size_t i = 0; i < g.nets.size(); ++i) {
    if (g.nets[i].internal() || g.nets[i].passthrough()) {
      outs.push(signal_label(i));
      ins.push(signal_label(i));
      ++padding;
    }
  }
  if (padding > 0) blocks.push_back(circuit::identity(padding));
  if (blocks.empty()) throw SynthesisDefect("entity '" + g.entity.name + "' has no channels");
  Expression q = circuit::concat(blocks);

  auto close = [&](const std::string& out_label, const std::string& in_label) {
    auto k = outs.index(out_label);
    auto l = ins.index(in_label);
    q = circuit::feedback(q, k, l);
    outs.erase(k);
    ins.erase(l);
  };
  // Instance outputs into the padding channels...
  for (const auto& inst : g.instances) {
    for (const auto& p : inst.ports(Direction::Out)) {
      const auto& net = g.net_of(inst, p);
      if (!net.internal()) continue;
      close(port_label(inst.name, p), signal_label(&net - g.nets.data()));
    }
  }
  // ...and the padding channels into instance inputs.
  for (const auto& inst : g.instances) {
    for (const auto& p : inst.ports(Direction::In)) {
      const auto& net = g.net_of(inst, p);
      if (!net.internal()) continue;
      close(signal_label(&net - g.nets.data()), port_label(inst.name, p));
    }
  }

  const auto n = g.entity.port_names(Direction::In).size();
  if (outs.size() != n || ins.size() != n || q.cdim() != n) {
    throw SynthesisDefect("channel count " + std::to_string(q.cdim()) + " after feedback does not match " +
                          std::to_string(n) + " entity ports");
  }

  // Which entity port each remaining channel belongs to.
  auto net_of_label = [&](const std::string& label) -> const frontend::Net& {
    if (label.rfind("net:", 0) == 0) return g.nets.at(std::stoul(label.substr(4)));
    auto colon = label.find(':');
    std::string instance = label.substr(0, colon);
    std::string port = label.substr(colon + 1);
    for (const auto& inst : g.instances) {
      if (inst.name == instance) return g.net_of(inst, port);
    }
    throw SynthesisDefect("label '" + label + "' names no instance");
  };
  std::vector<std::size_t> sigma_out(n);
  std::vector<std::size_t> tau_in(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& out_net = net_of_label(outs.at(i));
    if (!out_net.sink.is_entity()) throw SynthesisDefect("output '" + outs.at(i) + "' does not reach the entity");
    sigma_out[i] = entity_port_index(g, Direction::Out, out_net.sink.port);
    const auto& in_net = net_of_label(ins.at(i));
    if (!in_net.driver.is_entity()) throw SynthesisDefect("input '" + ins.at(i) + "' is not driven by the entity");
    tau_in[i] = entity_port_index(g, Direction::In, in_net.driver.port);
  }
  if (!circuit::is_bijection(sigma_out) || !circuit::is_bijection(tau_in)) {
    throw SynthesisDefect("residual channels do not map one-to-one onto entity ports");
  }
  // tau_in sends channel positions to entity inputs; the input permutation
  // runs the other way.
  auto sigma_in = circuit::invert(tau_in);

  std::vector<Expression> flow;
  if (!circuit::is_identity_permutation(sigma_in)) flow.push_back(circuit::permutation(sigma_in));
  flow.push_back(q);
  if (!circuit::is_identity_permutation(sigma_out)) flow.push_back(circuit::permutation(sigma_out));
  return circuit::series_chain(flow);
}

}  // namespace qhdl::synthesis
