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

#include "qhdl/frontend/netlist.hpp"

#include <set>
#include <stdexcept>

namespace qhdl::frontend {

std::string Endpoint::label() const {
  return (is_entity() ? std::string("<entity>") : instance) + ":" + port;
}

const Net& NetlistGraph::net_of(const ResolvedInstance& inst, const std::string& port) const {
  const auto& ports = inst.component.ports;
  for (std::size_t i = 0; i < ports.size(); ++i) {
    if (ports[i].name == port) return nets.at(inst.port_nets.at(i));
  }
  throw std::out_of_range("no port '" + port + "' on instance '" + inst.name + "'");
}

const Net& NetlistGraph::net_of_entity_port(const std::string& port) const {
  for (std::size_t i = 0; i < entity.ports.size(); ++i) {
    if (entity.ports[i].name == port) return nets.at(entity_port_nets.at(i));
  }
  throw std::out_of_range("no entity port '" + port + "'");
}

std::size_t NetlistGraph::internal_signal_count() const {
  std::size_t count = 0;
  for (const auto& net : nets) count += net.internal() ? 1 : 0;
  return count;
}

namespace {

const char* dir_name(Direction d) { return d == Direction::In ? "in" : "out"; }

struct PendingSignal {
  SourceLoc loc;
  std::optional<Endpoint> driver;
  std::optional<Endpoint> sink;
};

class Validator {
 public:
  Validator(const DesignFile& design, const EntityDecl& entity, const ArchitectureDecl& arch)
      : design_(design), entity_(entity), arch_(arch) {}

  NetlistGraph run() {
    check_port_balance(entity_, "entity");
    for (const auto& c : arch_.components) check_port_balance(c, "component");
    for (const auto& s : arch_.signals) {
      signal_order_.push_back(s.name);
      signals_[s.name] = PendingSignal{s.loc, std::nullopt, std::nullopt};
    }
    for (const auto& inst : arch_.instances) instance(inst);
    for (const auto& assign : arch_.assignments) assignment(assign);
    finish_signals();
    for (std::size_t i = 0; i < entity_.ports.size(); ++i) {
      const auto& p = entity_.ports[i];
      if (!entity_bound_.count(p.name) && !suspect_.count(p.name)) error(p.loc, "entity port '" + p.name + "' is not connected");
    }
    if (!diags_.empty()) throw DiagnosticError(std::move(diags_));
    return assemble();
  }

 private:
  void error(SourceLoc loc, std::string message) {
    diags_.push_back(Diagnostic{design_.path, loc, std::move(message)});
  }

  void check_port_balance(const InterfaceDecl& decl, const char* what) {
    auto ins = decl.port_names(Direction::In).size();
    auto outs = decl.port_names(Direction::Out).size();
    if (ins != outs) {
      error(decl.loc, std::string(what) + " '" + decl.name + "' must have equally many in and out ports (has " +
                          std::to_string(ins) + " in, " + std::to_string(outs) + " out)");
    }
    if (ins == 0) error(decl.loc, std::string(what) + " '" + decl.name + "' has no ports");
  }

  Endpoint entity_endpoint(const PortDecl& port) const {
    return Endpoint{Endpoint::Owner::Entity, "", port.name, port.direction};
  }

  bool bind_entity_port(const PortDecl& port, SourceLoc loc) {
    if (!entity_bound_.insert(port.name).second) {
      error(loc, "entity port '" + port.name + "' is connected more than once");
      return false;
    }
    return true;
  }

  void instance(const InstanceAssign& inst) {
    const ComponentDecl* comp = arch_.find_component(inst.component);
    if (comp == nullptr) {
      error(inst.loc, "unknown component '" + inst.component + "' (not declared in architecture '" + arch_.name + "')");
      for (const auto& assoc : inst.port_map) suspect_.insert(assoc.actual);
      return;
    }

    std::set<std::string> seen_generics;
    for (const auto& assoc : inst.generic_map) {
      const GenericDecl* formal = comp->find_generic(assoc.formal);
      if (formal == nullptr) {
        error(assoc.loc, "unknown generic '" + assoc.formal + "' of component '" + comp->name + "'");
        continue;
      }
      if (!seen_generics.insert(assoc.formal).second) {
        error(assoc.loc, "generic '" + assoc.formal + "' mapped more than once");
        continue;
      }
      bool refs_ok = true;
      for (const auto& ref : assoc.actual.refs()) {
        if (entity_.find_generic(ref.name) == nullptr) {
          error(ref.loc, "unknown identifier '" + ref.name + "' in generic map (only entity generics may be referenced)");
          refs_ok = false;
        }
      }
      if (!refs_ok) continue;
      auto kind = assoc.actual.kind([&](const std::string& name) -> std::optional<NumericKind> {
        const auto* g = entity_.find_generic(name);
        return g ? std::optional(g->kind) : std::nullopt;
      });
      if (kind > formal->kind) {
        error(assoc.loc, "type mismatch: " + std::string(to_string(kind)) + " expression assigned to " +
                             std::string(to_string(formal->kind)) + " generic '" + assoc.formal + "'");
      }
    }

    ResolvedInstance resolved{inst.name, *comp, inst.generic_map, {}, inst.loc};
    std::set<std::string> mapped;
    bool bad_formal = false;
    for (const auto& assoc : inst.port_map) {
      const PortDecl* formal = comp->find_port(assoc.formal);
      if (formal == nullptr) {
        error(assoc.loc, "unknown port '" + assoc.formal + "' of component '" + comp->name + "'");
        suspect_.insert(assoc.actual);
        bad_formal = true;
        continue;
      }
      if (!mapped.insert(assoc.formal).second) {
        error(assoc.loc, "port '" + assoc.formal + "' of instance '" + inst.name + "' mapped more than once");
        continue;
      }
      Endpoint here{Endpoint::Owner::Instance, inst.name, formal->name, formal->direction};
      if (const PortDecl* eport = entity_.find_port(assoc.actual)) {
        if (eport->direction != formal->direction) {
          error(assoc.loc, std::string("polarity violation: instance ") + dir_name(formal->direction) + "-port '" +
                               here.label() + "' wired to entity " + dir_name(eport->direction) + "-port '" +
                               eport->name + "'");
          continue;
        }
        if (!bind_entity_port(*eport, assoc.loc)) continue;
        Endpoint there = entity_endpoint(*eport);
        if (formal->direction == Direction::In) {
          direct_.push_back(Net{"", there, here});
        } else {
          direct_.push_back(Net{"", here, there});
        }
        continue;
      }
      auto it = signals_.find(assoc.actual);
      if (it == signals_.end()) {
        error(assoc.loc, "unknown signal or entity port '" + assoc.actual + "'");
        continue;
      }
      attach(it->first, it->second, here, assoc.loc);
    }
    // A misspelled formal already explains the missing mapping.
    for (const auto& port : comp->ports) {
      if (!mapped.count(port.name) && !bad_formal) {
        error(inst.loc, "unmapped port '" + port.name + "' of instance '" + inst.name + "'");
      }
    }
    instances_.push_back(std::move(resolved));
  }

  void attach(const std::string& name, PendingSignal& sig, const Endpoint& ep, SourceLoc loc) {
    bool drives = ep.is_entity() ? ep.direction == Direction::In : ep.direction == Direction::Out;
    auto& slot = drives ? sig.driver : sig.sink;
    if (slot) {
      error(loc, "signal '" + name + "' has two " + (drives ? "drivers" : "sinks") + " ('" + slot->label() +
                     "' and '" + ep.label() + "')");
      return;
    }
    slot = ep;
  }

  void assignment(const SignalAssign& assign) {
    const PortDecl* target_port = entity_.find_port(assign.target);
    const PortDecl* source_port = entity_.find_port(assign.source);
    auto target_sig = signals_.find(assign.target);
    auto source_sig = signals_.find(assign.source);
    bool target_known = target_port || target_sig != signals_.end();
    bool source_known = source_port || source_sig != signals_.end();
    if (!target_known) error(assign.loc, "unknown signal or entity port '" + assign.target + "'");
    if (!source_known) error(assign.loc, "unknown signal or entity port '" + assign.source + "'");
    if (!target_known || !source_known) return;
    if (target_port && target_port->direction != Direction::Out) {
      error(assign.loc, "polarity violation: entity in-port '" + target_port->name + "' cannot be assigned");
      return;
    }
    if (source_port && source_port->direction != Direction::In) {
      error(assign.loc, "polarity violation: entity out-port '" + source_port->name + "' cannot drive a signal");
      return;
    }
    if (!target_port && !source_port) {
      error(assign.loc, "signal-to-signal assignment '" + assign.target + " <= " + assign.source + "' is not supported");
      return;
    }
    if (target_port && source_port) {
      if (bind_entity_port(*target_port, assign.loc) && bind_entity_port(*source_port, assign.loc)) {
        direct_.push_back(Net{"", entity_endpoint(*source_port), entity_endpoint(*target_port)});
      }
      return;
    }
    if (source_port) {
      if (bind_entity_port(*source_port, assign.loc)) {
        attach(target_sig->first, target_sig->second, entity_endpoint(*source_port), assign.loc);
      }
    } else {
      if (bind_entity_port(*target_port, assign.loc)) {
        attach(source_sig->first, source_sig->second, entity_endpoint(*target_port), assign.loc);
      }
    }
  }

  void finish_signals() {
    for (const auto& name : signal_order_) {
      const auto& sig = signals_.at(name);
      if (suspect_.count(name)) continue;
      if (!sig.driver && !sig.sink) {
        error(sig.loc, "signal '" + name + "' is not connected");
      } else if (!sig.driver) {
        error(sig.loc, "dangling signal '" + name + "': no driver (sink '" + sig.sink->label() + "')");
      } else if (!sig.sink) {
        error(sig.loc, "dangling signal '" + name + "': no sink (driver '" + sig.driver->label() + "')");
      }
    }
  }

  NetlistGraph assemble() {
    NetlistGraph graph;
    graph.entity = entity_;
    graph.architecture = arch_.name;
    for (const auto& name : signal_order_) {
      const auto& sig = signals_.at(name);
      graph.nets.push_back(Net{name, *sig.driver, *sig.sink});
    }
    for (auto& net : direct_) graph.nets.push_back(net);

    auto find_net = [&](const Endpoint& ep) -> std::size_t {
      for (std::size_t i = 0; i < graph.nets.size(); ++i) {
        if (graph.nets[i].driver == ep || graph.nets[i].sink == ep) return i;
      }
      throw std::logic_error("validated endpoint '" + ep.label() + "' has no net");
    };
    for (auto& inst : instances_) {
      for (const auto& port : inst.component.ports) {
        inst.port_nets.push_back(find_net(Endpoint{Endpoint::Owner::Instance, inst.name, port.name, port.direction}));
      }
    }
    for (const auto& port : entity_.ports) graph.entity_port_nets.push_back(find_net(entity_endpoint(port)));
    graph.instances = std::move(instances_);
    return graph;
  }

  const DesignFile& design_;
  const EntityDecl& entity_;
  const ArchitectureDecl& arch_;
  std::vector<Diagnostic> diags_;
  std::vector<std::string> signal_order_;
  std::map<std::string, PendingSignal> signals_;
  std::set<std::string> entity_bound_;
  // Signals and entity ports named in associations that already failed;
  // their connectivity errors would only repeat the first diagnostic.
  std::set<std::string> suspect_;
  std::vector<Net> direct_;
  std::vector<ResolvedInstance> instances_;
};

}  // namespace

NetlistGraph validate(const DesignFile& design, const std::string& entity, const std::string& architecture) {
  const EntityDecl* ent = design.find_entity(entity);
  if (ent == nullptr) throw DiagnosticError(design.path, SourceLoc{1, 1}, "unknown entity '" + entity + "'");
  const ArchitectureDecl* arch = design.find_architecture(entity, architecture);
  if (arch == nullptr) {
    std::string what = architecture.empty() ? "no architecture" : "unknown architecture '" + architecture + "'";
    throw DiagnosticError(design.path, ent->loc, what + " for entity '" + entity + "'");
  }
  return Validator(design, *ent, *arch).run();
}

}  // namespace qhdl::frontend
