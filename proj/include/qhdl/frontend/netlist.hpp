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
#include <optional>
#include <string>
#include <vector>

#include "qhdl/frontend/design.hpp"

namespace qhdl::frontend {

/// One side of a connection: an entity port or an instance port.
struct Endpoint {
  enum class Owner { Entity, Instance };
  Owner owner = Owner::Entity;
  std::string instance;  // empty for entity ports
  std::string port;
  Direction direction = Direction::In;

  bool is_entity() const { return owner == Owner::Entity; }
  /// `instance:port` for instance ports, `<entity>:port` for entity ports.
  std::string label() const;

  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

/// A single-channel connection from a driver (instance out-port or entity
/// in-port) to a sink (instance in-port or entity out-port). Named nets come
/// from declared signals; direct port-map bindings to entity ports produce
/// anonymous nets.
struct Net {
  std::string signal;  // empty for direct bindings
  Endpoint driver;
  Endpoint sink;

  bool internal() const { return !driver.is_entity() && !sink.is_entity(); }
  bool passthrough() const { return driver.is_entity() && sink.is_entity(); }
};

struct ResolvedInstance {
  std::string name;
  ComponentDecl component;
  std::vector<GenericAssoc> generic_map;
  /// Net index per component port, in component port order.
  std::vector<std::size_t> port_nets;
  SourceLoc loc;

  std::vector<std::string> ports(Direction direction) const { return component.port_names(direction); }
};

struct NetlistGraph {
  EntityDecl entity;
  std::string architecture;
  std::vector<ResolvedInstance> instances;
  std::vector<Net> nets;
  /// Net index per entity port, in entity port order.
  std::vector<std::size_t> entity_port_nets;

  const Net& net_of(const ResolvedInstance& inst, const std::string& port) const;
  const Net& net_of_entity_port(const std::string& port) const;
  std::size_t internal_signal_count() const;
};

/// Checks the named architecture of `entity` and resolves every connection.
/// All violations found are reported together in one DiagnosticError.
/// Empty `architecture` selects the last one declared for the entity.
NetlistGraph validate(const DesignFile& design, const std::string& entity, const std::string& architecture = "");

}  // namespace qhdl::frontend
