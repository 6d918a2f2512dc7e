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

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qhdl/frontend/diagnostic.hpp"
#include "qhdl/frontend/param_expr.hpp"

namespace qhdl::frontend {

enum class Direction { In, Out };

struct GenericDecl {
  std::string name;
  NumericKind kind = NumericKind::Real;
  std::optional<ParamExpr> default_value;
  SourceLoc loc;
};

struct PortDecl {
  std::string name;
  Direction direction = Direction::In;
  SourceLoc loc;
};

/// Interface shared by entities and component declarations: ordered generics
/// and ports, all `in` ports ahead of all `out` ports.
struct InterfaceDecl {
  std::string name;
  std::vector<GenericDecl> generics;
  std::vector<PortDecl> ports;
  SourceLoc loc;

  const GenericDecl* find_generic(const std::string& generic) const;
  const PortDecl* find_port(const std::string& port) const;
  std::vector<std::string> port_names(Direction direction) const;
};

using EntityDecl = InterfaceDecl;
using ComponentDecl = InterfaceDecl;

struct GenericAssoc {
  std::string formal;
  ParamExpr actual;
  SourceLoc loc;
};

struct PortAssoc {
  std::string formal;
  std::string actual;
  SourceLoc loc;
};

struct InstanceAssign {
  std::string name;
  std::string component;
  std::vector<GenericAssoc> generic_map;
  std::vector<PortAssoc> port_map;
  SourceLoc loc;
};

struct SignalDecl {
  std::string name;
  SourceLoc loc;
};

/// Concurrent assignment `target <= source;` joining a signal to an entity
/// port (or two entity ports directly).
struct SignalAssign {
  std::string target;
  std::string source;
  SourceLoc loc;
};

struct ArchitectureDecl {
  std::string name;
  std::string entity;
  std::vector<ComponentDecl> components;
  std::vector<SignalDecl> signals;
  std::vector<InstanceAssign> instances;
  std::vector<SignalAssign> assignments;
  SourceLoc loc;

  const ComponentDecl* find_component(const std::string& component) const;
};

struct DesignFile {
  std::string path;
  std::vector<EntityDecl> entities;
  std::vector<ArchitectureDecl> architectures;

  const EntityDecl* find_entity(const std::string& name) const;
  /// Empty `name` selects the last architecture declared for the entity.
  const ArchitectureDecl* find_architecture(const std::string& entity, const std::string& name) const;
};

/// Structural dump. Source positions are included only on request so that
/// two dumps can be compared for structural identity.
nlohmann::json to_json(const DesignFile& design, bool with_locations = false);

/// Pretty-prints the design back to QHDL source.
std::string print_qhdl(const DesignFile& design);

}  // namespace qhdl::frontend
