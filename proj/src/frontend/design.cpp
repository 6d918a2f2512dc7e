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

#include "qhdl/frontend/design.hpp"

#include <sstream>

namespace qhdl::frontend {

const GenericDecl* InterfaceDecl::find_generic(const std::string& generic) const {
  for (const auto& g : generics) {
    if (g.name == generic) return &g;
  }
  return nullptr;
}

const PortDecl* InterfaceDecl::find_port(const std::string& port) const {
  for (const auto& p : ports) {
    if (p.name == port) return &p;
  }
  return nullptr;
}

std::vector<std::string> InterfaceDecl::port_names(Direction direction) const {
  std::vector<std::string> out;
  for (const auto& p : ports) {
    if (p.direction == direction) out.push_back(p.name);
  }
  return out;
}

const ComponentDecl* ArchitectureDecl::find_component(const std::string& component) const {
  for (const auto& c : components) {
    if (c.name == component) return &c;
  }
  return nullptr;
}

const EntityDecl* DesignFile::find_entity(const std::string& name) const {
  for (const auto& e : entities) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

const ArchitectureDecl* DesignFile::find_architecture(const std::string& entity, const std::string& name) const {
  const ArchitectureDecl* found = nullptr;
  for (const auto& a : architectures) {
    if (a.entity != entity) continue;
    if (name.empty() || a.name == name) found = &a;
  }
  return found;
}

namespace {

using nlohmann::json;

json loc_json(SourceLoc loc) { return json::array({loc.line, loc.col}); }

json interface_json(const InterfaceDecl& decl, bool with_locations) {
  json j;
  j["name"] = decl.name;
  j["generics"] = json::array();
  for (const auto& g : decl.generics) {
    json gj{{"name", g.name}, {"kind", to_string(g.kind)}};
    if (g.default_value) gj["default"] = g.default_value->str();
    if (with_locations) gj["loc"] = loc_json(g.loc);
    j["generics"].push_back(std::move(gj));
  }
  j["ports"] = json::array();
  for (const auto& p : decl.ports) {
    json pj{{"name", p.name}, {"direction", p.direction == Direction::In ? "in" : "out"}};
    if (with_locations) pj["loc"] = loc_json(p.loc);
    j["ports"].push_back(std::move(pj));
  }
  if (with_locations) j["loc"] = loc_json(decl.loc);
  return j;
}

void print_interface(std::ostream& os, const InterfaceDecl& decl, const std::string& indent) {
  if (!decl.generics.empty()) {
    os << indent << "generic (";
    for (std::size_t i = 0; i < decl.generics.size(); ++i) {
      const auto& g = decl.generics[i];
      if (i > 0) os << "; ";
      os << g.name << " : " << to_string(g.kind);
      if (g.default_value) os << " := " << g.default_value->str();
    }
    os << ");\n";
  }
  os << indent << "port (";
  for (std::size_t i = 0; i < decl.ports.size(); ++i) {
    const auto& p = decl.ports[i];
    if (i > 0) os << "; ";
    os << p.name << " : " << (p.direction == Direction::In ? "in" : "out") << " fieldmode";
  }
  os << ");\n";
}

}  // namespace

nlohmann::json to_json(const DesignFile& design, bool with_locations) {
  json j;
  j["entities"] = json::array();
  for (const auto& e : design.entities) j["entities"].push_back(interface_json(e, with_locations));
  j["architectures"] = json::array();
  for (const auto& a : design.architectures) {
    json aj{{"name", a.name}, {"entity", a.entity}};
    aj["components"] = json::array();
    for (const auto& c : a.components) aj["components"].push_back(interface_json(c, with_locations));
    aj["signals"] = json::array();
    for (const auto& s : a.signals) aj["signals"].push_back(s.name);
    aj["instances"] = json::array();
    for (const auto& inst : a.instances) {
      json ij{{"name", inst.name}, {"component", inst.component}};
      ij["generic_map"] = json::array();
      for (const auto& g : inst.generic_map) ij["generic_map"].push_back({g.formal, g.actual.str()});
      ij["port_map"] = json::array();
      for (const auto& p : inst.port_map) ij["port_map"].push_back({p.formal, p.actual});
      if (with_locations) ij["loc"] = loc_json(inst.loc);
      aj["instances"].push_back(std::move(ij));
    }
    aj["assignments"] = json::array();
    for (const auto& s : a.assignments) aj["assignments"].push_back({s.target, s.source});
    if (with_locations) aj["loc"] = loc_json(a.loc);
    j["architectures"].push_back(std::move(aj));
  }
  return j;
}

std::string print_qhdl(const DesignFile& design) {
  std::ostringstream os;
  for (const auto& e : design.entities) {
    os << "entity " << e.name << " is\n";
    print_interface(os, e, "    ");
    os << "end " << e.name << ";\n\n";
  }
  for (const auto& a : design.architectures) {
    os << "architecture " << a.name << " of " << a.entity << " is\n";
    for (const auto& c : a.components) {
      os << "    component " << c.name << "\n";
      print_interface(os, c, "        ");
      os << "    end component;\n";
    }
    if (!a.signals.empty()) {
      os << "    signal ";
      for (std::size_t i = 0; i < a.signals.size(); ++i) os << (i > 0 ? ", " : "") << a.signals[i].name;
      os << " : fieldmode;\n";
    }
    os << "begin\n";
    for (const auto& inst : a.instances) {
      os << "    " << inst.name << " : " << inst.component;
      if (!inst.generic_map.empty()) {
        os << " generic map (";
        for (std::size_t i = 0; i < inst.generic_map.size(); ++i) {
          os << (i > 0 ? ", " : "") << inst.generic_map[i].formal << " => " << inst.generic_map[i].actual.str();
        }
        os << ")";
      }
      os << " port map (";
      for (std::size_t i = 0; i < inst.port_map.size(); ++i) {
        os << (i > 0 ? ", " : "") << inst.port_map[i].formal << " => " << inst.port_map[i].actual;
      }
      os << ");\n";
    }
    for (const auto& s : a.assignments) os << "    " << s.target << " <= " << s.source << ";\n";
    os << "end " << a.name << ";\n\n";
  }
  return os.str();
}

}  // namespace qhdl::frontend
