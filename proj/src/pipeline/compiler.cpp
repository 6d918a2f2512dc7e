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

#include "qhdl/pipeline/compiler.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qhdl/frontend/parser.hpp"
#include "qhdl/slh/components.hpp"
#include "qhdl/slh/evaluate.hpp"
#include "qhdl/slh/model_json.hpp"
#include "qhdl/synthesis/synthesize.hpp"

namespace qhdl::pipeline {

using frontend::Direction;
using frontend::NumericKind;

std::size_t FockDims::lookup(const std::string& mode) const {
  auto it = per_mode.find(mode);
  if (it != per_mode.end()) return it->second;
  if (fallback) return *fallback;
  throw CompileError("missing Fock dimension for mode '" + mode + "'");
}

Library Library::load(const std::vector<std::string>& paths) {
  Library lib;
  for (const auto& p : paths) lib.files.push_back(frontend::parse_file(p));
  return lib;
}

std::optional<Library::Match> Library::find_entity(const std::string& name, const frontend::DesignFile* current) const {
  if (current != nullptr) {
    if (const auto* e = current->find_entity(name)) return Match{current, e};
  }
  for (const auto& f : files) {
    if (const auto* e = f.find_entity(name)) return Match{&f, e};
  }
  return std::nullopt;
}

const std::vector<Primitive>& primitives() {
  static const std::vector<Primitive> table = {
      {"beamsplitter", 2, {"theta"}, false},
      {"phase", 1, {"phi"}, false},
      {"displace", 1, {"alpha"}, false},
      {"kerrcavity", 2, {"delta", "chi", "kappa_1", "kappa_2"}, true},
      {"cavity", 1, {"delta", "chi", "kappa"}, true},
  };
  return table;
}

const Primitive* find_primitive(const std::string& name) {
  for (const auto& p : primitives()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

slh::SLHTriplet build_primitive(const Primitive& p, const ParamValues& values, const std::string& mode,
                                const FockDims& fock) {
  auto real = [&](const std::string& name) {
    auto v = values.at(name);
    if (v.imag() != 0.0) throw CompileError("parameter '" + name + "' of " + p.name + " must be real");
    return v.real();
  };
  try {
    if (p.name == "beamsplitter") return slh::beamsplitter(real("theta"));
    if (p.name == "phase") return slh::phase(real("phi"));
    if (p.name == "displace") return slh::displace(values.at("alpha"));
    if (p.name == "kerrcavity") {
      return slh::kerr_cavity(real("delta"), real("chi"), real("kappa_1"), real("kappa_2"), mode, fock.lookup(mode));
    }
    if (p.name == "cavity") return slh::cavity(real("delta"), real("chi"), real("kappa"), mode, fock.lookup(mode));
  } catch (const slh::SLHError& e) {
    throw CompileError(e.what());
  }
  throw CompileError("no builder for primitive '" + p.name + "'");
}

namespace {

std::string describe(const std::string& prefix) {
  if (prefix.empty()) return "";
  return " for instance '" + prefix.substr(0, prefix.size() - 1) + "'";
}

void check_kind(const frontend::GenericDecl& g, std::complex<double> v, const std::string& where) {
  if (g.kind == NumericKind::Complex) return;
  if (v.imag() != 0.0) {
    throw CompileError("parameter '" + g.name + "'" + where + " is " + std::string(to_string(g.kind)) +
                       " but was given a complex value");
  }
  if (g.kind == NumericKind::Int && std::trunc(v.real()) != v.real()) {
    throw CompileError("parameter '" + g.name + "'" + where + " is int but was given " + frontend::format_real(v.real()));
  }
}

/// Fills every generic of `decl` from `given`, falling back to declared
/// defaults, which may refer to generics resolved before them.
ParamValues resolve_generics(const frontend::InterfaceDecl& decl, const ParamValues& given, const std::string& where) {
  ParamValues out;
  for (const auto& g : decl.generics) {
    auto it = given.find(g.name);
    std::complex<double> v;
    if (it != given.end()) {
      v = it->second;
    } else if (g.default_value) {
      try {
        v = g.default_value->evaluate([&](const std::string& name) -> std::optional<std::complex<double>> {
          auto f = out.find(name);
          return f == out.end() ? std::nullopt : std::optional(f->second);
        });
      } catch (const std::invalid_argument& e) {
        throw CompileError("default of parameter '" + g.name + "'" + where + ": " + e.what());
      }
    } else {
      throw CompileError("missing parameter " + g.name + where);
    }
    check_kind(g, v, where);
    out[g.name] = v;
  }
  return out;
}

class Compiler {
 public:
  Compiler(const Library& lib, const FockDims& fock) : lib_(lib), fock_(fock) {}

  struct Result {
    circuit::Expression expression;
    slh::SLHTriplet triplet;
  };

  Result entity(const Synthesized& syn, const ParamValues& values, const std::string& prefix) {
    const auto& g = syn.netlist;
    if (!active_.insert(g.entity.name).second) {
      throw CompileError("entity '" + g.entity.name + "' instantiates itself");
    }
    auto lookup = [&](const std::string& name) -> std::optional<std::complex<double>> {
      auto it = values.find(name);
      return it == values.end() ? std::nullopt : std::optional(it->second);
    };
    slh::Bindings bindings;
    for (const auto& inst : g.instances) {
      const auto where = describe(prefix + inst.name + ".");
      ParamValues given;
      for (const auto& assoc : inst.generic_map) {
        try {
          given[assoc.formal] = assoc.actual.evaluate(lookup);
        } catch (const std::invalid_argument& e) {
          throw CompileError(std::string(e.what()) + where);
        }
      }
      auto own = resolve_generics(inst.component, given, where);
      bindings[inst.name] = bind(syn.file, inst, own, prefix);
    }
    active_.erase(g.entity.name);
    try {
      return Result{syn.expression, slh::evaluate(syn.expression, bindings)};
    } catch (const slh::SLHError& e) {
      throw CompileError("entity '" + g.entity.name + "'" + describe(prefix) + ": " + e.what());
    }
  }

 private:
  slh::SLHTriplet bind(const frontend::DesignFile* file, const frontend::ResolvedInstance& inst,
                       const ParamValues& values, const std::string& prefix) {
    const auto& comp = inst.component;
    const auto channels = comp.port_names(Direction::In).size();
    if (auto match = lib_.find_entity(comp.name, file)) {
      const auto& sub = *match->entity;
      if (sub.port_names(Direction::In) != comp.port_names(Direction::In) ||
          sub.port_names(Direction::Out) != comp.port_names(Direction::Out)) {
        throw CompileError("component '" + comp.name + "' declares ports that differ from entity '" + sub.name + "'");
      }
      auto syn = synthesize_in(*match->file, sub.name);
      auto sub_values = resolve_generics(sub, values, describe(prefix + inst.name + "."));
      return entity(syn, sub_values, prefix + inst.name + ".").triplet;
    }
    const Primitive* p = find_primitive(comp.name);
    if (p == nullptr) {
      throw CompileError("unknown component '" + comp.name + "': no entity of that name in the loaded files and no primitive");
    }
    if (p->channels != channels) {
      throw CompileError("component '" + comp.name + "' declares " + std::to_string(channels) + " channels but the primitive has " +
                         std::to_string(p->channels));
    }
    for (const auto& [name, v] : values) {
      if (std::find(p->generics.begin(), p->generics.end(), name) == p->generics.end()) {
        throw CompileError("primitive '" + p->name + "' has no generic '" + name + "'");
      }
    }
    for (const auto& name : p->generics) {
      if (!values.count(name)) throw CompileError("missing parameter " + name + describe(prefix + inst.name + "."));
    }
    return build_primitive(*p, values, prefix + inst.name, fock_);
  }

  Synthesized synthesize_in(const frontend::DesignFile& file, const std::string& entity) {
    auto netlist = frontend::validate(file, entity);
    auto expr = synthesis::synthesize(netlist);
    return Synthesized{&file, std::move(netlist), std::move(expr)};
  }

  const Library& lib_;
  const FockDims& fock_;
  std::set<std::string> active_;
};

}  // namespace

Synthesized synthesize_entity(const Library& lib, const std::string& entity, const std::string& architecture) {
  auto match = lib.find_entity(entity);
  if (!match) throw CompileError("unknown entity '" + entity + "'");
  auto netlist = frontend::validate(*match->file, entity, architecture);
  auto expr = synthesis::synthesize(netlist);
  return Synthesized{match->file, std::move(netlist), std::move(expr)};
}

CompiledModel compile(const Library& lib, const std::string& entity, const std::string& architecture,
                      const ParamValues& params, const FockDims& fock) {
  auto syn = synthesize_entity(lib, entity, architecture);
  const auto& decl = syn.netlist.entity;
  for (const auto& [name, v] : params) {
    if (decl.find_generic(name) == nullptr) throw CompileError("unknown parameter '" + name + "' for entity '" + decl.name + "'");
  }
  auto values = resolve_generics(decl, params, "");
  Compiler compiler(lib, fock);
  auto result = compiler.entity(syn, values, "");

  CompiledModel model{decl.name,
                      decl.port_names(Direction::In),
                      decl.port_names(Direction::Out),
                      result.expression,
                      result.triplet,
                      slh::residuals(result.triplet),
                      {}};
  try {
    model.warnings = slh::check_invariants(result.triplet);
  } catch (const slh::SLHError& e) {
    throw CompileError("compiled model of '" + decl.name + "' violates invariants: " + e.what());
  }
  return model;
}

nlohmann::json compiled_to_json(const CompiledModel& model) {
  auto doc = slh::model_to_json(model.triplet);
  doc["entity"] = model.entity;
  doc["ports"] = {{"in", model.inputs}, {"out", model.outputs}};
  return doc;
}

std::complex<double> parse_param_value(const std::string& text) {
  // "re,im" is shorthand for the literal pair "(re, im)".
  const bool bare_pair = text.find(',') != std::string::npos && text.find('(') == std::string::npos;
  try {
    return frontend::parse_param_expr(bare_pair ? "(" + text + ")" : text).evaluate([](const std::string&) {
      return std::nullopt;
    });
  } catch (const std::exception& e) {
    throw CompileError("cannot read parameter value '" + text + "': " + e.what());
  }
}

}  // namespace qhdl::pipeline
