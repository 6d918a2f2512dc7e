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
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qhdl/circuit/expression.hpp"
#include "qhdl/frontend/design.hpp"
#include "qhdl/frontend/netlist.hpp"
#include "qhdl/slh/triplet.hpp"

namespace qhdl::pipeline {

/// User-facing compile failure: missing parameters, unknown components,
/// ill-posed feedback and the like.
class CompileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using ParamValues = std::map<std::string, std::complex<double>>;

/// Truncation dimension per mode label, with an optional fallback.
struct FockDims {
  std::map<std::string, std::size_t> per_mode;
  std::optional<std::size_t> fallback;

  std::size_t lookup(const std::string& mode) const;
};

/// Parsed design files in lookup order: the file that declares the entity
/// being compiled is searched first, then the others in this order, then the
/// primitive library.
struct Library {
  std::vector<frontend::DesignFile> files;

  static Library load(const std::vector<std::string>& paths);

  struct Match {
    const frontend::DesignFile* file;
    const frontend::EntityDecl* entity;
  };
  std::optional<Match> find_entity(const std::string& name, const frontend::DesignFile* current = nullptr) const;
};

struct Primitive {
  std::string name;
  std::size_t channels;
  std::vector<std::string> generics;
  /// Whether the primitive owns a cavity mode named after its instance path.
  bool has_mode;
};

/// Built-in components: beamsplitter(theta), phase(phi), displace(alpha),
/// kerrcavity(delta, chi, kappa_1, kappa_2) and cavity(delta, chi, kappa).
const std::vector<Primitive>& primitives();
const Primitive* find_primitive(const std::string& name);
slh::SLHTriplet build_primitive(const Primitive& p, const ParamValues& values, const std::string& mode,
                                const FockDims& fock);

struct Synthesized {
  const frontend::DesignFile* file;
  frontend::NetlistGraph netlist;
  circuit::Expression expression;
};

/// Validates and synthesizes `entity` (architecture empty = last declared).
Synthesized synthesize_entity(const Library& lib, const std::string& entity, const std::string& architecture = "");

struct CompiledModel {
  std::string entity;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  circuit::Expression expression;
  slh::SLHTriplet triplet;
  slh::Residuals residuals;
  std::vector<std::string> warnings;
};

/// Synthesizes the entity and every sub-entity it instantiates, binds
/// primitives and evaluates the result. Modes are named after instance
/// paths, e.g. `nand1.k`.
CompiledModel compile(const Library& lib, const std::string& entity, const std::string& architecture,
                      const ParamValues& params, const FockDims& fock);

/// Model document plus {"entity", "ports": {"in", "out"}}.
nlohmann::json compiled_to_json(const CompiledModel& model);

/// Parses `re,im`, a plain number or a constant expression.
std::complex<double> parse_param_value(const std::string& text);

}  // namespace qhdl::pipeline
