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


#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "qhdl/frontend/lexer.hpp"
#include "qhdl/frontend/netlist.hpp"
#include "qhdl/frontend/param_expr.hpp"
#include "qhdl/frontend/parser.hpp"

using namespace qhdl::frontend;

namespace {

std::string example_path(const std::string& name) { return std::string(QHDL_SOURCE_DIR) + "/examples_qhdl/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string replace_once(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

std::vector<Diagnostic> diagnostics_of(const std::string& source) {
  try {
    auto design = parse_source(source, "t.qhdl");
    validate(design, design.entities.front().name);
  } catch (const DiagnosticError& e) {
    return e.diagnostics();
  }
  return {};
}

bool mentions(const std::vector<Diagnostic>& ds, const std::string& needle) {
  for (const auto& d : ds) {
    if (d.message.find(needle) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("lexer folds identifiers and skips comments") {
  auto toks = tokenize("entity MZ is");
  REQUIRE(toks.size() == 3);
  CHECK(toks[0].kind == TokenKind::KwEntity);
  CHECK(toks[1].kind == TokenKind::Identifier);
  CHECK(toks[1].text == "mz");
  CHECK(toks[2].kind == TokenKind::KwIs);

  toks = tokenize("-- comment\nend;");
  REQUIRE(toks.size() == 2);
  CHECK(toks[0].kind == TokenKind::KwEnd);
  CHECK(toks[1].kind == TokenKind::Semicolon);
  CHECK(toks[0].loc.line == 2);
}

TEST_CASE("lexer rejects non-ASCII input at its position") {
  try {
    tokenize("\xCE\xB8");
    FAIL("expected a lexical error");
  } catch (const DiagnosticError& e) {
    REQUIRE(e.diagnostics().size() == 1);
    CHECK(e.diagnostics()[0].loc.line == 1);
    CHECK(e.diagnostics()[0].loc.col == 1);
  }
}

TEST_CASE("lexer distinguishes compound punctuation") {
  auto toks = tokenize("a := b => c <= d");
  REQUIRE(toks.size() == 7);
  CHECK(toks[1].kind == TokenKind::Assign);
  CHECK(toks[3].kind == TokenKind::Arrow);
  CHECK(toks[5].kind == TokenKind::LessEq);
}

TEST_CASE("parameter expressions evaluate and print canonically") {
  auto e = parse_param_expr("2 * kappa - (1.5, -0.5) / 2");
  auto v = e.evaluate([](const std::string& n) -> std::optional<std::complex<double>> {
    if (n == "kappa") return 3.0;
    return std::nullopt;
  });
  CHECK(v.real() == doctest::Approx(5.25));
  CHECK(v.imag() == doctest::Approx(0.25));
  CHECK(parse_param_expr(e.str()) == e);
  CHECK_THROWS_AS(e.evaluate([](const std::string&) { return std::nullopt; }), std::invalid_argument);
  REQUIRE(e.refs().size() == 1);
  CHECK(e.refs()[0].name == "kappa");
}

TEST_CASE("Mach-Zehnder parses into one entity, one architecture, three instances") {
  auto d = parse_file(example_path("mach_zehnder.qhdl"));
  REQUIRE(d.entities.size() == 1);
  REQUIRE(d.architectures.size() == 1);
  CHECK(d.entities[0].name == "machzehnder");
  CHECK(d.architectures[0].instances.size() == 3);
  CHECK(d.entities[0].port_names(Direction::In) == std::vector<std::string>{"a", "b"});
  CHECK(d.entities[0].port_names(Direction::Out) == std::vector<std::string>{"c", "d"});
}

TEST_CASE("Mach-Zehnder netlist resolves every endpoint") {
  auto d = parse_file(example_path("mach_zehnder.qhdl"));
  auto g = validate(d, "machzehnder");
  CHECK(g.instances.size() == 3);
  CHECK(g.internal_signal_count() == 3);
  CHECK(g.nets.size() == 7);
  const auto& p = g.instances[1];
  CHECK(p.name == "p");
  CHECK(g.net_of(p, "in1").driver.instance == "b1");
  CHECK(g.net_of(p, "out1").sink.instance == "b2");
  CHECK(g.net_of_entity_port("a").sink.label() == "b1:in1");
}

TEST_CASE("architecture without instances is valid") {
  auto d = parse_file(example_path("passthrough.qhdl"));
  auto g = validate(d, "wire");
  CHECK(g.instances.empty());
  REQUIRE(g.nets.size() == 1);
  CHECK(g.nets[0].passthrough());
}

TEST_CASE("in port after out port is rejected at parse time") {
  auto src = replace_once(slurp(example_path("mach_zehnder.qhdl")), "port (a, b : in fieldmode; c, d : out fieldmode);",
                          "port (a : in fieldmode; c, d : out fieldmode; b : in fieldmode);");
  CHECK_THROWS_AS(parse_source(src), DiagnosticError);
}

TEST_CASE("signal with two drivers is reported") {
  auto src = replace_once(slurp(example_path("mach_zehnder.qhdl")), "Out1 => delayed", "Out1 => lower");
  CHECK(mentions(diagnostics_of(src), "two drivers"));
}

TEST_CASE("omitted component port is reported as unmapped") {
  auto src = replace_once(slurp(example_path("mach_zehnder.qhdl")), ", Out2 => d)", ")");
  auto ds = diagnostics_of(src);
  CHECK(mentions(ds, "unmapped port 'out2' of instance 'b2'"));
}

TEST_CASE("polarity violations are reported") {
  auto src = replace_once(slurp(example_path("mach_zehnder.qhdl")), "Out1 => c,", "Out1 => a,");
  CHECK(mentions(diagnostics_of(src), "polarity violation"));
}

TEST_CASE("printing and reparsing preserves the design tree") {
  for (const auto* name : {"mach_zehnder.qhdl", "pseudo_nand.qhdl", "latch.qhdl", "passthrough.qhdl"}) {
    CAPTURE(name);
    auto d = parse_file(example_path(name));
    auto again = parse_source(print_qhdl(d));
    CHECK(to_json(again) == to_json(d));
  }
}

TEST_CASE("crafted invalid files produce their targeted diagnostic") {
  const std::string dir = std::string(QHDL_SOURCE_DIR) + "/tests/data/invalid/";
  auto manifest = nlohmann::json::parse(slurp(dir + "expected.json"));
  REQUIRE(manifest.size() >= 10);
  for (const auto& [file, want] : manifest.items()) {
    CAPTURE(file);
    std::vector<Diagnostic> ds;
    try {
      auto d = parse_file(dir + file);
      for (const auto& arch : d.architectures) validate(d, arch.entity, arch.name);
    } catch (const DiagnosticError& e) {
      ds = e.diagnostics();
    }
    REQUIRE(ds.size() == want["count"].get<std::size_t>());
    CHECK(ds[0].loc.line == want["line"].get<int>());
    CHECK(ds[0].loc.col == want["col"].get<int>());
    CHECK(ds[0].message == want["message"].get<std::string>());
  }
}
