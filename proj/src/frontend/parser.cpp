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

#include "qhdl/frontend/parser.hpp"

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

namespace qhdl::frontend {

namespace {

class Parser {
 public:
  Parser(const std::vector<Token>& tokens, const std::string& file) : tokens_(tokens), file_(file) {}

  DesignFile file() {
    DesignFile design;
    design.path = file_;
    while (!at_end()) {
      if (check(TokenKind::KwEntity)) {
        auto entity = entity_decl();
        if (design.find_entity(entity.name) != nullptr) {
          fail(entity.loc, "duplicate entity '" + entity.name + "'");
        }
        design.entities.push_back(std::move(entity));
      } else if (check(TokenKind::KwArchitecture)) {
        auto arch = architecture_decl();
        if (design.find_entity(arch.entity) == nullptr) {
          fail(arch.loc, "architecture '" + arch.name + "' references undeclared entity '" + arch.entity + "'");
        }
        for (const auto& other : design.architectures) {
          if (other.entity == arch.entity && other.name == arch.name) {
            fail(arch.loc, "duplicate architecture '" + arch.name + "' of entity '" + arch.entity + "'");
          }
        }
        design.architectures.push_back(std::move(arch));
      } else {
        unexpected({TokenKind::KwEntity, TokenKind::KwArchitecture});
      }
    }
    return design;
  }

  ParamExpr expression() {
    auto lhs = term();
    while (check(TokenKind::Plus) || check(TokenKind::Minus)) {
      auto op = next().kind == TokenKind::Plus ? ParamExpr::Op::Add : ParamExpr::Op::Sub;
      lhs = ParamExpr::binary(op, std::move(lhs), term());
    }
    return lhs;
  }

  bool at_end() const { return pos_ >= tokens_.size(); }

  [[noreturn]] void unexpected(std::initializer_list<TokenKind> expected) {
    std::string message = "syntax error: expected ";
    bool first = true;
    for (auto kind : expected) {
      if (!first) message += " or ";
      message += to_string(kind);
      first = false;
    }
    if (at_end()) {
      message += ", found end of file";
      fail(end_loc(), message);
    }
    message += ", found '" + tokens_[pos_].text + "'";
    fail(tokens_[pos_].loc, message);
  }

 private:
  // -- token helpers -------------------------------------------------------

  bool check(TokenKind kind) const { return !at_end() && tokens_[pos_].kind == kind; }

  bool check_at(std::size_t ahead, TokenKind kind) const {
    return pos_ + ahead < tokens_.size() && tokens_[pos_ + ahead].kind == kind;
  }

  bool check_word(std::string_view word) const {
    return check(TokenKind::Identifier) && tokens_[pos_].text == word;
  }

  const Token& next() { return tokens_[pos_++]; }

  bool accept(TokenKind kind) {
    if (!check(kind)) return false;
    ++pos_;
    return true;
  }

  const Token& expect(TokenKind kind) {
    if (!check(kind)) unexpected({kind});
    return next();
  }

  const Token& expect_word(std::string_view word) {
    if (!check_word(word)) {
      std::string found = at_end() ? "end of file" : "'" + tokens_[pos_].text + "'";
      fail(at_end() ? end_loc() : tokens_[pos_].loc,
           "syntax error: expected '" + std::string(word) + "', found " + found);
    }
    return next();
  }

  SourceLoc end_loc() const {
    if (tokens_.empty()) return SourceLoc{1, 1};
    const auto& last = tokens_.back();
    return SourceLoc{last.loc.line, last.loc.col + static_cast<int>(last.text.size())};
  }

  [[noreturn]] void fail(SourceLoc loc, const std::string& message) const {
    throw DiagnosticError(file_, loc, message);
  }

  void end_label(const std::string& name, const char* what) {
    if (check(TokenKind::Identifier)) {
      const auto& label = next();
      if (label.text != name) {
        fail(label.loc, std::string("end label '") + label.text + "' does not match " + what + " '" + name + "'");
      }
    }
    expect(TokenKind::Semicolon);
  }

  // -- declarations --------------------------------------------------------

  EntityDecl entity_decl() {
    EntityDecl entity;
    entity.loc = expect(TokenKind::KwEntity).loc;
    entity.name = expect(TokenKind::Identifier).text;
    expect(TokenKind::KwIs);
    interface_body(entity);
    expect(TokenKind::KwEnd);
    end_label(entity.name, "entity");
    return entity;
  }

  ComponentDecl component_decl() {
    ComponentDecl component;
    component.loc = expect(TokenKind::KwComponent).loc;
    component.name = expect(TokenKind::Identifier).text;
    accept(TokenKind::KwIs);
    interface_body(component);
    expect(TokenKind::KwEnd);
    expect(TokenKind::KwComponent);
    end_label(component.name, "component");
    return component;
  }

  void interface_body(InterfaceDecl& decl) {
    std::set<std::string> names;
    auto claim = [&](const std::string& name, SourceLoc loc) {
      if (!names.insert(name).second) {
        fail(loc, "duplicate name '" + name + "' in interface of '" + decl.name + "'");
      }
    };
    if (accept(TokenKind::KwGeneric)) {
      expect(TokenKind::LParen);
      do {
        generic_group(decl, claim);
      } while (accept(TokenKind::Semicolon));
      expect(TokenKind::RParen);
      expect(TokenKind::Semicolon);
    }
    expect(TokenKind::KwPort);
    expect(TokenKind::LParen);
    bool seen_out = false;
    do {
      std::vector<PortDecl> group;
      do {
        const auto& id = expect(TokenKind::Identifier);
        claim(id.text, id.loc);
        group.push_back(PortDecl{id.text, Direction::In, id.loc});
      } while (accept(TokenKind::Comma));
      expect(TokenKind::Colon);
      Direction direction;
      if (accept(TokenKind::KwIn)) {
        direction = Direction::In;
      } else if (accept(TokenKind::KwOut)) {
        direction = Direction::Out;
      } else {
        unexpected({TokenKind::KwIn, TokenKind::KwOut});
      }
      expect_word("fieldmode");
      for (auto& port : group) {
        if (direction == Direction::In && seen_out) {
          fail(port.loc, "in port '" + port.name + "' declared after an out port; all in ports must precede all out ports");
        }
        port.direction = direction;
        decl.ports.push_back(port);
      }
      if (direction == Direction::Out) seen_out = true;
    } while (accept(TokenKind::Semicolon));
    expect(TokenKind::RParen);
    expect(TokenKind::Semicolon);
  }

  template <class Claim>
  void generic_group(InterfaceDecl& decl, Claim& claim) {
    std::vector<GenericDecl> group;
    do {
      const auto& id = expect(TokenKind::Identifier);
      claim(id.text, id.loc);
      group.push_back(GenericDecl{id.text, NumericKind::Real, std::nullopt, id.loc});
    } while (accept(TokenKind::Comma));
    expect(TokenKind::Colon);
    NumericKind kind;
    if (check_word("real")) {
      kind = NumericKind::Real;
    } else if (check_word("complex")) {
      kind = NumericKind::Complex;
    } else if (check_word("int") || check_word("integer")) {
      kind = NumericKind::Int;
    } else {
      std::string found = at_end() ? "end of file" : "'" + tokens_[pos_].text + "'";
      fail(at_end() ? end_loc() : tokens_[pos_].loc,
           "syntax error: expected generic type 'real', 'complex' or 'int', found " + found);
    }
    next();
    std::optional<ParamExpr> default_value;
    if (accept(TokenKind::Assign)) default_value = expression();
    for (auto& generic : group) {
      generic.kind = kind;
      generic.default_value = default_value;
      decl.generics.push_back(std::move(generic));
    }
  }

  ArchitectureDecl architecture_decl() {
    ArchitectureDecl arch;
    arch.loc = expect(TokenKind::KwArchitecture).loc;
    arch.name = expect(TokenKind::Identifier).text;
    expect(TokenKind::KwOf);
    arch.entity = expect(TokenKind::Identifier).text;
    expect(TokenKind::KwIs);

    std::set<std::string> signal_names;
    while (true) {
      if (check(TokenKind::KwComponent)) {
        auto component = component_decl();
        if (arch.find_component(component.name) != nullptr) {
          fail(component.loc, "duplicate component declaration '" + component.name + "'");
        }
        arch.components.push_back(std::move(component));
      } else if (accept(TokenKind::KwSignal)) {
        do {
          const auto& id = expect(TokenKind::Identifier);
          if (!signal_names.insert(id.text).second) fail(id.loc, "duplicate signal '" + id.text + "'");
          arch.signals.push_back(SignalDecl{id.text, id.loc});
        } while (accept(TokenKind::Comma));
        expect(TokenKind::Colon);
        expect_word("fieldmode");
        expect(TokenKind::Semicolon);
      } else {
        break;
      }
    }
    if (!check(TokenKind::KwBegin)) unexpected({TokenKind::KwComponent, TokenKind::KwSignal, TokenKind::KwBegin});
    next();

    std::set<std::string> instance_names;
    while (!check(TokenKind::KwEnd)) {
      if (check(TokenKind::Identifier) && check_at(1, TokenKind::LessEq)) {
        arch.assignments.push_back(assignment());
        continue;
      }
      if (!check(TokenKind::Identifier)) unexpected({TokenKind::Identifier, TokenKind::KwEnd});
      auto instance = instance_assign();
      if (!instance_names.insert(instance.name).second) {
        fail(instance.loc, "duplicate instance name '" + instance.name + "'");
      }
      arch.instances.push_back(std::move(instance));
    }
    next();
    end_label(arch.name, "architecture");
    return arch;
  }

  SignalAssign assignment() {
    SignalAssign assign;
    const auto& target = next();
    assign.target = target.text;
    assign.loc = target.loc;
    expect(TokenKind::LessEq);
    assign.source = expect(TokenKind::Identifier).text;
    expect(TokenKind::Semicolon);
    return assign;
  }

  InstanceAssign instance_assign() {
    InstanceAssign inst;
    const auto& id = next();
    inst.name = id.text;
    inst.loc = id.loc;
    expect(TokenKind::Colon);
    inst.component = expect(TokenKind::Identifier).text;
    if (accept(TokenKind::KwGeneric)) {
      expect(TokenKind::KwMap);
      expect(TokenKind::LParen);
      do {
        const auto& formal = expect(TokenKind::Identifier);
        expect(TokenKind::Arrow);
        inst.generic_map.push_back(GenericAssoc{formal.text, expression(), formal.loc});
      } while (accept(TokenKind::Comma));
      expect(TokenKind::RParen);
    }
    expect(TokenKind::KwPort);
    expect(TokenKind::KwMap);
    expect(TokenKind::LParen);
    do {
      const auto& formal = expect(TokenKind::Identifier);
      expect(TokenKind::Arrow);
      const auto& actual = expect(TokenKind::Identifier);
      inst.port_map.push_back(PortAssoc{formal.text, actual.text, formal.loc});
    } while (accept(TokenKind::Comma));
    expect(TokenKind::RParen);
    expect(TokenKind::Semicolon);
    return inst;
  }

  // -- expressions ---------------------------------------------------------

  ParamExpr term() {
    auto lhs = unary();
    while (check(TokenKind::Star) || check(TokenKind::Slash)) {
      auto op = next().kind == TokenKind::Star ? ParamExpr::Op::Mul : ParamExpr::Op::Div;
      lhs = ParamExpr::binary(op, std::move(lhs), unary());
    }
    return lhs;
  }

  ParamExpr unary() {
    if (accept(TokenKind::Minus)) return ParamExpr::negate(unary());
    if (accept(TokenKind::Plus)) return unary();
    return primary();
  }

  ParamExpr primary() {
    if (check(TokenKind::Integer) || check(TokenKind::Real)) {
      const auto& tok = next();
      double value = std::stod(tok.text);
      return ParamExpr::literal(value, tok.kind == TokenKind::Integer ? NumericKind::Int : NumericKind::Real);
    }
    if (check(TokenKind::Identifier)) {
      const auto& tok = next();
      return ParamExpr::ref(tok.text, tok.loc);
    }
    if (accept(TokenKind::LParen)) {
      auto first = expression();
      if (accept(TokenKind::Comma)) {
        auto second = expression();
        expect(TokenKind::RParen);
        return ParamExpr::complex_pair(std::move(first), std::move(second));
      }
      expect(TokenKind::RParen);
      return first;
    }
    unexpected({TokenKind::Integer, TokenKind::Real, TokenKind::Identifier, TokenKind::LParen});
  }

  const std::vector<Token>& tokens_;
  const std::string& file_;
  std::size_t pos_ = 0;
};

}  // namespace

DesignFile parse(const std::vector<Token>& tokens, const std::string& file) {
  return Parser(tokens, file).file();
}

DesignFile parse_source(std::string_view source, const std::string& file) {
  return parse(tokenize(source, file), file);
}

DesignFile parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DiagnosticError(path, SourceLoc{0, 0}, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_source(buf.str(), path);
}

ParamExpr parse_param_expr(std::string_view text) {
  const std::string file = "<expr>";
  auto tokens = tokenize(text, file);
  Parser parser(tokens, file);
  auto expr = parser.expression();
  if (!parser.at_end()) parser.unexpected({TokenKind::Plus, TokenKind::Minus, TokenKind::Star, TokenKind::Slash});
  return expr;
}

}  // namespace qhdl::frontend
