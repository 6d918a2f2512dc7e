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

#include <string>
#include <string_view>
#include <vector>

#include "qhdl/frontend/diagnostic.hpp"

namespace qhdl::frontend {

enum class TokenKind {
  Identifier,
  Integer,
  Real,
  // keywords
  KwEntity,
  KwArchitecture,
  KwComponent,
  KwSignal,
  KwPort,
  KwGeneric,
  KwMap,
  KwBegin,
  KwEnd,
  KwOf,
  KwIs,
  KwIn,
  KwOut,
  // punctuation
  LParen,
  RParen,
  Semicolon,
  Colon,
  Comma,
  Assign,   // :=
  Arrow,    // =>
  LessEq,   // <=
  Plus,
  Minus,
  Star,
  Slash,
};

std::string_view to_string(TokenKind kind);

struct Token {
  TokenKind kind;
  /// Identifiers are folded to lower case; numbers keep their spelling.
  std::string text;
  SourceLoc loc;
};

/// Splits QHDL source into tokens. `--` comments run to end of line and may
/// contain arbitrary bytes; anything else outside the token alphabet is a
/// lexical error reported at its position.
std::vector<Token> tokenize(std::string_view source, const std::string& file = "<input>");

}  // namespace qhdl::frontend
