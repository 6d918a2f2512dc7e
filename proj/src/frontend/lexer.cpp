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

#include "qhdl/frontend/lexer.hpp"

#include <array>
#include <cctype>
#include <utility>

namespace qhdl::frontend {

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Identifier: return "identifier";
    case TokenKind::Integer: return "integer literal";
    case TokenKind::Real: return "real literal";
    case TokenKind::KwEntity: return "'entity'";
    case TokenKind::KwArchitecture: return "'architecture'";
    case TokenKind::KwComponent: return "'component'";
    case TokenKind::KwSignal: return "'signal'";
    case TokenKind::KwPort: return "'port'";
    case TokenKind::KwGeneric: return "'generic'";
    case TokenKind::KwMap: return "'map'";
    case TokenKind::KwBegin: return "'begin'";
    case TokenKind::KwEnd: return "'end'";
    case TokenKind::KwOf: return "'of'";
    case TokenKind::KwIs: return "'is'";
    case TokenKind::KwIn: return "'in'";
    case TokenKind::KwOut: return "'out'";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::Semicolon: return "';'";
    case TokenKind::Colon: return "':'";
    case TokenKind::Comma: return "','";
    case TokenKind::Assign: return "':='";
    case TokenKind::Arrow: return "'=>'";
    case TokenKind::LessEq: return "'<='";
    case TokenKind::Plus: return "'+'";
    case TokenKind::Minus: return "'-'";
    case TokenKind::Star: return "'*'";
    case TokenKind::Slash: return "'/'";
  }
  return "?";
}

namespace {

constexpr std::array<std::pair<std::string_view, TokenKind>, 13> kKeywords{{
    {"entity", TokenKind::KwEntity},
    {"architecture", TokenKind::KwArchitecture},
    {"component", TokenKind::KwComponent},
    {"signal", TokenKind::KwSignal},
    {"port", TokenKind::KwPort},
    {"generic", TokenKind::KwGeneric},
    {"map", TokenKind::KwMap},
    {"begin", TokenKind::KwBegin},
    {"end", TokenKind::KwEnd},
    {"of", TokenKind::KwOf},
    {"is", TokenKind::KwIs},
    {"in", TokenKind::KwIn},
    {"out", TokenKind::KwOut},
}};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
 public:
  Lexer(std::string_view src, const std::string& file) : src_(src), file_(file) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\n') {
        advance();
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
        advance();
        continue;
      }
      if (c == '-' && peek(1) == '-') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
        continue;
      }
      SourceLoc loc{line_, col_};
      if (is_ident_start(c)) {
        out.push_back(identifier(loc));
      } else if (is_digit(c)) {
        out.push_back(number(loc));
      } else {
        out.push_back(punctuation(loc));
      }
    }
    return out;
  }

 private:
  char peek(std::size_t ahead) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  Token identifier(SourceLoc loc) {
    std::string text;
    while (pos_ < src_.size() && is_ident_char(src_[pos_])) {
      text += static_cast<char>(std::tolower(static_cast<unsigned char>(src_[pos_])));
      advance();
    }
    for (const auto& [word, kind] : kKeywords) {
      if (word == text) return Token{kind, std::move(text), loc};
    }
    return Token{TokenKind::Identifier, std::move(text), loc};
  }

  Token number(SourceLoc loc) {
    std::string text;
    bool real = false;
    auto digits = [&] {
      while (pos_ < src_.size() && is_digit(src_[pos_])) {
        text += src_[pos_];
        advance();
      }
    };
    digits();
    if (peek(0) == '.' && is_digit(peek(1))) {
      real = true;
      text += '.';
      advance();
      digits();
    }
    if (peek(0) == 'e' || peek(0) == 'E') {
      std::size_t ahead = 1;
      if (peek(1) == '+' || peek(1) == '-') ahead = 2;
      if (is_digit(peek(ahead))) {
        real = true;
        for (std::size_t i = 0; i < ahead; ++i) {
          text += static_cast<char>(std::tolower(static_cast<unsigned char>(src_[pos_])));
          advance();
        }
        digits();
      }
    }
    if (pos_ < src_.size() && is_ident_start(src_[pos_])) {
      throw DiagnosticError(file_, SourceLoc{line_, col_}, "malformed numeric literal");
    }
    return Token{real ? TokenKind::Real : TokenKind::Integer, std::move(text), loc};
  }

  Token punctuation(SourceLoc loc) {
    char c = src_[pos_];
    auto two = [&](TokenKind kind, const char* text) {
      advance();
      advance();
      return Token{kind, text, loc};
    };
    auto one = [&](TokenKind kind) {
      advance();
      return Token{kind, std::string(1, c), loc};
    };
    switch (c) {
      case '(': return one(TokenKind::LParen);
      case ')': return one(TokenKind::RParen);
      case ';': return one(TokenKind::Semicolon);
      case ',': return one(TokenKind::Comma);
      case '+': return one(TokenKind::Plus);
      case '-': return one(TokenKind::Minus);
      case '*': return one(TokenKind::Star);
      case '/': return one(TokenKind::Slash);
      case ':':
        if (peek(1) == '=') return two(TokenKind::Assign, ":=");
        return one(TokenKind::Colon);
      case '=':
        if (peek(1) == '>') return two(TokenKind::Arrow, "=>");
        break;
      case '<':
        if (peek(1) == '=') return two(TokenKind::LessEq, "<=");
        break;
      default:
        break;
    }
    auto byte = static_cast<unsigned char>(c);
    std::string what = byte >= 0x80 ? "non-ASCII character" : "unexpected character '" + std::string(1, c) + "'";
    throw DiagnosticError(file_, loc, "lexical error: " + what);
  }

  std::string_view src_;
  const std::string& file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source, const std::string& file) {
  return Lexer(source, file).run();
}

}  // namespace qhdl::frontend
