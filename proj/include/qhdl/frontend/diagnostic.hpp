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

#include <stdexcept>
#include <string>
#include <vector>

namespace qhdl::frontend {

struct SourceLoc {
  int line = 0;
  int col = 0;
};

struct Diagnostic {
  std::string file;
  SourceLoc loc;
  std::string message;

  /// Rendered as `file:line:col: message`.
  std::string str() const;
};

/// Thrown by the lexer, parser and validator. Carries every diagnostic found
/// before giving up (the lexer and parser stop at the first one).
class DiagnosticError : public std::runtime_error {
 public:
  explicit DiagnosticError(std::vector<Diagnostic> diagnostics);
  DiagnosticError(std::string file, SourceLoc loc, std::string message);

  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

}  // namespace qhdl::frontend
