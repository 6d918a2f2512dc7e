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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qhdl::slh {

class SLHError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Mode {
  std::string label;
  std::size_t dim;

  friend bool operator==(const Mode&, const Mode&) = default;
};

/// Tensor product of labelled truncated modes. Modes are kept sorted by
/// label; the first mode is the most significant tensor factor. The empty
/// space has dimension 1 and carries scalars.
class HilbertSpace {
 public:
  HilbertSpace() = default;
  explicit HilbertSpace(std::vector<Mode> modes);

  static HilbertSpace single(std::string label, std::size_t dim);

  const std::vector<Mode>& modes() const { return modes_; }
  std::size_t dim() const { return dim_; }
  bool trivial() const { return modes_.empty(); }
  std::optional<std::size_t> index_of(const std::string& label) const;
  bool contains(const HilbertSpace& other) const;

  /// Union of both mode sets. Throws SLHError when a label appears with two
  /// different dimensions.
  HilbertSpace unite(const HilbertSpace& other) const;

  std::string str() const;

  friend bool operator==(const HilbertSpace& a, const HilbertSpace& b) { return a.modes_ == b.modes_; }

 private:
  std::vector<Mode> modes_;
  std::size_t dim_ = 1;
};

}  // namespace qhdl::slh
