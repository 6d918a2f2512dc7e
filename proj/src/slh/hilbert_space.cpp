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

#include "qhdl/slh/hilbert_space.hpp"

#include <algorithm>

namespace qhdl::slh {

HilbertSpace::HilbertSpace(std::vector<Mode> modes) : modes_(std::move(modes)) {
  std::sort(modes_.begin(), modes_.end(), [](const Mode& a, const Mode& b) { return a.label < b.label; });
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (modes_[i].dim == 0) throw SLHError("mode '" + modes_[i].label + "' has dimension 0");
    if (i > 0 && modes_[i].label == modes_[i - 1].label) {
      throw SLHError("duplicate mode label '" + modes_[i].label + "'");
    }
    dim_ *= modes_[i].dim;
  }
}

HilbertSpace HilbertSpace::single(std::string label, std::size_t dim) {
  return HilbertSpace({Mode{std::move(label), dim}});
}

std::optional<std::size_t> HilbertSpace::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (modes_[i].label == label) return i;
  }
  return std::nullopt;
}

bool HilbertSpace::contains(const HilbertSpace& other) const {
  for (const auto& m : other.modes_) {
    auto i = index_of(m.label);
    if (!i || modes_[*i].dim != m.dim) return false;
  }
  return true;
}

HilbertSpace HilbertSpace::unite(const HilbertSpace& other) const {
  if (contains(other)) return *this;
  if (other.contains(*this)) return other;
  std::vector<Mode> modes = modes_;
  for (const auto& m : other.modes_) {
    if (auto i = index_of(m.label)) {
      if (modes_[*i].dim != m.dim) {
        throw SLHError("mode '" + m.label + "' used with dimensions " + std::to_string(modes_[*i].dim) + " and " +
                       std::to_string(m.dim));
      }
    } else {
      modes.push_back(m);
    }
  }
  return HilbertSpace(std::move(modes));
}

std::string HilbertSpace::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (i > 0) out += ", ";
    out += modes_[i].label + ":" + std::to_string(modes_[i].dim);
  }
  return out + "}";
}

}  // namespace qhdl::slh
