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
#include <vector>

#include "qhdl/slh/operator.hpp"

namespace qhdl::slh {

/// (S, L, H) parameters of an n-channel component. S is n x n, L has n
/// entries. Entries may live on different spaces; space() is their union.
struct SLHTriplet {
  std::vector<std::vector<Operator>> S;
  std::vector<Operator> L;
  Operator H;

  std::size_t channels() const { return L.size(); }
  HilbertSpace space() const;
  /// Copy with every operator embedded into `target`.
  SLHTriplet embedded(const HilbertSpace& target) const;
};

class SingularFeedbackError : public SLHError {
 public:
  using SLHError::SLHError;
};

/// Block-parallel composition q1 ⊞ q2.
SLHTriplet concatenate(const SLHTriplet& q1, const SLHTriplet& q2);
/// Feeds every output of q1 into q2: q2 ◁ q1.
SLHTriplet series_product(const SLHTriplet& q2, const SLHTriplet& q1);
/// Output k fed back into input l, 1-based.
SLHTriplet feedback_reduce(const SLHTriplet& q, std::size_t k, std::size_t l);

SLHTriplet identity_system(std::size_t n);
/// (P, 0, 0) with P[k][l] = 1 iff k = image[l] (1-based image).
SLHTriplet permutation_system(const std::vector<std::size_t>& image);
/// The zero-channel system, neutral for concatenation.
SLHTriplet trivial_system();

struct Residuals {
  /// max(‖S†S − 1‖_max, ‖SS† − 1‖_max)
  double unitarity = 0.0;
  /// ‖H − H†‖_max
  double hermiticity = 0.0;
};

Residuals residuals(const SLHTriplet& q);

/// Warnings for residuals above 1e-10. Throws SLHError above 1e-6.
std::vector<std::string> check_invariants(const SLHTriplet& q);

/// Largest entrywise difference across S, L and H. Throws on channel mismatch.
double max_abs_diff(const SLHTriplet& a, const SLHTriplet& b);

}  // namespace qhdl::slh
