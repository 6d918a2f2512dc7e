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

#include "qhdl/slh/evaluate.hpp"

namespace qhdl::slh {

SLHTriplet evaluate(const circuit::Expression& e, const Bindings& bindings) {
  using namespace circuit;
  if (const auto* r = e.as<ComponentRef>()) {
    auto it = bindings.find(r->label);
    if (it == bindings.end()) throw SLHError("no model bound to component '" + r->label + "'");
    if (it->second.channels() != r->cdim) {
      throw SLHError("model bound to '" + r->label + "' has " + std::to_string(it->second.channels()) +
                     " channels, expected " + std::to_string(r->cdim));
    }
    return it->second;
  }
  if (const auto* s = e.as<Series>()) return series_product(evaluate(s->downstream, bindings), evaluate(s->upstream, bindings));
  if (const auto* c = e.as<Concatenation>()) {
    SLHTriplet acc = trivial_system();
    for (const auto& op : c->operands) acc = concatenate(acc, evaluate(op, bindings));
    return acc;
  }
  if (const auto* f = e.as<Feedback>()) return feedback_reduce(evaluate(f->inner, bindings), f->out_channel, f->in_channel);
  if (const auto* p = e.as<Permutation>()) return permutation_system(p->image);
  if (const auto* id = e.as<Identity>()) return identity_system(id->channels);
  throw SLHError("unhandled expression node");
}

}  // namespace qhdl::slh
