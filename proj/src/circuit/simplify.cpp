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

#include "qhdl/circuit/simplify.hpp"

#include <algorithm>
#include <iterator>
#include <optional>
#include <set>
#include <stdexcept>

namespace qhdl::circuit {

namespace {

Expression pass(const Expression& e);

// Signal-flow list of a series chain, upstream first, any association.
void flatten_series(const Expression& e, std::vector<Expression>& flow) {
  if (const auto* s = e.as<Series>()) {
    flatten_series(s->upstream, flow);
    flatten_series(s->downstream, flow);
  } else {
    flow.push_back(e);
  }
}

// Operands of a concatenation with identities split into single channels.
std::vector<Expression> atoms(const Expression& e) {
  std::vector<Expression> out;
  auto push = [&](const Expression& x) {
    if (const auto* id = x.as<Identity>()) {
      for (std::size_t i = 0; i < id->channels; ++i) out.push_back(identity(1));
    } else {
      out.push_back(x);
    }
  };
  if (const auto* c = e.as<Concatenation>()) {
    for (const auto& op : c->operands) push(op);
  } else {
    push(e);
  }
  return out;
}

std::set<std::size_t> interior_boundaries(const std::vector<Expression>& parts, std::size_t total) {
  std::set<std::size_t> out;
  std::size_t acc = 0;
  for (const auto& p : parts) {
    acc += p.cdim();
    if (acc < total) out.insert(acc);
  }
  return out;
}

std::vector<std::vector<Expression>> split_at(const std::vector<Expression>& parts, const std::set<std::size_t>& cuts) {
  std::vector<std::vector<Expression>> groups(1);
  std::size_t acc = 0;
  for (const auto& p : parts) {
    groups.back().push_back(p);
    acc += p.cdim();
    if (cuts.count(acc)) groups.emplace_back();
  }
  if (groups.back().empty()) groups.pop_back();
  return groups;
}

// R5. Returns the fused element, or nothing when no boundary is shared.
std::optional<Expression> fuse_blocks(const Expression& upstream, const Expression& downstream) {
  if (!upstream.is<Concatenation>() || !downstream.is<Concatenation>()) return std::nullopt;
  auto n = upstream.cdim();
  auto up = atoms(upstream);
  auto down = atoms(downstream);
  auto up_cuts = interior_boundaries(up, n);
  auto down_cuts = interior_boundaries(down, n);
  std::set<std::size_t> common;
  std::set_intersection(up_cuts.begin(), up_cuts.end(), down_cuts.begin(), down_cuts.end(),
                        std::inserter(common, common.end()));
  if (common.empty()) return std::nullopt;
  auto up_groups = split_at(up, common);
  auto down_groups = split_at(down, common);
  std::vector<Expression> pieces;
  for (std::size_t g = 0; g < up_groups.size(); ++g) {
    pieces.push_back(series(concat(up_groups[g]), concat(down_groups[g])));
  }
  return concat(pieces);
}

Expression simplify_series(const Expression& e) {
  std::vector<Expression> raw;
  flatten_series(e, raw);
  std::vector<Expression> flow;
  for (const auto& x : raw) flow.push_back(pass(x));

  bool changed = true;
  while (changed) {
    changed = false;
    // R2
    auto kept = std::remove_if(flow.begin(), flow.end(), [](const Expression& x) { return x.is<Identity>(); });
    if (kept != flow.end()) {
      flow.erase(kept, flow.end());
      changed = true;
    }
    for (std::size_t i = 0; i + 1 < flow.size(); ++i) {
      const auto& up = flow[i];
      const auto& down = flow[i + 1];
      // R1
      if (up.is<Permutation>() && down.is<Permutation>()) {
        auto image = compose(down.as<Permutation>()->image, up.as<Permutation>()->image);
        Expression merged = is_identity_permutation(image) ? identity(image.size()) : permutation(image);
        flow.erase(flow.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        flow[i] = merged;
        changed = true;
        break;
      }
      // R5
      if (auto fused = fuse_blocks(up, down)) {
        flow.erase(flow.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        flow[i] = *fused;
        changed = true;
        break;
      }
    }
  }
  if (flow.empty()) return identity(e.cdim());
  // R4: c << (b << a), nesting on the upstream side
  Expression chain = flow.front();
  for (std::size_t i = 1; i < flow.size(); ++i) chain = series(chain, flow[i]);
  return chain;
}

Expression simplify_concat(const Concatenation& c) {
  std::vector<Expression> ops;
  for (const auto& op : c.operands) ops.push_back(pass(op));
  auto flat = concat(ops);
  const auto* fc = flat.as<Concatenation>();
  if (fc == nullptr) return flat;
  // R3
  std::vector<Expression> merged;
  for (const auto& op : fc->operands) {
    if (!merged.empty() && merged.back().is<Identity>() && op.is<Identity>()) {
      merged.back() = identity(merged.back().cdim() + op.cdim());
    } else {
      merged.push_back(op);
    }
  }
  return concat(merged);
}

Expression pass(const Expression& e) {
  if (const auto* p = e.as<Permutation>()) {
    return is_identity_permutation(p->image) ? identity(p->image.size()) : e;
  }
  if (e.is<Series>()) return simplify_series(e);
  if (const auto* c = e.as<Concatenation>()) return simplify_concat(*c);
  if (const auto* f = e.as<Feedback>()) return feedback(pass(f->inner), f->out_channel, f->in_channel);
  return e;
}

}  // namespace

Expression simplify(const Expression& e) {
  Expression current = e;
  for (int iteration = 0; iteration < 10000; ++iteration) {
    Expression next = pass(current);
    if (next == current) return current;
    current = next;
  }
  throw std::logic_error("circuit simplification did not reach a fixpoint");
}

}  // namespace qhdl::circuit
