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

#include "qhdl/slh/model_json.hpp"

#include <algorithm>
#include <fstream>
#include <tuple>

namespace qhdl::slh {

using nlohmann::json;

json operator_to_json(const Operator& op) {
  std::vector<std::tuple<Eigen::Index, Eigen::Index, Complex>> entries;
  const auto& m = op.matrix();
  for (Eigen::Index k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      if (it.value() != Complex(0.0)) entries.emplace_back(it.row(), it.col(), it.value());
    }
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
  });
  json list = json::array();
  for (const auto& [r, c, v] : entries) list.push_back({r, c, v.real(), v.imag()});
  return json{{"shape", {m.rows(), m.cols()}}, {"entries", list}};
}

Operator operator_from_json(const json& j, const HilbertSpace& space) {
  auto shape = j.at("shape").get<std::vector<std::size_t>>();
  if (shape.size() != 2 || shape[0] != space.dim() || shape[1] != space.dim()) {
    throw SLHError("operator shape does not match model space dimension " + std::to_string(space.dim()));
  }
  std::vector<Eigen::Triplet<Complex>> entries;
  for (const auto& e : j.at("entries")) {
    auto r = e.at(0).get<std::size_t>();
    auto c = e.at(1).get<std::size_t>();
    if (r >= space.dim() || c >= space.dim()) throw SLHError("operator entry index out of range");
    entries.emplace_back(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c),
                         Complex(e.at(2).get<double>(), e.at(3).get<double>()));
  }
  auto d = static_cast<Eigen::Index>(space.dim());
  SparseMatrix m(d, d);
  m.setFromTriplets(entries.begin(), entries.end());
  return Operator(space, std::move(m));
}

json model_to_json(const SLHTriplet& q) {
  auto space = q.space();
  auto full = q.embedded(space);
  json modes = json::array();
  for (const auto& m : space.modes()) modes.push_back({{"label", m.label}, {"dim", m.dim}});
  json s = json::array();
  for (const auto& row : full.S) {
    json r = json::array();
    for (const auto& op : row) r.push_back(operator_to_json(op));
    s.push_back(r);
  }
  json l = json::array();
  for (const auto& op : full.L) l.push_back(operator_to_json(op));
  return json{{"n", q.channels()}, {"space", modes}, {"S", s}, {"L", l}, {"H", operator_to_json(full.H)}};
}

SLHTriplet model_from_json(const json& j) {
  std::vector<Mode> modes;
  for (const auto& m : j.at("space")) modes.push_back(Mode{m.at("label").get<std::string>(), m.at("dim").get<std::size_t>()});
  HilbertSpace space(std::move(modes));
  auto n = j.at("n").get<std::size_t>();
  SLHTriplet q;
  const auto& s = j.at("S");
  const auto& l = j.at("L");
  if (s.size() != n || l.size() != n) throw SLHError("model S/L sizes do not match n = " + std::to_string(n));
  for (const auto& row : s) {
    if (row.size() != n) throw SLHError("model S is not square");
    std::vector<Operator> ops;
    for (const auto& op : row) ops.push_back(operator_from_json(op, space));
    q.S.push_back(std::move(ops));
  }
  for (const auto& op : l) q.L.push_back(operator_from_json(op, space));
  q.H = operator_from_json(j.at("H"), space);
  return q;
}

void write_model(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << doc.dump(1) << '\n';
}

json read_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace qhdl::slh
