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


#include "qhdl/dynamics/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qhdl::dynamics {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double to_double(const std::string& s, const std::string& path, std::size_t line) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw DynamicsError(path + ":" + std::to_string(line) + ": '" + s + "' is not a number");
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

void write_trace_csv(const std::string& path, const ExpectationTrace& trace) {
  std::ofstream out(path);
  if (!out) throw DynamicsError("cannot write '" + path + "'");
  out << "t";
  for (const auto& name : trace.observables) out << ',' << name << "_re," << name << "_im";
  out << ",condition\n";
  for (std::size_t s = 0; s < trace.samples(); ++s) {
    out << num(trace.times[s]);
    for (const auto& series : trace.values) out << ',' << num(series[s].real()) << ',' << num(series[s].imag());
    out << ',' << (s < trace.conditions.size() ? trace.conditions[s] : "") << '\n';
  }
}

ExpectationTrace read_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DynamicsError("cannot read '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw DynamicsError(path + ": empty file");
  auto header = split_csv(line);
  if (header.empty() || header[0] != "t") throw DynamicsError(path + ": header must start with 't'");
  bool has_condition = header.back() == "condition";
  std::size_t value_cols = header.size() - 1 - (has_condition ? 1 : 0);
  if (value_cols % 2 != 0) throw DynamicsError(path + ": observable columns must come in _re/_im pairs");

  ExpectationTrace trace;
  for (std::size_t c = 1; c + 1 < 1 + value_cols; c += 2) {
    const auto& re = header[c];
    const auto& im = header[c + 1];
    auto name = re.substr(0, re.size() - 3);
    if (!ends_with(re, "_re") || im != name + "_im") {
      throw DynamicsError(path + ": columns '" + re + "' and '" + im + "' are not a _re/_im pair");
    }
    trace.observables.push_back(name);
  }
  trace.values.resize(trace.observables.size());
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto cells = split_csv(line);
    if (cells.size() != header.size()) {
      throw DynamicsError(path + ":" + std::to_string(lineno) + ": expected " + std::to_string(header.size()) +
                          " columns, found " + std::to_string(cells.size()));
    }
    trace.times.push_back(to_double(cells[0], path, lineno));
    for (std::size_t k = 0; k < trace.observables.size(); ++k) {
      trace.values[k].emplace_back(to_double(cells[1 + 2 * k], path, lineno),
                                   to_double(cells[2 + 2 * k], path, lineno));
    }
    if (has_condition) trace.conditions.push_back(cells.back());
  }
  return trace;
}

void write_jumps_csv(const std::string& path, const std::vector<JumpRecord>& jumps) {
  std::ofstream out(path);
  if (!out) throw DynamicsError("cannot write '" + path + "'");
  out << "trajectory,t,channel\n";
  for (const auto& j : jumps) out << j.trajectory << ',' << num(j.t) << ',' << j.channel << '\n';
}

std::vector<Segment> schedule_from_json(const nlohmann::json& doc, const std::vector<std::string>& input_ports) {
  if (!doc.is_array()) throw DynamicsError("schedule must be a JSON array of segments");
  std::vector<Segment> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& item = doc[i];
    auto where = "schedule entry " + std::to_string(i + 1);
    if (!item.is_object() || !item.contains("condition") || !item.contains("duration")) {
      throw DynamicsError(where + ": needs \"condition\" and \"duration\"");
    }
    Segment seg;
    seg.condition = item.at("condition").get<std::string>();
    const auto& known = known_conditions();
    if (std::find(known.begin(), known.end(), seg.condition) == known.end()) {
      throw DynamicsError(where + ": unknown condition '" + seg.condition + "' (known: HOLD, SET, RESET)");
    }
    seg.duration = item.at("duration").get<double>();
    if (seg.duration < 0.0) throw DynamicsError(where + ": negative duration");
    seg.drive.assign(input_ports.size(), Complex(0.0));
    if (item.contains("inputs")) {
      for (const auto& [port, value] : item.at("inputs").items()) {
        auto it = std::find(input_ports.begin(), input_ports.end(), port);
        if (it == input_ports.end()) throw DynamicsError(where + ": model has no input port '" + port + "'");
        Complex v;
        if (value.is_number()) {
          v = value.get<double>();
        } else if (value.is_array() && value.size() == 2) {
          v = Complex(value[0].get<double>(), value[1].get<double>());
        } else {
          throw DynamicsError(where + ": input '" + port + "' must be a number or [re, im]");
        }
        seg.drive[static_cast<std::size_t>(it - input_ports.begin())] = v;
      }
    }
    out.push_back(std::move(seg));
  }
  return out;
}

}  // namespace qhdl::dynamics
