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


// qhdl: parse, synthesize, compile, simulate and reduce QHDL circuits.

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qhdl/circuit/render.hpp"
#include "qhdl/circuit/simplify.hpp"
#include "qhdl/dynamics/io.hpp"
#include "qhdl/dynamics/simulate.hpp"
#include "qhdl/frontend/diagnostic.hpp"
#include "qhdl/frontend/netlist.hpp"
#include "qhdl/frontend/parser.hpp"
#include "qhdl/pipeline/compiler.hpp"
#include "qhdl/reduction/reduction.hpp"
#include "qhdl/slh/model_json.hpp"

namespace fs = std::filesystem;
using namespace qhdl;

namespace {

/// Bad input from the user; exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::pair<std::string, std::string> split_assignment(const std::string& text, const char* what) {
  auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw UsageError(std::string(what) + " '" + text + "' must be name=value");
  return {text.substr(0, eq), text.substr(eq + 1)};
}

std::size_t parse_count(const std::string& text, const char* what, bool allow_zero = false) {
  try {
    std::size_t used = 0;
    long v = std::stol(text, &used);
    if (used == text.size() && (v > 0 || (allow_zero && v == 0))) return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
  }
  throw UsageError(std::string(what) + " '" + text + "' is not a " + (allow_zero ? "nonnegative" : "positive") +
                   " integer");
}

/// QHDL identifiers are case-insensitive and stored in lower case.
std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

/// Entity of the last architecture in the last file, when none is named.
std::string default_entity(const pipeline::Library& lib) {
  for (auto f = lib.files.rbegin(); f != lib.files.rend(); ++f) {
    if (!f->architectures.empty()) return f->architectures.back().entity;
  }
  throw UsageError("no architecture found in the input files");
}

std::string write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
  return path;
}

// ---------------------------------------------------------------- parse

struct ParseOptions {
  std::vector<std::string> files;
  std::string json_out;
};

int cmd_parse(const ParseOptions& o) {
  nlohmann::json dump = nlohmann::json::array();
  std::vector<frontend::Diagnostic> errors;
  for (const auto& path : o.files) {
    try {
      auto design = frontend::parse_file(path);
      for (const auto& arch : design.architectures) {
        try {
          frontend::validate(design, arch.entity, arch.name);
        } catch (const frontend::DiagnosticError& e) {
          errors.insert(errors.end(), e.diagnostics().begin(), e.diagnostics().end());
        }
      }
      dump.push_back(frontend::to_json(design));
    } catch (const frontend::DiagnosticError& e) {
      errors.insert(errors.end(), e.diagnostics().begin(), e.diagnostics().end());
    }
  }
  for (const auto& d : errors) std::cerr << d.str() << '\n';
  if (!errors.empty()) return 1;
  if (!o.json_out.empty()) {
    if (o.json_out == "-") {
      std::cout << dump.dump(2) << '\n';
    } else {
      write_text(o.json_out, dump.dump(2) + "\n");
    }
  }
  return 0;
}

// ---------------------------------------------------------------- synth

struct SynthOptions {
  std::vector<std::string> files;
  std::string entity;
  std::string arch;
  std::string format = "text";
  bool raw = false;
  std::string out;
};

int cmd_synth(const SynthOptions& o) {
  auto lib = pipeline::Library::load(o.files);
  auto entity = o.entity.empty() ? default_entity(lib) : lower(o.entity);
  auto synth = pipeline::synthesize_entity(lib, entity, lower(o.arch));
  auto expr = o.raw ? synth.expression : circuit::simplify(synth.expression);
  std::string text;
  if (o.format == "json") {
    text = circuit::to_json(expr).dump(2) + "\n";
  } else {
    text = expr.str() + "\n\n" + circuit::render_text(expr) + "\n";
  }
  if (o.out.empty()) {
    std::cout << text;
  } else {
    write_text(o.out, text);
  }
  return 0;
}

// ---------------------------------------------------------------- compile

struct CompileOptions {
  std::vector<std::string> files;
  std::string entity;
  std::string arch;
  std::vector<std::string> params;
  std::vector<std::string> fock;
  std::string out;
};

int cmd_compile(const CompileOptions& o) {
  pipeline::ParamValues params;
  for (const auto& p : o.params) {
    auto [name, value] = split_assignment(p, "parameter");
    params[lower(name)] = pipeline::parse_param_value(value);
  }
  pipeline::FockDims fock;
  for (const auto& f : o.fock) {
    if (f.find('=') == std::string::npos) {
      fock.fallback = parse_count(f, "Fock dimension");
    } else {
      auto [label, n] = split_assignment(f, "Fock dimension");
      fock.per_mode[lower(label)] = parse_count(n, "Fock dimension");
    }
  }
  auto lib = pipeline::Library::load(o.files);
  auto entity = o.entity.empty() ? default_entity(lib) : lower(o.entity);
  auto model = pipeline::compile(lib, entity, lower(o.arch), params, fock);
  for (const auto& w : model.warnings) std::cerr << "warning: " << w << '\n';
  std::printf("entity: %s\nchannels: %zu\nspace: %s\n", model.entity.c_str(), model.triplet.channels(),
              model.triplet.space().str().c_str());
  std::printf("unitarity residual: %.3g\nhermiticity residual: %.3g\n", model.residuals.unitarity,
              model.residuals.hermiticity);
  if (!o.out.empty()) slh::write_model(o.out, pipeline::compiled_to_json(model));
  return 0;
}

// ---------------------------------------------------------------- sim

struct SimOptions {
  std::string model;
  std::string method = "master";
  std::string schedule;
  double t_final = 1.0;
  double dt = 1e-3;
  double sample = 1e-2;
  std::size_t trajectories = 1;
  std::uint64_t seed = 0;
  std::vector<std::string> observables;
  std::vector<std::string> init;
  unsigned threads = 0;
  std::string out = "sim_out";
};

int cmd_sim(const SimOptions& o) {
  auto doc = slh::read_model(o.model);
  auto triplet = slh::model_from_json(doc);
  const auto space = triplet.space();

  std::vector<std::string> ports;
  if (doc.contains("ports")) {
    ports = doc["ports"]["in"].get<std::vector<std::string>>();
  } else {
    for (std::size_t c = 1; c <= triplet.channels(); ++c) ports.push_back("in_" + std::to_string(c));
  }

  dynamics::SimulationConfig cfg;
  cfg.t_final = o.t_final;
  cfg.dt = o.dt;
  cfg.sample_interval = o.sample;
  cfg.trajectories = o.trajectories;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  if (o.method == "master") {
    cfg.method = dynamics::Method::Master;
  } else if (o.method == "mcwf") {
    cfg.method = dynamics::Method::Mcwf;
  } else {
    throw UsageError("unknown method '" + o.method + "' (expected master or mcwf)");
  }
  cfg.observables = o.observables;
  if (cfg.observables.empty()) {
    for (const auto& m : space.modes()) cfg.observables.push_back("n:" + m.label);
  }

  std::map<std::string, std::size_t> occupation;
  for (const auto& item : o.init) {
    auto [label, n] = split_assignment(item, "initial occupation");
    occupation[label] = parse_count(n, "initial occupation", true);
  }
  auto psi0 = dynamics::fock_state(space, occupation);
  dynamics::QuantumState initial{space, psi0};
  if (cfg.method == dynamics::Method::Master) initial.data = initial.density();

  std::vector<dynamics::ExpectationTrace> traces;
  if (!o.schedule.empty()) {
    std::ifstream in(o.schedule);
    if (!in) throw UsageError("cannot read schedule '" + o.schedule + "'");
    auto schedule = dynamics::schedule_from_json(nlohmann::json::parse(in), ports);
    traces = dynamics::run_input_sequence(triplet, schedule, initial, cfg).traces;
  } else if (cfg.method == dynamics::Method::Master) {
    auto r = dynamics::integrate_master(triplet, initial.density(), cfg);
    std::printf("max |tr rho - 1|: %.3g\n", r.max_trace_error);
    traces.push_back(std::move(r.trace));
  } else {
    for (auto& r : dynamics::mcwf_ensemble(triplet, psi0, cfg)) traces.push_back(std::move(r.trace));
  }

  fs::create_directories(o.out);
  if (cfg.method == dynamics::Method::Master) {
    dynamics::write_trace_csv((fs::path(o.out) / "trace.csv").string(), traces.front());
  } else {
    for (std::size_t k = 0; k < traces.size(); ++k) {
      char name[32];
      std::snprintf(name, sizeof name, "trace_%04zu.csv", k);
      dynamics::write_trace_csv((fs::path(o.out) / name).string(), traces[k]);
    }
    auto mean = dynamics::average(traces);
    dynamics::write_trace_csv((fs::path(o.out) / "mean.csv").string(), mean);
    dynamics::write_jumps_csv((fs::path(o.out) / "jumps.csv").string(), mean.jumps);
    std::printf("trajectories: %zu\njumps: %zu\n", traces.size(), mean.jumps.size());
  }
  std::printf("samples: %zu\noutput: %s\n", traces.front().samples(), o.out.c_str());
  return 0;
}

// ---------------------------------------------------------------- reduce

struct ReduceOptions {
  std::string trace_dir;
  double bin_width = 0.0;
  std::optional<double> origin;
  double dt = 0.0;
  std::string alpha;
  std::string obs_a;
  std::string obs_b;
  std::size_t target_states = 38;
  std::string out = "reduced.json";
  std::string counts_dir;
};

int cmd_reduce(const ReduceOptions& o) {
  if (!fs::is_directory(o.trace_dir)) throw UsageError("'" + o.trace_dir + "' is not a directory");
  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(o.trace_dir)) {
    auto name = entry.path().filename().string();
    if (entry.is_regular_file() && name.rfind("trace", 0) == 0 && entry.path().extension() == ".csv") {
      paths.push_back(entry.path());
    }
  }
  if (paths.empty()) throw UsageError("no trace*.csv files in '" + o.trace_dir + "'");
  std::sort(paths.begin(), paths.end());
  std::vector<dynamics::ExpectationTrace> traces;
  for (const auto& p : paths) traces.push_back(dynamics::read_trace_csv(p.string()));

  reduction::BinningSpec spec;
  spec.observable_a = o.obs_a;
  spec.observable_b = o.obs_b;
  if (spec.observable_a.empty() || spec.observable_b.empty()) {
    std::vector<std::string> numbers;
    for (const auto& name : traces.front().observables) {
      if (name.rfind("n:", 0) == 0) numbers.push_back(name);
    }
    if (numbers.size() < 2) throw UsageError("traces need two photon-number observables; name them with --obs-a/--obs-b");
    if (spec.observable_a.empty()) spec.observable_a = numbers[0];
    if (spec.observable_b.empty()) spec.observable_b = numbers[1];
  }

  double lo = 0.0;
  double hi = 0.0;
  bool first = true;
  for (const auto& t : traces) {
    auto a = t.column(spec.observable_a);
    auto b = t.column(spec.observable_b);
    for (std::size_t s = 0; s < t.samples(); ++s) {
      double d = t.values[a][s].real() - t.values[b][s].real();
      lo = first ? d : std::min(lo, d);
      hi = first ? d : std::max(hi, d);
      first = false;
    }
  }
  if (first) throw UsageError("the traces contain no samples");
  // Default: split the observed range of D into the target number of bins.
  spec.origin = o.origin.value_or(lo);
  spec.bin_width = o.bin_width > 0.0 ? o.bin_width
                   : hi > lo         ? (hi - lo) / static_cast<double>(o.target_states) * (1.0 + 1e-9)
                                     : 1.0;

  double dt = o.dt;
  if (dt <= 0.0) {
    const auto& t = traces.front();
    if (t.samples() < 2) throw UsageError("cannot infer the sampling interval; pass --dt");
    dt = t.times[1] - t.times[0];
  }

  // A provisional reduction with α = 1 yields the rates used for the suggestion.
  auto model = reduction::reduce(traces, spec, dt, 1.0);
  auto suggestion = reduction::suggest_alpha(model.rates, model.table.size());
  slh::Complex alpha = 1.0;
  if (!o.alpha.empty()) {
    alpha = pipeline::parse_param_value(o.alpha);
  } else if (suggestion) {
    alpha = *suggestion;
  } else {
    std::cerr << "warning: no SET/RESET data to suggest a drive amplitude; using alpha = 1\n";
  }
  model = reduction::reduce(traces, spec, dt, alpha);

  slh::write_model(o.out, reduction::reduced_to_json(model, spec));
  if (!o.counts_dir.empty()) {
    fs::create_directories(o.counts_dir);
    for (const auto& [cond, counts] : model.estimate.counts) {
      reduction::write_counts_csv((fs::path(o.counts_dir) / ("counts_" + cond + ".csv")).string(), counts);
    }
  }
  std::printf("traces: %zu\nvisited bins: %zu\nM: %zu\nbin width: %.6g\ndelta_t: %.6g\n", traces.size(),
              model.table.visited, model.table.size(), spec.bin_width, dt);
  if (suggestion) std::printf("suggested alpha: %.6g\n", *suggestion);
  std::printf("alpha: %.6g%+.6gi\nchannels: %zu\noutput: %s\n", alpha.real(), alpha.imag(), model.triplet.channels(),
              o.out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QHDL circuit compiler and simulator"};
  app.require_subcommand(1);

  ParseOptions parse_opts;
  auto* parse = app.add_subcommand("parse", "Parse and validate QHDL files");
  parse->add_option("files", parse_opts.files, "QHDL files")->required()->check(CLI::ExistingFile);
  parse->add_option("--json", parse_opts.json_out, "Write the design tree as JSON ('-' for stdout)");

  SynthOptions synth_opts;
  auto* synth = app.add_subcommand("synth", "Synthesize a circuit expression");
  synth->add_option("files", synth_opts.files, "QHDL files")->required()->check(CLI::ExistingFile);
  synth->add_option("--entity", synth_opts.entity, "Entity to synthesize");
  synth->add_option("--arch", synth_opts.arch, "Architecture (default: last declared)");
  synth->add_option("--format", synth_opts.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  synth->add_flag("--raw", synth_opts.raw, "Skip simplification");
  synth->add_option("--out", synth_opts.out, "Output file (default: stdout)");

  CompileOptions compile_opts;
  auto* compile = app.add_subcommand("compile", "Compile an entity to an SLH model");
  compile->add_option("files", compile_opts.files, "QHDL files")->required()->check(CLI::ExistingFile);
  compile->add_option("--entity", compile_opts.entity, "Entity to compile");
  compile->add_option("--arch", compile_opts.arch, "Architecture (default: last declared)");
  compile->add_option("--param", compile_opts.params, "Generic value, name=value; complex as name=re,im");
  compile->add_option("--fock", compile_opts.fock, "Fock dimension, mode=N, or N for every mode");
  compile->add_option("--out", compile_opts.out, "Model JSON output");

  SimOptions sim_opts;
  auto* sim = app.add_subcommand("sim", "Simulate a compiled model");
  sim->add_option("model", sim_opts.model, "Model JSON")->required()->check(CLI::ExistingFile);
  sim->add_option("--method", sim_opts.method, "master or mcwf")->check(CLI::IsMember({"master", "mcwf"}));
  sim->add_option("--schedule", sim_opts.schedule, "Input schedule JSON");
  sim->add_option("--t-final", sim_opts.t_final, "Duration without a schedule");
  sim->add_option("--dt", sim_opts.dt, "Integrator step");
  sim->add_option("--sample", sim_opts.sample, "Sample interval");
  sim->add_option("--traj", sim_opts.trajectories, "Trajectory count (mcwf)");
  sim->add_option("--seed", sim_opts.seed, "Random seed");
  sim->add_option("--obs", sim_opts.observables, "Observables: n:<mode>, a:<mode>, proj:<mode>:<k>");
  sim->add_option("--init", sim_opts.init, "Initial Fock occupation, mode=n (default vacuum)");
  sim->add_option("--threads", sim_opts.threads, "Worker threads (0 = all cores)");
  sim->add_option("--out", sim_opts.out, "Output directory");

  ReduceOptions reduce_opts;
  auto* reduce = app.add_subcommand("reduce", "Estimate a reduced Markov model from traces");
  reduce->add_option("traces", reduce_opts.trace_dir, "Directory of trace*.csv files")->required();
  reduce->add_option("--bin-width", reduce_opts.bin_width, "Bin width in D (default: range / --states)");
  reduce->add_option("--origin", reduce_opts.origin, "Bin origin in D (default: smallest D)");
  reduce->add_option("--states", reduce_opts.target_states, "Target bin count for the default width");
  reduce->add_option("--dt", reduce_opts.dt, "Sampling interval (default: from the traces)");
  reduce->add_option("--alpha", reduce_opts.alpha, "Drive amplitude, re,im (default: least-squares suggestion)");
  reduce->add_option("--obs-a", reduce_opts.obs_a, "Observable A in D = <A> - <B>");
  reduce->add_option("--obs-b", reduce_opts.obs_b, "Observable B in D = <A> - <B>");
  reduce->add_option("--out", reduce_opts.out, "Reduced model JSON");
  reduce->add_option("--counts-dir", reduce_opts.counts_dir, "Directory for transition-count CSVs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (parse->parsed()) return cmd_parse(parse_opts);
    if (synth->parsed()) return cmd_synth(synth_opts);
    if (compile->parsed()) return cmd_compile(compile_opts);
    if (sim->parsed()) return cmd_sim(sim_opts);
    if (reduce->parsed()) return cmd_reduce(reduce_opts);
  } catch (const frontend::DiagnosticError& e) {
    for (const auto& d : e.diagnostics()) std::cerr << d.str() << '\n';
    return 1;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
