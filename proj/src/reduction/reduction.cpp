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


#include "qhdl/reduction/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "qhdl/slh/components.hpp"
#include "qhdl/slh/model_json.hpp"

namespace qhdl::reduction {

namespace {

slh::Operator ket_bra(std::size_t M, std::size_t j, std::size_t i) {
  return slh::Operator::transition(kReducedMode, M, j - 1, i - 1);
}

void check_drive_size(std::size_t M) {
  if (M < 6 || M % 4 != 2) {
    throw ReductionError("the drive model needs M = 4k + 2 states with k >= 1, got M = " + std::to_string(M));
  }
}

// Drift transitions as 1-based (from, to) pairs.
std::vector<std::pair<std::size_t, std::size_t>> set_pairs(std::size_t M) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t m = 0; m < (M - 2) / 4; ++m) out.emplace_back(M - 1 - 2 * m, M - 4 - 2 * m);
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> reset_pairs(std::size_t M) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t m = 0; m < (M - 2) / 4; ++m) out.emplace_back(2 + 2 * m, 5 + 2 * m);
  return out;
}

}  // namespace

std::size_t StateTable::state_of(long bin) const {
  auto it = std::find(bins.begin(), bins.end(), bin);
  if (it == bins.end()) throw ReductionError("bin " + std::to_string(bin) + " is not in the state table");
  return static_cast<std::size_t>(it - bins.begin()) + 1;
}

std::size_t padded_size(std::size_t n) {
  std::size_t M = std::max<std::size_t>(n, 6);
  while (M % 4 != 2) ++M;
  return M;
}

CoarseGrained coarse_grain(const std::vector<dynamics::ExpectationTrace>& traces, const BinningSpec& spec) {
  if (!(spec.bin_width > 0.0)) throw ReductionError("bin width must be positive");
  std::vector<std::vector<long>> binned;
  std::set<long> visited;
  for (const auto& t : traces) {
    auto a = t.column(spec.observable_a);
    auto b = t.column(spec.observable_b);
    std::vector<long> bins(t.samples());
    for (std::size_t s = 0; s < t.samples(); ++s) {
      double d = t.values[a][s].real() - t.values[b][s].real();
      bins[s] = static_cast<long>(std::floor((d - spec.origin) / spec.bin_width));
      visited.insert(bins[s]);
    }
    binned.push_back(std::move(bins));
  }
  if (visited.empty()) throw ReductionError("no samples to coarse-grain");

  CoarseGrained out;
  out.table.bins.assign(visited.rbegin(), visited.rend());
  out.table.visited = visited.size();
  if (spec.pad) {
    // Unvisited neighbours, alternating between the low-D and high-D ends
    // so the visited block stays centred.
    const auto M = padded_size(visited.size());
    bool low_end = true;
    while (out.table.bins.size() < M) {
      if (low_end) {
        out.table.bins.push_back(out.table.bins.back() - 1);
      } else {
        out.table.bins.insert(out.table.bins.begin(), out.table.bins.front() + 1);
      }
      low_end = !low_end;
    }
  }

  for (std::size_t k = 0; k < traces.size(); ++k) {
    const auto& t = traces[k];
    for (std::size_t s = 0; s < t.samples(); ++s) {
      std::string cond = s < t.conditions.size() && !t.conditions[s].empty() ? t.conditions[s] : "HOLD";
      if (s == 0 || out.sequences.back().condition != cond) out.sequences.push_back({cond, {}});
      out.sequences.back().states.push_back(out.table.state_of(binned[k][s]));
    }
  }
  return out;
}

MarkovChainEstimate estimate_markov(const std::vector<StateSequence>& sequences, double delta_t, std::size_t M) {
  if (!(delta_t > 0.0)) throw ReductionError("sampling interval must be positive");
  if (M == 0) {
    for (const auto& seq : sequences) {
      for (auto s : seq.states) M = std::max(M, s);
    }
  }
  MarkovChainEstimate est;
  est.M = M;
  est.delta_t = delta_t;
  const auto n = static_cast<Eigen::Index>(M);
  for (const auto& seq : sequences) {
    auto& c = est.counts.try_emplace(seq.condition, Eigen::MatrixXd::Zero(n, n)).first->second;
    for (std::size_t k = 0; k + 1 < seq.states.size(); ++k) {
      auto i = seq.states[k];
      auto j = seq.states[k + 1];
      if (i < 1 || i > M || j < 1 || j > M) throw ReductionError("state index outside 1.." + std::to_string(M));
      c(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(j - 1)) += 1.0;
    }
  }
  for (const auto& [cond, c] : est.counts) {
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      double total = c.row(i).sum();
      if (total > 0.0) {
        p.row(i) = c.row(i) / total;
      } else {
        p(i, i) = 1.0;
      }
    }
    est.P.emplace(cond, std::move(p));
  }
  return est;
}

Eigen::MatrixXd to_rate_matrix(const Eigen::MatrixXd& P, double delta_t) {
  if (!(delta_t > 0.0)) throw ReductionError("sampling interval must be positive");
  Eigen::MatrixXd q = (P - Eigen::MatrixXd::Identity(P.rows(), P.cols())) / delta_t;
  // The diagonal is minus the off-diagonal row sum; setting it that way keeps
  // rows summing to zero without rounding residue.
  for (Eigen::Index i = 0; i < q.rows(); ++i) {
    double off = q.row(i).sum() - q(i, i);
    q(i, i) = -off;
  }
  return q;
}

std::map<std::string, Eigen::MatrixXd> to_rate_matrix(const MarkovChainEstimate& est) {
  std::map<std::string, Eigen::MatrixXd> out;
  for (const auto& [cond, p] : est.P) out.emplace(cond, to_rate_matrix(p, est.delta_t));
  return out;
}

slh::SLHTriplet jump_slh(const Eigen::MatrixXd& Q) {
  const auto M = static_cast<std::size_t>(Q.rows());
  std::vector<slh::Operator> ls;
  for (std::size_t i = 1; i <= M; ++i) {
    for (std::size_t j = 1; j <= M; ++j) {
      double g = Q(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(j - 1));
      if (i != j && g > 0.0) ls.push_back(std::sqrt(g) * ket_bra(M, j, i));
    }
  }
  if (ls.empty()) return slh::trivial_system();
  auto out = slh::identity_system(ls.size());
  out.L = std::move(ls);
  return out;
}

slh::Operator sigma_set(std::size_t M) {
  check_drive_size(M);
  slh::Operator out;
  for (auto [from, to] : set_pairs(M)) out += ket_bra(M, to, from);
  return out;
}

slh::Operator sigma_reset(std::size_t M) {
  check_drive_size(M);
  slh::Operator out;
  for (auto [from, to] : reset_pairs(M)) out += ket_bra(M, to, from);
  return out;
}

slh::SLHTriplet drive_slh(std::size_t M, Complex alpha) {
  const auto ss = sigma_set(M);
  const auto sr = sigma_reset(M);
  const auto one = slh::Operator::identity(slh::HilbertSpace::single(kReducedMode, M));
  const slh::Operator zero;
  const std::vector<std::vector<slh::Operator>> block{
      {ss.adjoint() * ss, zero, -ss.adjoint(), zero},
      {zero, sr.adjoint() * sr, zero, -sr.adjoint()},
      {-ss, zero, ss * ss.adjoint(), zero},
      {zero, -sr, zero, sr * sr.adjoint()},
  };
  slh::SLHTriplet out;
  out.S.assign(4, std::vector<slh::Operator>(4));
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) out.S[i][j] = (i == j ? one : zero) - block[i][j];
  }
  out.L = {-alpha * (one - ss.adjoint() * ss), -alpha * (one - sr.adjoint() * sr), -alpha * ss, -alpha * sr};
  return out;
}

slh::SLHTriplet compose_reduced(const slh::SLHTriplet& jump, const slh::SLHTriplet& drive, Complex s_bar,
                                Complex r_bar) {
  if (drive.channels() != 4) throw ReductionError("the drive model must have 4 channels");
  auto sources = slh::concatenate(slh::concatenate(slh::displace(s_bar), slh::displace(r_bar)),
                                  slh::identity_system(2));
  return slh::concatenate(slh::series_product(drive, sources), jump);
}

slh::SLHTriplet output_slh(const std::vector<OutputParams>& params, Complex beta_prime) {
  const auto M = params.size();
  if (M == 0) throw ReductionError("output emulation needs at least one state");
  const auto space = slh::HilbertSpace::single(kReducedMode, M);
  std::vector<std::vector<slh::DenseMatrix>> blocks(2, std::vector<slh::DenseMatrix>(2));
  for (auto& row : blocks) {
    for (auto& b : row) b = slh::DenseMatrix::Zero(static_cast<Eigen::Index>(M), static_cast<Eigen::Index>(M));
  }
  for (std::size_t i = 0; i < M; ++i) {
    const auto& p = params[i];
    const auto e1 = std::polar(1.0, p.phi_1);
    const auto e2 = std::polar(1.0, p.phi_2);
    const auto k = static_cast<Eigen::Index>(i);
    blocks[0][0](k, k) = e1 * std::cos(p.theta);
    blocks[0][1](k, k) = -e1 * std::sin(p.theta);
    blocks[1][0](k, k) = e2 * std::sin(p.theta);
    blocks[1][1](k, k) = e2 * std::cos(p.theta);
  }
  slh::SLHTriplet out;
  out.S.assign(2, std::vector<slh::Operator>(2));
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 2; ++c) out.S[r][c] = slh::Operator::from_dense(space, blocks[r][c]);
  }
  out.L = {beta_prime * out.S[0][0], beta_prime * out.S[1][0]};
  return out;
}

std::optional<double> suggest_alpha(const std::map<std::string, Eigen::MatrixXd>& rates, std::size_t M) {
  check_drive_size(M);
  auto hold = rates.find("HOLD");
  // Minimizing Σ (|α|² - excess)² over all drift transitions gives the mean.
  double sum = 0.0;
  std::size_t n = 0;
  auto add = [&](const char* cond, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    auto it = rates.find(cond);
    if (it == rates.end()) return;
    for (auto [from, to] : pairs) {
      auto i = static_cast<Eigen::Index>(from - 1);
      auto j = static_cast<Eigen::Index>(to - 1);
      sum += it->second(i, j) - (hold == rates.end() ? 0.0 : hold->second(i, j));
      ++n;
    }
  };
  add("SET", set_pairs(M));
  add("RESET", reset_pairs(M));
  if (n == 0) return std::nullopt;
  return std::sqrt(std::max(0.0, sum / static_cast<double>(n)));
}

ReducedModel reduce(const std::vector<dynamics::ExpectationTrace>& traces, const BinningSpec& spec, double delta_t,
                    Complex alpha) {
  auto cg = coarse_grain(traces, spec);
  ReducedModel out;
  out.table = cg.table;
  out.estimate = estimate_markov(cg.sequences, delta_t, cg.table.size());
  out.rates = to_rate_matrix(out.estimate);
  out.alpha = alpha;
  auto hold = out.rates.find("HOLD");
  if (hold == out.rates.end()) throw ReductionError("no HOLD samples: the jump model cannot be estimated");
  auto jump = jump_slh(hold->second);
  auto drive = drive_slh(cg.table.size(), alpha);
  out.triplet = slh::concatenate(drive, jump);
  out.inputs = {"s_bar", "r_bar", "drive_vac_s", "drive_vac_r"};
  out.outputs = {"drive_out_1", "drive_out_2", "drive_out_3", "drive_out_4"};
  for (std::size_t k = 1; k <= jump.channels(); ++k) {
    out.inputs.push_back("jump_in_" + std::to_string(k));
    out.outputs.push_back("jump_out_" + std::to_string(k));
  }
  return out;
}

nlohmann::json reduced_to_json(const ReducedModel& model, const BinningSpec& spec) {
  auto doc = slh::model_to_json(model.triplet);
  doc["entity"] = "Reduced";
  doc["ports"] = {{"in", model.inputs}, {"out", model.outputs}};
  nlohmann::json conditions = nlohmann::json::array();
  for (const auto& [cond, c] : model.estimate.counts) conditions.push_back(cond);
  nlohmann::json meta{
      {"M", model.table.size()},
      {"delta_t", model.estimate.delta_t},
      {"bin_width", spec.bin_width},
      {"conditions", conditions},
      {"bin_origin", spec.origin},
      {"visited", model.table.visited},
      {"bins", model.table.bins},
      {"observables", {spec.observable_a, spec.observable_b}},
      {"alpha", {model.alpha.real(), model.alpha.imag()}},
  };
  if (auto s = suggest_alpha(model.rates, model.table.size())) meta["alpha_suggestion"] = *s;
  doc["metadata"] = meta;
  return doc;
}

void write_counts_csv(const std::string& path, const Eigen::MatrixXd& counts) {
  std::ofstream out(path);
  if (!out) throw ReductionError("cannot write '" + path + "'");
  for (Eigen::Index i = 0; i < counts.rows(); ++i) {
    for (Eigen::Index j = 0; j < counts.cols(); ++j) {
      if (j > 0) out << ',';
      out << static_cast<long long>(counts(i, j));
    }
    out << '\n';
  }
}

}  // namespace qhdl::reduction
