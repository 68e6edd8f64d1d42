// Copyright 2026 The eoa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "eoa/laws.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/SVD>

#include "eoa/measures.hpp"

namespace eoa {

namespace {

constexpr int kSuddenDeathGrid = 400;
constexpr double kPureOutputTol = 1e-10;

bool safe_lhs(Direction d) { return d == Direction::kLower || d == Direction::kExact; }
bool safe_rhs(Direction d) { return d == Direction::kUpper || d == Direction::kExact; }

void require_qubit_channel(const KrausChannel& ch, const char* who) {
  if (ch.in_dim != 2 || ch.out_dim != 2) {
    throw std::invalid_argument(std::string(who) + ": expected a qubit channel");
  }
}

void require_tripartite(const State& s, int da, int db, const char* who) {
  const Dims& d = s.dims();
  if (d.size() != 3 || (da > 0 && d[0] != da) || (db > 0 && d[1] != db)) {
    throw std::invalid_argument(std::string(who) + ": unexpected subsystem dimensions");
  }
}

ConcurrenceSpectrum marginal_spectrum(const State& s, int i, int j) {
  const int keep[] = {i, j};
  return spectrum_from_factor(marginal_factor(s.factor(), s.dims(), keep));
}

VerificationRecord make_record(Law law, Bound lhs, Bound rhs) {
  VerificationRecord r;
  r.law = law;
  r.lhs = lhs;
  r.rhs = rhs;
  r.certified = safe_lhs(lhs.direction) && safe_rhs(rhs.direction);
  return r;
}

// Charlie's measurement (rows = outcomes) realizing the closed-form optimum
// for the AB marginal of a pure three-qubit state.
ComplexMatrix optimal_assisting_isometry(const State& psi) {
  const int keep[] = {0, 1};
  const ComplexMatrix w = marginal_factor(psi.vector(), psi.dims(), keep);
  const ComplexMatrix t = w.transpose() * sigma_yy() * w;
  return takagi(0.5 * (t + t.transpose())).unitary.adjoint();
}

double pure_output_concurrence(const ComplexMatrix& w, int d) {
  Eigen::JacobiSVD<ComplexMatrix> svd(w, Eigen::ComputeThinU);
  ComplexVector x = svd.matrixU().col(0);
  x.normalize();
  return pure_concurrence(x, {d, d});
}

} // namespace

std::string law_name(Law law) {
  switch (law) {
    case Law::kTheorem1: return "theorem1";
    case Law::kCorollary1: return "corollary1";
    case Law::kCorollary2: return "corollary2";
    case Law::kTheorem2: return "theorem2";
    case Law::kRemarkD2: return "remark-d2";
    case Law::kRemarkLowerBound: return "remark-lowerbound";
    case Law::kTauEvolution: return "tau-evolution";
    case Law::kTauPositivity: return "tau-positivity";
  }
  return "unknown";
}

std::optional<Law> parse_law(const std::string& name) {
  if (name == "tau") return Law::kTauEvolution;
  for (Law l : {Law::kTheorem1, Law::kCorollary1, Law::kCorollary2, Law::kTheorem2, Law::kRemarkD2,
                Law::kRemarkLowerBound, Law::kTauEvolution, Law::kTauPositivity}) {
    if (law_name(l) == name) return l;
  }
  return std::nullopt;
}

std::string direction_name(Direction d) {
  switch (d) {
    case Direction::kLower: return "lower";
    case Direction::kUpper: return "upper";
    case Direction::kExact: return "exact";
  }
  return "unknown";
}

FactorValue channel_factor(const KrausChannel& channel, int d, int side,
                           const OptimizerConfig& cfg) {
  if (channel.in_dim != d || channel.out_dim != d) {
    throw std::invalid_argument("channel_factor: channel acts on dimension " +
                                std::to_string(channel.in_dim) + ", expected " + std::to_string(d));
  }
  if (side != 0 && side != 1) throw std::invalid_argument("channel_factor: side must be 0 or 1");
  const State out = apply_channel(maximally_entangled(d), channel, side);
  const ComplexMatrix w = out.factor();
  if (d == 2) return {spectrum_from_factor(w).wootters(), true};

  const ComplexMatrix rho = out.density();
  const double purity = (rho * rho).trace().real();
  if (purity >= 1.0 - kPureOutputTol) return {pure_output_concurrence(w, d), true};
  return {convex_roof_upper_bound(rho, d, d, cfg), false};
}

double channel_factor_margin(const KrausChannel& channel) {
  require_qubit_channel(channel, "channel_factor_margin");
  return spectrum_from_factor(apply_channel(maximally_entangled(2), channel, 1).factor()).margin();
}

VerificationRecord verify_theorem1(const State& psi, const KrausChannel& channel,
                                   const OptimizerConfig& cfg, const LawTolerances& tol) {
  if (!psi.is_pure()) throw std::invalid_argument("verify_theorem1: initial state must be pure");
  require_tripartite(psi, 2, 2, "verify_theorem1");
  require_qubit_channel(channel, "verify_theorem1");

  const double factor = channel_factor(channel, 2).value;
  const double rhs = eoa_pure_tripartite(psi) * factor;
  const State evolved = apply_channel(psi, channel, 1);
  const double lhs_lower = eoa_lower_bound(evolved, cfg);
  const double lhs_upper = marginal_spectrum(evolved, 0, 1).assistance();

  VerificationRecord r =
      make_record(Law::kTheorem1, {lhs_lower, Direction::kLower}, {rhs, Direction::kExact});
  r.lhs_upper = lhs_upper;
  r.gap = rhs - lhs_lower;
  r.pass = lhs_lower >= rhs - tol.opt_tol && rhs <= lhs_upper + tol.algebra_tol;
  r.params["factor"] = factor;
  r.params["n3"] = psi.dims()[2];
  r.params["kraus"] = static_cast<double>(channel.kraus.size());
  r.labels["channel"] = channel.label;
  return r;
}

VerificationRecord verify_corollary1(const State& rho0, const KrausChannel& channel,
                                     const OptimizerConfig& cfg, const LawTolerances& tol) {
  require_tripartite(rho0, 2, 2, "verify_corollary1");
  require_qubit_channel(channel, "verify_corollary1");

  const double factor = channel_factor(channel, 2).value;
  const double rhs = marginal_spectrum(rho0, 0, 1).assistance() * factor;
  const double lhs = eoa_lower_bound(apply_channel(rho0, channel, 1), cfg);

  VerificationRecord r =
      make_record(Law::kCorollary1, {lhs, Direction::kLower}, {rhs, Direction::kUpper});
  r.gap = rhs - lhs;
  r.pass = lhs <= rhs + tol.algebra_tol;
  r.params["factor"] = factor;
  r.params["n3"] = rho0.dims()[2];
  r.params["kraus"] = static_cast<double>(channel.kraus.size());
  r.labels["channel"] = channel.label;
  return r;
}

VerificationRecord verify_corollary2(const State& rho0, const KrausChannel& channel_a,
                                     const KrausChannel& channel_b, const OptimizerConfig& cfg,
                                     const LawTolerances& tol) {
  require_tripartite(rho0, 2, 2, "verify_corollary2");
  require_qubit_channel(channel_a, "verify_corollary2");
  require_qubit_channel(channel_b, "verify_corollary2");

  const double factor_a = channel_factor(channel_a, 2, 0).value;
  const double factor_b = channel_factor(channel_b, 2, 1).value;
  const double rhs = marginal_spectrum(rho0, 0, 1).assistance() * factor_a * factor_b;
  const State evolved = apply_channel(apply_channel(rho0, channel_a, 0), channel_b, 1);
  const double lhs = eoa_lower_bound(evolved, cfg);

  VerificationRecord r =
      make_record(Law::kCorollary2, {lhs, Direction::kLower}, {rhs, Direction::kUpper});
  r.gap = rhs - lhs;
  r.pass = lhs <= rhs + tol.algebra_tol;
  r.params["factor_a"] = factor_a;
  r.params["factor_b"] = factor_b;
  r.params["n3"] = rho0.dims()[2];
  r.labels["channel_a"] = channel_a.label;
  r.labels["channel_b"] = channel_b.label;
  return r;
}

VerificationRecord verify_theorem2(const State& rho_abc, const KrausChannel& channel,
                                   const OptimizerConfig& cfg, const LawTolerances& tol) {
  require_tripartite(rho_abc, 0, 0, "verify_theorem2");
  const int d = rho_abc.dims()[0];
  if (rho_abc.dims()[1] != d) {
    throw std::invalid_argument("verify_theorem2: first two dimensions must be equal");
  }
  if (d == 2) {
    VerificationRecord r = verify_corollary1(rho_abc, channel, cfg, tol);
    r.law = Law::kTheorem2;
    r.params["d"] = 2;
    return r;
  }
  if (channel.in_dim != d || channel.out_dim != d) {
    throw std::invalid_argument("verify_theorem2: channel dimension does not match d");
  }

  const FactorValue factor = channel_factor(channel, d, 1, cfg);
  const int keep[] = {0, 1};
  const ComplexMatrix rho_ab = partial_trace(rho_abc.density(), rho_abc.dims(), keep);
  const double ea_upper = purity_concurrence_bound(rho_ab, {d, d});
  const double rhs = 0.5 * d * ea_upper * factor.value;
  const double lhs = eoa_lower_bound(apply_channel(rho_abc, channel, 1), cfg);

  VerificationRecord r =
      make_record(Law::kTheorem2, {lhs, Direction::kLower}, {rhs, Direction::kUpper});
  // Beyond qubits the record is advisory regardless of bound directions.
  r.certified = false;
  r.gap = rhs - lhs;
  r.pass = lhs <= rhs + tol.algebra_tol;
  r.params["d"] = d;
  r.params["factor"] = factor.value;
  r.params["factor_exact"] = factor.exact ? 1.0 : 0.0;
  r.params["ea_upper"] = ea_upper;
  r.labels["channel"] = channel.label;
  return r;
}

VerificationRecord verify_remark_d2(const State& psi, const KrausChannel& channel,
                                    const OptimizerConfig& cfg, const LawTolerances& tol) {
  if (!psi.is_pure()) throw std::invalid_argument("verify_remark_d2: initial state must be pure");
  require_tripartite(psi, 0, 2, "verify_remark_d2");
  require_qubit_channel(channel, "verify_remark_d2");
  if (psi.dims()[0] == 2) {
    VerificationRecord r = verify_theorem1(psi, channel, cfg, tol);
    r.law = Law::kRemarkD2;
    r.params["d"] = 2;
    return r;
  }

  const double factor = channel_factor(channel, 2).value;
  const SearchResult initial = eoa_lower_bound_search(psi, cfg);
  const double rhs = initial.value * factor;
  const State evolved = apply_channel(psi, channel, 1);
  const double lhs = eoa_lower_bound_search(evolved, cfg, 0, &initial.isometry).value;

  VerificationRecord r =
      make_record(Law::kRemarkD2, {lhs, Direction::kLower}, {rhs, Direction::kLower});
  r.gap = rhs - lhs;
  r.pass = std::abs(r.gap) <= tol.opt_tol;
  r.params["d"] = psi.dims()[0];
  r.params["factor"] = factor;
  r.params["eoa_initial"] = initial.value;
  r.labels["channel"] = channel.label;
  return r;
}

VerificationRecord verify_remark_lowerbound(const State& rho_abc, const KrausChannel& channel,
                                            const OptimizerConfig& cfg,
                                            const LawTolerances& tol) {
  require_tripartite(rho_abc, 2, 2, "verify_remark_lowerbound");
  if (channel.in_dim != rho_abc.dims()[2] || channel.out_dim != rho_abc.dims()[2]) {
    throw std::invalid_argument("verify_remark_lowerbound: channel dimension does not match n3");
  }
  const double rhs = marginal_spectrum(rho_abc, 0, 1).wootters();
  const double lhs = eoa_lower_bound(apply_channel(rho_abc, channel, 2), cfg);

  VerificationRecord r =
      make_record(Law::kRemarkLowerBound, {lhs, Direction::kLower}, {rhs, Direction::kExact});
  r.gap = rhs - lhs;
  r.pass = lhs >= rhs - tol.opt_tol;
  r.params["n3"] = rho_abc.dims()[2];
  r.labels["channel"] = channel.label;
  return r;
}

double tau(const State& psi) {
  if (!psi.is_pure()) {
    throw std::invalid_argument("tau: the A|BC cut term is only defined here for pure states");
  }
  const Dims& d = psi.dims();
  if (d.size() != 3 || d[0] != 2 || d[1] != 2 || d[2] != 2) {
    throw std::invalid_argument("tau: expected three qubits");
  }
  const double ab = marginal_spectrum(psi, 0, 1).assistance();
  const double ac = marginal_spectrum(psi, 0, 2).assistance();
  const double cut = pure_concurrence(psi.vector(), {2, 4});
  return ab * ab + ac * ac - cut * cut;
}

TauTerms evolved_tau_terms(const State& psi, const KrausChannel& channel_a) {
  if (!psi.is_pure()) throw std::invalid_argument("evolved_tau_terms: state must be pure");
  const Dims& d = psi.dims();
  if (d.size() != 3 || d[0] != 2 || d[1] != 2 || d[2] != 2) {
    throw std::invalid_argument("evolved_tau_terms: expected three qubits");
  }
  require_qubit_channel(channel_a, "evolved_tau_terms");

  const State evolved = apply_channel(psi, channel_a, 0);
  const std::vector<int> swap_bc{0, 2, 1};
  const State psi_acb = permute_subsystems(psi, swap_bc);
  const State evolved_acb = permute_subsystems(evolved, swap_bc);

  TauTerms t;
  t.assisted_ab = assisted_average_isometry(evolved, optimal_assisting_isometry(psi));
  t.assisted_ac = assisted_average_isometry(evolved_acb, optimal_assisting_isometry(psi_acb));
  const ConcurrenceEstimate cut = bipartite_concurrence(evolved.factor(), 2, 4);
  if (!cut.exact) throw std::logic_error("evolved_tau_terms: BC support exceeds two dimensions");
  t.cut = cut.value;
  return t;
}

std::pair<VerificationRecord, VerificationRecord> verify_tau_evolution(
    const State& psi, const KrausChannel& channel_a, const LawTolerances& tol) {
  const double factor = channel_factor(channel_a, 2, 0).value;
  const double tau0 = tau(psi);
  const TauTerms terms = evolved_tau_terms(psi, channel_a);
  const double lhs = terms.value();
  const double rhs = factor * factor * tau0;

  VerificationRecord eq =
      make_record(Law::kTauEvolution, {lhs, Direction::kLower}, {rhs, Direction::kExact});
  eq.gap = rhs - lhs;
  eq.pass = std::abs(eq.gap) <= tol.algebra_tol;
  eq.params["factor"] = factor;
  eq.params["tau_initial"] = tau0;
  eq.params["assisted_ab"] = terms.assisted_ab;
  eq.params["assisted_ac"] = terms.assisted_ac;
  eq.params["cut"] = terms.cut;
  eq.labels["channel"] = channel_a.label;

  VerificationRecord pos =
      make_record(Law::kTauPositivity, {0.0, Direction::kExact}, {lhs, Direction::kExact});
  pos.gap = lhs;
  pos.pass = lhs >= -tol.algebra_tol;
  pos.params["factor"] = factor;
  pos.labels["channel"] = channel_a.label;
  return {eq, pos};
}

SuddenDeathResult sudden_death_time(const ChannelFamily& family, std::pair<double, double> bracket,
                                    double tol) {
  const auto [lo, hi] = bracket;
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo < 0.0 || !(lo < hi)) {
    throw std::invalid_argument("sudden_death_time: bracket must satisfy 0 <= lo < hi");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("sudden_death_time: tol must be positive");
  auto margin = [&family](double t) { return channel_factor_margin(family.at(t)); };
  if (!(margin(lo) > 0.0)) {
    throw std::invalid_argument("sudden_death_time: factor already vanishes at the bracket start");
  }

  SuddenDeathResult result;
  result.bracket = bracket;
  double a = lo;
  std::optional<double> b;
  for (int k = 1; k <= kSuddenDeathGrid; ++k) {
    const double t = lo + (hi - lo) * k / kSuddenDeathGrid;
    if (margin(t) <= 0.0) {
      b = t;
      break;
    }
    a = t;
  }
  if (!b) {
    result.residual = std::max(0.0, margin(hi));
    return result;
  }
  double right = *b;
  while (right - a > tol) {
    const double mid = 0.5 * (a + right);
    (margin(mid) <= 0.0 ? right : a) = mid;
  }
  result.t_star = right;
  result.bracket = {a, right};
  result.residual = std::max(0.0, margin(right));
  return result;
}

std::vector<SeriesPoint> evolve_series(const State& psi, const ChannelFamily& family,
                                       const std::vector<double>& grid) {
  if (!psi.is_pure()) throw std::invalid_argument("evolve_series: initial state must be pure");
  require_tripartite(psi, 2, 2, "evolve_series");
  const double e0 = eoa_pure_tripartite(psi);
  std::vector<SeriesPoint> out;
  out.reserve(grid.size());
  for (double t : grid) {
    const double f = channel_factor(family.at(t), 2).value;
    out.push_back({t, f, e0 * f});
  }
  return out;
}

std::vector<VerificationRecord> verify_batch(const BatchConfig& config) {
  if (config.count < 0) throw std::invalid_argument("verify_batch: count must be non-negative");
  config.optimizer.validate();
  std::vector<VerificationRecord> out;
  for (int k = 0; k < config.count; ++k) {
    const std::uint64_t inst = derive_seed(config.seed, static_cast<std::uint64_t>(k));
    const std::uint64_t state_seed = derive_seed(inst, 1);
    const std::uint64_t channel_seed = derive_seed(inst, 2);
    const std::uint64_t channel_seed_b = derive_seed(inst, 3);
    OptimizerConfig cfg = config.optimizer;
    cfg.seed = derive_seed(inst, 4);
    const int kraus = 1 + (k % 4);
    const int n3 = config.n3 > 0 ? config.n3 : 2;

    std::vector<VerificationRecord> recs;
    switch (config.law) {
      case Law::kTheorem1:
        recs.push_back(verify_theorem1(random_pure({2, 2, n3}, state_seed),
                                       random_channel(2, kraus, channel_seed), cfg,
                                       config.tolerances));
        break;
      case Law::kCorollary1:
        recs.push_back(verify_corollary1(random_mixture({2, 2, n3}, 2, state_seed),
                                         random_channel(2, kraus, channel_seed), cfg,
                                         config.tolerances));
        break;
      case Law::kCorollary2:
        recs.push_back(verify_corollary2(random_mixture({2, 2, n3}, 2, state_seed),
                                         random_channel(2, kraus, channel_seed),
                                         random_channel(2, 1 + ((k + 1) % 4), channel_seed_b), cfg,
                                         config.tolerances));
        break;
      case Law::kTheorem2:
        if (config.d == 2) {
          recs.push_back(verify_theorem2(random_mixture({2, 2, n3}, 2, state_seed),
                                         random_channel(2, kraus, channel_seed), cfg,
                                         config.tolerances));
        } else {
          recs.push_back(verify_theorem2(random_pure({config.d, config.d, n3}, state_seed),
                                         random_channel(config.d, 2, channel_seed), cfg,
                                         config.tolerances));
        }
        break;
      case Law::kRemarkD2:
        recs.push_back(verify_remark_d2(random_pure({config.d, 2, n3}, state_seed),
                                        random_channel(2, kraus, channel_seed), cfg,
                                        config.tolerances));
        break;
      case Law::kRemarkLowerBound:
        if (k == 0) {
          recs.push_back(verify_remark_lowerbound(
              w_state(), phase_damping(std::numeric_limits<double>::infinity()), cfg,
              config.tolerances));
        } else {
          recs.push_back(verify_remark_lowerbound(random_mixture({2, 2, n3}, 2, state_seed),
                                                  random_channel(n3, kraus, channel_seed), cfg,
                                                  config.tolerances));
        }
        break;
      case Law::kTauEvolution:
      case Law::kTauPositivity: {
        auto [eq, pos] = verify_tau_evolution(random_pure({2, 2, 2}, state_seed),
                                              random_channel(2, kraus, channel_seed),
                                              config.tolerances);
        recs.push_back(std::move(eq));
        recs.push_back(std::move(pos));
        break;
      }
    }
    for (auto& r : recs) {
      r.seed = inst;
      r.params["instance"] = k;
      out.push_back(std::move(r));
    }
  }
  return out;
}

} // namespace eoa
