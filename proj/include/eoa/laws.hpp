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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eoa/assistance.hpp"
#include "eoa/states.hpp"

namespace eoa {

enum class Law {
  kTheorem1,
  kCorollary1,
  kCorollary2,
  kTheorem2,
  kRemarkD2,
  kRemarkLowerBound,
  kTauEvolution,
  kTauPositivity,
};

std::string law_name(Law law);
/// Accepts the law names plus "tau", which maps to kTauEvolution.
std::optional<Law> parse_law(const std::string& name);

enum class Direction { kLower, kUpper, kExact };
std::string direction_name(Direction d);

struct Bound {
  double value = 0.0;
  Direction direction = Direction::kExact;
};

struct LawTolerances {
  double opt_tol = 1e-3;
  double algebra_tol = 1e-9;
};

struct VerificationRecord {
  Law law = Law::kTheorem1;
  Bound lhs;
  Bound rhs;
  /// Upper bound on the left-hand side for equality sandwiches.
  std::optional<double> lhs_upper;
  double gap = 0.0;
  bool pass = false;
  bool certified = false;
  std::uint64_t seed = 0;
  std::map<std::string, double> params;
  std::map<std::string, std::string> labels;
};

/// Concurrence of (1 x E)|Phi+> (side 1) or (E x 1)|Phi+> (side 0).
struct FactorValue {
  double value = 0.0;
  bool exact = true;
};
FactorValue channel_factor(const KrausChannel& channel, int d, int side = 1,
                           const OptimizerConfig& cfg = OptimizerConfig{});

/// Signed Wootters margin of the qubit factor; the factor is max(0, margin).
double channel_factor_margin(const KrausChannel& channel);

VerificationRecord verify_theorem1(const State& psi, const KrausChannel& channel,
                                   const OptimizerConfig& cfg, const LawTolerances& tol = {});
VerificationRecord verify_corollary1(const State& rho0, const KrausChannel& channel,
                                     const OptimizerConfig& cfg, const LawTolerances& tol = {});
VerificationRecord verify_corollary2(const State& rho0, const KrausChannel& channel_a,
                                     const KrausChannel& channel_b, const OptimizerConfig& cfg,
                                     const LawTolerances& tol = {});
VerificationRecord verify_theorem2(const State& rho_abc, const KrausChannel& channel,
                                   const OptimizerConfig& cfg, const LawTolerances& tol = {});
VerificationRecord verify_remark_d2(const State& psi, const KrausChannel& channel,
                                    const OptimizerConfig& cfg, const LawTolerances& tol = {});
VerificationRecord verify_remark_lowerbound(const State& rho_abc, const KrausChannel& channel,
                                            const OptimizerConfig& cfg,
                                            const LawTolerances& tol = {});

/// C_a(AB)^2 + C_a(AC)^2 - C(A|BC)^2 for a pure three-qubit state.
double tau(const State& psi);

/// Terms of tau for a pure three-qubit state evolved by a channel on A.
struct TauTerms {
  double assisted_ab = 0.0;
  double assisted_ac = 0.0;
  double cut = 0.0;
  double value() const { return assisted_ab * assisted_ab + assisted_ac * assisted_ac - cut * cut; }
};
TauTerms evolved_tau_terms(const State& psi, const KrausChannel& channel_a);

/// Returns the tau-evolution record followed by the tau-positivity record.
std::pair<VerificationRecord, VerificationRecord> verify_tau_evolution(
    const State& psi, const KrausChannel& channel_a, const LawTolerances& tol = {});

struct SuddenDeathResult {
  std::optional<double> t_star;
  std::pair<double, double> bracket;
  double residual = 0.0;
};
SuddenDeathResult sudden_death_time(const ChannelFamily& family, std::pair<double, double> bracket,
                                    double tol = 1e-8);

struct SeriesPoint {
  double gamma_t = 0.0;
  double factor = 0.0;
  double eoa_product = 0.0;
};
std::vector<SeriesPoint> evolve_series(const State& psi, const ChannelFamily& family,
                                       const std::vector<double>& grid);

/// Batch of randomly generated instances for one law; instance k uses
/// derive_seed(seed, k). Tau batches emit two records per instance.
struct BatchConfig {
  Law law = Law::kTheorem1;
  int count = 10;
  std::uint64_t seed = 7;
  int d = 3;
  int n3 = 0;  // 0 picks the per-law default
  OptimizerConfig optimizer;
  LawTolerances tolerances;
};
std::vector<VerificationRecord> verify_batch(const BatchConfig& config);

} // namespace eoa
