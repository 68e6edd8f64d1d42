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
#include <functional>
#include <optional>
#include <vector>

#include "eoa/states.hpp"
#include "eoa/tensor.hpp"

namespace eoa {

inline constexpr double kZeroOutcomeProb = 1e-12;
inline constexpr double kEnsembleRankTol = 1e-10;

struct Povm {
  std::vector<ComplexMatrix> elements;

  int arity() const { return static_cast<int>(elements.size()); }
  double completeness_residual() const;
};

struct EnsembleMember {
  double weight = 0.0;
  ComplexVector state;  // normalized
};

struct Ensemble {
  std::vector<EnsembleMember> members;

  ComplexMatrix reconstruct() const;
};

struct OptimizerConfig {
  int restarts = 20;
  int max_iters = 500;
  double step_tol = 1e-9;
  double objective_tol = 1e-13;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Best isometry found by the ascent and its objective value.
struct SearchResult {
  double value = 0.0;
  ComplexMatrix isometry;
};

/// Random-restart projected ascent over rows x cols isometries. Restart r
/// draws from an RNG seeded with derive_seed(cfg.seed, r); an optional warm
/// start runs as an extra restart, so the result never falls below it.
SearchResult maximize_over_isometries(int rows, int cols,
                                      const std::function<double(const ComplexMatrix&)>& objective,
                                      const OptimizerConfig& cfg,
                                      const ComplexMatrix* warm_start = nullptr);

/// Members proportional to sum_j mix_ij sqrt(mu_j) |e_j> over the eigen-ensemble
/// of rho (eigenvalues above 1e-10). Members with zero weight are dropped.
Ensemble hjw_ensemble(const ComplexMatrix& rho, const ComplexMatrix& mix);

/// Best average pure-state concurrence over HJW ensembles of a two-qubit rho.
/// Arity defaults to twice the rank.
double coa_convex_max(const ComplexMatrix& rho, const OptimizerConfig& cfg, int arity = 0);
SearchResult coa_convex_search(const ComplexMatrix& rho, const OptimizerConfig& cfg,
                               int arity = 0);

/// Rank-1 POVM E_i = v^dagger |i><i| v for an isometry v of shape K x n3.
Povm povm_from_isometry(const ComplexMatrix& v);

/// sum_i p_i C(rho_AB|i) for Charlie's POVM on subsystem 2 of a (dA, dB, n3)
/// state. Qubit pairs use Wootters; larger conditionals use
/// bipartite_concurrence, whose lower bounds keep the result a lower bound.
double assisted_average(const State& rho_abc, const Povm& povm);

/// Same objective evaluated directly on the isometry defining the POVM.
double assisted_average_isometry(const State& rho_abc, const ComplexMatrix& v);

/// Certified lower bound on the tripartite EOA from an optimized rank-1 POVM
/// of arity K (default 2 * n3).
SearchResult eoa_lower_bound_search(const State& rho_abc, const OptimizerConfig& cfg,
                                    int arity = 0, const ComplexMatrix* warm_start = nullptr);
double eoa_lower_bound(const State& rho_abc, const OptimizerConfig& cfg, int arity = 0);

/// Bounds for a sequence of increasing arities, each search warm-started
/// from the previous optimum padded with zero rows. Non-decreasing.
std::vector<double> eoa_lower_bound_ladder(const State& rho_abc, const OptimizerConfig& cfg,
                                           const std::vector<int>& arities);

/// Smallest average I-concurrence found over HJW decompositions of a
/// bipartite density; an upper bound on its convex roof.
double convex_roof_upper_bound(const ComplexMatrix& rho, int dim_a, int dim_b,
                               const OptimizerConfig& cfg);

} // namespace eoa
