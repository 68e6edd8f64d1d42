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

#include <array>
#include <vector>

#include "eoa/states.hpp"
#include "eoa/tensor.hpp"

namespace eoa {

/// sigma_y (x) sigma_y in the |00>,|01>,|10>,|11> basis (real).
const ComplexMatrix& sigma_yy();

/// rho~ = (sigma_y x sigma_y) rho* (sigma_y x sigma_y).
ComplexMatrix spin_flip(const ComplexMatrix& rho);

/// The four lambda_i of a two-qubit state in descending order. Wootters
/// concurrence and concurrence of assistance are both read off this.
struct ConcurrenceSpectrum {
  std::array<double, 4> lambda{};

  /// lambda_1 - lambda_2 - lambda_3 - lambda_4, which may be negative.
  double margin() const { return lambda[0] - lambda[1] - lambda[2] - lambda[3]; }
  double wootters() const { return margin() > 0.0 ? margin() : 0.0; }
  double assistance() const { return lambda[0] + lambda[1] + lambda[2] + lambda[3]; }
};

/// Spectrum of rho = W W^dagger, W of shape 4 x m. rho need not be
/// normalized; the lambdas scale linearly with its trace.
///
/// The lambdas are the singular values of W^T (sigma_y x sigma_y) W, which
/// are the square roots of the eigenvalues of sqrt(rho) rho~ sqrt(rho)
/// without taking a square root of rounding noise.
ConcurrenceSpectrum spectrum_from_factor(const ComplexMatrix& w);

/// Spectrum of a validated two-qubit density operator.
ConcurrenceSpectrum concurrence_spectrum(const ComplexMatrix& rho);

/// Reference route through the Hermitian proxy sqrt(rho) rho~ sqrt(rho).
/// Loses accuracy on rank-deficient input; kept as an independent check.
ConcurrenceSpectrum spectrum_via_proxy(const ComplexMatrix& rho);

double wootters_concurrence(const ComplexMatrix& rho);
double coa(const ComplexMatrix& rho);

/// Throws std::invalid_argument unless rho is a 4x4 Hermitian unit-trace PSD
/// matrix.
void validate_two_qubit_density(const ComplexMatrix& rho);

/// sqrt(2 (1 - Tr rho_A^2)) across the cut dims = (dA, dB), evaluated from
/// the Schmidt coefficients.
double pure_concurrence(const ComplexVector& psi, const Dims& dims);

/// Elementary antisymmetric basis E_ab - E_ba (a < b) of so(d).
std::vector<ComplexMatrix> so_generators(int d);

/// sqrt(sum_mn |<psi*| L_m (x) L_n |psi>|^2) for a d x d pure state.
double i_concurrence_generators(const ComplexVector& psi, const Dims& dims);

/// Concurrence of assistance of the AB marginal of a pure 2 x 2 x n3 state.
double eoa_pure_tripartite(const State& psi);

/// Closed-form upper bound on any average pure-state I-concurrence of a
/// decomposition of rho_AB: sqrt(2 (1 - Tr rho_A^2)).
double purity_concurrence_bound(const ComplexMatrix& rho_ab, const Dims& dims);

/// Concurrence of a (possibly subnormalized) bipartite state rho = W W^dagger
/// on dA x dB, scaled by its trace. `exact` is false when only a lower bound
/// was available (mixed states whose local supports exceed two dimensions).
struct ConcurrenceEstimate {
  double value = 0.0;
  bool exact = true;
};
ConcurrenceEstimate bipartite_concurrence(const ComplexMatrix& w, int dim_a, int dim_b);

/// Lower bound on the I-concurrence of a mixed state from the partial
/// transpose and realignment trace norms. Scaled by Tr rho.
double i_concurrence_lower_bound(const ComplexMatrix& rho, int dim_a, int dim_b);

/// Optimal pure-state decomposition of rho = W W^dagger (W 4 x m): columns
/// are subnormalized members whose concurrences sum to the CoA.
ComplexMatrix optimal_coa_decomposition(const ComplexMatrix& w);

} // namespace eoa
