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

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace eoa {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Subsystem dimensions, leftmost tensor factor first.
using Dims = std::vector<int>;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kIsometryTol = 1e-10;

/// Eigenvalues below this are treated as exact zeros when a density is
/// factored. Square roots of rounding noise would otherwise leak O(1e-8)
/// errors into concurrence spectra.
inline constexpr double kRankTol = 1e-13;

int dims_product(std::span<const int> dims);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Reduced operator on the subsystems listed in `keep` (any order; the
/// output keeps them in ascending position).
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const int> dims,
                            std::span<const int> keep);

/// Max-norm of M - M^dagger.
double hermiticity_residual(const ComplexMatrix& m);

struct EigenDecomposition {
  RealVector values;     // ascending
  ComplexMatrix vectors; // columns
};

/// Hermitian eigendecomposition. Throws std::invalid_argument when the input
/// is not square or deviates from Hermitian by more than kHermitianTol.
EigenDecomposition eigh(const ComplexMatrix& h);

/// Hermitian PSD square root; eigenvalues in [-kPsdTol, 0) are clamped.
ComplexMatrix psd_sqrt(const ComplexMatrix& m);

/// Haar-distributed isometry (orthonormal columns), deterministic per seed.
ComplexMatrix haar_isometry(int n_rows, int n_cols, std::uint64_t seed);

/// Complex Gaussian matrix with unit-variance entries.
ComplexMatrix gaussian_matrix(int rows, int cols, std::mt19937_64& rng);

/// Thin QR retraction onto the Stiefel manifold: the Q factor with the
/// diagonal of R made real positive, so that retract(V) == V for an isometry.
ComplexMatrix orthonormalize(const ComplexMatrix& m);

/// Max-norm of V^dagger V - I.
double isometry_residual(const ComplexMatrix& v);

/// Takagi factorization of a complex symmetric matrix: T = U diag(s) U^T with
/// U unitary and s >= 0 (descending).
struct TakagiFactorization {
  ComplexMatrix unitary;
  RealVector values;
};
TakagiFactorization takagi(const ComplexMatrix& t);

/// Given W with rho = W W^dagger, returns an equivalent factor with at most
/// rows() columns.
ComplexMatrix compress_factor(const ComplexMatrix& w);

/// Factor of the reduced operator: if rho = W W^dagger on `dims`, returns W'
/// with Tr_{not keep}(rho) = W' W'^dagger.
ComplexMatrix marginal_factor(const ComplexMatrix& w, std::span<const int> dims,
                              std::span<const int> keep);

/// Factor of a Hermitian PSD matrix from its eigendecomposition, dropping
/// eigenvalues at or below kRankTol.
ComplexMatrix density_factor(const ComplexMatrix& rho);

/// Counter-based seed derivation: instance k of a batch is reproducible from
/// (master, k) alone.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

} // namespace eoa
