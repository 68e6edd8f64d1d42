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

#include "eoa/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace eoa {

namespace {

// Row-major mixed-radix decomposition: index -> (kept index, traced index).
struct SplitIndex {
  std::vector<int> kept;
  std::vector<int> traced;
  int kept_dim = 1;
  int traced_dim = 1;
};

SplitIndex split_indices(std::span<const int> dims, std::span<const int> keep) {
  const int n = static_cast<int>(dims.size());
  std::vector<bool> is_kept(dims.size(), false);
  for (int k : keep) {
    if (k < 0 || k >= n) {
      throw std::invalid_argument("partial trace: subsystem index " + std::to_string(k) +
                                  " out of range");
    }
    if (is_kept[k]) {
      throw std::invalid_argument("partial trace: duplicate subsystem index");
    }
    is_kept[k] = true;
  }

  SplitIndex out;
  for (int i = 0; i < n; ++i) {
    (is_kept[i] ? out.kept_dim : out.traced_dim) *= dims[i];
  }
  const int total = out.kept_dim * out.traced_dim;
  out.kept.resize(total);
  out.traced.resize(total);

  std::vector<int> digit(dims.size(), 0);
  for (int idx = 0; idx < total; ++idx) {
    int kept = 0;
    int traced = 0;
    for (int i = 0; i < n; ++i) {
      if (is_kept[i]) {
        kept = kept * dims[i] + digit[i];
      } else {
        traced = traced * dims[i] + digit[i];
      }
    }
    out.kept[idx] = kept;
    out.traced[idx] = traced;
    for (int i = n - 1; i >= 0; --i) {
      if (++digit[i] < dims[i]) break;
      digit[i] = 0;
    }
  }
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

} // namespace

int dims_product(std::span<const int> dims) {
  int p = 1;
  for (int d : dims) {
    if (d <= 0) throw std::invalid_argument("dimensions must be positive");
    p *= d;
  }
  return p;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const int> dims,
                            std::span<const int> keep) {
  const int n = dims_product(dims);
  if (m.rows() != n || m.cols() != n) {
    throw std::invalid_argument("partial_trace: matrix is " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()) + " but dims multiply to " +
                                std::to_string(n));
  }
  const SplitIndex s = split_indices(dims, keep);
  ComplexMatrix out = ComplexMatrix::Zero(s.kept_dim, s.kept_dim);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (s.traced[i] == s.traced[j]) out(s.kept[i], s.kept[j]) += m(i, j);
    }
  }
  return out;
}

double hermiticity_residual(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

EigenDecomposition eigh(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("eigh: matrix is not square");
  const double res = hermiticity_residual(h);
  if (!(res <= kHermitianTol)) {
    throw std::invalid_argument("eigh: matrix is not Hermitian (residual " + std::to_string(res) +
                                ")");
  }
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigh: solver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  const EigenDecomposition e = eigh(m);
  if (e.values.size() > 0 && e.values(0) < -kPsdTol) {
    throw std::invalid_argument("psd_sqrt: matrix is not positive semidefinite (eigenvalue " +
                                std::to_string(e.values(0)) + ")");
  }
  const RealVector roots = e.values.cwiseMax(0.0).cwiseSqrt();
  return e.vectors * roots.asDiagonal() * e.vectors.adjoint();
}

ComplexMatrix gaussian_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  // Column-major fill order is part of the determinism contract.
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im) / std::sqrt(2.0);
    }
  }
  return g;
}

ComplexMatrix orthonormalize(const ComplexMatrix& m) {
  if (m.rows() < m.cols()) {
    throw std::invalid_argument("orthonormalize: more columns than rows");
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(m);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const Complex r = qr.matrixQR()(j, j);
    const double mag = std::abs(r);
    if (mag > 0.0) q.col(j) *= r / mag;
  }
  return q;
}

double isometry_residual(const ComplexMatrix& v) {
  if (v.cols() == 0) return 0.0;
  return (v.adjoint() * v - ComplexMatrix::Identity(v.cols(), v.cols())).cwiseAbs().maxCoeff();
}

ComplexMatrix haar_isometry(int n_rows, int n_cols, std::uint64_t seed) {
  if (n_cols <= 0 || n_rows < n_cols) {
    throw std::invalid_argument("haar_isometry: need n_rows >= n_cols >= 1 (got " +
                                std::to_string(n_rows) + "x" + std::to_string(n_cols) + ")");
  }
  std::mt19937_64 rng(seed);
  return orthonormalize(gaussian_matrix(n_rows, n_cols, rng));
}

TakagiFactorization takagi(const ComplexMatrix& t) {
  const Eigen::Index n = t.rows();
  if (t.cols() != n) throw std::invalid_argument("takagi: matrix is not square");
  if (n == 0) return {ComplexMatrix(0, 0), RealVector(0)};
  const double scale = std::max(1.0, t.cwiseAbs().maxCoeff());
  if ((t - t.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw std::invalid_argument("takagi: matrix is not complex symmetric");
  }

  // T v* = s v  <=>  [[A, B], [B, -A]] [x; y] = s [x; y]  with T = A + iB, v = x + iy.
  // The spectrum comes in +-s pairs; the positive half yields orthonormal v.
  const Eigen::MatrixXd a = t.real();
  const Eigen::MatrixXd b = t.imag();
  Eigen::MatrixXd m(2 * n, 2 * n);
  m << a, b, b, -a;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (m + m.transpose()));

  const double tol = 1e-13 * scale;
  std::vector<Eigen::Index> positive;
  for (Eigen::Index k = 2 * n - 1; k >= 0 && static_cast<Eigen::Index>(positive.size()) < n; --k) {
    if (solver.eigenvalues()(k) > tol) positive.push_back(k);
  }
  const Eigen::Index p = static_cast<Eigen::Index>(positive.size());

  ComplexMatrix u(n, n);
  RealVector s = RealVector::Zero(n);
  for (Eigen::Index c = 0; c < p; ++c) {
    const auto vec = solver.eigenvectors().col(positive[c]);
    for (Eigen::Index i = 0; i < n; ++i) u(i, c) = Complex(vec(i), vec(n + i));
    u.col(c).normalize();
    s(c) = solver.eigenvalues()(positive[c]);
  }
  if (p == 0) {
    u.setIdentity();
  } else if (p < n) {
    // Complete with an orthonormal basis of the complement; those directions
    // are annihilated by T (conjugated), so they carry zero Takagi values.
    Eigen::HouseholderQR<ComplexMatrix> qr(u.leftCols(p));
    const ComplexMatrix q = qr.householderQ();
    u.rightCols(n - p) = q.rightCols(n - p);
  }
  return {u, s};
}

ComplexMatrix compress_factor(const ComplexMatrix& w) {
  if (w.cols() <= w.rows()) return w;
  Eigen::HouseholderQR<ComplexMatrix> qr(w.adjoint());
  const ComplexMatrix r =
      qr.matrixQR().topRows(w.rows()).triangularView<Eigen::Upper>();
  return r.adjoint();
}

ComplexMatrix marginal_factor(const ComplexMatrix& w, std::span<const int> dims,
                              std::span<const int> keep) {
  const int n = dims_product(dims);
  if (w.rows() != n) {
    throw std::invalid_argument("marginal_factor: factor has " + std::to_string(w.rows()) +
                                " rows but dims multiply to " + std::to_string(n));
  }
  const SplitIndex s = split_indices(dims, keep);
  const Eigen::Index m = w.cols();
  ComplexMatrix out = ComplexMatrix::Zero(s.kept_dim, s.traced_dim * m);
  for (int r = 0; r < n; ++r) {
    out.block(s.kept[r], s.traced[r] * m, 1, m) = w.row(r);
  }
  return out;
}

ComplexMatrix density_factor(const ComplexMatrix& rho) {
  const EigenDecomposition e = eigh(rho);
  if (e.values.size() > 0 && e.values(0) < -kPsdTol) {
    throw std::invalid_argument("density_factor: matrix is not positive semidefinite");
  }
  std::vector<Eigen::Index> cols;
  for (Eigen::Index k = e.values.size() - 1; k >= 0; --k) {
    if (e.values(k) > kRankTol) cols.push_back(k);
  }
  ComplexMatrix w(rho.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    w.col(static_cast<Eigen::Index>(c)) = e.vectors.col(cols[c]) * std::sqrt(e.values(cols[c]));
  }
  return w;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

} // namespace eoa
