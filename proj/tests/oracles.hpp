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

// Reference implementations that share no code with the library beyond the
// matrix types. Used to pin expected values in the tests.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Partial trace keeping the listed subsystems, by explicit digit loops.
inline Matrix partial_trace(const Matrix& m, const std::vector<int>& dims,
                            const std::vector<int>& keep) {
  const int n = static_cast<int>(dims.size());
  auto digits = [&](int idx) {
    std::vector<int> d(n);
    for (int i = n - 1; i >= 0; --i) {
      d[i] = idx % dims[i];
      idx /= dims[i];
    }
    return d;
  };
  int kept_dim = 1;
  for (int k : keep) kept_dim *= dims[k];
  Matrix out = Matrix::Zero(kept_dim, kept_dim);
  const int total = static_cast<int>(m.rows());
  for (int i = 0; i < total; ++i) {
    const auto di = digits(i);
    for (int j = 0; j < total; ++j) {
      const auto dj = digits(j);
      bool same_traced = true;
      for (int s = 0; s < n; ++s) {
        if (std::find(keep.begin(), keep.end(), s) == keep.end() && di[s] != dj[s]) {
          same_traced = false;
        }
      }
      if (!same_traced) continue;
      int ki = 0;
      int kj = 0;
      for (int k : keep) {
        ki = ki * dims[k] + di[k];
        kj = kj * dims[k] + dj[k];
      }
      out(ki, kj) += m(i, j);
    }
  }
  return out;
}

// Square roots of the eigenvalues of rho * rho~ from the general
// (non-Hermitian) eigensolver, sorted in descending order.
inline std::array<double, 4> wootters_lambdas(const Matrix& rho) {
  Matrix sy(2, 2);
  sy << 0.0, Complex(0, -1), Complex(0, 1), 0.0;
  Matrix yy(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) yy(2 * a + c, 2 * b + d) = sy(a, b) * sy(c, d);
  const Matrix flipped = yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<Matrix> solver(rho * flipped);
  std::array<double, 4> l{};
  for (int i = 0; i < 4; ++i) l[i] = std::sqrt(std::max(0.0, solver.eigenvalues()(i).real()));
  std::sort(l.begin(), l.end(), std::greater<>());
  return l;
}

inline double wootters(const Matrix& rho) {
  const auto l = wootters_lambdas(rho);
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

inline double coa(const Matrix& rho) {
  const auto l = wootters_lambdas(rho);
  return l[0] + l[1] + l[2] + l[3];
}

// Closed form for two-qubit X states.
inline double x_state_concurrence(const Matrix& r) {
  const double a = std::abs(r(0, 3)) - std::sqrt(r(1, 1).real() * r(2, 2).real());
  const double b = std::abs(r(1, 2)) - std::sqrt(r(0, 0).real() * r(3, 3).real());
  return 2.0 * std::max({0.0, a, b});
}

// sqrt(2 (1 - Tr rho_A^2)) from an explicit reduced density.
inline double pure_concurrence(const Vector& psi, int da, int db) {
  Matrix rho_a = Matrix::Zero(da, da);
  for (int a = 0; a < da; ++a)
    for (int a2 = 0; a2 < da; ++a2)
      for (int b = 0; b < db; ++b) rho_a(a, a2) += psi(a * db + b) * std::conj(psi(a2 * db + b));
  const double purity = (rho_a * rho_a).trace().real();
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - purity)));
}

inline double phase_damping_factor(double gamma_t) { return std::exp(-gamma_t); }

inline double gad_half_factor(double gamma_t) {
  const double nu = std::exp(-gamma_t);
  return std::max(0.0, (nu * nu + 2.0 * nu - 1.0) / 2.0);
}

// EOA of a|000> + sqrt(1 - a^2)|111>.
inline double ghz_family_eoa(double a) { return 2.0 * a * std::sqrt(1.0 - a * a); }

} // namespace oracle
