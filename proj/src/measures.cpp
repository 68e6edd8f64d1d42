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

#include "eoa/measures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/SVD>

namespace eoa {

namespace {

// Relative singular-value cutoff for local support ranks.
constexpr double kSupportTol = 1e-7;

ComplexMatrix reshape_bipartite(const ComplexVector& psi, int dim_a, int dim_b) {
  ComplexMatrix m(dim_a, dim_b);
  for (int a = 0; a < dim_a; ++a) {
    for (int b = 0; b < dim_b; ++b) m(a, b) = psi(a * dim_b + b);
  }
  return m;
}

// 2 sqrt(sum_{i<j} s_i^2 s_j^2) from Schmidt values s; equals
// sqrt(2 (1 - sum s^4)) for normalized s without the cancellation.
double concurrence_from_schmidt(const RealVector& s) {
  double e1 = 0.0;
  double e2 = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double si = s(i) * s(i);
    e2 += e1 * si;
    e1 += si;
  }
  return 2.0 * std::sqrt(std::max(0.0, e2));
}

double trace_norm_hermitian(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (h + h.adjoint()),
                                                      Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().sum();
}

// Leading left singular vectors spanning the support of the marginal factor.
ComplexMatrix support_basis(const ComplexMatrix& marginal, int max_rank, int* rank) {
  Eigen::JacobiSVD<ComplexMatrix> svd(marginal, Eigen::ComputeFullU);
  const RealVector& sv = svd.singularValues();
  int r = 0;
  const double cutoff = sv.size() > 0 ? kSupportTol * sv(0) : 0.0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > cutoff) ++r;
  }
  *rank = r;
  const int keep = std::min<int>(max_rank, static_cast<int>(marginal.rows()));
  return svd.matrixU().leftCols(keep);
}

} // namespace

const ComplexMatrix& sigma_yy() {
  static const ComplexMatrix y = [] {
    ComplexMatrix sy(2, 2);
    sy << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    return kron(sy, sy);
  }();
  return y;
}

ComplexMatrix spin_flip(const ComplexMatrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) {
    throw std::invalid_argument("spin_flip: expected a 4x4 matrix");
  }
  const ComplexMatrix& y = sigma_yy();
  return y * rho.conjugate() * y;
}

ConcurrenceSpectrum spectrum_from_factor(const ComplexMatrix& w) {
  if (w.rows() != 4) throw std::invalid_argument("spectrum_from_factor: factor must have 4 rows");
  const ComplexMatrix f = compress_factor(w);
  Eigen::Matrix4cd padded = Eigen::Matrix4cd::Zero();
  padded.leftCols(f.cols()) = f;

  // (sigma_y x sigma_y) acting on the rows: (-f3, f2, f1, -f0).
  Eigen::Matrix4cd yf;
  yf.row(0) = -padded.row(3);
  yf.row(1) = padded.row(2);
  yf.row(2) = padded.row(1);
  yf.row(3) = -padded.row(0);
  const Eigen::Matrix4cd t = padded.transpose() * yf;

  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(t);
  ConcurrenceSpectrum s;
  for (int i = 0; i < 4; ++i) s.lambda[i] = svd.singularValues()(i);
  return s;
}

void validate_two_qubit_density(const ComplexMatrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) {
    throw std::invalid_argument("expected a 4x4 two-qubit density operator");
  }
  const double herm = hermiticity_residual(rho);
  if (herm > kHermitianTol) {
    throw std::invalid_argument("two-qubit density is not Hermitian (residual " +
                                std::to_string(herm) + ")");
  }
  const Complex tr = rho.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw std::invalid_argument("two-qubit density has trace " + std::to_string(tr.real()));
  }
}

ConcurrenceSpectrum concurrence_spectrum(const ComplexMatrix& rho) {
  validate_two_qubit_density(rho);
  // density_factor rejects eigenvalues below -kPsdTol.
  return spectrum_from_factor(density_factor(rho));
}

ConcurrenceSpectrum spectrum_via_proxy(const ComplexMatrix& rho) {
  validate_two_qubit_density(rho);
  const ComplexMatrix root = psd_sqrt(rho);
  ComplexMatrix proxy = root * spin_flip(rho) * root;
  proxy = 0.5 * (proxy + proxy.adjoint());
  const EigenDecomposition e = eigh(proxy);
  ConcurrenceSpectrum s;
  for (int i = 0; i < 4; ++i) s.lambda[i] = std::sqrt(std::max(0.0, e.values(3 - i)));
  return s;
}

double wootters_concurrence(const ComplexMatrix& rho) {
  return concurrence_spectrum(rho).wootters();
}

double coa(const ComplexMatrix& rho) { return concurrence_spectrum(rho).assistance(); }

double pure_concurrence(const ComplexVector& psi, const Dims& dims) {
  if (dims.size() != 2) throw std::invalid_argument("pure_concurrence: expected two subsystems");
  if (dims_product(dims) != psi.size()) {
    throw std::invalid_argument("pure_concurrence: dims do not match the vector length");
  }
  if (std::abs(psi.norm() - 1.0) > kNormTol) {
    throw std::invalid_argument("pure_concurrence: vector is not normalized");
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(reshape_bipartite(psi, dims[0], dims[1]));
  return concurrence_from_schmidt(svd.singularValues());
}

std::vector<ComplexMatrix> so_generators(int d) {
  if (d < 2) throw std::invalid_argument("so_generators: d must be at least 2");
  std::vector<ComplexMatrix> gens;
  gens.reserve(d * (d - 1) / 2);
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      ComplexMatrix l = ComplexMatrix::Zero(d, d);
      l(a, b) = 1.0;
      l(b, a) = -1.0;
      gens.push_back(std::move(l));
    }
  }
  return gens;
}

double i_concurrence_generators(const ComplexVector& psi, const Dims& dims) {
  if (dims.size() != 2 || dims[0] != dims[1]) {
    throw std::invalid_argument("i_concurrence_generators: requires equal local dimensions");
  }
  if (dims_product(dims) != psi.size()) {
    throw std::invalid_argument("i_concurrence_generators: dims do not match the vector length");
  }
  if (std::abs(psi.norm() - 1.0) > kNormTol) {
    throw std::invalid_argument("i_concurrence_generators: vector is not normalized");
  }
  const auto gens = so_generators(dims[0]);
  double total = 0.0;
  for (const auto& lm : gens) {
    for (const auto& ln : gens) {
      const Complex v = (psi.transpose() * kron(lm, ln) * psi)(0, 0);
      total += std::norm(v);
    }
  }
  return std::sqrt(total);
}

double eoa_pure_tripartite(const State& psi) {
  if (!psi.is_pure()) throw std::invalid_argument("eoa_pure_tripartite: state must be pure");
  const Dims& dims = psi.dims();
  if (dims.size() != 3 || dims[0] != 2 || dims[1] != 2) {
    throw std::invalid_argument("eoa_pure_tripartite: closed form needs dims (2, 2, n3)");
  }
  const int keep[] = {0, 1};
  return spectrum_from_factor(marginal_factor(psi.vector(), dims, keep)).assistance();
}

double purity_concurrence_bound(const ComplexMatrix& rho_ab, const Dims& dims) {
  if (dims.size() != 2) throw std::invalid_argument("purity_concurrence_bound: need two parts");
  const int keep[] = {0};
  const ComplexMatrix rho_a = partial_trace(rho_ab, dims, keep);
  const double tr = rho_ab.trace().real();
  const double purity = (rho_a * rho_a).trace().real();
  return std::sqrt(std::max(0.0, 2.0 * (tr * tr - purity)));
}

double i_concurrence_lower_bound(const ComplexMatrix& rho, int dim_a, int dim_b) {
  const int n = dim_a * dim_b;
  if (rho.rows() != n || rho.cols() != n) {
    throw std::invalid_argument("i_concurrence_lower_bound: dimension mismatch");
  }
  const double tr = rho.trace().real();
  ComplexMatrix pt(n, n);
  ComplexMatrix realigned(dim_a * dim_a, dim_b * dim_b);
  for (int a = 0; a < dim_a; ++a) {
    for (int b = 0; b < dim_b; ++b) {
      for (int a2 = 0; a2 < dim_a; ++a2) {
        for (int b2 = 0; b2 < dim_b; ++b2) {
          pt(a * dim_b + b, a2 * dim_b + b2) = rho(a * dim_b + b2, a2 * dim_b + b);
          realigned(a * dim_a + a2, b * dim_b + b2) = rho(a * dim_b + b, a2 * dim_b + b2);
        }
      }
    }
  }
  const double pt_norm = trace_norm_hermitian(pt);
  Eigen::JacobiSVD<ComplexMatrix> svd(realigned);
  const double r_norm = svd.singularValues().sum();
  const int m = std::min(dim_a, dim_b);
  const double scale = std::sqrt(2.0 / (m * (m - 1.0)));
  return std::max(0.0, scale * (std::max(pt_norm, r_norm) - tr));
}

ConcurrenceEstimate bipartite_concurrence(const ComplexMatrix& w, int dim_a, int dim_b) {
  if (w.rows() != dim_a * dim_b) {
    throw std::invalid_argument("bipartite_concurrence: factor rows do not match dims");
  }
  const double tr = w.squaredNorm();
  if (tr <= 0.0) return {0.0, true};
  if (dim_a == 2 && dim_b == 2) return {spectrum_from_factor(w).wootters(), true};

  const ComplexMatrix f = compress_factor(w);
  const Dims dims{dim_a, dim_b};
  const int keep_a[] = {0};
  const int keep_b[] = {1};
  int rank_a = 0;
  int rank_b = 0;
  const ComplexMatrix pa = support_basis(marginal_factor(f, dims, keep_a), 2, &rank_a);
  const ComplexMatrix pb = support_basis(marginal_factor(f, dims, keep_b), 2, &rank_b);
  if (rank_a <= 2 && rank_b <= 2) {
    // Every pure decomposition lives in supp(rho_A) x supp(rho_B), so the
    // convex roof reduces to two qubits.
    const ComplexMatrix compressed = kron(pa.adjoint(), pb.adjoint()) * f;
    return {spectrum_from_factor(compressed).wootters(), true};
  }

  Eigen::JacobiSVD<ComplexMatrix> global(f, Eigen::ComputeThinU);
  const RealVector& gsv = global.singularValues();
  if (gsv.size() < 2 || gsv(1) <= kSupportTol * gsv(0)) {
    const ComplexVector x = global.matrixU().col(0) * gsv(0);
    Eigen::JacobiSVD<ComplexMatrix> schmidt(reshape_bipartite(x, dim_a, dim_b));
    return {concurrence_from_schmidt(schmidt.singularValues()), true};
  }
  return {i_concurrence_lower_bound(f * f.adjoint(), dim_a, dim_b), false};
}

ComplexMatrix optimal_coa_decomposition(const ComplexMatrix& w) {
  if (w.rows() != 4) throw std::invalid_argument("optimal_coa_decomposition: need 4 rows");
  const ComplexMatrix t = w.transpose() * sigma_yy() * w;
  const TakagiFactorization tk = takagi(0.5 * (t + t.transpose()));
  // Members W U* make U^T T U diagonal with the Takagi values, which is the
  // maximal sum of |<phi_i*| Y |phi_i>|.
  return w * tk.unitary.conjugate();
}

} // namespace eoa
