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

#include "eoa/assistance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/SVD>

#include "eoa/measures.hpp"

namespace eoa {

namespace {

constexpr double kInitialStep = 0.3;
constexpr double kGrow = 1.5;
constexpr double kShrink = 0.9;
constexpr int kStallWindow = 100;

void require_isometry(const ComplexMatrix& v, const char* who) {
  if (v.rows() < v.cols()) {
    throw std::invalid_argument(std::string(who) + ": isometry needs rows >= cols");
  }
  const double res = isometry_residual(v);
  if (!(res <= kIsometryTol)) {
    throw std::invalid_argument(std::string(who) + ": matrix is not an isometry (residual " +
                                std::to_string(res) + ")");
  }
}

ComplexMatrix validated_density(const ComplexMatrix& rho, const char* who) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) {
    throw std::invalid_argument(std::string(who) + ": density must be square");
  }
  const double herm = hermiticity_residual(rho);
  if (herm > kHermitianTol) {
    throw std::invalid_argument(std::string(who) + ": density is not Hermitian");
  }
  if (std::abs(rho.trace() - 1.0) > kTraceTol) {
    throw std::invalid_argument(std::string(who) + ": density does not have unit trace");
  }
  return 0.5 * (rho + rho.adjoint());
}

// Eigen-ensemble factor F = [sqrt(mu_j) e_j] over eigenvalues above 1e-10.
ComplexMatrix eigen_factor(const ComplexMatrix& rho) {
  const EigenDecomposition e = eigh(rho);
  if (e.values(0) < -kPsdTol) throw std::invalid_argument("density is not positive semidefinite");
  std::vector<Eigen::Index> cols;
  for (Eigen::Index k = e.values.size() - 1; k >= 0; --k) {
    if (e.values(k) > kEnsembleRankTol) cols.push_back(k);
  }
  ComplexMatrix f(rho.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    f.col(static_cast<Eigen::Index>(c)) = e.vectors.col(cols[c]) * std::sqrt(e.values(cols[c]));
  }
  return f;
}

// Conditional AB factors of a (dA, dB, n3) state: X_i = sum_c v(i, c) B_c.
struct AssistProblem {
  int dim_a = 0;
  int dim_b = 0;
  int n3 = 0;
  std::vector<ComplexMatrix> blocks;

  explicit AssistProblem(const State& s) {
    const Dims& dims = s.dims();
    if (dims.size() != 3) throw std::invalid_argument("assistance: expected a tripartite state");
    dim_a = dims[0];
    dim_b = dims[1];
    n3 = dims[2];
    const ComplexMatrix w = compress_factor(s.factor());
    const int dab = dim_a * dim_b;
    blocks.assign(n3, ComplexMatrix(dab, w.cols()));
    for (int ab = 0; ab < dab; ++ab) {
      for (int c = 0; c < n3; ++c) blocks[c].row(ab) = w.row(ab * n3 + c);
    }
  }

  double evaluate(const ComplexMatrix& v) const {
    double total = 0.0;
    ComplexMatrix x(blocks[0].rows(), blocks[0].cols());
    const bool qubits = dim_a == 2 && dim_b == 2;
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
      x.setZero();
      for (int c = 0; c < n3; ++c) x += v(i, c) * blocks[c];
      if (x.squaredNorm() < kZeroOutcomeProb) continue;
      total += qubits ? spectrum_from_factor(x).wootters()
                      : bipartite_concurrence(x, dim_a, dim_b).value;
    }
    return total;
  }
};

double pure_concurrence_unnormalized(const ComplexVector& w, int dim_a, int dim_b) {
  ComplexMatrix m(dim_a, dim_b);
  for (int a = 0; a < dim_a; ++a) {
    for (int b = 0; b < dim_b; ++b) m(a, b) = w(a * dim_b + b);
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  double e1 = 0.0;
  double e2 = 0.0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    const double s = svd.singularValues()(i) * svd.singularValues()(i);
    e2 += e1 * s;
    e1 += s;
  }
  return 2.0 * std::sqrt(std::max(0.0, e2));
}

ComplexMatrix pad_rows(const ComplexMatrix& v, Eigen::Index rows) {
  if (v.rows() > rows) throw std::invalid_argument("warm start has more rows than the arity");
  ComplexMatrix out = ComplexMatrix::Zero(rows, v.cols());
  out.topRows(v.rows()) = v;
  return out;
}

} // namespace

double Povm::completeness_residual() const {
  if (elements.empty()) return std::numeric_limits<double>::infinity();
  ComplexMatrix sum = ComplexMatrix::Zero(elements[0].rows(), elements[0].cols());
  for (const auto& e : elements) sum += e;
  return (sum - ComplexMatrix::Identity(sum.rows(), sum.cols())).cwiseAbs().maxCoeff();
}

ComplexMatrix Ensemble::reconstruct() const {
  if (members.empty()) return ComplexMatrix(0, 0);
  const Eigen::Index n = members[0].state.size();
  ComplexMatrix rho = ComplexMatrix::Zero(n, n);
  for (const auto& m : members) rho += m.weight * m.state * m.state.adjoint();
  return rho;
}

void OptimizerConfig::validate() const {
  if (restarts <= 0 || max_iters <= 0 || !(step_tol > 0.0) || !(objective_tol > 0.0)) {
    throw std::invalid_argument("optimizer config: restarts, iterations and tolerances must be positive");
  }
}

SearchResult maximize_over_isometries(int rows, int cols,
                                      const std::function<double(const ComplexMatrix&)>& objective,
                                      const OptimizerConfig& cfg,
                                      const ComplexMatrix* warm_start) {
  cfg.validate();
  if (cols <= 0 || rows < cols) throw std::invalid_argument("isometry search: need rows >= cols >= 1");

  SearchResult best;
  best.value = -std::numeric_limits<double>::infinity();

  auto run = [&](ComplexMatrix v, std::mt19937_64& rng) {
    double fv = objective(v);
    double step = kInitialStep;
    double checkpoint = fv;
    for (int it = 1; it <= cfg.max_iters && step >= cfg.step_tol; ++it) {
      ComplexMatrix trial = orthonormalize(v + step * gaussian_matrix(rows, cols, rng));
      const double ft = objective(trial);
      if (ft > fv) {
        v = std::move(trial);
        fv = ft;
        step *= kGrow;
      } else {
        step *= kShrink;
      }
      if (it % kStallWindow == 0) {
        if (fv - checkpoint < cfg.objective_tol) break;
        checkpoint = fv;
      }
    }
    if (fv > best.value) {
      best.value = fv;
      best.isometry = std::move(v);
    }
  };

  if (warm_start != nullptr) {
    if (warm_start->cols() != cols) throw std::invalid_argument("warm start has the wrong shape");
    ComplexMatrix w = pad_rows(*warm_start, rows);
    require_isometry(w, "warm start");
    std::mt19937_64 rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(-1)));
    run(std::move(w), rng);
  }
  for (int r = 0; r < cfg.restarts; ++r) {
    std::mt19937_64 rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(r)));
    run(orthonormalize(gaussian_matrix(rows, cols, rng)), rng);
  }
  return best;
}

Ensemble hjw_ensemble(const ComplexMatrix& rho, const ComplexMatrix& mix) {
  const ComplexMatrix f = eigen_factor(validated_density(rho, "hjw_ensemble"));
  if (mix.cols() != f.cols()) {
    throw std::invalid_argument("hjw_ensemble: mix has " + std::to_string(mix.cols()) +
                                " columns but rho has rank " + std::to_string(f.cols()));
  }
  require_isometry(mix, "hjw_ensemble");
  const ComplexMatrix members = f * mix.transpose();
  Ensemble out;
  for (Eigen::Index i = 0; i < members.cols(); ++i) {
    const double w = members.col(i).squaredNorm();
    if (w <= 0.0) continue;
    out.members.push_back({w, members.col(i) / std::sqrt(w)});
  }
  return out;
}

SearchResult coa_convex_search(const ComplexMatrix& rho, const OptimizerConfig& cfg, int arity) {
  validate_two_qubit_density(rho);
  const ComplexMatrix f = eigen_factor(0.5 * (rho + rho.adjoint()));
  const int r = static_cast<int>(f.cols());
  const int k = arity > 0 ? arity : 2 * r;
  if (k < r) throw std::invalid_argument("coa_convex_search: arity below the rank");
  const ComplexMatrix t = f.transpose() * sigma_yy() * f;
  // Member i is F mix_i^T, whose concurrence is |mix_i T mix_i^T|.
  auto objective = [&t](const ComplexMatrix& mix) {
    const ComplexMatrix mt = mix * t;
    double total = 0.0;
    for (Eigen::Index i = 0; i < mix.rows(); ++i) total += std::abs(mt.row(i).dot(mix.row(i).conjugate()));
    return total;
  };
  return maximize_over_isometries(k, r, objective, cfg);
}

double coa_convex_max(const ComplexMatrix& rho, const OptimizerConfig& cfg, int arity) {
  return coa_convex_search(rho, cfg, arity).value;
}

Povm povm_from_isometry(const ComplexMatrix& v) {
  require_isometry(v, "povm_from_isometry");
  Povm p;
  p.elements.reserve(v.rows());
  for (Eigen::Index i = 0; i < v.rows(); ++i) p.elements.push_back(v.row(i).adjoint() * v.row(i));
  return p;
}

double assisted_average(const State& rho_abc, const Povm& povm) {
  const Dims& dims = rho_abc.dims();
  if (dims.size() != 3) throw std::invalid_argument("assisted_average: expected a tripartite state");
  for (const auto& e : povm.elements) {
    if (e.rows() != dims[2] || e.cols() != dims[2]) {
      throw std::invalid_argument("assisted_average: POVM element dimension does not match n3");
    }
  }
  const double res = povm.completeness_residual();
  if (!(res <= kIsometryTol)) {
    throw std::invalid_argument("assisted_average: POVM elements do not sum to identity");
  }
  const ComplexMatrix w = rho_abc.factor();
  const int keep[] = {0, 1};
  double total = 0.0;
  for (const auto& e : povm.elements) {
    const ComplexMatrix m = psd_sqrt(0.5 * (e + e.adjoint()));
    const ComplexMatrix x = marginal_factor(embed_operator(m, dims, 2) * w, dims, keep);
    if (x.squaredNorm() < kZeroOutcomeProb) continue;
    total += bipartite_concurrence(x, dims[0], dims[1]).value;
  }
  return total;
}

double assisted_average_isometry(const State& rho_abc, const ComplexMatrix& v) {
  const AssistProblem problem(rho_abc);
  if (v.cols() != problem.n3) throw std::invalid_argument("assisted_average: isometry width != n3");
  require_isometry(v, "assisted_average");
  return problem.evaluate(v);
}

SearchResult eoa_lower_bound_search(const State& rho_abc, const OptimizerConfig& cfg, int arity,
                                    const ComplexMatrix* warm_start) {
  const AssistProblem problem(rho_abc);
  const int k = arity > 0 ? arity : 2 * problem.n3;
  if (k < problem.n3) {
    throw std::invalid_argument("eoa_lower_bound: arity " + std::to_string(k) +
                                " is below n3 = " + std::to_string(problem.n3));
  }
  return maximize_over_isometries(
      k, problem.n3, [&problem](const ComplexMatrix& v) { return problem.evaluate(v); }, cfg,
      warm_start);
}

double eoa_lower_bound(const State& rho_abc, const OptimizerConfig& cfg, int arity) {
  return eoa_lower_bound_search(rho_abc, cfg, arity).value;
}

std::vector<double> eoa_lower_bound_ladder(const State& rho_abc, const OptimizerConfig& cfg,
                                           const std::vector<int>& arities) {
  std::vector<double> out;
  std::optional<ComplexMatrix> previous;
  int last = 0;
  for (int k : arities) {
    if (k < last) throw std::invalid_argument("eoa_lower_bound_ladder: arities must not decrease");
    last = k;
    SearchResult r =
        eoa_lower_bound_search(rho_abc, cfg, k, previous ? &*previous : nullptr);
    out.push_back(r.value);
    previous = std::move(r.isometry);
  }
  return out;
}

double convex_roof_upper_bound(const ComplexMatrix& rho, int dim_a, int dim_b,
                               const OptimizerConfig& cfg) {
  if (rho.rows() != dim_a * dim_b) {
    throw std::invalid_argument("convex_roof_upper_bound: dims do not match the density");
  }
  const ComplexMatrix f = eigen_factor(validated_density(rho, "convex_roof_upper_bound"));
  const int r = static_cast<int>(f.cols());
  auto objective = [&](const ComplexMatrix& mix) {
    const ComplexMatrix members = f * mix.transpose();
    double total = 0.0;
    for (Eigen::Index i = 0; i < members.cols(); ++i) {
      total += pure_concurrence_unnormalized(members.col(i), dim_a, dim_b);
    }
    return -total;
  };
  return -maximize_over_isometries(2 * r, r, objective, cfg).value;
}

} // namespace eoa
