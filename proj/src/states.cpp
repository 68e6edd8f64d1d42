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

#include "eoa/states.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <utility>

namespace eoa {

namespace {

void check_dims(const Dims& dims, Eigen::Index size, const char* what) {
  if (dims.empty()) throw std::invalid_argument(std::string(what) + ": empty dims");
  if (dims_product(dims) != size) {
    throw std::invalid_argument(std::string(what) + ": dims multiply to " +
                                std::to_string(dims_product(dims)) + " but data has size " +
                                std::to_string(size));
  }
}

ComplexMatrix diag2(Complex a, Complex b) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

} // namespace

// ---------------------------------------------------------------------------
// State

State State::pure(ComplexVector psi, Dims dims) {
  check_dims(dims, psi.size(), "State::pure");
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > kNormTol) {
    throw std::invalid_argument("State::pure: vector norm " + std::to_string(norm) +
                                " is not 1");
  }
  State s(Kind::kPure, std::move(dims));
  s.psi_ = std::move(psi);
  return s;
}

State State::density(ComplexMatrix rho, Dims dims) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("State::density: not square");
  check_dims(dims, rho.rows(), "State::density");
  const double herm = hermiticity_residual(rho);
  if (herm > kHermitianTol) {
    throw std::invalid_argument("State::density: not Hermitian (residual " +
                                std::to_string(herm) + ")");
  }
  const Complex tr = rho.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw std::invalid_argument("State::density: trace " + std::to_string(tr.real()) +
                                " is not 1");
  }
  const EigenDecomposition e = eigh(rho);
  if (e.values(0) < -kPsdTol) {
    throw std::invalid_argument("State::density: not positive semidefinite (eigenvalue " +
                                std::to_string(e.values(0)) + ")");
  }
  State s(Kind::kDensity, std::move(dims));
  s.rho_ = std::move(rho);
  return s;
}

State State::from_factor(ComplexMatrix w, Dims dims) {
  check_dims(dims, w.rows(), "State::from_factor");
  const double tr = w.squaredNorm();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw std::invalid_argument("State::from_factor: trace " + std::to_string(tr) + " is not 1");
  }
  State s(Kind::kDensity, std::move(dims));
  w = compress_factor(w);
  s.rho_ = w * w.adjoint();
  s.factor_ = std::move(w);
  return s;
}

int State::dim() const { return dims_product(dims_); }

const ComplexVector& State::vector() const {
  if (!is_pure()) throw std::logic_error("State::vector: state is a density operator");
  return psi_;
}

ComplexMatrix State::density() const {
  if (is_pure()) return psi_ * psi_.adjoint();
  return rho_;
}

ComplexMatrix State::factor() const {
  if (is_pure()) return psi_;
  if (factor_) return *factor_;
  return density_factor(rho_);
}

// ---------------------------------------------------------------------------
// KrausChannel

KrausChannel KrausChannel::unchecked(std::vector<ComplexMatrix> kraus, std::string label) {
  if (kraus.empty()) throw std::invalid_argument("KrausChannel: no Kraus operators");
  const auto rows = kraus.front().rows();
  const auto cols = kraus.front().cols();
  for (const auto& k : kraus) {
    if (k.rows() != rows || k.cols() != cols) {
      throw std::invalid_argument("KrausChannel: Kraus operators have mismatched shapes");
    }
  }
  KrausChannel ch;
  ch.kraus = std::move(kraus);
  ch.in_dim = static_cast<int>(cols);
  ch.out_dim = static_cast<int>(rows);
  ch.label = std::move(label);
  return ch;
}

KrausChannel KrausChannel::make(std::vector<ComplexMatrix> kraus, std::string label) {
  KrausChannel ch = unchecked(std::move(kraus), std::move(label));
  const double res = ch.completeness_residual();
  if (!(res <= kCompletenessTol)) {
    throw std::invalid_argument("KrausChannel '" + ch.label + "': completeness residual " +
                                std::to_string(res) + " exceeds 1e-10");
  }
  return ch;
}

double KrausChannel::completeness_residual() const {
  ComplexMatrix sum = ComplexMatrix::Zero(in_dim, in_dim);
  for (const auto& k : kraus) sum += k.adjoint() * k;
  return (sum - ComplexMatrix::Identity(in_dim, in_dim)).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// ChannelFamily

ChannelFamily ChannelFamily::phase_damping() {
  ChannelFamily f;
  f.kind = Kind::kPhaseDamping;
  return f;
}

ChannelFamily ChannelFamily::generalized_amplitude_damping(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("generalized amplitude damping: p must lie in [0, 1]");
  }
  ChannelFamily f;
  f.kind = Kind::kGeneralizedAmplitudeDamping;
  f.p = p;
  return f;
}

ChannelFamily ChannelFamily::identity(int dim) {
  ChannelFamily f;
  f.kind = Kind::kIdentity;
  f.dim = dim;
  return f;
}

ChannelFamily ChannelFamily::make_custom(std::string name,
                                         std::function<KrausChannel(double)> fn) {
  ChannelFamily f;
  f.kind = Kind::kCustom;
  f.custom = std::move(fn);
  f.custom_name_ = std::move(name);
  return f;
}

KrausChannel ChannelFamily::at(double gamma_t) const {
  switch (kind) {
    case Kind::kPhaseDamping:
      return eoa::phase_damping(gamma_t);
    case Kind::kGeneralizedAmplitudeDamping:
      return eoa::generalized_amplitude_damping(gamma_t, p);
    case Kind::kIdentity:
      return identity_channel(dim);
    case Kind::kCustom:
      if (!custom) throw std::logic_error("custom channel family without generator");
      return custom(gamma_t);
  }
  throw std::logic_error("unknown channel family");
}

std::string ChannelFamily::name() const {
  switch (kind) {
    case Kind::kPhaseDamping:
      return "phase-damping";
    case Kind::kGeneralizedAmplitudeDamping:
      return "gad";
    case Kind::kIdentity:
      return "identity";
    case Kind::kCustom:
      return custom_name_.empty() ? "custom" : custom_name_;
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// States

State generalized_ghz(Complex alpha) {
  const double mag2 = std::norm(alpha);
  if (mag2 > 1.0 + 1e-15) {
    throw std::invalid_argument("generalized_ghz: |alpha| must not exceed 1");
  }
  ComplexVector psi = ComplexVector::Zero(8);
  psi(0) = alpha;
  psi(7) = std::sqrt(std::max(0.0, 1.0 - mag2));
  return State::pure(std::move(psi), {2, 2, 2});
}

State ghz_state() { return generalized_ghz(1.0 / std::sqrt(2.0)); }

State w_state() {
  ComplexVector psi = ComplexVector::Zero(8);
  const double amp = 1.0 / std::sqrt(3.0);
  psi(1) = amp; // |001>
  psi(2) = amp; // |010>
  psi(4) = amp; // |100>
  return State::pure(std::move(psi), {2, 2, 2});
}

State maximally_entangled(int d) {
  if (d < 2) throw std::invalid_argument("maximally_entangled: d must be at least 2");
  ComplexVector psi = ComplexVector::Zero(d * d);
  for (int i = 0; i < d; ++i) psi(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  return State::pure(std::move(psi), {d, d});
}

State product_zero(const Dims& dims) {
  ComplexVector psi = ComplexVector::Zero(dims_product(dims));
  psi(0) = 1.0;
  return State::pure(std::move(psi), dims);
}

State random_pure(const Dims& dims, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ComplexVector psi = gaussian_matrix(dims_product(dims), 1, rng).col(0);
  psi.normalize();
  return State::pure(std::move(psi), dims);
}

State random_mixture(const Dims& dims, int count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("random_mixture: count must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.05, 1.0);
  std::vector<double> weights(count);
  double total = 0.0;
  for (auto& w : weights) total += (w = uniform(rng));
  ComplexMatrix factor(dims_product(dims), count);
  for (int k = 0; k < count; ++k) {
    const State member = random_pure(dims, derive_seed(seed, static_cast<std::uint64_t>(k)));
    factor.col(k) = std::sqrt(weights[k] / total) * member.vector();
  }
  // Renormalize against rounding in the weights.
  factor /= factor.norm();
  return State::from_factor(std::move(factor), dims);
}

// ---------------------------------------------------------------------------
// Channels

KrausChannel identity_channel(int d) {
  if (d < 1) throw std::invalid_argument("identity_channel: dimension must be positive");
  return KrausChannel::make({ComplexMatrix::Identity(d, d)}, "identity");
}

KrausChannel phase_damping(double gamma_t) {
  if (!(gamma_t >= 0.0)) throw std::invalid_argument("phase_damping: gamma_t must be >= 0");
  const double nu = std::exp(-gamma_t);
  const double omega = std::sqrt(1.0 - nu * nu);
  return KrausChannel::make({diag2(1.0, nu), diag2(0.0, omega)}, "phase-damping");
}

KrausChannel generalized_amplitude_damping(double gamma_t, double p) {
  if (!(gamma_t >= 0.0)) {
    throw std::invalid_argument("generalized_amplitude_damping: gamma_t must be >= 0");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("generalized_amplitude_damping: p must lie in [0, 1]");
  }
  const double nu = std::exp(-gamma_t);
  const double omega = std::sqrt(1.0 - nu * nu);
  const double sp = std::sqrt(p);
  const double sq = std::sqrt(1.0 - p);

  ComplexMatrix k1 = ComplexMatrix::Zero(2, 2);
  k1(0, 1) = sp * omega;
  ComplexMatrix k3 = ComplexMatrix::Zero(2, 2);
  k3(1, 0) = sq * omega;
  return KrausChannel::make({sp * diag2(1.0, nu), k1, sq * diag2(nu, 1.0), k3}, "gad");
}

KrausChannel random_channel(int d, int kraus_count, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("random_channel: dimension must be positive");
  if (kraus_count < 1) throw std::invalid_argument("random_channel: kraus_count must be >= 1");
  const ComplexMatrix v = haar_isometry(d * kraus_count, d, seed);
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(kraus_count);
  for (int j = 0; j < kraus_count; ++j) kraus.push_back(v.block(j * d, 0, d, d));
  return KrausChannel::make(std::move(kraus),
                            "random(d=" + std::to_string(d) + ",k=" +
                                std::to_string(kraus_count) + ")");
}

KrausChannel compose(const KrausChannel& first, const KrausChannel& second) {
  if (second.in_dim != first.out_dim) {
    throw std::invalid_argument("compose: dimension mismatch");
  }
  std::vector<ComplexMatrix> kraus;
  for (const auto& b : second.kraus) {
    for (const auto& a : first.kraus) kraus.push_back(b * a);
  }
  return KrausChannel::make(std::move(kraus), second.label + "*" + first.label);
}

ComplexMatrix embed_operator(const ComplexMatrix& op, const Dims& dims, int k) {
  if (k < 0 || k >= static_cast<int>(dims.size())) {
    throw std::invalid_argument("embed_operator: subsystem index out of range");
  }
  int left = 1;
  int right = 1;
  for (int i = 0; i < k; ++i) left *= dims[i];
  for (int i = k + 1; i < static_cast<int>(dims.size()); ++i) right *= dims[i];
  return kron(kron(ComplexMatrix::Identity(left, left), op), ComplexMatrix::Identity(right, right));
}

State apply_channel(const State& state, const KrausChannel& channel, int subsystem) {
  const Dims& dims = state.dims();
  if (subsystem < 0 || subsystem >= static_cast<int>(dims.size())) {
    throw std::invalid_argument("apply_channel: subsystem index out of range");
  }
  if (channel.in_dim != dims[subsystem]) {
    throw std::invalid_argument("apply_channel: channel input dimension " +
                                std::to_string(channel.in_dim) + " does not match subsystem " +
                                std::to_string(subsystem) + " of dimension " +
                                std::to_string(dims[subsystem]));
  }
  Dims out_dims = dims;
  out_dims[subsystem] = channel.out_dim;

  if (state.has_factor()) {
    const ComplexMatrix w = state.factor();
    ComplexMatrix out(dims_product(out_dims), w.cols() * static_cast<Eigen::Index>(channel.kraus.size()));
    Eigen::Index col = 0;
    for (const auto& k : channel.kraus) {
      out.middleCols(col, w.cols()) = embed_operator(k, dims, subsystem) * w;
      col += w.cols();
    }
    // A channel accepted at completeness 1e-10 can move the trace by about
    // that much; larger drift means the Kraus set was never validated.
    const double tr = out.squaredNorm();
    if (std::abs(tr - 1.0) > kOutputTraceTol) {
      throw std::invalid_argument("apply_channel: output trace " + std::to_string(tr) +
                                  " (channel is not trace preserving)");
    }
    out /= std::sqrt(tr);
    return State::from_factor(std::move(out), out_dims);
  }

  const ComplexMatrix rho = state.density();
  ComplexMatrix out = ComplexMatrix::Zero(dims_product(out_dims), dims_product(out_dims));
  for (const auto& k : channel.kraus) {
    const ComplexMatrix big = embed_operator(k, dims, subsystem);
    out += big * rho * big.adjoint();
  }
  out = 0.5 * (out + out.adjoint());
  const double tr = out.trace().real();
  if (std::abs(tr - 1.0) > kOutputTraceTol) {
    throw std::invalid_argument("apply_channel: output trace " + std::to_string(tr) +
                                " (channel is not trace preserving)");
  }
  out /= tr;
  return State::density(std::move(out), out_dims);
}

State permute_subsystems(const State& state, const std::vector<int>& order) {
  const Dims& dims = state.dims();
  const int n = static_cast<int>(dims.size());
  if (static_cast<int>(order.size()) != n) {
    throw std::invalid_argument("permute_subsystems: order has the wrong length");
  }
  std::vector<bool> seen(n, false);
  for (int k : order) {
    if (k < 0 || k >= n || seen[k]) throw std::invalid_argument("permute_subsystems: not a permutation");
    seen[k] = true;
  }
  Dims new_dims(n);
  for (int i = 0; i < n; ++i) new_dims[i] = dims[order[i]];

  const int total = dims_product(dims);
  std::vector<int> target(total);
  std::vector<int> digit(n, 0);
  for (int idx = 0; idx < total; ++idx) {
    int t = 0;
    for (int i = 0; i < n; ++i) t = t * new_dims[i] + digit[order[i]];
    target[idx] = t;
    for (int i = n - 1; i >= 0; --i) {
      if (++digit[i] < dims[i]) break;
      digit[i] = 0;
    }
  }

  if (state.is_pure()) {
    ComplexVector out(total);
    for (int idx = 0; idx < total; ++idx) out(target[idx]) = state.vector()(idx);
    return State::pure(std::move(out), std::move(new_dims));
  }
  if (state.has_factor()) {
    const ComplexMatrix w = state.factor();
    ComplexMatrix out(total, w.cols());
    for (int idx = 0; idx < total; ++idx) out.row(target[idx]) = w.row(idx);
    return State::from_factor(std::move(out), std::move(new_dims));
  }
  const ComplexMatrix rho = state.density();
  ComplexMatrix out(total, total);
  for (int i = 0; i < total; ++i) {
    for (int j = 0; j < total; ++j) out(target[i], target[j]) = rho(i, j);
  }
  return State::density(std::move(out), std::move(new_dims));
}

} // namespace eoa
