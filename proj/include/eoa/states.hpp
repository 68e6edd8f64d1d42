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
#include <string>
#include <vector>

#include "eoa/tensor.hpp"

namespace eoa {

inline constexpr double kNormTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kCompletenessTol = 1e-10;
inline constexpr double kOutputTraceTol = 1e-8;

/// A multipartite state with explicit subsystem dimensions, held either as a
/// pure vector or as a density operator. Densities built from pure states and
/// Kraus maps also keep a factor W with rho = W W^dagger, which lets the
/// measures work on exact square-root data instead of re-factoring rho.
class State {
 public:
  enum class Kind { kPure, kDensity };

  static State pure(ComplexVector psi, Dims dims);
  static State density(ComplexMatrix rho, Dims dims);
  static State from_factor(ComplexMatrix w, Dims dims);

  Kind kind() const { return kind_; }
  bool is_pure() const { return kind_ == Kind::kPure; }
  const Dims& dims() const { return dims_; }
  int dim() const;

  /// Throws std::logic_error for density states.
  const ComplexVector& vector() const;
  ComplexMatrix density() const;
  /// W with rho = W W^dagger; falls back to an eigen-factor for plain densities.
  ComplexMatrix factor() const;
  bool has_factor() const { return is_pure() || factor_.has_value(); }

 private:
  State(Kind kind, Dims dims) : kind_(kind), dims_(std::move(dims)) {}

  Kind kind_;
  Dims dims_;
  ComplexVector psi_;
  ComplexMatrix rho_;
  std::optional<ComplexMatrix> factor_;
};

struct KrausChannel {
  std::vector<ComplexMatrix> kraus;
  int in_dim = 0;
  int out_dim = 0;
  std::string label;

  /// Validates shapes and completeness (sum K^dagger K = I within 1e-10).
  static KrausChannel make(std::vector<ComplexMatrix> kraus, std::string label);
  /// Shape checks only; for deliberately corrupted channels in fault tests.
  static KrausChannel unchecked(std::vector<ComplexMatrix> kraus, std::string label);

  double completeness_residual() const;
};

/// Time-parametrized channel family, evaluated at a dimensionless Gamma*t.
struct ChannelFamily {
  enum class Kind { kPhaseDamping, kGeneralizedAmplitudeDamping, kIdentity, kCustom };

  Kind kind = Kind::kIdentity;
  double p = 0.5;
  int dim = 2;
  std::function<KrausChannel(double)> custom;

  static ChannelFamily phase_damping();
  static ChannelFamily generalized_amplitude_damping(double p);
  static ChannelFamily identity(int dim = 2);
  static ChannelFamily make_custom(std::string name, std::function<KrausChannel(double)> f);

  KrausChannel at(double gamma_t) const;
  std::string name() const;

 private:
  std::string custom_name_;
};

// Pure-state factories.
State generalized_ghz(Complex alpha);
State ghz_state();
State w_state();
State maximally_entangled(int d);
State product_zero(const Dims& dims);
State random_pure(const Dims& dims, std::uint64_t seed);
/// Convex mixture of `count` random pure states with random weights.
State random_mixture(const Dims& dims, int count, std::uint64_t seed);

// Channel factories.
KrausChannel identity_channel(int d);
KrausChannel phase_damping(double gamma_t);
KrausChannel generalized_amplitude_damping(double gamma_t, double p);
/// Stinespring dilation: a Haar isometry of shape (d*kraus_count) x d cut
/// into kraus_count blocks of size d x d.
KrausChannel random_channel(int d, int kraus_count, std::uint64_t seed);
/// Channel E2 o E1 as a single Kraus list.
KrausChannel compose(const KrausChannel& first, const KrausChannel& second);

/// Applies `channel` to one subsystem. The result is always a density state.
State apply_channel(const State& state, const KrausChannel& channel, int subsystem);

/// Reorders subsystems: position i of the result holds subsystem order[i].
State permute_subsystems(const State& state, const std::vector<int>& order);

/// Operator acting as `op` on subsystem `k` and identity elsewhere.
ComplexMatrix embed_operator(const ComplexMatrix& op, const Dims& dims, int k);

} // namespace eoa
