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

#include <gtest/gtest.h>

#include <cmath>

#include "eoa/states.hpp"
#include "oracles.hpp"

namespace eoa {
namespace {

ComplexMatrix apply_by_matrix(const ComplexMatrix& rho, const KrausChannel& ch, const Dims& dims,
                              int k) {
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& op : ch.kraus) {
    const ComplexMatrix big = embed_operator(op, dims, k);
    out += big * rho * big.adjoint();
  }
  return out;
}

TEST(State, PureRejectsUnnormalized) {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = 1.0 + 1e-9;
  EXPECT_THROW(State::pure(v, {2, 2}), std::invalid_argument);
  v(0) = 1.0;
  EXPECT_THROW(State::pure(v, {2, 3}), std::invalid_argument);
  EXPECT_NO_THROW(State::pure(v, {2, 2}));
}

TEST(State, DensityValidation) {
  ComplexMatrix rho = ComplexMatrix::Identity(4, 4) / 4.0;
  EXPECT_NO_THROW(State::density(rho, {2, 2}));
  ComplexMatrix bad_trace = rho * 1.01;
  EXPECT_THROW(State::density(bad_trace, {2, 2}), std::invalid_argument);
  ComplexMatrix not_herm = rho;
  not_herm(0, 1) = 1e-6;
  EXPECT_THROW(State::density(not_herm, {2, 2}), std::invalid_argument);
  ComplexMatrix not_psd = rho;
  not_psd(0, 0) = -0.25;
  not_psd(1, 1) = 0.75;
  EXPECT_THROW(State::density(not_psd, {2, 2}), std::invalid_argument);
}

TEST(State, FactorReconstructsDensity) {
  const State mix = random_mixture({2, 2, 2}, 3, 5);
  const ComplexMatrix w = mix.factor();
  EXPECT_LT((w * w.adjoint() - mix.density()).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_NEAR(mix.density().trace().real(), 1.0, 1e-14);
}

TEST(Factories, GhzAndW) {
  const State ghz = ghz_state();
  EXPECT_NEAR(std::abs(ghz.vector()(0)), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(std::abs(ghz.vector()(7)), 1.0 / std::sqrt(2.0), 1e-15);
  const State g = generalized_ghz(0.5);
  EXPECT_NEAR(std::abs(g.vector()(7)), std::sqrt(0.75), 1e-15);
  EXPECT_THROW(generalized_ghz(1.1), std::invalid_argument);
  const State w = w_state();
  EXPECT_NEAR(w.vector().norm(), 1.0, 1e-15);
  EXPECT_NEAR(std::norm(w.vector()(4)), 1.0 / 3.0, 1e-15);
}

TEST(Factories, RandomStatesDeterministic) {
  EXPECT_EQ(random_pure({2, 3}, 9).vector(), random_pure({2, 3}, 9).vector());
  EXPECT_NE(random_pure({2, 3}, 9).vector(), random_pure({2, 3}, 10).vector());
  EXPECT_EQ(random_mixture({2, 2}, 2, 4).density(), random_mixture({2, 2}, 2, 4).density());
}

TEST(Kraus, NamedChannelsAreComplete) {
  for (double t : {0.0, 0.3, 1.0, 5.0}) {
    EXPECT_LE(phase_damping(t).completeness_residual(), 1e-14);
    for (double p : {0.0, 0.5, 1.0}) {
      EXPECT_LE(generalized_amplitude_damping(t, p).completeness_residual(), 1e-14);
    }
  }
  EXPECT_LE(phase_damping(std::numeric_limits<double>::infinity()).completeness_residual(), 1e-14);
  for (int k = 1; k <= 4; ++k) {
    EXPECT_LE(random_channel(2, k, k).completeness_residual(), 1e-12);
    EXPECT_LE(random_channel(3, k, k).completeness_residual(), 1e-12);
  }
}

TEST(Kraus, MakeRejectsIncompleteSets) {
  std::vector<ComplexMatrix> ks = phase_damping(0.5).kraus;
  ks[0] *= std::sqrt(1.0 + 1e-3);
  EXPECT_THROW(KrausChannel::make(ks, "bad"), std::invalid_argument);
  const KrausChannel u = KrausChannel::unchecked(ks, "bad");
  EXPECT_NEAR(u.completeness_residual(), 1e-3, 1e-12);
  EXPECT_THROW(KrausChannel::make({}, "empty"), std::invalid_argument);
  EXPECT_THROW(KrausChannel::make({ComplexMatrix::Identity(2, 2), ComplexMatrix::Zero(3, 3)}, "x"),
               std::invalid_argument);
}

TEST(Kraus, PhaseDampingDecaysCoherence) {
  const double t = 0.7;
  const State plus = State::pure(ComplexVector::Ones(2) / std::sqrt(2.0), {2});
  const ComplexMatrix out = apply_channel(plus, phase_damping(t), 0).density();
  EXPECT_NEAR(std::abs(out(0, 1)), 0.5 * std::exp(-t), 1e-14);
  EXPECT_NEAR(out(0, 0).real(), 0.5, 1e-14);
}

TEST(Kraus, GadFixedPointAtHalf) {
  // p = 1/2 drives any state to the maximally mixed state.
  const State zero = product_zero({2});
  const ComplexMatrix out = apply_channel(zero, generalized_amplitude_damping(50.0, 0.5), 0).density();
  EXPECT_LT((out - ComplexMatrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ApplyChannel, FactorPathMatchesMatrixPath) {
  const Dims dims{2, 2, 3};
  const State mix = random_mixture(dims, 2, 17);
  const State plain = State::density(mix.density(), dims);
  for (int k = 0; k < 3; ++k) {
    const KrausChannel ch = random_channel(dims[k], 3, 100 + k);
    const ComplexMatrix want = apply_by_matrix(mix.density(), ch, dims, k);
    EXPECT_LT((apply_channel(mix, ch, k).density() - want).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_LT((apply_channel(plain, ch, k).density() - want).cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(ApplyChannel, IdentityLeavesStateAlone) {
  const State psi = random_pure({2, 3, 2}, 3);
  const ComplexMatrix out = apply_channel(psi, identity_channel(3), 1).density();
  EXPECT_LT((out - psi.density()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(ApplyChannel, RejectsMismatch) {
  const State psi = random_pure({2, 3}, 3);
  EXPECT_THROW(apply_channel(psi, phase_damping(0.1), 1), std::invalid_argument);
  EXPECT_THROW(apply_channel(psi, phase_damping(0.1), 2), std::invalid_argument);
  std::vector<ComplexMatrix> ks = phase_damping(0.5).kraus;
  ks[0] *= 1.1;
  EXPECT_THROW(apply_channel(psi, KrausChannel::unchecked(ks, "bad"), 0), std::invalid_argument);
}

TEST(Compose, MatchesSequentialApplication) {
  const KrausChannel a = random_channel(2, 2, 1);
  const KrausChannel b = random_channel(2, 3, 2);
  const KrausChannel ab = compose(a, b);
  EXPECT_EQ(ab.kraus.size(), 6u);
  const State psi = random_pure({2, 2}, 4);
  const ComplexMatrix seq = apply_channel(apply_channel(psi, a, 1), b, 1).density();
  EXPECT_LT((apply_channel(psi, ab, 1).density() - seq).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Permute, MovesSubsystems) {
  const State psi = random_pure({2, 3, 2}, 8);
  const State moved = permute_subsystems(psi, {0, 2, 1});
  EXPECT_EQ(moved.dims(), (Dims{2, 2, 3}));
  const ComplexMatrix a = oracle::partial_trace(psi.density(), {2, 3, 2}, {0, 2});
  const ComplexMatrix b = oracle::partial_trace(moved.density(), {2, 2, 3}, {0, 1});
  EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-14);
  const State back = permute_subsystems(moved, {0, 2, 1});
  EXPECT_LT((back.vector() - psi.vector()).norm(), 1e-15);
  const State mixed = apply_channel(psi, phase_damping(0.4), 0);
  const State mixed_moved = permute_subsystems(mixed, {1, 0, 2});
  const ComplexMatrix c = oracle::partial_trace(mixed.density(), {2, 3, 2}, {1});
  const ComplexMatrix d = oracle::partial_trace(mixed_moved.density(), {3, 2, 2}, {0});
  EXPECT_LT((c - d).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_THROW(permute_subsystems(psi, {0, 0, 1}), std::invalid_argument);
}

TEST(Family, EvaluatesNamedChannels) {
  EXPECT_EQ(ChannelFamily::phase_damping().name(), "phase-damping");
  EXPECT_EQ(ChannelFamily::generalized_amplitude_damping(0.5).name(), "gad");
  EXPECT_EQ(ChannelFamily::identity().name(), "identity");
  const KrausChannel pd = ChannelFamily::phase_damping().at(0.2);
  EXPECT_EQ(pd.kraus.size(), 2u);
  EXPECT_THROW(ChannelFamily::generalized_amplitude_damping(1.5), std::invalid_argument);
  EXPECT_THROW(phase_damping(-0.1), std::invalid_argument);
}

} // namespace
} // namespace eoa
