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

#include "eoa/measures.hpp"
#include "eoa/states.hpp"
#include "oracles.hpp"

namespace eoa {
namespace {

ComplexMatrix ab_marginal(const State& s) {
  return oracle::partial_trace(s.density(), s.dims(), {0, 1});
}

TEST(SpinFlip, BellStateIsInvariant) {
  const ComplexMatrix bell = maximally_entangled(2).density();
  EXPECT_LT((spin_flip(bell) - bell).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_THROW(spin_flip(ComplexMatrix::Identity(3, 3)), std::invalid_argument);
}

TEST(Spectrum, MatchesOracleAcrossRanks) {
  for (int rank = 1; rank <= 4; ++rank) {
    for (int k = 0; k < 25; ++k) {
      const State s = random_mixture({2, 2}, rank, 1000 * rank + k);
      const auto want = oracle::wootters_lambdas(s.density());
      const ConcurrenceSpectrum got = concurrence_spectrum(s.density());
      const ConcurrenceSpectrum fact = spectrum_from_factor(s.factor());
      for (int i = 0; i < 4; ++i) {
        // The oracle's square roots of near-zero eigenvalues carry ~1e-8 noise.
        EXPECT_NEAR(got.lambda[i], want[i], 1e-7);
        EXPECT_NEAR(fact.lambda[i], got.lambda[i], 1e-12);
      }
    }
  }
}

TEST(Spectrum, ProxyRouteAgrees) {
  for (int k = 0; k < 30; ++k) {
    const State s = random_mixture({2, 2}, 4, 50 + k);
    const ConcurrenceSpectrum a = concurrence_spectrum(s.density());
    const ConcurrenceSpectrum b = spectrum_via_proxy(s.density());
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(a.lambda[i], b.lambda[i], 1e-10);
  }
}

TEST(Wootters, KnownStates) {
  EXPECT_NEAR(wootters_concurrence(maximally_entangled(2).density()), 1.0, 1e-14);
  EXPECT_NEAR(wootters_concurrence(product_zero({2, 2}).density()), 0.0, 1e-14);
  EXPECT_NEAR(wootters_concurrence(ComplexMatrix::Identity(4, 4) / 4.0), 0.0, 1e-14);
  // Werner state p|phi+><phi+| + (1 - p) I/4: C = max(0, (3p - 1)/2).
  const double f = 0.8;
  const ComplexMatrix werner =
      f * maximally_entangled(2).density() + (1 - f) / 4.0 * ComplexMatrix::Identity(4, 4);
  EXPECT_NEAR(wootters_concurrence(werner), (3 * f - 1) / 2, 1e-13);
}

TEST(Wootters, XStatesMatchClosedForm) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    const double t = a + b + c + d;
    a /= t, b /= t, c /= t, d /= t;
    ComplexMatrix x = ComplexMatrix::Zero(4, 4);
    x(0, 0) = a, x(1, 1) = b, x(2, 2) = c, x(3, 3) = d;
    const Complex z = std::polar(u(rng) * std::sqrt(a * d), 2 * M_PI * u(rng));
    const Complex w = std::polar(u(rng) * std::sqrt(b * c), 2 * M_PI * u(rng));
    x(0, 3) = z, x(3, 0) = std::conj(z), x(1, 2) = w, x(2, 1) = std::conj(w);
    EXPECT_NEAR(wootters_concurrence(x), oracle::x_state_concurrence(x), 1e-12);
  }
}

TEST(Coa, GhzAndWMarginals) {
  EXPECT_NEAR(coa(ab_marginal(ghz_state())), 1.0, 1e-14);
  EXPECT_NEAR(coa(ab_marginal(w_state())), 2.0 / 3.0, 1e-14);
  EXPECT_NEAR(wootters_concurrence(ab_marginal(w_state())), 2.0 / 3.0, 1e-14);
  EXPECT_NEAR(wootters_concurrence(ab_marginal(ghz_state())), 0.0, 1e-14);
}

TEST(Coa, DominatesWootters) {
  for (int k = 0; k < 200; ++k) {
    const State s = random_mixture({2, 2}, 1 + k % 4, 7000 + k);
    EXPECT_GE(coa(s.density()), wootters_concurrence(s.density()) - 1e-12);
  }
}

TEST(Coa, PureStatesEqualConcurrence) {
  for (int k = 0; k < 20; ++k) {
    const State s = random_pure({2, 2}, k);
    const double c = oracle::pure_concurrence(s.vector(), 2, 2);
    EXPECT_NEAR(coa(s.density()), c, 1e-12);
    EXPECT_NEAR(wootters_concurrence(s.density()), c, 1e-12);
  }
}

TEST(Validation, RejectsBadDensities) {
  ComplexMatrix rho = ComplexMatrix::Identity(4, 4) / 4.0;
  rho(0, 1) = 1e-9;
  EXPECT_THROW(wootters_concurrence(rho), std::invalid_argument);
  EXPECT_THROW(coa(ComplexMatrix::Identity(4, 4)), std::invalid_argument);
  EXPECT_THROW(coa(ComplexMatrix::Identity(3, 3) / 3.0), std::invalid_argument);
  ComplexMatrix neg = ComplexMatrix::Zero(4, 4);
  neg(0, 0) = 1.1;
  neg(1, 1) = -0.1;
  EXPECT_THROW(coa(neg), std::invalid_argument);
}

TEST(PureConcurrence, MatchesOracle) {
  for (auto [da, db] : {std::pair{2, 2}, {2, 3}, {3, 3}, {4, 2}, {2, 4}}) {
    for (int k = 0; k < 10; ++k) {
      const State s = random_pure({da, db}, 31 * k + da);
      EXPECT_NEAR(pure_concurrence(s.vector(), {da, db}),
                  oracle::pure_concurrence(s.vector(), da, db), 1e-12);
    }
  }
  EXPECT_NEAR(pure_concurrence(maximally_entangled(3).vector(), {3, 3}), std::sqrt(4.0 / 3.0),
              1e-14);
  EXPECT_THROW(pure_concurrence(ComplexVector::Ones(4), {2, 2}), std::invalid_argument);
}

TEST(IConcurrence, GeneratorFormEqualsPurityForm) {
  for (int d = 2; d <= 4; ++d) {
    EXPECT_EQ(so_generators(d).size(), static_cast<std::size_t>(d * (d - 1) / 2));
    for (int k = 0; k < 20; ++k) {
      const State s = random_pure({d, d}, 500 * d + k);
      EXPECT_NEAR(i_concurrence_generators(s.vector(), {d, d}),
                  pure_concurrence(s.vector(), {d, d}), 1e-10);
    }
  }
  EXPECT_THROW(i_concurrence_generators(random_pure({2, 3}, 1).vector(), {2, 3}),
               std::invalid_argument);
}

TEST(Invariance, LocalUnitaries) {
  for (int k = 0; k < 30; ++k) {
    const State s = random_mixture({2, 2}, 1 + k % 4, 300 + k);
    const KrausChannel ua = random_channel(2, 1, 2 * k);
    const KrausChannel ub = random_channel(2, 1, 2 * k + 1);
    const State moved = apply_channel(apply_channel(s, ua, 0), ub, 1);
    EXPECT_NEAR(wootters_concurrence(moved.density()), wootters_concurrence(s.density()), 1e-10);
    EXPECT_NEAR(coa(moved.density()), coa(s.density()), 1e-10);
  }
  for (int d = 2; d <= 4; ++d) {
    const State s = random_pure({d, d}, d);
    const State moved = apply_channel(s, random_channel(d, 1, 9), 0);
    EXPECT_NEAR(pure_concurrence(moved.factor().col(0), {d, d}), pure_concurrence(s.vector(), {d, d}),
                1e-10);
  }
}

TEST(EoaPure, ClosedForms) {
  for (double a : {0.0, 0.2, 0.5, 1.0 / std::sqrt(2.0), 0.9, 1.0}) {
    EXPECT_NEAR(eoa_pure_tripartite(generalized_ghz(a)), oracle::ghz_family_eoa(a), 1e-14);
  }
  EXPECT_NEAR(eoa_pure_tripartite(w_state()), 2.0 / 3.0, 1e-14);
  EXPECT_THROW(eoa_pure_tripartite(random_pure({3, 2, 2}, 1)), std::invalid_argument);
}

TEST(BipartiteConcurrence, QubitsAndEmbeddings) {
  for (int k = 0; k < 20; ++k) {
    const State s = random_mixture({2, 2}, 2, 40 + k);
    const ConcurrenceEstimate e = bipartite_concurrence(s.factor(), 2, 2);
    EXPECT_TRUE(e.exact);
    EXPECT_NEAR(e.value, wootters_concurrence(s.density()), 1e-12);
    // Embed the same state in 3 x 3 along random two-dimensional subspaces.
    const ComplexMatrix pa = haar_isometry(3, 2, 900 + k);
    const ComplexMatrix pb = haar_isometry(3, 2, 950 + k);
    const ConcurrenceEstimate big = bipartite_concurrence(kron(pa, pb) * s.factor(), 3, 3);
    EXPECT_TRUE(big.exact);
    EXPECT_NEAR(big.value, e.value, 1e-10);
    // Homogeneous of degree one in the trace.
    EXPECT_NEAR(bipartite_concurrence(0.5 * s.factor(), 2, 2).value, 0.25 * e.value, 1e-12);
  }
}

TEST(BipartiteConcurrence, PureHigherDimensions) {
  for (int k = 0; k < 10; ++k) {
    const State s = random_pure({3, 3}, 60 + k);
    const ConcurrenceEstimate e = bipartite_concurrence(s.factor(), 3, 3);
    EXPECT_TRUE(e.exact);
    EXPECT_NEAR(e.value, oracle::pure_concurrence(s.vector(), 3, 3), 1e-10);
  }
}

TEST(BipartiteConcurrence, MixedHigherDimensionsIsLowerBound) {
  // Isotropic states: the lower bound is tight, C = sqrt(2d/(d-1)) (F - 1/d).
  const int d = 3;
  const ComplexMatrix phi = maximally_entangled(d).density();
  for (double f : {0.5, 0.7, 0.9}) {
    const ComplexMatrix rho = f * phi + (1 - f) / (d * d - 1) * (ComplexMatrix::Identity(9, 9) - phi);
    const ConcurrenceEstimate e = bipartite_concurrence(density_factor(rho), d, d);
    EXPECT_FALSE(e.exact);
    EXPECT_NEAR(e.value, std::sqrt(2.0 * d / (d - 1)) * (f - 1.0 / d), 1e-10);
  }
}

TEST(PurityBound, DominatesPureAverages) {
  const State mix = random_mixture({3, 3}, 2, 5);
  const double bound = purity_concurrence_bound(mix.density(), {3, 3});
  const ComplexMatrix w = mix.factor();
  double avg = 0.0;
  for (Eigen::Index i = 0; i < w.cols(); ++i) {
    const double p = w.col(i).squaredNorm();
    avg += p * oracle::pure_concurrence(w.col(i) / std::sqrt(p), 3, 3);
  }
  EXPECT_LE(avg, bound + 1e-12);
}

TEST(OptimalDecomposition, AttainsCoa) {
  for (int k = 0; k < 20; ++k) {
    const State s = random_mixture({2, 2}, 1 + k % 4, 80 + k);
    const ComplexMatrix members = optimal_coa_decomposition(s.factor());
    EXPECT_LT((members * members.adjoint() - s.density()).cwiseAbs().maxCoeff(), 1e-12);
    double total = 0.0;
    for (Eigen::Index i = 0; i < members.cols(); ++i) {
      const double p = members.col(i).squaredNorm();
      if (p > 1e-15) total += p * oracle::pure_concurrence(members.col(i) / std::sqrt(p), 2, 2);
    }
    EXPECT_NEAR(total, coa(s.density()), 1e-10);
  }
}

} // namespace
} // namespace eoa
