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

#include "eoa/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "eoa/assistance.hpp"
#include "eoa/laws.hpp"
#include "eoa/measures.hpp"

namespace eoa {

namespace {

struct Context {
  std::uint64_t seed = 0;
  int checks = 0;
  std::vector<std::string> failures;

  void check(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  }
};

struct Suite {
  std::string name;
  std::function<void(Context&)> body;
};

std::string sci(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << v;
  return os.str();
}

OptimizerConfig reduced_optimizer(std::uint64_t seed) {
  OptimizerConfig cfg;
  cfg.restarts = 8;
  cfg.max_iters = 300;
  cfg.seed = seed;
  return cfg;
}

void check_batch(Context& ctx, Law law, int count, int d = 3) {
  BatchConfig b;
  b.law = law;
  b.count = count;
  b.seed = ctx.seed;
  b.d = d;
  b.optimizer = reduced_optimizer(ctx.seed);
  for (const auto& r : verify_batch(b)) {
    ctx.check(r.pass, law_name(r.law) + ": instance seed " + std::to_string(r.seed) +
                          " lhs " + sci(r.lhs.value) + " rhs " + sci(r.rhs.value));
  }
}

void kraus_suite(Context& ctx, bool inject) {
  std::vector<KrausChannel> channels{phase_damping(0.3), generalized_amplitude_damping(0.4, 0.5),
                                     identity_channel(3)};
  for (int k = 1; k <= 4; ++k) channels.push_back(random_channel(2, k, derive_seed(ctx.seed, k)));
  channels.push_back(random_channel(3, 2, derive_seed(ctx.seed, 5)));
  if (inject) {
    KrausChannel pd = phase_damping(0.3);
    pd.kraus[0] *= std::sqrt(1.0 + 1e-3);
    channels.push_back(KrausChannel::unchecked(pd.kraus, "phase-damping-corrupted"));
  }
  for (const auto& ch : channels) {
    const double res = ch.completeness_residual();
    ctx.check(res <= kCompletenessTol, "kraus: channel '" + ch.label + "' completeness residual " +
                                           sci(res) + " exceeds 1e-10 (seed " +
                                           std::to_string(ctx.seed) + ")");
  }
}

void measures_suite(Context& ctx) {
  for (int d = 2; d <= 4; ++d) {
    for (int k = 0; k < 10; ++k) {
      const std::uint64_t s = derive_seed(ctx.seed, 100 * d + k);
      const State psi = random_pure({d, d}, s);
      const double a = i_concurrence_generators(psi.vector(), {d, d});
      const double b = pure_concurrence(psi.vector(), {d, d});
      ctx.check(std::abs(a - b) <= 1e-10, "measures: generator vs purity form, seed " +
                                               std::to_string(s) + " diff " + sci(a - b));
    }
  }
  for (int k = 0; k < 50; ++k) {
    const std::uint64_t s = derive_seed(ctx.seed, 1000 + k);
    const State rho = random_mixture({2, 2}, 1 + k % 4, s);
    const ConcurrenceSpectrum sp = spectrum_from_factor(rho.factor());
    ctx.check(sp.assistance() >= sp.wootters() - 1e-12,
              "measures: coa below wootters, seed " + std::to_string(s));
    const KrausChannel u = random_channel(2, 1, derive_seed(s, 1));
    const ConcurrenceSpectrum moved = spectrum_from_factor(apply_channel(rho, u, 0).factor());
    ctx.check(std::abs(moved.wootters() - sp.wootters()) <= 1e-10 &&
                  std::abs(moved.assistance() - sp.assistance()) <= 1e-10,
              "measures: local unitary changed the spectrum, seed " + std::to_string(s));
  }
}

void coa_oracle_suite(Context& ctx) {
  const int keep[] = {0, 1};
  std::vector<ComplexMatrix> inputs;
  const State w = w_state();
  inputs.push_back(partial_trace(w.density(), w.dims(), keep));
  for (int k = 0; k < 5; ++k) inputs.push_back(random_mixture({2, 2}, 2, derive_seed(ctx.seed, 2000 + k)).density());
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    const double exact = coa(inputs[k]);
    const double found = coa_convex_max(inputs[k], reduced_optimizer(derive_seed(ctx.seed, k)));
    ctx.check(found <= exact + 1e-9 && exact - found <= 1e-3,
              "coa-oracle: input " + std::to_string(k) + " gap " + sci(exact - found) +
                  " (seed " + std::to_string(ctx.seed) + ")");
  }
}

void tau_suite(Context& ctx) {
  ctx.check(std::abs(tau(ghz_state()) - 1.0) <= 1e-9, "tau: GHZ value");
  ctx.check(std::abs(tau(w_state())) <= 1e-9, "tau: W value");
  check_batch(ctx, Law::kTauEvolution, 50);
}

void sudden_death_suite(Context& ctx) {
  const auto gad = sudden_death_time(ChannelFamily::generalized_amplitude_damping(0.5), {0.0, 10.0});
  const double root = std::log(1.0 + std::sqrt(2.0));
  ctx.check(gad.t_star && std::abs(*gad.t_star - root) <= 1e-6, "sudden-death: GAD root");
  const auto pd = sudden_death_time(ChannelFamily::phase_damping(), {0.0, 10.0});
  ctx.check(!pd.t_star, "sudden-death: phase damping must decay asymptotically");
}

void theorem2_suite(Context& ctx) {
  BatchConfig b;
  b.count = 3;
  b.seed = ctx.seed;
  b.optimizer = reduced_optimizer(ctx.seed);
  b.law = Law::kCorollary1;
  const auto c1 = verify_batch(b);
  b.law = Law::kTheorem2;
  b.d = 2;
  const auto t2 = verify_batch(b);
  for (std::size_t k = 0; k < c1.size(); ++k) {
    ctx.check(c1[k].pass == t2[k].pass && c1[k].lhs.value == t2[k].lhs.value,
              "theorem2: d=2 verdict differs from corollary1, seed " + std::to_string(c1[k].seed));
  }
  check_batch(ctx, Law::kTheorem2, 1, 3);
}

} // namespace

int run_selftest(const SelftestOptions& options, std::ostream& out) {
  const bool inject_kraus =
      std::find(options.faults.begin(), options.faults.end(), "kraus") != options.faults.end();

  const std::vector<Suite> suites{
      {"kraus", [&](Context& c) { kraus_suite(c, inject_kraus); }},
      {"measures", measures_suite},
      {"coa-oracle", coa_oracle_suite},
      {"theorem1", [](Context& c) { check_batch(c, Law::kTheorem1, 4); }},
      {"corollary1", [](Context& c) { check_batch(c, Law::kCorollary1, 4); }},
      {"corollary2", [](Context& c) { check_batch(c, Law::kCorollary2, 4); }},
      {"theorem2", theorem2_suite},
      {"remark-d2", [](Context& c) { check_batch(c, Law::kRemarkD2, 2, 3); }},
      {"remark-lowerbound", [](Context& c) { check_batch(c, Law::kRemarkLowerBound, 3); }},
      {"tau", tau_suite},
      {"sudden-death", sudden_death_suite},
  };

  int total_checks = 0;
  int total_failures = 0;
  std::vector<std::string> failed_suites;
  for (const auto& suite : suites) {
    Context ctx;
    ctx.seed = options.seed;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      suite.body(ctx);
    } catch (const std::exception& e) {
      ctx.failures.push_back(suite.name + ": exception: " + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out << "[" << suite.name << "] checks=" << ctx.checks << " failures=" << ctx.failures.size()
        << " time=" << std::fixed << std::setprecision(3) << secs << "s" << std::defaultfloat
        << '\n';
    for (const auto& f : ctx.failures) out << "  FAIL " << f << '\n';
    total_checks += ctx.checks;
    total_failures += static_cast<int>(ctx.failures.size());
    if (!ctx.failures.empty()) failed_suites.push_back(suite.name);
  }

  out << "selftest seed=" << options.seed << " suites=" << suites.size()
      << " checks=" << total_checks << " failures=" << total_failures;
  if (!failed_suites.empty()) {
    out << " failed=";
    for (std::size_t i = 0; i < failed_suites.size(); ++i) out << (i ? "," : "") << failed_suites[i];
  }
  out << " status=" << (total_failures == 0 ? "PASS" : "FAIL") << '\n';
  return total_failures == 0 ? 0 : 1;
}

} // namespace eoa
