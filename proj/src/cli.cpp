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

#include "eoa/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "eoa/laws.hpp"
#include "eoa/selftest.hpp"

namespace eoa::cli {

namespace {

using nlohmann::json;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError(what + ": '" + s + "' is not a number");
  }
  if (used != s.size() || !std::isfinite(v)) throw UsageError(what + ": '" + s + "' is not a number");
  return v;
}

std::string fmt12(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

ChannelFamily make_family(const std::string& name, double p) {
  if (name == "phase-damping") return ChannelFamily::phase_damping();
  if (name == "identity") return ChannelFamily::identity();
  if (name == "gad") {
    if (!(p >= 0.0 && p <= 1.0)) throw UsageError("--p must lie in [0, 1]");
    return ChannelFamily::generalized_amplitude_damping(p);
  }
  throw UsageError("unknown channel '" + name + "' (expected phase-damping, gad or identity)");
}

// Writes to --out when given, else to the command's standard output.
void emit(const std::string& path, const std::string& payload, std::ostream& out) {
  if (path.empty()) {
    out << payload;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw UsageError("cannot open '" + path + "' for writing");
  file << payload;
  if (!file.flush()) throw UsageError("failed writing '" + path + "'");
}

json record_to_json(const VerificationRecord& r, const json& config) {
  json j;
  j["law"] = law_name(r.law);
  j["lhs"] = {{"value", r.lhs.value}, {"direction", direction_name(r.lhs.direction)}};
  j["rhs"] = {{"value", r.rhs.value}, {"direction", direction_name(r.rhs.direction)}};
  j["lhs_upper"] = r.lhs_upper ? json(*r.lhs_upper) : json(nullptr);
  j["gap"] = r.gap;
  j["pass"] = r.pass;
  j["certified"] = r.certified;
  j["seed"] = r.seed;
  j["params"] = r.params;
  j["labels"] = r.labels;
  j["tool_version"] = kToolVersion;
  j["config"] = config;
  return j;
}

struct SeriesOptions {
  std::string channel = "phase-damping";
  double p = 0.5;
  double alpha = 0.5;
  std::string grid = "0:3:301";
  std::string format = "csv";
  std::string out;
};

int cmd_series(const SeriesOptions& o, std::ostream& out) {
  const Grid grid = parse_grid(o.grid);
  if (!(o.alpha >= 0.0 && o.alpha <= 1.0)) throw UsageError("--alpha must lie in [0, 1]");
  const ChannelFamily family = make_family(o.channel, o.p);
  const auto points = evolve_series(generalized_ghz(o.alpha), family, grid.points());

  std::ostringstream payload;
  if (o.format == "csv") {
    payload << "gamma_t,factor,eoa_product,channel,alpha\n";
    for (const auto& pt : points) {
      payload << fmt12(pt.gamma_t) << ',' << fmt12(pt.factor) << ',' << fmt12(pt.eoa_product)
              << ',' << family.name() << ',' << fmt12(o.alpha) << '\n';
    }
  } else {
    json rows = json::array();
    for (const auto& pt : points) {
      rows.push_back({{"gamma_t", pt.gamma_t},
                      {"factor", pt.factor},
                      {"eoa_product", pt.eoa_product},
                      {"channel", family.name()},
                      {"alpha", o.alpha}});
    }
    json doc = {{"tool_version", kToolVersion},
                {"config",
                 {{"channel", o.channel}, {"p", o.p}, {"alpha", o.alpha}, {"grid", o.grid}}},
                {"rows", rows}};
    payload << doc.dump(2) << '\n';
  }
  emit(o.out, payload.str(), out);
  return kExitOk;
}

struct VerifyOptions {
  std::string law;
  int n = 10;
  std::uint64_t seed = 7;
  int d = 3;
  int n3 = 0;
  int restarts = 20;
  int iters = 500;
  double opt_tol = 1e-3;
  double algebra_tol = 1e-9;
  std::string format = "json";
  std::string out;
};

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  const auto law = parse_law(o.law);
  if (!law) throw UsageError("unknown law '" + o.law + "'");
  if (o.format != "json") throw UsageError("verify writes JSON records (--format json)");
  if (o.n < 1) throw UsageError("--n must be at least 1");
  if (o.restarts < 1 || o.iters < 1) throw UsageError("--restarts and --iters must be positive");
  if (!(o.opt_tol > 0.0) || !(o.algebra_tol > 0.0)) throw UsageError("tolerances must be positive");
  if (o.d < 2 || o.d > 4) throw UsageError("--d must lie in [2, 4]");
  if (o.n3 < 0 || o.n3 > 4) throw UsageError("--n3 must lie in [1, 4] (0 picks the default)");

  BatchConfig cfg;
  cfg.law = *law;
  cfg.count = o.n;
  cfg.seed = o.seed;
  cfg.d = o.d;
  cfg.n3 = o.n3;
  cfg.optimizer.restarts = o.restarts;
  cfg.optimizer.max_iters = o.iters;
  cfg.tolerances.opt_tol = o.opt_tol;
  cfg.tolerances.algebra_tol = o.algebra_tol;
  const auto records = verify_batch(cfg);

  const json config = {{"law", o.law},         {"n", o.n},
                       {"seed", o.seed},       {"d", o.d},
                       {"n3", o.n3},           {"restarts", o.restarts},
                       {"iters", o.iters},     {"opt_tol", o.opt_tol},
                       {"algebra_tol", o.algebra_tol}};
  json doc = json::array();
  int passed = 0;
  int certified_failures = 0;
  int advisory = 0;
  double max_gap = -std::numeric_limits<double>::infinity();
  for (const auto& r : records) {
    doc.push_back(record_to_json(r, config));
    if (r.pass) ++passed;
    if (r.certified && !r.pass) ++certified_failures;
    if (!r.certified) ++advisory;
    max_gap = std::max(max_gap, r.gap);
  }
  emit(o.out, doc.dump(2) + "\n", out);

  std::ostream& summary = o.out.empty() ? err : out;
  summary << "verify " << o.law << ": records=" << records.size() << " passed=" << passed
          << " certified_failures=" << certified_failures << " advisory=" << advisory
          << " max_gap=" << fmt12(max_gap) << '\n';
  return certified_failures == 0 ? kExitOk : kExitVerificationFailure;
}

struct SuddenDeathOptions {
  std::string channel = "gad";
  double p = 0.5;
  std::string bracket = "0:10";
  double tol = 1e-8;
  std::string out;
};

int cmd_sudden_death(const SuddenDeathOptions& o, std::ostream& out) {
  const auto parts = split(o.bracket, ':');
  if (parts.size() != 2) throw UsageError("--bracket expects lo:hi");
  const double lo = parse_double(parts[0], "--bracket");
  const double hi = parse_double(parts[1], "--bracket");
  if (lo < 0.0 || !(lo < hi)) throw UsageError("--bracket needs 0 <= lo < hi");
  if (!(o.tol > 0.0)) throw UsageError("--tol must be positive");
  const ChannelFamily family = make_family(o.channel, o.p);
  const SuddenDeathResult r = sudden_death_time(family, {lo, hi}, o.tol);

  json doc = {{"tool_version", kToolVersion},
              {"channel", family.name()},
              {"t_star", r.t_star ? json(*r.t_star) : json(nullptr)},
              {"bracket", {r.bracket.first, r.bracket.second}},
              {"residual", r.residual},
              {"config", {{"channel", o.channel}, {"p", o.p}, {"bracket", o.bracket}, {"tol", o.tol}}}};
  out << (r.t_star ? fmt12(*r.t_star) : std::string("none")) << '\n';
  if (o.out.empty()) {
    out << doc.dump() << '\n';
  } else {
    emit(o.out, doc.dump(2) + "\n", out);
  }
  return kExitOk;
}

} // namespace

std::vector<double> Grid::points() const {
  std::vector<double> pts(steps);
  for (int i = 0; i < steps; ++i) pts[i] = start + (stop - start) * i / (steps - 1);
  pts.back() = stop;
  return pts;
}

Grid parse_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw UsageError("--grid expects start:stop:steps, got '" + text + "'");
  Grid g;
  g.start = parse_double(parts[0], "--grid start");
  g.stop = parse_double(parts[1], "--grid stop");
  const double steps = parse_double(parts[2], "--grid steps");
  if (steps != std::floor(steps) || steps < 2 || steps > 1e7) {
    throw UsageError("--grid steps must be an integer >= 2");
  }
  g.steps = static_cast<int>(steps);
  if (!(g.start < g.stop)) throw UsageError("--grid needs start < stop");
  if (g.start < 0.0) throw UsageError("--grid start must be >= 0");
  return g;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement of assistance under local noise"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  SeriesOptions series;
  auto* s = app.add_subcommand("series", "Theorem 1 product and bare factor over a time grid");
  s->add_option("--channel", series.channel, "phase-damping | gad | identity");
  s->add_option("--p", series.p, "GAD temperature parameter");
  s->add_option("--alpha", series.alpha, "amplitude of |000> in the generalized GHZ state");
  s->add_option("--grid", series.grid, "start:stop:steps");
  s->add_option("--format", series.format)->check(CLI::IsMember({"csv", "json"}));
  s->add_option("--out", series.out, "output path (default stdout)");

  VerifyOptions verify;
  auto* v = app.add_subcommand("verify", "Run a verification batch for one law");
  v->add_option("law", verify.law, "theorem1 | corollary1 | corollary2 | theorem2 | remark-d2 | "
                                   "remark-lowerbound | tau")
      ->required();
  v->add_option("--n", verify.n, "number of instances");
  v->add_option("--seed", verify.seed, "master seed");
  v->add_option("--d", verify.d, "local dimension for theorem2 / remark-d2");
  v->add_option("--n3", verify.n3, "dimension of the assisting party");
  v->add_option("--restarts", verify.restarts);
  v->add_option("--iters", verify.iters);
  v->add_option("--opt-tol", verify.opt_tol);
  v->add_option("--algebra-tol", verify.algebra_tol);
  v->add_option("--format", verify.format)->check(CLI::IsMember({"csv", "json"}));
  v->add_option("--out", verify.out, "output path (default stdout)");

  SuddenDeathOptions death;
  auto* d = app.add_subcommand("sudden-death", "Find the time at which the factor vanishes");
  d->add_option("--channel", death.channel, "phase-damping | gad | identity");
  d->add_option("--p", death.p, "GAD temperature parameter");
  d->add_option("--bracket", death.bracket, "lo:hi");
  d->add_option("--tol", death.tol);
  d->add_option("--out", death.out, "JSON output path");

  SelftestOptions selftest;
  auto* t = app.add_subcommand("selftest", "Run the invariant suites at reduced size");
  t->add_option("--seed", selftest.seed);
  t->add_option("--inject-fault", selftest.faults, "deliberate fault (kraus)")
      ->check(CLI::IsMember({"kraus"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (s->parsed()) return cmd_series(series, out);
    if (v->parsed()) return cmd_verify(verify, out, err);
    if (d->parsed()) return cmd_sudden_death(death, out);
    if (t->parsed()) return run_selftest(selftest, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

} // namespace eoa::cli
