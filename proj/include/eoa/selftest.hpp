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
#include <iosfwd>
#include <string>
#include <vector>

namespace eoa {

struct SelftestOptions {
  std::uint64_t seed = 7;
  /// Names of deliberately injected faults; only "kraus" is recognized.
  std::vector<std::string> faults;
};

/// Runs the invariant suites at reduced instance counts. Per-suite timing
/// lines go to `out` before a deterministic summary line. Returns 0 when
/// every check passes and 1 otherwise.
int run_selftest(const SelftestOptions& options, std::ostream& out);

} // namespace eoa
