// Copyright 2026 The nhqc Authors
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

#ifndef NHQC_TOOLS_SELFTEST_HPP
#define NHQC_TOOLS_SELFTEST_HPP

// The acceptance suite A1-A9, shared by `nhqc-lab selftest` and the
// nhqc_acceptance test binary. Each check prints one line:
//
//   A4 PASS O13/|W|=32.4731 Q/|W|=15.3274 ...

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

namespace nhqc::selftest {

// Regression values, pinned from a two-resolution run (see the checks).
inline constexpr double kDetuningRatio = 32.4731362781843;  // O13_delta / |W|, n = 2
inline constexpr double kAreaRatio = 15.3273598031105;      // Q / |W|, n = 2
inline constexpr double kHeadlineFidelity = 0.998588076252027;  // NOT, ab4+cp, eps 0.2, 2 MHz, tau 0.1 us

struct Options {
  std::string csv_dir;      // when set, A1 traces, A3 sweeps and A9 grids are written here
  std::size_t threads = 0;  // sweep worker pool; 0 = hardware concurrency
};

struct Outcome {
  std::string id;
  bool passed = false;
  std::string detail;
};

Outcome check_a1(const Options& opt);
Outcome check_a2(const Options& opt);
Outcome check_a3(const Options& opt);
Outcome check_a4(const Options& opt);
Outcome check_a5(const Options& opt);
Outcome check_a6(const Options& opt);
Outcome check_a7(const Options& opt);
Outcome check_a8(const Options& opt);
Outcome check_a9(const Options& opt);

std::vector<std::string> criterion_ids();

/// Runs `ids` (all when empty), one line each; returns the number of failures.
/// Unknown ids throw std::invalid_argument.
int run(const Options& opt, std::ostream& out, const std::vector<std::string>& ids = {});

}  // namespace nhqc::selftest

#endif  // NHQC_TOOLS_SELFTEST_HPP
