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

#ifndef NHQC_CATALOG_HPP
#define NHQC_CATALOG_HPP

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nhqc/pulse.hpp"
#include "nhqc/qutrit.hpp"

namespace nhqc {

struct GateCatalogEntry {
  std::string name;
  GateSpec spec;
  InitialState initial;
  QutritState target;
};

/// NOT, Hadamard, S, T with their reference input and output states.
std::span<const GateCatalogEntry> gate_catalog();

/// Case-insensitive lookup; throws CatalogError.
const GateCatalogEntry& find_gate(std::string_view name);

/// Slopes of beta against sin(alpha) in the two halves (a = b = 0 is the orange slice).
struct Scheme {
  double a = 4.0;
  double b = 4.0;

  static Scheme orange_slice() { return {0.0, 0.0}; }
  static Scheme tailored(int n) { return {2.0 * n, 2.0 * n}; }
  std::string label() const;
};

/// Family realizing |d><d| + e^{i gamma}|b><b|: beta1 = 0, beta2 = -gamma.
PulseFamily holonomic_family(double gamma, const Scheme& scheme, double tau);

using StagePlan = std::vector<std::pair<AngleSchedule, StageFrame>>;

/// Gate stage, plus the dark/bright-swapped identity stage when `compensate`.
StagePlan plan_stages(const GateSpec& gate, const Scheme& scheme, bool compensate, double tau);

}  // namespace nhqc

#endif  // NHQC_CATALOG_HPP
