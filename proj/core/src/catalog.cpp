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

#include "nhqc/catalog.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <sstream>

#include "nhqc/errors.hpp"

namespace nhqc {

namespace {

std::array<GateCatalogEntry, 4> build_catalog() {
  const double r = 1.0 / std::sqrt(2.0);
  return {{
      {"NOT", {kPi, kPi / 2, 0.0}, {0.0, 0.0}, QutritState(0.0, 1.0, 0.0)},
      {"Hadamard", {kPi, kPi / 4, 0.0}, {0.0, 0.0}, QutritState(r, r, 0.0)},
      {"S", {kPi / 2, 0.0, 0.0}, {kPi / 4, 0.0}, QutritState(r, r * kI, 0.0)},
      {"T", {kPi / 4, 0.0, 0.0}, {kPi / 4, 0.0}, QutritState(r, r * std::polar(1.0, kPi / 4), 0.0)},
  }};
}

bool iequals(std::string_view x, std::string_view y) {
  return x.size() == y.size() && std::equal(x.begin(), x.end(), y.begin(), [](char p, char q) {
           return std::tolower(static_cast<unsigned char>(p)) == std::tolower(static_cast<unsigned char>(q));
         });
}

}  // namespace

std::span<const GateCatalogEntry> gate_catalog() {
  static const std::array<GateCatalogEntry, 4> catalog = build_catalog();
  return catalog;
}

const GateCatalogEntry& find_gate(std::string_view name) {
  for (const auto& g : gate_catalog()) {
    if (iequals(g.name, name)) return g;
  }
  std::ostringstream os;
  os << "unknown gate '" << name << "' (expected not, hadamard, s or t)";
  throw CatalogError(os.str());
}

std::string Scheme::label() const {
  std::ostringstream os;
  if (a == b) {
    os << "ab" << a;
  } else {
    os << "a" << a << "b" << b;
  }
  return os.str();
}

PulseFamily holonomic_family(double gamma, const Scheme& scheme, double tau) {
  PulseFamily fam;
  fam.shape = AlphaShape::SinSquared;
  fam.a = scheme.a;
  fam.b = scheme.b;
  fam.beta1 = 0.0;
  fam.beta2 = -gamma;
  fam.tau = tau;
  fam.validate();
  return fam;
}

StagePlan plan_stages(const GateSpec& gate, const Scheme& scheme, bool compensate, double tau) {
  StagePlan plan;
  const PulseFamily fam = holonomic_family(gate.gamma, scheme, tau);
  plan.emplace_back(AngleSchedule(fam), StageFrame{StageKind::Gate, gate.theta, gate.phi});
  if (compensate) {
    const CompensationStage comp = compensation_stage(fam, gate.theta, gate.phi);
    plan.emplace_back(AngleSchedule(comp.family), StageFrame{StageKind::Compensation, comp.theta, comp.phi});
  }
  return plan;
}

}  // namespace nhqc
