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

#include "nhqc/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "nhqc/catalog.hpp"
#include "nhqc/errors.hpp"
#include "nhqc/propagator.hpp"

namespace nhqc {
namespace {

constexpr std::size_t kN = 20000;

ErrorIntegrals integrals(const GateCatalogEntry& g, const Scheme& s, double tau = 1.0, std::size_t n = kN) {
  const StagePlan plan = plan_stages(g.spec, s, false, tau);
  const DriveWaveform wf = inverse_engineer(plan[0].first, n, plan[0].second);
  return error_integrals(plan[0].first, accumulated_phases(plan[0].first, wf), static_cast<int>(std::lround(s.a / 2)));
}

double generator_infidelity(const GateCatalogEntry& g, const Scheme& s, bool cp, const ErrorModel& err) {
  return SecondOrderOracle(plan_stages(g.spec, s, cp, 1.0), kN).infidelity(g.initial.state(), err);
}

TEST(Phases, StartAtZeroAndEndAtGeometricPhase) {
  for (const auto& g : gate_catalog()) {
    for (const Scheme s : {Scheme{0, 0}, Scheme{4, 4}}) {
      const StagePlan plan = plan_stages(g.spec, s, false, 0.1);
      const PhaseTrack tr = accumulated_phases(plan[0].first, inverse_engineer(plan[0].first, kN, plan[0].second));
      ASSERT_EQ(tr.segments.size(), 2u);
      EXPECT_EQ(tr.segments[0].plus.front(), 0.0);
      EXPECT_EQ(tr.segments[0].minus.front(), 0.0);
      EXPECT_NEAR(wrap_angle(tr.plus_end() - phase_decomposition(plan[0].first).gamma_g), 0.0, 1e-9)
          << g.name << ' ' << s.label();
    }
  }
}

TEST(Phases, RelativePhaseIsLinearInAlphaForTailoredScheme) {
  // First half, a = 4: phi+ - phi- = 4 alpha + const.
  const StagePlan plan = plan_stages(find_gate("NOT").spec, Scheme{4, 4}, false, 0.1);
  const AngleSchedule& sched = plan[0].first;
  const PhaseTrack tr = accumulated_phases(sched, inverse_engineer(sched, kN, plan[0].second));
  const PhaseSegment& seg = tr.segments[0];
  const double c = seg.plus[0] - seg.minus[0] - 4 * sched.at(0.0).alpha;
  for (std::size_t k = 0; k < seg.plus.size(); k += 500) {
    const double t = seg.t_begin + seg.spacing() * static_cast<double>(k);
    EXPECT_NEAR(seg.plus[k] - seg.minus[k] - 4 * sched.at(t, Half::First).alpha - c, 0.0, 1e-8);
  }
}

TEST(Phases, RejectsMismatchedWaveform) {
  const StagePlan p1 = plan_stages(find_gate("NOT").spec, Scheme{4, 4}, false, 0.1);
  const StagePlan p2 = plan_stages(find_gate("NOT").spec, Scheme{4, 4}, false, 0.2);
  EXPECT_THROW(accumulated_phases(p1[0].first, inverse_engineer(p2[0].first, kN, p2[0].second)), ConfigError);
}

TEST(Integrals, RabiTermsVanishForTailoredScheme) {
  for (const auto& g : gate_catalog()) {
    const ErrorIntegrals ab4 = integrals(g, Scheme{4, 4});
    EXPECT_LT(std::abs(ab4.O12_eps), 1e-9) << g.name;
    EXPECT_LT(std::abs(ab4.O13_eps), 1e-9) << g.name;
    const ErrorIntegrals ab0 = integrals(g, Scheme{0, 0});
    EXPECT_GT(std::abs(ab0.O12_eps) + std::abs(ab0.O13_eps), 0.1) << g.name;
  }
}

TEST(Integrals, SymmetricDetuningIdentity) {
  // O12_delta = W (1 + e^{-i gamma}) for alpha symmetric about tau/2.
  for (const auto& g : gate_catalog()) {
    const ErrorIntegrals ints = integrals(g, Scheme{4, 4});
    EXPECT_LT(std::abs(ints.O12_delta - ints.W * (1.0 + std::polar(1.0, -g.spec.gamma))), 1e-6) << g.name;
    EXPECT_NEAR(ints.O13_delta, 0.5, 1e-9);  // int_0^1 sin^2(alpha/2) for alpha = pi sin^2(pi t)
  }
}

TEST(Integrals, ScaleLinearlyWithDuration) {
  const GateCatalogEntry& g = find_gate("S");
  const ErrorIntegrals i1 = integrals(g, Scheme{0, 0}, 1.0), i2 = integrals(g, Scheme{0, 0}, 0.1);
  EXPECT_NEAR(std::abs(i2.O12_delta), 0.1 * std::abs(i1.O12_delta), 1e-10);
  EXPECT_NEAR(i2.O13_delta, 0.1 * i1.O13_delta, 1e-10);
  EXPECT_NEAR(std::abs(i2.O12_eps), std::abs(i1.O12_eps), 1e-8);  // dimensionless
}

TEST(Integrals, ConvergeUnderRefinement) {
  const GateCatalogEntry& g = find_gate("T");
  const ErrorIntegrals c = integrals(g, Scheme{4, 4}, 1.0, 4000), f = integrals(g, Scheme{4, 4}, 1.0, 8000);
  EXPECT_LT(std::abs(c.O12_delta - f.O12_delta), 1e-9);
  EXPECT_LT(std::abs(c.W - f.W), 1e-9);
}

TEST(ClosedForm, MatchesGeneratorWithoutCompensation) {
  for (const auto& g : gate_catalog()) {
    for (const Scheme s : {Scheme{0, 0}, Scheme{2, 2}, Scheme{4, 4}}) {
      for (const ErrorKind kind : {ErrorKind::Rabi, ErrorKind::Detuning}) {
        const ErrorModel unit = kind == ErrorKind::Rabi ? ErrorModel{1.0, 0.0} : ErrorModel{0.0, 1.0};
        const double closed = table_coefficient(g, s, false, kind);
        EXPECT_NEAR(closed, generator_infidelity(g, s, false, unit), 1e-8 * (1 + closed)) << g.name << s.label();
      }
    }
  }
}

TEST(ClosedForm, MatchesGeneratorWithCompensation) {
  for (const auto& g : gate_catalog()) {
    for (const Scheme s : {Scheme{0, 0}, Scheme{4, 4}}) {
      const double closed = table_coefficient(g, s, true, ErrorKind::Detuning);
      EXPECT_NEAR(closed, generator_infidelity(g, s, true, {0.0, 1.0}), 1e-8 * (1 + closed)) << g.name << s.label();
    }
  }
}

TEST(ClosedForm, BreakdownSumsToInfidelity) {
  const GateCatalogEntry& g = find_gate("Hadamard");
  const ErrorIntegrals ints = integrals(g, Scheme{2, 2});
  const auto [cd, cb] = decompose_initial(g.initial, g.spec.theta, g.spec.phi);
  const AnalyticFidelity af = analytic_fidelity_gate(cd, cb, ints, {0.3, 0.7}, g.spec.gamma);
  double sum = 0;
  for (const auto& t : af.breakdown) sum += t.value;
  EXPECT_NEAR(sum, 1 - af.P, 1e-14);
  EXPECT_GT(1 - af.P, 0.0);
}

TEST(ClosedForm, SymmetricSpecializationAgrees) {
  for (const auto& g : gate_catalog()) {
    const ErrorIntegrals ints = integrals(g, Scheme{4, 4});
    const auto [cd, cb] = decompose_initial(g.initial, g.spec.theta, g.spec.phi);
    const AnalyticFidelity af = analytic_fidelity_gate(cd, cb, ints, {0.0, 0.4}, g.spec.gamma);
    EXPECT_NEAR(af.P_symmetric, af.P, 1e-8) << g.name;
  }
}

TEST(TableCoefficients, OrangeSliceRabi) {
  const double pi2 = kPi * kPi;
  auto rabi = [](const char* name) { return table_coefficient(find_gate(name), Scheme{0, 0}, false, ErrorKind::Rabi); };
  EXPECT_NEAR(rabi("NOT"), pi2 / 2, 1e-6);
  EXPECT_NEAR(rabi("S"), pi2 / 4, 1e-6);
  EXPECT_NEAR(rabi("T"), pi2 / 4 * (1 - std::sqrt(2.0) / 2), 1e-6);
  // Twice the commonly tabulated pi^2/2 sin^2(pi/8); the simulator agrees with this value.
  EXPECT_NEAR(rabi("Hadamard"), pi2 * std::pow(std::sin(kPi / 8), 2), 1e-6);
}

TEST(TableCoefficients, TailoredSchemeIsRabiRobust) {
  for (const auto& g : gate_catalog()) {
    EXPECT_LT(table_coefficient(g, Scheme{4, 4}, false, ErrorKind::Rabi), 1e-16) << g.name;
  }
}

TEST(TableCoefficients, OrangeSliceNotDetuningIsLeakageTerm) {
  // gamma = pi cancels O12_delta, leaving |c_d c_b O13_delta|^2 = O13_delta^2 / 4.
  const GateCatalogEntry& g = find_gate("NOT");
  const ErrorIntegrals ints = integrals(g, Scheme{0, 0});
  EXPECT_LT(std::abs(ints.O12_delta), 1e-12);
  EXPECT_NEAR(table_coefficient(g, Scheme{0, 0}, false, ErrorKind::Detuning), ints.O13_delta * ints.O13_delta / 4,
              1e-10);
}

TEST(TableCoefficients, CompensatedDetuning) {
  const ErrorIntegrals ints = integrals(find_gate("NOT"), Scheme{4, 4});
  const double w2 = std::norm(ints.W);
  EXPECT_NEAR(table_coefficient(find_gate("NOT"), Scheme{4, 4}, true, ErrorKind::Detuning), w2 / 2, 1e-8);
  EXPECT_NEAR(table_coefficient(find_gate("S"), Scheme{4, 4}, true, ErrorKind::Detuning), w2 / 4, 1e-8);
  // Compensation beats the bare gate.
  for (const auto& g : gate_catalog()) {
    EXPECT_LT(table_coefficient(g, Scheme{4, 4}, true, ErrorKind::Detuning),
              table_coefficient(g, Scheme{4, 4}, false, ErrorKind::Detuning) + 1e-12)
        << g.name;
  }
}

TEST(TableCoefficients, HalfAreaRatios) {
  const ErrorIntegrals ints = integrals(find_gate("NOT"), Scheme{4, 4});
  EXPECT_NEAR(ints.Q / std::abs(ints.W), 15.3273598031105, 1e-6);
}

TEST(SecondOrderOracle, IdealPropagatorMatchesSimulation) {
  for (const auto& g : gate_catalog()) {
    const StagePlan plan = plan_stages(g.spec, Scheme{4, 4}, true, 0.1);
    const SecondOrderOracle oracle(plan, kN);
    const QutritOperator sim = propagator_matrix(make_sim_config(plan, kN, kN), {});
    EXPECT_LT(phase_gauged_distance(oracle.ideal_propagator(), sim), 1e-8) << g.name;
    EXPECT_LT(phase_gauged_distance(oracle.ideal_propagator(1, 0.1), sim), 1e-8) << g.name;
    EXPECT_LT(hermiticity_defect(oracle.detuning_generator()), 1e-12);
    EXPECT_LT(hermiticity_defect(oracle.rabi_generator()), 1e-12);
  }
}

TEST(SecondOrderOracle, PredictsSmallErrorInfidelity) {
  for (const auto& g : gate_catalog()) {
    for (const bool cp : {false, true}) {
      const StagePlan plan = plan_stages(g.spec, Scheme{0, 0}, cp, 0.1);
      const SecondOrderOracle oracle(plan, kN);
      const ErrorModel err{0.01, 0.05};
      const Vector3c out = propagate(g.initial.state().amplitudes(), make_sim_config(plan, kN, kN), err);
      const double sim = 1 - std::norm(g.target.amplitudes().dot(out));
      EXPECT_NEAR(oracle.infidelity(g.initial.state(), err) / sim, 1.0, 0.02) << g.name << cp;
    }
  }
}

TEST(SecondOrderOracle, DarkStateIsExact) {
  const GateCatalogEntry& g = find_gate("S");
  const SecondOrderOracle oracle(plan_stages(g.spec, Scheme{0, 0}, false, 0.1), kN);
  EXPECT_LT(oracle.infidelity(make_dark_bright(g.spec.theta, g.spec.phi).dark, {0.2, 5.0}), 1e-20);
}

TEST(SecondOrderOracle, RejectsBadGrids) {
  const StagePlan plan = plan_stages(find_gate("S").spec, Scheme{4, 4}, false, 0.1);
  EXPECT_THROW(SecondOrderOracle(plan, 999), ConfigError);
  EXPECT_THROW(SecondOrderOracle({}, kN), ConfigError);
  const SecondOrderOracle oracle(plan, 2000);
  EXPECT_THROW(oracle.ideal_propagator(0, 0.0123456), DomainError);
}

}  // namespace
}  // namespace nhqc
