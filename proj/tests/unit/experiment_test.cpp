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


#include "nhqc/experiment.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "nhqc/errors.hpp"

namespace nhqc {
namespace {

SweepRequest small_grid() {
  SweepRequest req;
  req.gate = "s";
  req.kind = SweepKind::Grid;
  req.eps = {-0.1, 0.0, 0.1};
  req.delta_mhz = {-0.5, 0.25};
  req.steps = 2000;
  req.threads = 1;
  return req;
}

TEST(Units, MegahertzToAngular) {
  EXPECT_DOUBLE_EQ(mhz_to_rad_per_us(1.0), 2 * kPi);
  EXPECT_EQ(mhz_to_rad_per_us(0.0), 0.0);
}

TEST(OracleWindow, Applicability) {
  EXPECT_TRUE(oracle_applies(Scheme{4, 4}, 0.2, 5.0, 0.1));
  EXPECT_FALSE(oracle_applies(Scheme{4, 4}, 0.2, 2 * kPi * 2, 0.1));  // delta tau = 1.26
  EXPECT_TRUE(oracle_applies(Scheme{0, 0}, -0.5, 0.0, 0.1));
  EXPECT_FALSE(oracle_applies(Scheme{4, 4}, 0.51, 0.0, 0.1));
  EXPECT_FALSE(oracle_applies(Scheme{4, 4}, 0.0, 6.0, 0.1));
  EXPECT_FALSE(oracle_applies(Scheme{2, 4}, 0.0, 0.0, 0.1));
}

TEST(RunGate, IdealAndPerturbed) {
  RunRequest req;
  req.gate = "hadamard";
  req.steps = 4000;
  req.record_stride = 40;
  const RunResult ideal = run_gate(req);
  EXPECT_EQ(ideal.summary.gate, "Hadamard");
  EXPECT_EQ(ideal.summary.stage_count, 2u);
  EXPECT_NEAR(ideal.summary.duration, 0.2, 1e-15);
  EXPECT_GT(ideal.summary.fidelity, 1 - 1e-9);
  ASSERT_TRUE(ideal.summary.fidelity_oracle.has_value());
  EXPECT_NEAR(*ideal.summary.fidelity_oracle, 1.0, 1e-15);
  EXPECT_EQ(ideal.trace.times.size(), 201u);

  // Orange slice: second order dominates, so the oracle should track the simulation.
  req.scheme = Scheme::orange_slice();
  req.compensate = false;
  req.err = {0.02, mhz_to_rad_per_us(0.1)};
  const RunResult pert = run_gate(req);
  EXPECT_LT(pert.summary.fidelity, ideal.summary.fidelity);
  ASSERT_TRUE(pert.summary.fidelity_oracle.has_value());
  EXPECT_NEAR(1 - *pert.summary.fidelity_oracle, 1 - pert.summary.fidelity, 0.05 * (1 - pert.summary.fidelity));

  req.scheme = Scheme{2, 4};
  EXPECT_FALSE(run_gate(req).summary.fidelity_oracle.has_value());
  req.gate = "cz";
  EXPECT_THROW(run_gate(req), CatalogError);
}

TEST(Sweep, OrderingAndCounts) {
  const SweepRequest req = small_grid();
  EXPECT_EQ(req.point_count(), 6u);
  const SweepResult r = sweep(req);
  ASSERT_EQ(r.points.size(), 6u);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      const SweepPoint& p = r.points[i * 2 + j];
      EXPECT_EQ(p.eps, req.eps[i]);
      EXPECT_EQ(p.delta_mhz, req.delta_mhz[j]);
      EXPECT_DOUBLE_EQ(p.delta_rad_per_us, mhz_to_rad_per_us(req.delta_mhz[j]));
      EXPECT_EQ(p.status, PointStatus::Ok);
      EXPECT_GT(p.fidelity_sim, 0.9);
      EXPECT_TRUE(p.fidelity_oracle.has_value());
    }
  }
}

TEST(Sweep, OneDimensionalKinds) {
  SweepRequest req = small_grid();
  req.kind = SweepKind::Epsilon;
  SweepResult r = sweep(req);
  ASSERT_EQ(r.points.size(), 3u);
  for (const auto& p : r.points) EXPECT_EQ(p.delta_mhz, 0.0);
  req.kind = SweepKind::Delta;
  r = sweep(req);
  ASSERT_EQ(r.points.size(), 2u);
  for (const auto& p : r.points) EXPECT_EQ(p.eps, 0.0);
}

TEST(Sweep, ThreadCountDoesNotChangeResults) {
  SweepRequest req = small_grid();
  const SweepResult serial = sweep(req);
  req.threads = 3;
  const SweepResult pooled = sweep(req);
  ASSERT_EQ(serial.points.size(), pooled.points.size());
  for (std::size_t i = 0; i < serial.points.size(); ++i) {
    EXPECT_EQ(serial.points[i].fidelity_sim, pooled.points[i].fidelity_sim);
    EXPECT_EQ(serial.points[i].fidelity_oracle, pooled.points[i].fidelity_oracle);
  }
}

TEST(Sweep, OracleMarkedInapplicableOutsideWindow) {
  SweepRequest req = small_grid();
  req.scheme = Scheme{2, 4};
  for (const auto& p : sweep(req).points) EXPECT_FALSE(p.fidelity_oracle.has_value());
  req.scheme = Scheme{4, 4};
  req.kind = SweepKind::Epsilon;
  req.eps = {0.1, 0.6};
  const SweepResult r = sweep(req);
  EXPECT_TRUE(r.points[0].fidelity_oracle.has_value());
  EXPECT_FALSE(r.points[1].fidelity_oracle.has_value());
}

TEST(Sweep, TailoredCompensatedBeatsOrangeSlice) {
  SweepRequest req = small_grid();
  req.kind = SweepKind::Grid;
  req.eps = {0.1};
  req.delta_mhz = {2.0};
  req.steps = 4000;
  const double tailored = sweep(req).points[0].fidelity_sim;
  req.scheme = Scheme::orange_slice();
  req.compensate = false;
  const double orange = sweep(req).points[0].fidelity_sim;
  EXPECT_GT(tailored, orange);
}

TEST(Sweep, Validation) {
  SweepRequest req = small_grid();
  req.eps = {0.1, 0.0};
  EXPECT_THROW(sweep(req), ConfigError);
  req = small_grid();
  req.eps = {-1.0};
  EXPECT_THROW(req.validate(), ConfigError);
  req = small_grid();
  req.steps = 999;
  EXPECT_THROW(req.validate(), ConfigError);
  req = small_grid();
  req.eps.assign(1001, 0.0);
  for (std::size_t i = 0; i < req.eps.size(); ++i) req.eps[i] = -0.5 + 1e-3 * static_cast<double>(i);
  req.delta_mhz.assign(1001, 0.0);
  for (std::size_t i = 0; i < req.delta_mhz.size(); ++i) req.delta_mhz[i] = static_cast<double>(i);
  EXPECT_THROW(req.validate(), ConfigError);
  req = small_grid();
  req.gate = "nope";
  EXPECT_THROW(req.validate(), CatalogError);
}

TEST(Describe, ListsRequestParameters) {
  const auto meta = describe(small_grid());
  ASSERT_FALSE(meta.empty());
  EXPECT_EQ(meta[0].first, "command");
  EXPECT_EQ(meta[1].second, "S");
}

}  // namespace
}  // namespace nhqc
