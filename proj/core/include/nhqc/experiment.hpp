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

#ifndef NHQC_EXPERIMENT_HPP
#define NHQC_EXPERIMENT_HPP

// Single gate runs and (epsilon, delta) sweeps. Detuning enters at this
// boundary as a linear frequency in MHz; delta_rad_per_us = 2 pi delta_mhz.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nhqc/catalog.hpp"
#include "nhqc/oracle.hpp"
#include "nhqc/propagator.hpp"

namespace nhqc {

inline constexpr const char* kVersion = "0.1.0";

double mhz_to_rad_per_us(double mhz);

/// The second-order oracle is reported only for holonomic schemes (a == b)
/// inside the perturbative window max(|eps|, |delta| tau) <= this bound.
inline constexpr double kOracleWindow = 0.5;
bool oracle_applies(const Scheme& scheme, double epsilon, double delta_rad, double tau);

struct RunRequest {
  std::string gate = "not";
  Scheme scheme;
  bool compensate = true;
  ErrorModel err;  // delta in rad/us
  double tau = 0.1;
  std::size_t steps = 20000;
  std::size_t record_stride = 100;
};

struct RunSummary {
  std::string gate;
  double duration = 0.0;
  std::size_t stage_count = 0;
  double fidelity = 0.0;  // against the catalog target at the end of the last stage
  double p0 = 0.0, p1 = 0.0, pe = 0.0;
  std::optional<double> fidelity_oracle;
  double peak_omega = 0.0;  // rad/us, over all stages
  double max_norm_drift = 0.0;
};

struct RunResult {
  TrajectoryTrace trace;
  RunSummary summary;
};

/// Throws CatalogError, ConfigError, DesignError, IntegratorError.
RunResult run_gate(const RunRequest& req);

enum class SweepKind { Epsilon, Delta, Grid };
const char* to_string(SweepKind kind);

struct SweepRequest {
  std::string gate = "not";
  Scheme scheme;
  bool compensate = true;
  SweepKind kind = SweepKind::Epsilon;
  std::vector<double> eps;        // used by Epsilon and Grid
  std::vector<double> delta_mhz;  // used by Delta and Grid
  double tau = 0.1;
  std::size_t steps = 20000;
  std::size_t threads = 0;  // 0: hardware concurrency

  /// Axes strictly increasing, grid <= 1e6 points, known gate. Throws ConfigError.
  void validate() const;
  std::size_t point_count() const;
};

enum class PointStatus { Ok, IntegratorFailure, NumericalFailure };
const char* to_string(PointStatus status);

struct SweepPoint {
  double eps = 0.0;
  double delta_mhz = 0.0;
  double delta_rad_per_us = 0.0;
  double fidelity_sim = 0.0;  // NaN unless status is Ok
  std::optional<double> fidelity_oracle;
  PointStatus status = PointStatus::Ok;
  std::string detail;
};

struct SweepResult {
  SweepRequest request;
  std::vector<SweepPoint> points;  // row-major: eps outer, delta inner
  std::vector<std::pair<std::string, std::string>> metadata;
  double elapsed_seconds = 0.0;  // not part of any emitted file
};

/// Runs every point on a bounded worker pool; the result order is fixed by
/// the axes, not by completion order.
SweepResult sweep(const SweepRequest& req);

/// Canonical "key=value" echo of a request (stable across runs).
std::vector<std::pair<std::string, std::string>> describe(const SweepRequest& req);
std::vector<std::pair<std::string, std::string>> describe(const RunRequest& req);

}  // namespace nhqc

#endif  // NHQC_EXPERIMENT_HPP
