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

#ifndef NHQC_PROPAGATOR_HPP
#define NHQC_PROPAGATOR_HPP

// Fixed-step RK4 integration of i d psi/dt = H(t) psi for the driven Lambda
// system with systematic Rabi (epsilon) and detuning (delta) errors:
//
//   H = (Delta + delta)|e><e| + (1 + epsilon)[Omega_P |0><e| + Omega_S |1><e| + h.c.]
//   Omega_P = Omega sin(theta/2) e^{-i xi},  Omega_S = -Omega cos(theta/2) e^{i phi} e^{-i xi}

#include <cstddef>
#include <memory>
#include <vector>

#include "nhqc/pulse.hpp"
#include "nhqc/qutrit.hpp"

namespace nhqc {

struct ErrorModel {
  double epsilon = 0.0;  // fractional Rabi amplitude error
  double delta = 0.0;    // detuning offset, rad/us

  /// Throws DomainError unless epsilon > -1.
  void validate() const;
};

QutritOperator assemble_hamiltonian(double t, const DriveWaveform& wf, const ErrorModel& err);

/// Ordered stages integrated back to back. Each waveform must carry
/// 2 * steps_per_stage intervals so that RK4 half steps land on samples.
struct SimConfig {
  std::size_t steps_per_stage = 20000;
  std::size_t record_stride = 100;
  std::vector<std::shared_ptr<const DriveWaveform>> stages;

  void validate() const;
  double duration() const;
};

/// Samples each stage's waveform at the resolution `steps_per_stage` needs.
SimConfig make_sim_config(const std::vector<std::pair<AngleSchedule, StageFrame>>& stages,
                          std::size_t steps_per_stage, std::size_t record_stride);

struct TrajectoryTrace {
  std::vector<double> times;
  std::vector<double> p0, p1, pe;
  std::vector<double> fidelity;  // against the final target throughout
  std::vector<Vector3c> states;
  QutritState final_state;
  double max_norm_drift = 0.0;
};

/// Throws IntegratorError if |psi| drifts more than 1e-6 from 1.
TrajectoryTrace evolve(const QutritState& init, const SimConfig& config, const ErrorModel& err,
                       const QutritState& target);

/// Final state only; no trace bookkeeping.
Vector3c propagate(const Vector3c& init, const SimConfig& config, const ErrorModel& err);

/// Integrates all three basis vectors; column k is U|k>.
QutritOperator propagator_matrix(const SimConfig& config, const ErrorModel& err);

struct ConvergenceReport {
  std::size_t steps = 0;
  double fidelity_n = 1.0;
  double fidelity_2n = 1.0;
  double difference = 0.0;
  bool passed = true;
};

/// Re-runs at steps and 2*steps. Passes when the fidelities agree to 1e-9.
ConvergenceReport convergence_probe(const QutritState& init,
                                    const std::vector<std::pair<AngleSchedule, StageFrame>>& stages,
                                    std::size_t steps, const ErrorModel& err, const QutritState& target);

/// Simpson integral of the recorded excited-state population over [t_begin, t_end].
/// The trace must be recorded with a stride giving an even number of samples there.
double integrated_excited_population(const TrajectoryTrace& trace, double t_begin, double t_end);

}  // namespace nhqc

#endif  // NHQC_PROPAGATOR_HPP
