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

#ifndef NHQC_ORACLE_HPP
#define NHQC_ORACLE_HPP

// Second-order (in epsilon, delta) fidelity of the holonomic gates, computed
// without time stepping. The ideal evolution is written in closed form through
// |chi+-(t)> and their accumulated phases,
//
//   U0(t) = |d><d| + e^{i phi+(t)}|chi+(t)><chi+(0)| + e^{i phi-(t)}|chi-(t)><chi-(0)|,
//
// and the perturbation H' = delta|e><e| + epsilon (Omega e^{-i xi}|b><e| + h.c.)
// enters only through quadratures over the stage grid.
//
// Two routes are provided: closed-form error integrals (O12, O13, W, Q, I12)
// with the fidelity formulas built on them, and a brute-force error-picture
// generator M = int U0^dagger H' U0 dt with 1 - P = <M^2> - <M>^2. Each checks
// the other.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nhqc/catalog.hpp"
#include "nhqc/propagator.hpp"
#include "nhqc/pulse.hpp"
#include "nhqc/qutrit.hpp"

namespace nhqc {

struct PhaseSegment {
  double t_begin = 0.0;
  double t_end = 0.0;
  std::vector<double> plus;
  std::vector<double> minus;

  double spacing() const { return (t_end - t_begin) / static_cast<double>(plus.size() - 1); }
};

/// phi+-(t) = int_0^t [i<chi+-|d chi+-> - <chi+-|H0|chi+->] on the waveform grid.
/// The beta jump at tau/2 is folded into the second segment's starting value.
struct PhaseTrack {
  StageKind stage = StageKind::Gate;
  std::vector<PhaseSegment> segments;

  double plus_end() const { return segments.back().plus.back(); }
  double minus_end() const { return segments.back().minus.back(); }
};

/// Throws ConfigError if the waveform was not generated for this schedule.
PhaseTrack accumulated_phases(const AngleSchedule& sched, const DriveWaveform& wf);

struct ErrorIntegrals {
  Complex O12_delta;     // int e^{-i(phi+ - phi-)} sin(alpha) dt
  Complex O12_eps;       // -int e^{-i(phi+ - phi-)} [beta_dot sin(alpha) + i alpha_dot] dt
  double O13_delta = 0;  // int sin^2(alpha/2) dt
  double O13_eps = 0;    // 1/2 int beta_dot sin(alpha) tan(alpha) dt
  Complex W;             // int_0^{tau/2} e^{-i 2n alpha} sin(alpha) dt
  double Q = 0;          // int_0^{tau/2} sin(alpha) dt
  Complex I12;           // gate-stage O12_delta
  std::optional<Complex> I12_tilde;        // same integral over the compensation stage
  std::optional<double> O13_delta_tilde;   // int sin^2(alpha/2) over the compensation stage
  double phase_minus_end = 0;  // phi-(tau) of the gate stage
  double beta_start = 0;       // beta(0)
  double beta_end = 0;         // beta(tau)
  int n_half = 0;
};

ErrorIntegrals error_integrals(const AngleSchedule& sched, const PhaseTrack& phases, int n_half);

/// Adds the compensation-stage integrals (I12_tilde, O13_delta_tilde).
ErrorIntegrals error_integrals(const AngleSchedule& sched, const PhaseTrack& phases, int n_half,
                               const AngleSchedule& comp_sched, const PhaseTrack& comp_phases);

struct FidelityTerm {
  std::string name;
  double value = 0.0;
};

struct AnalyticFidelity {
  double P = 1.0;
  /// Specialization for alpha symmetric about tau/2 and a = b = 2n (detuning only).
  double P_symmetric = 1.0;
  std::vector<FidelityTerm> breakdown;  // sums to 1 - P
};

/// P(tau) = 1 - [1/4 |c_b (delta O12d + eps O12e)|^2 + |c_d c_b (delta O13d - eps O13e)|^2].
AnalyticFidelity analytic_fidelity_gate(Complex c_d, Complex c_b, const ErrorIntegrals& ints,
                                        const ErrorModel& err, double gamma);

/// Detuning-only P(2 tau) with the compensation stage. The dephasing (13) terms
/// of the two stages cancel; the excited-state leakage amplitudes add coherently:
///   1 - P = delta^2/4 |c_b e^{i beta(0)} conj(I12) + c_d e^{-i Phi} conj(I12~)|^2,
///   Phi = phi-(tau) + beta(tau) - beta(0).
/// Requires ints.I12_tilde.
AnalyticFidelity analytic_fidelity_cp(Complex c_d, Complex c_b, const ErrorIntegrals& ints, double delta,
                                      double gamma);

/// Perturbation matrix elements in the second-order basis at local stage time t.
struct MatrixElements {
  Complex H12;
  Complex H13;
};

struct StageContext {
  const AngleSchedule* sched = nullptr;
  const DriveWaveform* wf = nullptr;
  const PhaseTrack* phases = nullptr;
};

/// Gate stage: H'_12, H'_13 with basis |psi_2> ~ (c_b/|c_b|)|e>, |psi_3> ~ -c_b*|d> + c_d*|b>.
/// Compensation stage (`gate_stage` given): H~'_12, H~'_13 with |psi~_2> ~ (c_d/|c_d|)|e>.
MatrixElements matrix_elements(double t, const StageContext& stage, Complex c_d, Complex c_b,
                               const ErrorModel& err, const StageContext* gate_stage = nullptr);

/// Error-picture generators over a full stage plan.
class SecondOrderOracle {
 public:
  /// `intervals` is the quadrature grid per stage (even, >= 1000).
  SecondOrderOracle(const StagePlan& plan, std::size_t intervals);

  /// Var_psi(M) for M = delta M_delta + epsilon M_eps.
  double infidelity(const QutritState& initial, const ErrorModel& err) const;
  double fidelity(const QutritState& initial, const ErrorModel& err) const { return 1.0 - infidelity(initial, err); }

  const QutritOperator& detuning_generator() const { return m_delta_; }
  const QutritOperator& rabi_generator() const { return m_eps_; }

  /// Closed-form ideal propagator U0 over the whole plan.
  const QutritOperator& ideal_propagator() const { return u_final_; }
  /// Ideal propagator from 0 to local time t of stage `stage`.
  QutritOperator ideal_propagator(std::size_t stage, double t) const;

  std::size_t stage_count() const { return stages_.size(); }
  StageContext stage(std::size_t i) const;

 private:
  struct Stage {
    std::shared_ptr<AngleSchedule> sched;
    std::shared_ptr<DriveWaveform> wf;
    PhaseTrack phases;
    QutritOperator u_before;  // ideal propagator up to the stage start
  };
  QutritOperator stage_propagator(const Stage& s, double t, Half half, std::size_t k_in_segment) const;

  std::vector<Stage> stages_;
  QutritOperator m_delta_ = QutritOperator::Zero();
  QutritOperator m_eps_ = QutritOperator::Zero();
  QutritOperator u_final_ = QutritOperator::Identity();
};

enum class ErrorKind { Rabi, Detuning };

/// f such that 1 - P = error^2 f at second order (units us^2 for detuning, 1 for Rabi).
/// Gate stage only or with the compensation stage; computed from the error
/// integrals (Rabi with compensation falls back to the generator route).
double table_coefficient(const GateCatalogEntry& gate, const Scheme& scheme, bool compensate, ErrorKind kind,
                         double tau = 1.0, std::size_t intervals = 20000);

}  // namespace nhqc

#endif  // NHQC_ORACLE_HPP
