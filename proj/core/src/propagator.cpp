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

#include "nhqc/propagator.hpp"

#include <cmath>
#include <sstream>

#include "nhqc/errors.hpp"
#include "nhqc/quadrature.hpp"

namespace nhqc {

void ErrorModel::validate() const {
  if (!(epsilon > -1.0) || !std::isfinite(epsilon) || !std::isfinite(delta)) {
    throw DomainError("ErrorModel: epsilon must exceed -1 and both errors must be finite");
  }
}

QutritOperator assemble_hamiltonian(double t, const DriveWaveform& wf, const ErrorModel& err) {
  const DriveSample s = wf.at(t);
  const double gain = 1.0 + err.epsilon;
  const Complex drive = std::polar(s.omega, -s.xi);
  const Complex pump = gain * drive * std::sin(wf.theta / 2);
  const Complex stokes = -gain * drive * std::cos(wf.theta / 2) * std::polar(1.0, wf.phi);
  QutritOperator h = QutritOperator::Zero();
  h(kLevelE, kLevelE) = s.delta + err.delta;
  h(kLevel0, kLevelE) = pump;
  h(kLevel1, kLevelE) = stokes;
  h(kLevelE, kLevel0) = std::conj(pump);
  h(kLevelE, kLevel1) = std::conj(stokes);
  return h;
}

void SimConfig::validate() const {
  if (stages.empty()) throw ConfigError("SimConfig: no stages");
  if (steps_per_stage < 1000 || steps_per_stage % 2 != 0) {
    throw ConfigError("SimConfig: steps per stage must be even and >= 1000");
  }
  if (record_stride == 0 || steps_per_stage % record_stride != 0) {
    throw ConfigError("SimConfig: record stride must divide the step count");
  }
  for (const auto& wf : stages) {
    if (!wf || wf->segments.size() != 2 || wf->intervals() != 2 * steps_per_stage) {
      throw ConfigError("SimConfig: each waveform needs two segments sampled at twice the step count");
    }
  }
}

double SimConfig::duration() const {
  double d = 0.0;
  for (const auto& wf : stages) d += wf->duration;
  return d;
}

SimConfig make_sim_config(const std::vector<std::pair<AngleSchedule, StageFrame>>& stages,
                          std::size_t steps_per_stage, std::size_t record_stride) {
  SimConfig cfg;
  cfg.steps_per_stage = steps_per_stage;
  cfg.record_stride = record_stride;
  for (const auto& [sched, frame] : stages) {
    cfg.stages.push_back(std::make_shared<const DriveWaveform>(inverse_engineer(sched, 2 * steps_per_stage, frame)));
  }
  cfg.validate();
  return cfg;
}

namespace {

constexpr double kDriftFailure = 1e-6;

// Sparse action of -i H on psi for one sample of the drive.
struct StageKernel {
  Complex pump_factor;    // sin(theta/2)
  Complex stokes_factor;  // -cos(theta/2) e^{i phi}
  double gain;
  double delta_err;

  Vector3c rhs(const Vector3c& psi, Complex coupling, double detuning) const {
    const Complex p = gain * coupling * pump_factor;
    const Complex s = gain * coupling * stokes_factor;
    const Complex e = psi[kLevelE];
    Vector3c out;
    out[kLevel0] = -kI * (p * e);
    out[kLevel1] = -kI * (s * e);
    out[kLevelE] = -kI * (std::conj(p) * psi[kLevel0] + std::conj(s) * psi[kLevel1] + (detuning + delta_err) * e);
    return out;
  }
};

template <typename Observer>
Vector3c run_stages(Vector3c psi, const SimConfig& cfg, const ErrorModel& err, Observer&& observe) {
  double t_offset = 0.0;
  // Compensated (Kahan) accumulation of the increments keeps the roundoff
  // floor well below the N^-4 truncation error at the default step counts.
  Vector3c carry = Vector3c::Zero();
  const std::size_t per_half = cfg.steps_per_stage / 2;
  for (std::size_t stage = 0; stage < cfg.stages.size(); ++stage) {
    const DriveWaveform& wf = *cfg.stages[stage];
    const StageKernel kernel{std::sin(wf.theta / 2), -std::cos(wf.theta / 2) * std::polar(1.0, wf.phi),
                             1.0 + err.epsilon, err.delta};
    std::size_t step_in_stage = 0;
    for (const WaveformSegment& seg : wf.segments) {
      const double h = (seg.t_end - seg.t_begin) / static_cast<double>(per_half);
      for (std::size_t k = 0; k < per_half; ++k) {
        const std::size_t i = 2 * k;
        const Vector3c k1 = kernel.rhs(psi, seg.coupling[i], seg.delta[i]);
        const Vector3c k2 = kernel.rhs(psi + (0.5 * h) * k1, seg.coupling[i + 1], seg.delta[i + 1]);
        const Vector3c k3 = kernel.rhs(psi + (0.5 * h) * k2, seg.coupling[i + 1], seg.delta[i + 1]);
        const Vector3c k4 = kernel.rhs(psi + h * k3, seg.coupling[i + 2], seg.delta[i + 2]);
        const Vector3c inc = (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4) - carry;
        const Vector3c next = psi + inc;
        carry = (next - psi) - inc;
        psi = next;
        ++step_in_stage;
        const double t = k + 1 == per_half ? seg.t_end : seg.t_begin + static_cast<double>(k + 1) * h;
        observe(stage, step_in_stage, t_offset + t, psi);
      }
    }
    t_offset += wf.duration;
  }
  return psi;
}

void check_drift(double drift, std::size_t steps) {
  if (drift > kDriftFailure) {
    std::ostringstream os;
    os << "RK4 norm drift " << drift << " exceeds " << kDriftFailure << "; retry with " << 2 * steps
       << " steps per stage";
    throw IntegratorError(os.str(), drift, 2 * steps);
  }
}

}  // namespace

TrajectoryTrace evolve(const QutritState& init, const SimConfig& config, const ErrorModel& err,
                       const QutritState& target) {
  config.validate();
  err.validate();
  TrajectoryTrace trace;
  const Vector3c& tg = target.amplitudes();
  auto record = [&](double t, const Vector3c& psi) {
    trace.times.push_back(t);
    trace.p0.push_back(std::norm(psi[kLevel0]));
    trace.p1.push_back(std::norm(psi[kLevel1]));
    trace.pe.push_back(std::norm(psi[kLevelE]));
    trace.fidelity.push_back(std::norm(tg.dot(psi)));
    trace.states.push_back(psi);
  };
  record(0.0, init.amplitudes());
  double drift = 0.0;
  const Vector3c fin =
      run_stages(init.amplitudes(), config, err, [&](std::size_t, std::size_t step, double t, const Vector3c& psi) {
        if (step % config.record_stride == 0) {
          record(t, psi);
          drift = std::max(drift, std::abs(psi.norm() - 1.0));
        }
      });
  drift = std::max(drift, std::abs(fin.norm() - 1.0));
  check_drift(drift, config.steps_per_stage);
  trace.final_state = QutritState::unchecked(fin);
  trace.max_norm_drift = drift;
  return trace;
}

Vector3c propagate(const Vector3c& init, const SimConfig& config, const ErrorModel& err) {
  config.validate();
  err.validate();
  const Vector3c fin = run_stages(init, config, err, [](std::size_t, std::size_t, double, const Vector3c&) {});
  check_drift(std::abs(fin.norm() - init.norm()), config.steps_per_stage);
  return fin;
}

QutritOperator propagator_matrix(const SimConfig& config, const ErrorModel& err) {
  QutritOperator u;
  for (int k = 0; k < 3; ++k) u.col(k) = propagate(Vector3c::Unit(k), config, err);
  return u;
}

ConvergenceReport convergence_probe(const QutritState& init,
                                    const std::vector<std::pair<AngleSchedule, StageFrame>>& stages,
                                    std::size_t steps, const ErrorModel& err, const QutritState& target) {
  ConvergenceReport rep;
  rep.steps = steps;
  if (stages.empty()) return rep;
  auto fidelity_at = [&](std::size_t n) {
    const SimConfig cfg = make_sim_config(stages, n, n);
    return std::norm(target.amplitudes().dot(propagate(init.amplitudes(), cfg, err)));
  };
  rep.fidelity_n = fidelity_at(steps);
  rep.fidelity_2n = fidelity_at(2 * steps);
  rep.difference = std::abs(rep.fidelity_n - rep.fidelity_2n);
  rep.passed = rep.difference < 1e-9;
  return rep;
}

double integrated_excited_population(const TrajectoryTrace& trace, double t_begin, double t_end) {
  std::vector<double> pe;
  const double slack = 1e-12 * (1.0 + std::abs(t_end));
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    if (trace.times[i] >= t_begin - slack && trace.times[i] <= t_end + slack) pe.push_back(trace.pe[i]);
  }
  if (pe.size() < 3) throw ConfigError("integrated_excited_population: too few samples in range");
  const double h = (t_end - t_begin) / static_cast<double>(pe.size() - 1);
  return quad::simpson(pe, h);
}

}  // namespace nhqc
