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

#ifndef NHQC_PULSE_HPP
#define NHQC_PULSE_HPP

// Bloch-angle schedules on the {|b>, |e>} sphere and the drive waveforms that
// realize them.
//
// The state |chi+(t)> = cos(alpha/2)|b> + sin(alpha/2) e^{i beta}|e> is kept on
// its prescribed path by a drive Omega(t) e^{-i xi(t)} |b><e| + h.c. with
//
//   2 Omega sin(beta - xi) = -alpha_dot
//   2 Omega cos(beta - xi) = -(Delta + beta_dot) tan(alpha)
//
// and Omega >= 0.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "nhqc/qutrit.hpp"

namespace nhqc {

enum class AlphaShape { SinSquared };

enum class StageKind { Gate, Compensation };

/// Which branch of the piecewise beta(t) is in force. tau/2 belongs to First.
enum class Half { First, Second };

/// beta(t) = a sin(alpha) + beta1 on [0, tau/2], b sin(alpha) + beta2 on (tau/2, tau].
/// a == b gives a purely geometric phase beta1 - beta2; a = b = 0 is the
/// piecewise-constant orange-slice path.
struct PulseFamily {
  AlphaShape shape = AlphaShape::SinSquared;
  double a = 4.0;
  double b = 4.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  double tau = 0.1;

  /// Throws DomainError unless tau > 0.
  void validate() const;
  bool holonomic() const { return a == b; }
};

/// pi sin^2(pi t / tau), t in [0, tau].
double alpha_profile(double t, double tau);
double beta_profile(double t, const PulseFamily& fam);

struct AngleSample {
  double alpha = 0.0;
  double alpha_dot = 0.0;
  double beta = 0.0;
  double beta_dot = 0.0;
  /// beta_dot * tan(alpha) in closed form (the pole at alpha = pi/2 cancels).
  double beta_dot_tan_alpha = 0.0;
};

class AngleSchedule {
 public:
  explicit AngleSchedule(const PulseFamily& family);

  const PulseFamily& family() const { return family_; }
  double tau() const { return family_.tau; }

  AngleSample at(double t, Half half) const;
  AngleSample at(double t) const { return at(t, half_of(t)); }
  Half half_of(double t) const { return t <= tau() / 2 ? Half::First : Half::Second; }

  std::vector<double> discontinuities() const { return {tau() / 2}; }
  /// beta(tau/2+) - beta(tau/2-)
  double beta_jump() const;

 private:
  PulseFamily family_;
};

struct DriveSample {
  double omega = 0.0;
  double xi = 0.0;
  double delta = 0.0;
};

/// Uniformly sampled controls on one continuous piece of a stage.
struct WaveformSegment {
  double t_begin = 0.0;
  double t_end = 0.0;
  std::vector<double> omega;
  std::vector<double> xi;  // unwrapped along the segment
  std::vector<double> delta;
  std::vector<Complex> coupling;  // omega * e^{-i xi}

  std::size_t intervals() const { return omega.empty() ? 0 : omega.size() - 1; }
  double spacing() const { return (t_end - t_begin) / static_cast<double>(intervals()); }
  /// Linear interpolation of omega, xi, delta. t must lie in [t_begin, t_end].
  DriveSample at(double t) const;
};

struct DriveWaveform {
  StageKind stage = StageKind::Gate;
  double theta = 0.0;  // dark/bright frame in force
  double phi = 0.0;
  double duration = 0.0;
  std::vector<WaveformSegment> segments;  // split at each beta discontinuity
  std::vector<std::string> warnings;

  /// Segment whose closure contains t; a shared boundary resolves to the earlier one.
  const WaveformSegment& segment_at(double t) const;
  DriveSample at(double t) const { return segment_at(t).at(t); }
  double peak_omega() const;
  std::size_t intervals() const;
};

struct StageFrame {
  StageKind kind = StageKind::Gate;
  double theta = 0.0;
  double phi = 0.0;
};

/// Samples the controls on a uniform grid of `intervals` steps (even, >= 1000).
/// Removable zeros of Omega take the drive phase from the one-sided limit.
/// Throws DesignError at a non-removable singularity.
DriveWaveform inverse_engineer(const AngleSchedule& sched, const std::function<double(double)>& detuning,
                               std::size_t intervals, const StageFrame& frame = {});

/// Resonant shortcut (Delta = 0).
DriveWaveform inverse_engineer(const AngleSchedule& sched, std::size_t intervals, const StageFrame& frame = {});

struct CompensationStage {
  PulseFamily family;
  double theta = 0.0;
  double phi = 0.0;
};

/// Dark/bright-swapped frame (pi - theta, pi + phi) running the same a, b with
/// beta1 = beta2 = 0, i.e. a zero-holonomy stage.
CompensationStage compensation_stage(const PulseFamily& fam, double theta, double phi);

struct PhaseDecomposition {
  double gamma_g = 0.0;
  double gamma_d = 0.0;
};

/// Geometric phase -int beta_dot sin^2(alpha/2) dt (including the jump at tau/2)
/// and resonant dynamical phase 1/2 int beta_dot sin^2(alpha)/cos(alpha) dt of |chi+>.
/// Throws NumericalError if the quadrature does not settle under grid halving.
PhaseDecomposition phase_decomposition(const AngleSchedule& sched, std::size_t intervals = 20000);

}  // namespace nhqc

#endif  // NHQC_PULSE_HPP
