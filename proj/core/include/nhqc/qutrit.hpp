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

#ifndef NHQC_QUTRIT_HPP
#define NHQC_QUTRIT_HPP

// Three-level (Lambda) system algebra over the bare basis {|0>, |1>, |e>}.
//
// Units: hbar = 1, time in microseconds, Hamiltonian entries in rad/us.

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace nhqc {

using Complex = std::complex<double>;
using Vector3c = Eigen::Vector3cd;
using QutritOperator = Eigen::Matrix3cd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

enum BareLevel : int { kLevel0 = 0, kLevel1 = 1, kLevelE = 2 };

/// Normalized amplitude vector (c0, c1, ce).
class QutritState {
 public:
  QutritState();  // |0>

  /// Validates |c0|^2 + |c1|^2 + |ce|^2 = 1 within 1e-12.
  QutritState(Complex c0, Complex c1, Complex ce);
  explicit QutritState(const Vector3c& amplitudes);

  /// Wraps a propagated vector without the norm check (integration may drift).
  static QutritState unchecked(const Vector3c& amplitudes);

  Complex c0() const { return amp_[kLevel0]; }
  Complex c1() const { return amp_[kLevel1]; }
  Complex ce() const { return amp_[kLevelE]; }
  const Vector3c& amplitudes() const { return amp_; }
  double norm() const { return amp_.norm(); }

  static QutritState basis(BareLevel level);

 private:
  struct Unchecked {};
  QutritState(const Vector3c& amplitudes, Unchecked) : amp_(amplitudes) {}
  Vector3c amp_;
};

/// Holonomic gate: rotation by gamma about n = (sin t cos p, sin t sin p, cos t).
struct GateSpec {
  double gamma = 0.0;
  double theta = 0.0;
  double phi = 0.0;

  Eigen::Vector3d axis() const;
};

/// cos(theta0)|0> + sin(theta0) e^{i phi0}|1>.
struct InitialState {
  double theta0 = 0.0;
  double phi0 = 0.0;

  QutritState state() const;
};

struct DarkBrightFrame {
  QutritState dark;
  QutritState bright;
  double theta = 0.0;
  double phi = 0.0;
};

/// Amplitudes of a computational-subspace state on the dark/bright pair.
struct FrameAmplitudes {
  Complex dark;
  Complex bright;
};

DarkBrightFrame make_dark_bright(double theta, double phi);

/// |d><d| + e^{i gamma}|b><b| + |e><e|.
QutritOperator target_unitary(const GateSpec& spec);

FrameAmplitudes decompose_initial(const InitialState& init, double theta, double phi);

/// |<target|psi>|^2
double state_fidelity(const QutritState& psi, const QutritState& target);

/// min over global phase of the max-norm of U - e^{i chi} V.
double phase_gauged_distance(const QutritOperator& u, const QutritOperator& v);

/// max |(A - A^dagger)_{ij}|
double hermiticity_defect(const QutritOperator& a);

/// max |(U^dagger U - I)_{ij}|
double unitarity_defect(const QutritOperator& u);

/// Angle reduced to (-pi, pi].
double wrap_angle(double x);

}  // namespace nhqc

#endif  // NHQC_QUTRIT_HPP
