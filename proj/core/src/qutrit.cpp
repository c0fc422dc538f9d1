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

#include "nhqc/qutrit.hpp"

#include <cmath>
#include <sstream>

#include "nhqc/errors.hpp"

namespace nhqc {

namespace {
constexpr double kNormTolerance = 1e-12;
}  // namespace

QutritState::QutritState() : amp_(Vector3c::Unit(kLevel0)) {}

QutritState::QutritState(Complex c0, Complex c1, Complex ce) : QutritState(Vector3c(c0, c1, ce)) {}

QutritState::QutritState(const Vector3c& amplitudes) : amp_(amplitudes) {
  const double n2 = amp_.squaredNorm();
  if (!(std::abs(n2 - 1.0) <= kNormTolerance)) {
    std::ostringstream os;
    os << "QutritState: squared norm " << n2 << " differs from 1";
    throw DomainError(os.str());
  }
}

QutritState QutritState::unchecked(const Vector3c& amplitudes) { return {amplitudes, Unchecked{}}; }

QutritState QutritState::basis(BareLevel level) { return unchecked(Vector3c::Unit(level)); }

Eigen::Vector3d GateSpec::axis() const {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

QutritState InitialState::state() const {
  return QutritState(std::cos(theta0), std::sin(theta0) * std::polar(1.0, phi0), 0.0);
}

DarkBrightFrame make_dark_bright(double theta, double phi) {
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  const Complex ph = std::polar(1.0, phi);
  DarkBrightFrame f;
  f.dark = QutritState::unchecked(Vector3c(c, s * ph, 0.0));
  f.bright = QutritState::unchecked(Vector3c(s, -c * ph, 0.0));
  f.theta = theta;
  f.phi = phi;
  return f;
}

QutritOperator target_unitary(const GateSpec& spec) {
  const auto f = make_dark_bright(spec.theta, spec.phi);
  const Vector3c& d = f.dark.amplitudes();
  const Vector3c& b = f.bright.amplitudes();
  const Vector3c e = Vector3c::Unit(kLevelE);
  return d * d.adjoint() + std::polar(1.0, spec.gamma) * b * b.adjoint() + e * e.adjoint();
}

FrameAmplitudes decompose_initial(const InitialState& init, double theta, double phi) {
  const double c0 = std::cos(init.theta0);
  const double s0 = std::sin(init.theta0);
  const double ch = std::cos(theta / 2);
  const double sh = std::sin(theta / 2);
  const Complex rel = std::polar(1.0, init.phi0 - phi);
  return {c0 * ch + s0 * sh * rel, c0 * sh - s0 * ch * rel};
}

double state_fidelity(const QutritState& psi, const QutritState& target) {
  return std::norm(target.amplitudes().dot(psi.amplitudes()));
}

double phase_gauged_distance(const QutritOperator& u, const QutritOperator& v) {
  // Phase that best aligns V with U in the Frobenius sense.
  const Complex overlap = (v.adjoint() * u).trace();
  const Complex gauge = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Complex{1.0};
  return (u - gauge * v).cwiseAbs().maxCoeff();
}

double hermiticity_defect(const QutritOperator& a) { return (a - a.adjoint()).cwiseAbs().maxCoeff(); }

double unitarity_defect(const QutritOperator& u) {
  return (u.adjoint() * u - QutritOperator::Identity()).cwiseAbs().maxCoeff();
}

double wrap_angle(double x) {
  double r = std::remainder(x, 2 * kPi);
  if (r <= -kPi) r += 2 * kPi;
  return r;
}

}  // namespace nhqc
