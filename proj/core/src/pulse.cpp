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

#include "nhqc/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nhqc/errors.hpp"
#include "nhqc/quadrature.hpp"

namespace nhqc {

namespace {

// Slack for grid times computed as t0 + k*h.
constexpr double kTimeSlack = 1e-12;

double checked_time(double t, double tau, const char* who) {
  if (!(t >= -kTimeSlack * tau && t <= tau * (1 + kTimeSlack))) {
    std::ostringstream os;
    os << who << ": t = " << t << " outside [0, " << tau << "]";
    throw DomainError(os.str());
  }
  return std::clamp(t, 0.0, tau);
}

}  // namespace

void PulseFamily::validate() const {
  if (!(tau > 0) || !std::isfinite(tau)) throw DomainError("PulseFamily: tau must be positive");
}

double alpha_profile(double t, double tau) {
  t = checked_time(t, tau, "alpha_profile");
  const double s = std::sin(kPi * t / tau);
  return kPi * s * s;
}

double beta_profile(double t, const PulseFamily& fam) {
  t = checked_time(t, fam.tau, "beta_profile");
  const double sa = std::sin(alpha_profile(t, fam.tau));
  return t <= fam.tau / 2 ? fam.a * sa + fam.beta1 : fam.b * sa + fam.beta2;
}

AngleSchedule::AngleSchedule(const PulseFamily& family) : family_(family) { family_.validate(); }

AngleSample AngleSchedule::at(double t, Half half) const {
  const double tau = family_.tau;
  t = checked_time(t, tau, "AngleSchedule");
  const double w = kPi / tau;
  const double s = std::sin(w * t);
  const double c = std::cos(w * t);

  AngleSample out;
  out.alpha = kPi * s * s;
  out.alpha_dot = 2 * kPi * w * s * c;
  const double slope = half == Half::First ? family_.a : family_.b;
  const double offset = half == Half::First ? family_.beta1 : family_.beta2;
  const double sa = std::sin(out.alpha);
  const double ca = std::cos(out.alpha);
  out.beta = slope * sa + offset;
  out.beta_dot = slope * ca * out.alpha_dot;
  out.beta_dot_tan_alpha = slope * sa * out.alpha_dot;
  return out;
}

double AngleSchedule::beta_jump() const {
  const double t = tau() / 2;
  return at(t, Half::Second).beta - at(t, Half::First).beta;
}

DriveSample WaveformSegment::at(double t) const {
  const std::size_t n = intervals();
  const double h = spacing();
  const double x = (t - t_begin) / h;
  if (!(x >= -1e-9 && x <= static_cast<double>(n) + 1e-9)) {
    std::ostringstream os;
    os << "waveform: t = " << t << " outside segment [" << t_begin << ", " << t_end << "]";
    throw DomainError(os.str());
  }
  const double xr = std::round(x);
  if (std::abs(x - xr) < 1e-9) {
    const auto k = static_cast<std::size_t>(std::clamp(xr, 0.0, static_cast<double>(n)));
    return {omega[k], xi[k], delta[k]};
  }
  const auto k = std::min(static_cast<std::size_t>(std::floor(x)), n - 1);
  const double f = x - static_cast<double>(k);
  auto lerp = [f, k](const std::vector<double>& v) { return v[k] + f * (v[k + 1] - v[k]); };
  return {lerp(omega), lerp(xi), lerp(delta)};
}

const WaveformSegment& DriveWaveform::segment_at(double t) const {
  if (segments.empty()) throw DomainError("waveform has no segments");
  const double slack = 1e-12 * duration;
  if (t < segments.front().t_begin - slack || t > segments.back().t_end + slack) {
    std::ostringstream os;
    os << "waveform: t = " << t << " outside [0, " << duration << "]";
    throw DomainError(os.str());
  }
  for (const auto& seg : segments) {
    if (t <= seg.t_end + slack) return seg;
  }
  return segments.back();
}

double DriveWaveform::peak_omega() const {
  double peak = 0.0;
  for (const auto& seg : segments) {
    for (double w : seg.omega) peak = std::max(peak, w);
  }
  return peak;
}

std::size_t DriveWaveform::intervals() const {
  std::size_t n = 0;
  for (const auto& seg : segments) n += seg.intervals();
  return n;
}

namespace {

struct Control {
  double omega;
  double beta_minus_xi;
};

// Solves the two tracking constraints for (Omega >= 0, beta - xi).
Control solve_constraints(const AngleSample& s, double detuning) {
  const double x = -s.alpha_dot;
  const double y = -(detuning * std::tan(s.alpha) + s.beta_dot_tan_alpha);
  return {0.5 * std::hypot(x, y), std::atan2(x, y)};
}

}  // namespace

DriveWaveform inverse_engineer(const AngleSchedule& sched, const std::function<double(double)>& detuning,
                               std::size_t intervals, const StageFrame& frame) {
  if (intervals < 1000 || intervals % 2 != 0) {
    throw ConfigError("inverse_engineer: interval count must be even and >= 1000");
  }
  const PulseFamily& fam = sched.family();
  const double tau = fam.tau;
  const double rate_scale = kPi * kPi / tau;  // peak |alpha_dot|
  const double zero_threshold = 1e-9 * rate_scale;
  const double blowup_threshold = 1e8 * rate_scale;

  DriveWaveform wf;
  wf.stage = frame.kind;
  wf.theta = frame.theta;
  wf.phi = frame.phi;
  wf.duration = tau;
  if (!fam.holonomic()) {
    std::ostringstream os;
    os << "a = " << fam.a << " differs from b = " << fam.b << "; the phase is not purely geometric";
    wf.warnings.push_back(os.str());
  }

  const std::size_t per_half = intervals / 2;
  const double h = (tau / 2) / static_cast<double>(per_half);
  for (Half half : {Half::First, Half::Second}) {
    WaveformSegment seg;
    seg.t_begin = half == Half::First ? 0.0 : tau / 2;
    seg.t_end = half == Half::First ? tau / 2 : tau;
    seg.omega.resize(per_half + 1);
    seg.xi.resize(per_half + 1);
    seg.delta.resize(per_half + 1);
    seg.coupling.resize(per_half + 1);

    for (std::size_t k = 0; k <= per_half; ++k) {
      const double t = k == per_half ? seg.t_end : seg.t_begin + static_cast<double>(k) * h;
      const double det = detuning ? detuning(t) : 0.0;
      const AngleSample s = sched.at(t, half);
      Control c = solve_constraints(s, det);
      if (!std::isfinite(c.omega) || c.omega > blowup_threshold) {
        std::ostringstream os;
        os << "inverse_engineer: non-removable singularity at t = " << t;
        throw DesignError(os.str(), t);
      }
      if (c.omega < zero_threshold) {
        // Removable zero: take the phase from the one-sided limit into the segment.
        const double eta = 1e-6 * (seg.t_end - seg.t_begin);
        const double tl = k == per_half ? t - eta : t + eta;
        const double dl = detuning ? detuning(tl) : 0.0;
        c.beta_minus_xi = solve_constraints(sched.at(tl, half), dl).beta_minus_xi;
        if (k == 0 || k == per_half) c.omega = 0.0;
      }
      double xi = s.beta - c.beta_minus_xi;
      if (k > 0) xi -= 2 * kPi * std::round((xi - seg.xi[k - 1]) / (2 * kPi));
      seg.omega[k] = c.omega;
      seg.xi[k] = xi;
      seg.delta[k] = det;
      seg.coupling[k] = std::polar(c.omega, -xi);
    }
    wf.segments.push_back(std::move(seg));
  }
  return wf;
}

DriveWaveform inverse_engineer(const AngleSchedule& sched, std::size_t intervals, const StageFrame& frame) {
  return inverse_engineer(sched, std::function<double(double)>{}, intervals, frame);
}

CompensationStage compensation_stage(const PulseFamily& fam, double theta, double phi) {
  CompensationStage out;
  out.family = fam;
  out.family.beta1 = 0.0;
  out.family.beta2 = 0.0;
  out.theta = kPi - theta;
  out.phi = kPi + phi;
  return out;
}

namespace {

PhaseDecomposition phase_quadrature(const AngleSchedule& sched, std::size_t intervals) {
  const double tau = sched.tau();
  const std::size_t per_half = intervals / 2;
  const double h = (tau / 2) / static_cast<double>(per_half);
  std::vector<double> geo(per_half + 1), dyn(per_half + 1);
  PhaseDecomposition out;
  for (Half half : {Half::First, Half::Second}) {
    const double t0 = half == Half::First ? 0.0 : tau / 2;
    for (std::size_t k = 0; k <= per_half; ++k) {
      const AngleSample s = sched.at(t0 + static_cast<double>(k) * h, half);
      const double sh = std::sin(s.alpha / 2);
      geo[k] = -s.beta_dot * sh * sh;
      dyn[k] = 0.5 * s.beta_dot_tan_alpha * std::sin(s.alpha);
    }
    out.gamma_g += quad::simpson(geo, h);
    out.gamma_d += quad::simpson(dyn, h);
  }
  const double sh = std::sin(sched.at(tau / 2, Half::First).alpha / 2);
  out.gamma_g -= sched.beta_jump() * sh * sh;
  return out;
}

}  // namespace

PhaseDecomposition phase_decomposition(const AngleSchedule& sched, std::size_t intervals) {
  if (intervals < 8 || intervals % 4 != 0) {
    throw ConfigError("phase_decomposition: interval count must be a multiple of 4");
  }
  const PhaseDecomposition fine = phase_quadrature(sched, intervals);
  const PhaseDecomposition coarse = phase_quadrature(sched, intervals / 2);
  const double scale = 1.0 + std::abs(sched.family().a) + std::abs(sched.family().b);
  if (std::abs(fine.gamma_g - coarse.gamma_g) > 1e-8 * scale ||
      std::abs(fine.gamma_d - coarse.gamma_d) > 1e-8 * scale) {
    std::ostringstream os;
    os << "phase_decomposition: quadrature not converged (gamma_g " << fine.gamma_g << " vs " << coarse.gamma_g
       << ", gamma_d " << fine.gamma_d << " vs " << coarse.gamma_d << ")";
    throw NumericalError(os.str());
  }
  return fine;
}

}  // namespace nhqc
