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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nhqc/errors.hpp"
#include "nhqc/quadrature.hpp"

namespace nhqc {

namespace {

Half half_of_index(std::size_t i) { return i == 0 ? Half::First : Half::Second; }

double node_time(const WaveformSegment& seg, std::size_t k) {
  return k == seg.intervals() ? seg.t_end : seg.t_begin + static_cast<double>(k) * seg.spacing();
}

void check_consistent(const AngleSchedule& sched, const DriveWaveform& wf) {
  const double tau = sched.tau();
  const double tol = 1e-12 * tau;
  if (std::abs(wf.duration - tau) > tol || wf.segments.size() != 2 ||
      std::abs(wf.segments[0].t_end - tau / 2) > tol || std::abs(wf.segments[1].t_begin - tau / 2) > tol ||
      wf.segments[0].intervals() < 2 || wf.segments[1].intervals() < 2) {
    throw ConfigError("schedule and waveform grids are inconsistent");
  }
}

struct PhasePair {
  double plus;
  double minus;
};

PhasePair phase_at(const PhaseTrack& track, double t, Half half) {
  const PhaseSegment& seg = track.segments.at(half == Half::First ? 0 : 1);
  const std::size_t n = seg.plus.size() - 1;
  const double x = std::clamp((t - seg.t_begin) / seg.spacing(), 0.0, static_cast<double>(n));
  const double xr = std::round(x);
  if (std::abs(x - xr) < 1e-9) {
    const auto k = static_cast<std::size_t>(xr);
    return {seg.plus[k], seg.minus[k]};
  }
  const auto k = std::min(static_cast<std::size_t>(std::floor(x)), n - 1);
  const double f = x - static_cast<double>(k);
  return {seg.plus[k] + f * (seg.plus[k + 1] - seg.plus[k]), seg.minus[k] + f * (seg.minus[k + 1] - seg.minus[k])};
}

// <chi+|H0|chi+> drive part: Omega sin(alpha) cos(beta - xi).
double drive_expectation(const AngleSample& s, const DriveSample& d) {
  return d.omega * std::sin(s.alpha) * std::cos(s.beta - d.xi);
}

}  // namespace

PhaseTrack accumulated_phases(const AngleSchedule& sched, const DriveWaveform& wf) {
  check_consistent(sched, wf);
  PhaseTrack track;
  track.stage = wf.stage;
  double plus0 = 0.0;
  double minus0 = 0.0;
  for (std::size_t si = 0; si < wf.segments.size(); ++si) {
    const WaveformSegment& seg = wf.segments[si];
    const Half half = half_of_index(si);
    const std::size_t n = seg.intervals();
    std::vector<double> fp(n + 1), fm(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
      const AngleSample s = sched.at(node_time(seg, k), half);
      const DriveSample d{seg.omega[k], seg.xi[k], seg.delta[k]};
      const double sh2 = std::pow(std::sin(s.alpha / 2), 2);
      const double ch2 = 1.0 - sh2;
      const double drive = drive_expectation(s, d);
      fp[k] = -s.beta_dot * sh2 - (d.delta * sh2 + drive);
      fm[k] = -s.beta_dot * ch2 - (d.delta * ch2 - drive);
    }
    if (si == 1) {
      // |chi+> picks up e^{i jump} at alpha(tau/2); the physical state is continuous.
      const double jump = sched.beta_jump();
      const double sh2 = std::pow(std::sin(sched.at(sched.tau() / 2, Half::First).alpha / 2), 2);
      plus0 -= jump * sh2;
      minus0 -= jump * (1.0 - sh2);
    }
    PhaseSegment ps;
    ps.t_begin = seg.t_begin;
    ps.t_end = seg.t_end;
    ps.plus = quad::cumulative(fp, seg.spacing());
    ps.minus = quad::cumulative(fm, seg.spacing());
    for (double& v : ps.plus) v += plus0;
    for (double& v : ps.minus) v += minus0;
    plus0 = ps.plus.back();
    minus0 = ps.minus.back();
    track.segments.push_back(std::move(ps));
  }
  return track;
}

namespace {

struct StageIntegrals {
  Complex O12_delta;
  Complex O12_eps;
  double O13_delta = 0;
  double O13_eps = 0;
  Complex W;
  double Q = 0;
};

StageIntegrals stage_integrals(const AngleSchedule& sched, const PhaseTrack& phases, int n_half) {
  if (phases.segments.size() != 2) throw ConfigError("phase track must have two segments");
  StageIntegrals out;
  for (std::size_t si = 0; si < 2; ++si) {
    const PhaseSegment& ps = phases.segments[si];
    const Half half = half_of_index(si);
    const std::size_t n = ps.plus.size() - 1;
    const double h = ps.spacing();
    std::vector<Complex> g12d(n + 1), g12e(n + 1), gw(n + 1);
    std::vector<double> g13d(n + 1), g13e(n + 1), gq(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
      const double t = k == n ? ps.t_end : ps.t_begin + static_cast<double>(k) * h;
      const AngleSample s = sched.at(t, half);
      const double sa = std::sin(s.alpha);
      const Complex rot = std::polar(1.0, -(ps.plus[k] - ps.minus[k]));
      g12d[k] = rot * sa;
      g12e[k] = -rot * Complex(s.beta_dot * sa, s.alpha_dot);
      g13d[k] = std::pow(std::sin(s.alpha / 2), 2);
      g13e[k] = 0.5 * s.beta_dot_tan_alpha * sa;
      gw[k] = std::polar(1.0, -2.0 * n_half * s.alpha) * sa;
      gq[k] = sa;
    }
    out.O12_delta += quad::simpson(g12d, h);
    out.O12_eps += quad::simpson(g12e, h);
    out.O13_delta += quad::simpson(g13d, h);
    out.O13_eps += quad::simpson(g13e, h);
    if (si == 0) {
      out.W = quad::simpson(gw, h);
      out.Q = quad::simpson(gq, h);
    }
  }
  return out;
}

}  // namespace

ErrorIntegrals error_integrals(const AngleSchedule& sched, const PhaseTrack& phases, int n_half) {
  const StageIntegrals s = stage_integrals(sched, phases, n_half);
  ErrorIntegrals out;
  out.O12_delta = s.O12_delta;
  out.O12_eps = s.O12_eps;
  out.O13_delta = s.O13_delta;
  out.O13_eps = s.O13_eps;
  out.W = s.W;
  out.Q = s.Q;
  out.I12 = s.O12_delta;
  out.phase_minus_end = phases.minus_end();
  out.beta_start = sched.at(0.0, Half::First).beta;
  out.beta_end = sched.at(sched.tau(), Half::Second).beta;
  out.n_half = n_half;
  return out;
}

ErrorIntegrals error_integrals(const AngleSchedule& sched, const PhaseTrack& phases, int n_half,
                               const AngleSchedule& comp_sched, const PhaseTrack& comp_phases) {
  ErrorIntegrals out = error_integrals(sched, phases, n_half);
  const StageIntegrals c = stage_integrals(comp_sched, comp_phases, n_half);
  out.I12_tilde = c.O12_delta;
  out.O13_delta_tilde = c.O13_delta;
  return out;
}

AnalyticFidelity analytic_fidelity_gate(Complex c_d, Complex c_b, const ErrorIntegrals& ints,
                                        const ErrorModel& err, double gamma) {
  const double d = err.delta;
  const double e = err.epsilon;
  AnalyticFidelity out;
  const double leak = 0.25 * std::norm(c_b * (d * ints.O12_delta + e * ints.O12_eps));
  const double dephase = std::norm(c_d * c_b * (d * ints.O13_delta - e * ints.O13_eps));
  out.breakdown = {{"leakage_12", leak}, {"dephasing_13", dephase}};
  out.P = 1.0 - leak - dephase;
  out.P_symmetric = 1.0 - d * d * std::norm(c_b) *
                              (0.5 * std::norm(ints.W) * (1.0 + std::cos(gamma)) +
                               std::norm(c_d) * ints.O13_delta * ints.O13_delta);
  return out;
}

AnalyticFidelity analytic_fidelity_cp(Complex c_d, Complex c_b, const ErrorIntegrals& ints, double delta,
                                      double gamma) {
  if (!ints.I12_tilde || !ints.O13_delta_tilde) {
    throw ConfigError("analytic_fidelity_cp: compensation-stage integrals missing");
  }
  const double excited_phase = ints.phase_minus_end + ints.beta_end - ints.beta_start;
  const Complex amp = 0.5 * delta *
                      (c_b * std::polar(1.0, ints.beta_start) * std::conj(ints.I12) +
                       c_d * std::polar(1.0, -excited_phase) * std::conj(*ints.I12_tilde));
  const double leak = std::norm(amp);
  const double dephase = std::norm(c_d * c_b * delta * (ints.O13_delta - *ints.O13_delta_tilde));
  AnalyticFidelity out;
  out.breakdown = {{"leakage_12", leak}, {"dephasing_13", dephase}};
  out.P = 1.0 - leak - dephase;
  const Complex turn = std::polar(1.0, gamma);
  out.P_symmetric = 1.0 - delta * delta * std::norm(ints.W) * std::norm(0.5 * c_b * (1.0 + turn) + c_d * turn);
  return out;
}

MatrixElements matrix_elements(double t, const StageContext& stage, Complex c_d, Complex c_b,
                               const ErrorModel& err, const StageContext* gate_stage) {
  const AngleSchedule& sched = *stage.sched;
  const Half half = sched.half_of(t);
  const AngleSample s = sched.at(t, half);
  const DriveSample d = stage.wf->segments.at(half == Half::First ? 0 : 1).at(t);
  const PhasePair ph = phase_at(*stage.phases, t, half);

  const double sh2 = std::pow(std::sin(s.alpha / 2), 2);
  const double ch2 = 1.0 - sh2;
  const Complex tilt = std::polar(1.0, s.beta - d.xi);
  const Complex core = 0.5 * err.delta * std::sin(s.alpha) +
                       err.epsilon * d.omega * (ch2 * tilt - sh2 * std::conj(tilt));
  const Complex diag = err.delta * sh2 + err.epsilon * drive_expectation(s, d);
  const Complex rot = std::polar(1.0, -(ph.plus - ph.minus));
  const double beta0 = sched.at(0.0, Half::First).beta;

  MatrixElements out;
  if (gate_stage == nullptr) {
    out.H12 = std::abs(c_b) * std::polar(1.0, -beta0) * rot * core;
    out.H13 = std::conj(c_b) * std::conj(c_d) * diag;
  } else {
    const AngleSchedule& g = *gate_stage->sched;
    const double excited_phase = gate_stage->phases->minus_end() + g.at(g.tau(), Half::Second).beta -
                                 g.at(0.0, Half::First).beta;
    out.H12 = std::abs(c_d) * std::polar(1.0, excited_phase - beta0) * rot * core;
    out.H13 = -std::conj(c_d) * std::conj(c_b) * diag;
  }
  return out;
}

SecondOrderOracle::SecondOrderOracle(const StagePlan& plan, std::size_t intervals) {
  if (plan.empty()) throw ConfigError("SecondOrderOracle: empty stage plan");
  QutritOperator u_before = QutritOperator::Identity();
  const Vector3c e = Vector3c::Unit(kLevelE);
  for (const auto& [sched, frame] : plan) {
    Stage st;
    st.sched = std::make_shared<AngleSchedule>(sched);
    st.wf = std::make_shared<DriveWaveform>(inverse_engineer(sched, intervals, frame));
    st.phases = accumulated_phases(sched, *st.wf);
    st.u_before = u_before;

    const Vector3c b = make_dark_bright(frame.theta, frame.phi).bright.amplitudes();
    const QutritOperator proj_e = e * e.adjoint();
    const QutritOperator b_e = b * e.adjoint();
    for (std::size_t si = 0; si < st.wf->segments.size(); ++si) {
      const WaveformSegment& seg = st.wf->segments[si];
      const std::size_t n = seg.intervals();
      const std::vector<double> w = quad::simpson_weights(n, seg.spacing());
      for (std::size_t k = 0; k <= n; ++k) {
        const QutritOperator u = stage_propagator(st, node_time(seg, k), half_of_index(si), k) * u_before;
        const QutritOperator coupling = seg.coupling[k] * b_e;
        m_delta_ += w[k] * (u.adjoint() * proj_e * u);
        m_eps_ += w[k] * (u.adjoint() * (coupling + coupling.adjoint()) * u);
      }
    }
    const std::size_t n_last = st.wf->segments.back().intervals();
    u_before = stage_propagator(st, st.sched->tau(), Half::Second, n_last) * u_before;
    stages_.push_back(std::move(st));
  }
  u_final_ = u_before;
}

QutritOperator SecondOrderOracle::stage_propagator(const Stage& s, double t, Half half, std::size_t k) const {
  const PhaseSegment& ps = s.phases.segments[half == Half::First ? 0 : 1];
  const DarkBrightFrame f = make_dark_bright(s.wf->theta, s.wf->phi);
  const Vector3c& dv = f.dark.amplitudes();
  const Vector3c& bv = f.bright.amplitudes();
  const Vector3c ev = Vector3c::Unit(kLevelE);
  auto chi = [&](const AngleSample& a) {
    const double c = std::cos(a.alpha / 2);
    const double sn = std::sin(a.alpha / 2);
    const Complex ph = std::polar(1.0, a.beta);
    return std::pair<Vector3c, Vector3c>{c * bv + sn * ph * ev, sn * bv - c * ph * ev};
  };
  const auto [plus_t, minus_t] = chi(s.sched->at(t, half));
  const auto [plus_0, minus_0] = chi(s.sched->at(0.0, Half::First));
  return dv * dv.adjoint() + std::polar(1.0, ps.plus[k]) * plus_t * plus_0.adjoint() +
         std::polar(1.0, ps.minus[k]) * minus_t * minus_0.adjoint();
}

QutritOperator SecondOrderOracle::ideal_propagator(std::size_t stage, double t) const {
  const Stage& s = stages_.at(stage);
  const Half half = s.sched->half_of(t);
  const PhaseSegment& ps = s.phases.segments[half == Half::First ? 0 : 1];
  const double x = (t - ps.t_begin) / ps.spacing();
  const double xr = std::round(x);
  if (std::abs(x - xr) > 1e-9 || xr < 0 || xr > static_cast<double>(ps.plus.size() - 1)) {
    throw DomainError("ideal_propagator: t must lie on the quadrature grid");
  }
  return stage_propagator(s, t, half, static_cast<std::size_t>(xr)) * s.u_before;
}

StageContext SecondOrderOracle::stage(std::size_t i) const {
  const Stage& s = stages_.at(i);
  return {s.sched.get(), s.wf.get(), &s.phases};
}

double SecondOrderOracle::infidelity(const QutritState& initial, const ErrorModel& err) const {
  const QutritOperator m = err.delta * m_delta_ + err.epsilon * m_eps_;
  const Vector3c& psi = initial.amplitudes();
  const Vector3c mpsi = m * psi;
  const Complex mean = psi.dot(mpsi);
  return mpsi.squaredNorm() - std::norm(mean);
}

double table_coefficient(const GateCatalogEntry& gate, const Scheme& scheme, bool compensate, ErrorKind kind,
                         double tau, std::size_t intervals) {
  const StagePlan plan = plan_stages(gate.spec, scheme, compensate, tau);
  if (kind == ErrorKind::Rabi && compensate) {
    const SecondOrderOracle oracle(plan, intervals);
    return oracle.infidelity(gate.initial.state(), {1.0, 0.0});
  }
  const auto [c_d, c_b] = decompose_initial(gate.initial, gate.spec.theta, gate.spec.phi);
  const int n_half = static_cast<int>(std::lround(scheme.a / 2));
  const DriveWaveform wf = inverse_engineer(plan[0].first, intervals, plan[0].second);
  const PhaseTrack phases = accumulated_phases(plan[0].first, wf);
  if (!compensate) {
    const ErrorIntegrals ints = error_integrals(plan[0].first, phases, n_half);
    const ErrorModel unit = kind == ErrorKind::Rabi ? ErrorModel{1.0, 0.0} : ErrorModel{0.0, 1.0};
    return 1.0 - analytic_fidelity_gate(c_d, c_b, ints, unit, gate.spec.gamma).P;
  }
  const DriveWaveform cwf = inverse_engineer(plan[1].first, intervals, plan[1].second);
  const PhaseTrack cphases = accumulated_phases(plan[1].first, cwf);
  const ErrorIntegrals ints = error_integrals(plan[0].first, phases, n_half, plan[1].first, cphases);
  return 1.0 - analytic_fidelity_cp(c_d, c_b, ints, 1.0, gate.spec.gamma).P;
}

}  // namespace nhqc
