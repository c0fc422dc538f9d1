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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "nhqc/errors.hpp"

namespace nhqc {

namespace {

// The oracle has its own quadrature grid, independent of the simulator's steps.
constexpr std::size_t kOracleIntervals = 20000;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

std::string fmt_axis(const std::vector<double>& axis) {
  if (axis.empty()) return "none";
  std::ostringstream os;
  os.precision(12);
  os << axis.front() << ":" << axis.back() << ":" << axis.size();
  return os.str();
}

void check_axis(const std::vector<double>& axis, const char* name) {
  if (axis.empty()) throw ConfigError(std::string(name) + " axis is empty");
  for (std::size_t i = 0; i < axis.size(); ++i) {
    if (!std::isfinite(axis[i])) throw ConfigError(std::string(name) + " axis has a non-finite value");
    if (i > 0 && !(axis[i] > axis[i - 1])) throw ConfigError(std::string(name) + " axis must be strictly increasing");
  }
}

}  // namespace

double mhz_to_rad_per_us(double mhz) { return 2.0 * kPi * mhz; }

bool oracle_applies(const Scheme& scheme, double epsilon, double delta_rad, double tau) {
  return scheme.a == scheme.b && std::max(std::abs(epsilon), std::abs(delta_rad) * tau) <= kOracleWindow;
}

RunResult run_gate(const RunRequest& req) {
  const GateCatalogEntry& gate = find_gate(req.gate);
  req.err.validate();
  const StagePlan plan = plan_stages(gate.spec, req.scheme, req.compensate, req.tau);
  const SimConfig cfg = make_sim_config(plan, req.steps, req.record_stride);

  RunResult out;
  out.trace = evolve(gate.initial.state(), cfg, req.err, gate.target);

  RunSummary& s = out.summary;
  s.gate = gate.name;
  s.duration = cfg.duration();
  s.stage_count = plan.size();
  s.fidelity = out.trace.fidelity.back();
  s.p0 = out.trace.p0.back();
  s.p1 = out.trace.p1.back();
  s.pe = out.trace.pe.back();
  s.max_norm_drift = out.trace.max_norm_drift;
  for (const auto& wf : cfg.stages) s.peak_omega = std::max(s.peak_omega, wf->peak_omega());
  if (oracle_applies(req.scheme, req.err.epsilon, req.err.delta, req.tau)) {
    const SecondOrderOracle oracle(plan, kOracleIntervals);
    s.fidelity_oracle = oracle.fidelity(gate.initial.state(), req.err);
  }
  return out;
}

const char* to_string(SweepKind kind) {
  switch (kind) {
    case SweepKind::Epsilon: return "sweep-eps";
    case SweepKind::Delta: return "sweep-delta";
    case SweepKind::Grid: return "grid";
  }
  return "?";
}

const char* to_string(PointStatus status) {
  switch (status) {
    case PointStatus::Ok: return "ok";
    case PointStatus::IntegratorFailure: return "integrator_failure";
    case PointStatus::NumericalFailure: return "numerical_failure";
  }
  return "?";
}

void SweepRequest::validate() const {
  (void)find_gate(gate);
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ConfigError("tau must be positive");
  if (steps < 1000 || steps % 2 != 0) throw ConfigError("steps must be even and >= 1000");
  switch (kind) {
    case SweepKind::Epsilon: check_axis(eps, "eps"); break;
    case SweepKind::Delta: check_axis(delta_mhz, "delta"); break;
    case SweepKind::Grid:
      check_axis(eps, "eps");
      check_axis(delta_mhz, "delta");
      break;
  }
  for (double e : eps) {
    if (!(e > -1.0)) throw ConfigError("eps must be > -1");
  }
  if (point_count() > 1000000) throw ConfigError("sweep exceeds 1e6 points");
}

std::size_t SweepRequest::point_count() const {
  switch (kind) {
    case SweepKind::Epsilon: return eps.size();
    case SweepKind::Delta: return delta_mhz.size();
    case SweepKind::Grid: return eps.size() * delta_mhz.size();
  }
  return 0;
}

std::vector<std::pair<std::string, std::string>> describe(const SweepRequest& req) {
  const GateCatalogEntry& gate = find_gate(req.gate);
  std::vector<std::pair<std::string, std::string>> out = {
      {"command", to_string(req.kind)},
      {"gate", gate.name},
      {"a", fmt(req.scheme.a)},
      {"b", fmt(req.scheme.b)},
      {"cp", req.compensate ? "on" : "off"},
      {"tau_us", fmt(req.tau)},
      {"steps", std::to_string(req.steps)},
      {"eps_axis", req.kind == SweepKind::Delta ? "0" : fmt_axis(req.eps)},
      {"delta_mhz_axis", req.kind == SweepKind::Epsilon ? "0" : fmt_axis(req.delta_mhz)},
  };
  return out;
}

std::vector<std::pair<std::string, std::string>> describe(const RunRequest& req) {
  const GateCatalogEntry& gate = find_gate(req.gate);
  return {
      {"command", "run"},
      {"gate", gate.name},
      {"a", fmt(req.scheme.a)},
      {"b", fmt(req.scheme.b)},
      {"cp", req.compensate ? "on" : "off"},
      {"tau_us", fmt(req.tau)},
      {"steps", std::to_string(req.steps)},
      {"record_stride", std::to_string(req.record_stride)},
      {"eps", fmt(req.err.epsilon)},
      {"delta_rad_per_us", fmt(req.err.delta)},
  };
}

SweepResult sweep(const SweepRequest& req) {
  req.validate();
  const auto start = std::chrono::steady_clock::now();
  const GateCatalogEntry& gate = find_gate(req.gate);
  const StagePlan plan = plan_stages(gate.spec, req.scheme, req.compensate, req.tau);
  // Waveforms and the oracle generators are shared read-only by all points.
  const SimConfig cfg = make_sim_config(plan, req.steps, req.steps);
  const SecondOrderOracle oracle(plan, kOracleIntervals);
  const QutritState init = gate.initial.state();

  SweepResult result;
  result.request = req;
  result.metadata = describe(req);

  std::vector<double> eps_axis = req.kind == SweepKind::Delta ? std::vector<double>{0.0} : req.eps;
  std::vector<double> delta_axis = req.kind == SweepKind::Epsilon ? std::vector<double>{0.0} : req.delta_mhz;
  result.points.resize(eps_axis.size() * delta_axis.size());
  for (std::size_t i = 0; i < eps_axis.size(); ++i) {
    for (std::size_t j = 0; j < delta_axis.size(); ++j) {
      SweepPoint& p = result.points[i * delta_axis.size() + j];
      p.eps = eps_axis[i];
      p.delta_mhz = delta_axis[j];
      p.delta_rad_per_us = mhz_to_rad_per_us(delta_axis[j]);
    }
  }

  auto evaluate = [&](SweepPoint& p) {
    const ErrorModel err{p.eps, p.delta_rad_per_us};
    if (oracle_applies(req.scheme, err.epsilon, err.delta, req.tau)) p.fidelity_oracle = oracle.fidelity(init, err);
    try {
      const Vector3c psi = propagate(init.amplitudes(), cfg, err);
      const double drift = std::abs(psi.norm() - 1.0);
      if (drift > 1e-6) {
        std::ostringstream os;
        os << "norm drift " << drift << "; retry with steps=" << 2 * req.steps;
        throw IntegratorError(os.str(), drift, 2 * req.steps);
      }
      p.fidelity_sim = std::norm(gate.target.amplitudes().dot(psi));
      p.status = PointStatus::Ok;
    } catch (const IntegratorError& e) {
      p.fidelity_sim = std::numeric_limits<double>::quiet_NaN();
      p.status = PointStatus::IntegratorFailure;
      p.detail = e.what();
    } catch (const NumericalError& e) {
      p.fidelity_sim = std::numeric_limits<double>::quiet_NaN();
      p.status = PointStatus::NumericalFailure;
      p.detail = e.what();
    }
  };

  std::size_t workers = req.threads != 0 ? req.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, result.points.size());
  std::atomic<std::size_t> next{0};
  auto drain = [&] {
    for (std::size_t k = next.fetch_add(1); k < result.points.size(); k = next.fetch_add(1)) {
      evaluate(result.points[k]);
    }
  };
  if (workers <= 1) {
    drain();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(drain);
  }

  result.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace nhqc
