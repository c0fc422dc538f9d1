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

// nhqc-lab: gate runs, error sweeps, contour grids, oracle tables, selftest.
//
// Exit codes: 0 ok, 1 usage, 2 numerical failure, 3 I/O failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nhqc/catalog.hpp"
#include "nhqc/config.hpp"
#include "nhqc/csv.hpp"
#include "nhqc/errors.hpp"
#include "nhqc/experiment.hpp"
#include "nhqc/oracle.hpp"
#include "selftest.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitIo = 3;

// Raw flag values; empty optionals fall back to the config file, then defaults.
struct Flags {
  std::string config;
  std::optional<std::string> gate;
  std::optional<double> a, b;
  std::optional<bool> cp;
  std::optional<std::string> eps, delta_mhz;
  std::optional<double> tau_us;
  std::optional<long long> steps, stride, threads;
  std::optional<std::string> out;
};

struct Settings {
  std::string gate = "not";
  double a = 4.0, b = 4.0;
  bool cp = true;
  std::string eps, delta_mhz;
  double tau_us = 0.1;
  long long steps = 20000;
  long long stride = 100;
  long long threads = 0;
  std::string out;
};

const std::vector<std::string> kConfigKeys = {"gate", "a", "b", "cp", "eps", "delta_mhz", "tau_us",
                                              "steps", "stride", "threads", "out"};

template <typename T>
void pick(T& dst, const std::optional<T>& flag, const std::optional<T>& file) {
  if (flag) {
    dst = *flag;
  } else if (file) {
    dst = *file;
  }
}

Settings resolve(const Flags& f, const std::string& default_eps, const std::string& default_delta) {
  Settings s;
  s.eps = default_eps;
  s.delta_mhz = default_delta;
  nhqc::KeyValueConfig file;
  if (!f.config.empty()) {
    file = nhqc::KeyValueConfig::load(f.config);
    if (const auto unknown = file.unknown_keys(kConfigKeys); !unknown.empty()) {
      throw nhqc::ConfigError(f.config + ": unknown key '" + unknown.front() + "'");
    }
  }
  pick(s.gate, f.gate, file.get("gate"));
  pick(s.a, f.a, file.get_double("a"));
  pick(s.b, f.b, file.get_double("b"));
  pick(s.cp, f.cp, file.get_bool("cp"));
  pick(s.eps, f.eps, file.get("eps"));
  pick(s.delta_mhz, f.delta_mhz, file.get("delta_mhz"));
  pick(s.tau_us, f.tau_us, file.get_double("tau_us"));
  pick(s.steps, f.steps, file.get_int("steps"));
  pick(s.stride, f.stride, file.get_int("stride"));
  pick(s.threads, f.threads, file.get_int("threads"));
  pick(s.out, f.out, file.get("out"));
  if (s.steps <= 0 || s.stride <= 0 || s.threads < 0) throw nhqc::ConfigError("steps, stride must be positive");
  if (!(s.tau_us > 0)) throw nhqc::ConfigError("tau-us must be positive");
  return s;
}

void add_common(CLI::App* cmd, Flags& f, bool with_axes) {
  cmd->add_option("--config", f.config, "flat key=value file; flags override its values");
  cmd->add_option("--gate", f.gate, "not | hadamard | s | t");
  cmd->add_option("--a", f.a, "beta slope in the first half");
  cmd->add_option("--b", f.b, "beta slope in the second half");
  cmd->add_flag("--cp,!--no-cp", f.cp, "append the compensation stage (default on)");
  if (with_axes) {
    cmd->add_option("--eps", f.eps, "Rabi error: value or start:stop:count");
    cmd->add_option("--delta-mhz", f.delta_mhz, "detuning error in MHz (x 2pi rad/us): value or start:stop:count");
  }
  cmd->add_option("--tau-us", f.tau_us, "stage duration in microseconds");
  cmd->add_option("--steps", f.steps, "RK4 steps per stage (even, >= 1000)");
  cmd->add_option("--out", f.out, "output CSV path (stdout if omitted)");
}

double single_value(const std::string& text, const char* name) {
  const std::vector<double> v = nhqc::parse_axis(text);
  if (v.size() != 1) throw nhqc::ConfigError(std::string(name) + " must be a single value for run");
  return v.front();
}

int cmd_run(const Flags& f) {
  const Settings s = resolve(f, "0", "0");
  nhqc::RunRequest req;
  req.gate = s.gate;
  req.scheme = {s.a, s.b};
  req.compensate = s.cp;
  req.err = {single_value(s.eps, "eps"), nhqc::mhz_to_rad_per_us(single_value(s.delta_mhz, "delta-mhz"))};
  req.tau = s.tau_us;
  req.steps = static_cast<std::size_t>(s.steps);
  req.record_stride = static_cast<std::size_t>(s.stride);
  const nhqc::RunResult r = nhqc::run_gate(req);

  nhqc::Metadata meta = {{"tool", "nhqc-lab"}, {"version", nhqc::kVersion}};
  for (const auto& kv : nhqc::describe(req)) meta.push_back(kv);
  meta.emplace_back("delta_mhz", nhqc::format_number(single_value(s.delta_mhz, "delta-mhz")));
  meta.emplace_back("units", "t_us=microseconds;delta_rad_per_us=2*pi*delta_mhz");
  meta.emplace_back("fidelity", "vs_final_catalog_target");
  if (s.out.empty()) {
    nhqc::write_trace_csv(std::cout, r.trace, meta);
  } else {
    nhqc::emit_trace_csv(r.trace, meta, s.out);
  }
  const nhqc::RunSummary& m = r.summary;
  std::ostream& log = s.out.empty() ? std::cerr : std::cout;
  log << "gate=" << m.gate << " stages=" << m.stage_count << " duration_us=" << nhqc::format_number(m.duration)
      << " fidelity=" << nhqc::format_number(m.fidelity) << " p0=" << nhqc::format_number(m.p0)
      << " p1=" << nhqc::format_number(m.p1) << " pe=" << nhqc::format_number(m.pe) << " fidelity_oracle="
      << (m.fidelity_oracle ? nhqc::format_number(*m.fidelity_oracle) : std::string(nhqc::kNotApplicable))
      << " peak_omega_rad_per_us=" << nhqc::format_number(m.peak_omega) << '\n';
  return kExitOk;
}

int cmd_sweep(const Flags& f, nhqc::SweepKind kind) {
  const bool grid = kind == nhqc::SweepKind::Grid;
  const Settings s = resolve(f, grid ? "-0.2:0.2:51" : "-0.2:0.2:41", grid ? "-4:4:51" : "-4:4:41");
  nhqc::SweepRequest req;
  req.gate = s.gate;
  req.scheme = {s.a, s.b};
  req.compensate = s.cp;
  req.kind = kind;
  if (kind != nhqc::SweepKind::Delta) req.eps = nhqc::parse_axis(s.eps);
  if (kind != nhqc::SweepKind::Epsilon) req.delta_mhz = nhqc::parse_axis(s.delta_mhz);
  req.tau = s.tau_us;
  req.steps = static_cast<std::size_t>(s.steps);
  req.threads = static_cast<std::size_t>(s.threads);
  const nhqc::SweepResult res = nhqc::sweep(req);
  if (s.out.empty()) {
    nhqc::write_sweep_csv(std::cout, res);
  } else {
    nhqc::emit_csv(res, s.out);
  }
  std::size_t failed = 0;
  for (const auto& p : res.points) failed += p.status != nhqc::PointStatus::Ok;
  std::cerr << res.points.size() << " points, " << failed << " failed, "
            << nhqc::format_number(res.elapsed_seconds) << " s\n";
  return failed == 0 ? kExitOk : kExitNumerical;
}

int cmd_tables(double tau, std::size_t intervals, const std::string& out_path) {
  using nhqc::ErrorKind;
  using nhqc::Scheme;
  std::ostringstream os;
  os << "# table=rabi_second_order\n# value=(1-P)/eps^2\n";
  os << "gate,ab0,ab4\n";
  for (const auto& g : nhqc::gate_catalog()) {
    os << g.name << ',' << nhqc::format_number(nhqc::table_coefficient(g, Scheme::orange_slice(), false, ErrorKind::Rabi, tau, intervals))
       << ',' << nhqc::format_number(nhqc::table_coefficient(g, Scheme{4, 4}, false, ErrorKind::Rabi, tau, intervals)) << '\n';
  }
  os << "# table=detuning_second_order\n# value=(1-P)/delta^2 in us^2 at tau_us=" << nhqc::format_number(tau) << '\n';
  os << "gate,ab0,ab4,ab4_cp\n";
  for (const auto& g : nhqc::gate_catalog()) {
    os << g.name << ','
       << nhqc::format_number(nhqc::table_coefficient(g, Scheme::orange_slice(), false, ErrorKind::Detuning, tau, intervals))
       << ',' << nhqc::format_number(nhqc::table_coefficient(g, Scheme{4, 4}, false, ErrorKind::Detuning, tau, intervals))
       << ',' << nhqc::format_number(nhqc::table_coefficient(g, Scheme{4, 4}, true, ErrorKind::Detuning, tau, intervals))
       << '\n';
  }
  if (out_path.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    out << os.str();
    out.flush();
    if (!out) throw std::ios_base::failure("failed writing '" + out_path + "'");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nhqc-lab: holonomic qutrit gate simulator and error sweeps"};
  app.require_subcommand(1);
  app.set_version_flag("--version", nhqc::kVersion);

  Flags run_flags, eps_flags, delta_flags, grid_flags;
  CLI::App* run = app.add_subcommand("run", "simulate one gate and write the population/fidelity trace");
  add_common(run, run_flags, true);
  run->add_option("--stride", run_flags.stride, "record every n-th step (must divide steps)");
  CLI::App* sweep_eps = app.add_subcommand("sweep-eps", "fidelity versus Rabi error (delta = 0)");
  add_common(sweep_eps, eps_flags, false);
  sweep_eps->add_option("--eps", eps_flags.eps, "value or start:stop:count (default -0.2:0.2:41)");
  sweep_eps->add_option("--threads", eps_flags.threads, "worker threads (0 = hardware)");
  CLI::App* sweep_delta = app.add_subcommand("sweep-delta", "fidelity versus detuning error (eps = 0)");
  add_common(sweep_delta, delta_flags, false);
  sweep_delta->add_option("--delta-mhz", delta_flags.delta_mhz, "value or start:stop:count in MHz (default -4:4:41)");
  sweep_delta->add_option("--threads", delta_flags.threads, "worker threads (0 = hardware)");
  CLI::App* grid = app.add_subcommand("grid", "fidelity over an (eps, delta) grid, eps-major rows");
  add_common(grid, grid_flags, true);
  grid->add_option("--threads", grid_flags.threads, "worker threads (0 = hardware)");

  double table_tau = 1.0;
  long long table_intervals = 20000;
  std::string table_out;
  CLI::App* tables = app.add_subcommand("tables", "second-order infidelity coefficients from the oracle");
  tables->add_option("--tau-us", table_tau, "stage duration (detuning coefficients scale as tau^2)");
  tables->add_option("--steps", table_intervals, "quadrature intervals per stage");
  tables->add_option("--out", table_out, "output path (stdout if omitted)");

  nhqc::selftest::Options st_opt;
  std::vector<std::string> st_only;
  long long st_threads = 0;
  CLI::App* selftest = app.add_subcommand("selftest", "run the acceptance suite, one line per criterion");
  selftest->add_option("--csv-dir", st_opt.csv_dir, "also write trace, sweep and grid CSVs here");
  selftest->add_option("--only", st_only, "criterion ids, e.g. A1 A4")->delimiter(',');
  selftest->add_option("--threads", st_threads, "worker threads (0 = hardware)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run) return cmd_run(run_flags);
    if (*sweep_eps) return cmd_sweep(eps_flags, nhqc::SweepKind::Epsilon);
    if (*sweep_delta) return cmd_sweep(delta_flags, nhqc::SweepKind::Delta);
    if (*grid) return cmd_sweep(grid_flags, nhqc::SweepKind::Grid);
    if (*tables) {
      if (table_intervals < 1000 || table_intervals % 2 != 0 || !(table_tau > 0)) {
        throw nhqc::ConfigError("tables: steps must be even and >= 1000, tau-us positive");
      }
      return cmd_tables(table_tau, static_cast<std::size_t>(table_intervals), table_out);
    }
    if (*selftest) {
      if (st_threads < 0) throw nhqc::ConfigError("threads must be >= 0");
      st_opt.threads = static_cast<std::size_t>(st_threads);
      return nhqc::selftest::run(st_opt, std::cout, st_only) == 0 ? kExitOk : kExitNumerical;
    }
  } catch (const std::ios_base::failure& e) {
    std::cerr << "nhqc-lab: I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const nhqc::IntegratorError& e) {
    std::cerr << "nhqc-lab: integrator failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const nhqc::DesignError& e) {
    std::cerr << "nhqc-lab: pulse design failure at t=" << e.time() << ": " << e.what() << '\n';
    return kExitNumerical;
  } catch (const nhqc::NumericalError& e) {
    std::cerr << "nhqc-lab: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {  // ConfigError, CatalogError
    std::cerr << "nhqc-lab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "nhqc-lab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "nhqc-lab: I/O error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}
