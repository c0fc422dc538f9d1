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

#include "nhqc/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace nhqc {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string config_hash(const Metadata& meta) {
  std::string canon;
  for (const auto& [k, v] : meta) {
    canon += k;
    canon += '=';
    canon += v;
    canon += '\n';
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(canon)));
  return buf;
}

Metadata sweep_metadata(const SweepResult& result) {
  Metadata meta = {{"tool", "nhqc-lab"}, {"version", kVersion}};
  meta.insert(meta.end(), result.metadata.begin(), result.metadata.end());
  meta.emplace_back("units", "t_us=microseconds;delta_rad_per_us=2*pi*delta_mhz");
  meta.emplace_back("delta_tau_max", format_number([&] {
                      double m = 0.0;
                      for (const auto& p : result.points) m = std::max(m, std::abs(p.delta_rad_per_us));
                      return m * result.request.tau;
                    }()));
  meta.emplace_back("fidelity", "final_state_vs_catalog_target");
  meta.emplace_back("oracle", "second_order;a==b;max(|eps|,|delta_rad_per_us*tau_us|)<=" + format_number(kOracleWindow) +
                                  ";else " + std::string(kNotApplicable));
  meta.emplace_back("config_hash", config_hash(meta));
  return meta;
}

namespace {

void write_meta(std::ostream& out, const Metadata& meta) {
  for (const auto& [k, v] : meta) out << "# " << k << '=' << v << '\n';
}

void check(std::ostream& out, const std::string& path) {
  if (!out) throw std::ios_base::failure("failed writing '" + path + "'");
}

}  // namespace

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  // An empty sweep is just the header.
  if (!result.points.empty()) write_meta(out, sweep_metadata(result));
  out << kSweepHeader << '\n';
  for (const SweepPoint& p : result.points) {
    out << format_number(p.eps) << ',' << format_number(p.delta_mhz) << ',' << format_number(p.delta_rad_per_us) << ','
        << format_number(p.fidelity_sim) << ','
        << (p.fidelity_oracle ? format_number(*p.fidelity_oracle) : std::string(kNotApplicable)) << ','
        << format_number(1.0 - p.fidelity_sim) << ',' << to_string(p.status) << '\n';
  }
}

void write_trace_csv(std::ostream& out, const TrajectoryTrace& trace, const Metadata& meta) {
  Metadata full = meta;
  full.emplace_back("config_hash", config_hash(meta));
  write_meta(out, full);
  out << kTraceHeader << '\n';
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    out << format_number(trace.times[i]) << ',' << format_number(trace.p0[i]) << ',' << format_number(trace.p1[i])
        << ',' << format_number(trace.pe[i]) << ',' << format_number(trace.fidelity[i]) << '\n';
  }
}

void emit_csv(const SweepResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::ios_base::failure("cannot open '" + path + "' for writing");
  write_sweep_csv(out, result);
  out.flush();
  check(out, path);
}

void emit_trace_csv(const TrajectoryTrace& trace, const Metadata& meta, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::ios_base::failure("cannot open '" + path + "' for writing");
  write_trace_csv(out, trace, meta);
  out.flush();
  check(out, path);
}

}  // namespace nhqc
