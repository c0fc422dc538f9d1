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

#ifndef NHQC_CSV_HPP
#define NHQC_CSV_HPP

// Output files: "# key=value" metadata lines, one header line, data rows.
// Numbers carry 12 significant digits; lines end in LF. Nothing
// run-dependent (clock, host, thread count) is written, so equal requests
// give byte-identical files.

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nhqc/experiment.hpp"

namespace nhqc {

inline constexpr std::string_view kSweepHeader =
    "eps,delta_mhz,delta_rad_per_us,fidelity_sim,fidelity_oracle,infidelity_sim,status";
inline constexpr std::string_view kTraceHeader = "t_us,p0,p1,pe,fidelity";
inline constexpr std::string_view kNotApplicable = "na";

using Metadata = std::vector<std::pair<std::string, std::string>>;

/// %.12g; "nan", "inf", "-inf" for non-finite values.
std::string format_number(double v);

/// 64-bit FNV-1a, printed as 16 hex digits.
std::uint64_t fnv1a64(std::string_view bytes);
std::string config_hash(const Metadata& meta);

/// Adds the unit convention, oracle note and config_hash lines.
Metadata sweep_metadata(const SweepResult& result);

void write_sweep_csv(std::ostream& out, const SweepResult& result);
void write_trace_csv(std::ostream& out, const TrajectoryTrace& trace, const Metadata& meta);

/// Throws std::ios_base::failure naming the path.
void emit_csv(const SweepResult& result, const std::string& path);
void emit_trace_csv(const TrajectoryTrace& trace, const Metadata& meta, const std::string& path);

}  // namespace nhqc

#endif  // NHQC_CSV_HPP
