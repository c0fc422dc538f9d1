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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

namespace nhqc {
namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

SweepResult small_sweep() {
  SweepRequest req;
  req.gate = "not";
  req.kind = SweepKind::Epsilon;
  req.eps = {-0.1, 0.0, 0.1};
  req.steps = 2000;
  req.threads = 1;
  return sweep(req);
}

TEST(FormatNumber, TwelveSignificantDigits) {
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_number(123456789.0123456), "123456789.012");
  EXPECT_EQ(format_number(1e-20), "1e-20");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(format_number(-std::numeric_limits<double>::infinity()), "-inf");
}

TEST(Hash, StableAndSensitive) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  const Metadata m1 = {{"gate", "NOT"}}, m2 = {{"gate", "S"}};
  EXPECT_EQ(config_hash(m1).size(), 16u);
  EXPECT_EQ(config_hash(m1), config_hash(m1));
  EXPECT_NE(config_hash(m1), config_hash(m2));
}

TEST(SweepCsv, EmptyResultIsHeaderOnly) {
  std::ostringstream os;
  write_sweep_csv(os, SweepResult{});
  EXPECT_EQ(os.str(), std::string(kSweepHeader) + "\n");
}

TEST(SweepCsv, MetadataHeaderAndRows) {
  std::ostringstream os;
  write_sweep_csv(os, small_sweep());
  const std::string text = os.str();
  EXPECT_EQ(text.find('\r'), std::string::npos);
  const auto ls = lines(text);
  std::size_t meta = 0;
  while (meta < ls.size() && ls[meta].rfind("# ", 0) == 0) {
    EXPECT_NE(ls[meta].find('='), std::string::npos) << ls[meta];
    ++meta;
  }
  ASSERT_EQ(ls.size(), meta + 4);
  EXPECT_NE(text.find("# config_hash="), std::string::npos);
  EXPECT_EQ(ls[meta], kSweepHeader);
  EXPECT_EQ(ls[meta + 1].rfind("-0.1,0,0,", 0), 0u) << ls[meta + 1];
  EXPECT_EQ(ls[meta + 2].substr(ls[meta + 2].size() - 3), ",ok");
  for (std::size_t i = meta + 1; i < ls.size(); ++i) {
    EXPECT_EQ(std::count(ls[i].begin(), ls[i].end(), ','), 6) << ls[i];
  }
}

TEST(SweepCsv, NotApplicableOracle) {
  SweepResult r = small_sweep();
  r.points[1].fidelity_oracle.reset();
  std::ostringstream os;
  write_sweep_csv(os, r);
  EXPECT_NE(os.str().find(",na,"), std::string::npos);
}

TEST(SweepCsv, ByteIdenticalAcrossRuns) {
  std::ostringstream a, b;
  write_sweep_csv(a, small_sweep());
  SweepResult r = small_sweep();
  r.elapsed_seconds = 123.0;  // wall time never reaches the file
  write_sweep_csv(b, r);
  EXPECT_EQ(a.str(), b.str());
}

TEST(SweepCsv, GridRows) {
  SweepRequest req;
  req.kind = SweepKind::Grid;
  req.eps = {0.0, 0.1};
  req.delta_mhz = {-1.0, 0.0, 1.0};
  req.steps = 2000;
  req.threads = 2;
  std::ostringstream os;
  write_sweep_csv(os, sweep(req));
  const auto ls = lines(os.str());
  const auto header = std::find(ls.begin(), ls.end(), std::string(kSweepHeader));
  ASSERT_NE(header, ls.end());
  EXPECT_EQ(ls.end() - header, 7);
  EXPECT_EQ(header[1].rfind("0,-1,", 0), 0u) << header[1];
  EXPECT_EQ(header[6].rfind("0.1,1,", 0), 0u) << header[6];
}

TEST(TraceCsv, HeaderAndRows) {
  RunRequest req;
  req.steps = 2000;
  req.record_stride = 200;
  const RunResult r = run_gate(req);
  std::ostringstream os;
  write_trace_csv(os, r.trace, describe(req));
  const auto ls = lines(os.str());
  const auto header = std::find(ls.begin(), ls.end(), std::string(kTraceHeader));
  ASSERT_NE(header, ls.end());
  EXPECT_EQ(static_cast<std::size_t>(ls.end() - header - 1), r.trace.times.size());
  EXPECT_NE(os.str().find("# config_hash="), std::string::npos);
}

TEST(EmitCsv, WritesFilesAndReportsIoErrors) {
  const auto dir = std::filesystem::temp_directory_path() / "nhqc_csv_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "sweep.csv").string();
  const SweepResult r = small_sweep();
  emit_csv(r, path);
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  std::ostringstream expected;
  write_sweep_csv(expected, r);
  EXPECT_EQ(ss.str(), expected.str());
  EXPECT_THROW(emit_csv(r, "/nonexistent/dir/sweep.csv"), std::ios_base::failure);
  EXPECT_THROW(emit_trace_csv(TrajectoryTrace{}, {}, "/nonexistent/dir/trace.csv"), std::ios_base::failure);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace nhqc
