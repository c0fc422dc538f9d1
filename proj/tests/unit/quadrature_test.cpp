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

#include "nhqc/quadrature.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numeric>

#include "nhqc/qutrit.hpp"

namespace nhqc::quad {
namespace {

std::vector<double> sample(std::size_t n, double a, double b, double (*f)(double)) {
  std::vector<double> out(n + 1);
  for (std::size_t k = 0; k <= n; ++k) out[k] = f(a + (b - a) * static_cast<double>(k) / static_cast<double>(n));
  return out;
}

double cubic(double x) { return 2 * x * x * x - x + 3; }  // int_0^2 = 8 - 2 + 6 = 12

TEST(Simpson, ExactForCubicsEvenAndOdd) {
  for (std::size_t n : {2u, 3u, 4u, 5u, 10u, 11u}) {
    EXPECT_NEAR(simpson(sample(n, 0, 2, cubic), 2.0 / static_cast<double>(n)), 12.0, 1e-12) << n;
  }
}

TEST(Simpson, FourthOrderOnSmoothFunction) {
  auto f = [](double x) { return std::sin(x); };
  auto err = [&](std::size_t n) {
    std::vector<double> v(n + 1);
    for (std::size_t k = 0; k <= n; ++k) v[k] = f(nhqc::kPi * static_cast<double>(k) / static_cast<double>(n));
    return std::abs(simpson(v, nhqc::kPi / static_cast<double>(n)) - 2.0);
  };
  EXPECT_NEAR(std::log2(err(20) / err(40)), 4.0, 0.05);
}

TEST(Simpson, ComplexSamples) {
  std::vector<std::complex<double>> v(101);
  for (std::size_t k = 0; k <= 100; ++k) v[k] = std::polar(1.0, 0.01 * static_cast<double>(k));
  const std::complex<double> exact = (std::polar(1.0, 1.0) - 1.0) / std::complex<double>(0, 1);
  EXPECT_LT(std::abs(simpson(v, 0.01) - exact), 1e-10);
}

TEST(Simpson, RejectsTooFewSamples) {
  EXPECT_THROW(simpson(std::vector<double>{1.0, 2.0}, 0.1), ConfigError);
  EXPECT_THROW(simpson_weights(1, 0.1), ConfigError);
}

TEST(SimpsonWeights, MatchDirectRule) {
  for (std::size_t n : {2u, 3u, 6u, 7u, 100u, 101u}) {
    const auto f = sample(n, 0.0, 1.3, [](double x) { return std::exp(x) * std::cos(3 * x); });
    const double h = 1.3 / static_cast<double>(n);
    const auto w = simpson_weights(n, h);
    EXPECT_NEAR(std::inner_product(w.begin(), w.end(), f.begin(), 0.0), simpson(f, h), 1e-14) << n;
  }
}

TEST(Cumulative, EndsAtSimpsonAndTracksPrimitive) {
  const std::size_t n = 400;
  const double h = 2.0 / n;
  const auto f = sample(n, 0.0, 2.0, [](double x) { return std::cos(x); });
  const auto F = cumulative(f, h);
  EXPECT_EQ(F.front(), 0.0);
  EXPECT_NEAR(F.back(), simpson(f, h), 1e-14);
  for (std::size_t k = 0; k <= n; ++k) EXPECT_NEAR(F[k], std::sin(h * static_cast<double>(k)), 1e-9);
}

TEST(Cumulative, OddIntervalCount) {
  const std::size_t n = 201;
  const double h = 1.0 / n;
  const auto F = cumulative(sample(n, 0.0, 1.0, [](double x) { return x * x; }), h);
  EXPECT_NEAR(F.back(), 1.0 / 3.0, 1e-12);
}

}  // namespace
}  // namespace nhqc::quad
