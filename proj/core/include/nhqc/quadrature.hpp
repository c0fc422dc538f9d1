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

#ifndef NHQC_QUADRATURE_HPP
#define NHQC_QUADRATURE_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "nhqc/errors.hpp"

namespace nhqc::quad {

/// Composite Simpson rule over uniformly spaced samples. An odd interval count
/// closes with the 3/8 rule on the last three panels.
template <typename T>
T simpson(std::span<const T> f, double h) {
  if (f.size() < 3) throw ConfigError("simpson: need at least two intervals");
  std::size_t n = f.size() - 1;
  T tail{};
  if (n % 2 != 0) {
    if (n < 3) throw ConfigError("simpson: need at least two intervals");
    tail = (f[n - 3] + 3.0 * f[n - 2] + 3.0 * f[n - 1] + f[n]) * (3.0 * h / 8.0);
    n -= 3;
    if (n == 0) return tail;
  }
  T odd{}, even{};
  for (std::size_t i = 1; i < n; i += 2) odd += f[i];
  for (std::size_t i = 2; i < n; i += 2) even += f[i];
  return (f[0] + f[n] + 4.0 * odd + 2.0 * even) * (h / 3.0) + tail;
}

template <typename T>
T simpson(const std::vector<T>& f, double h) {
  return simpson(std::span<const T>(f), h);
}

/// Weights w such that sum_k w[k] f[k] equals simpson(f, h) for n + 1 samples.
inline std::vector<double> simpson_weights(std::size_t n, double h) {
  if (n < 2) throw ConfigError("simpson_weights: need at least two intervals");
  std::vector<double> w(n + 1, 0.0);
  std::size_t m = n;
  if (n % 2 != 0) {
    m = n - 3;
    const double c = 3.0 * h / 8.0;
    w[n - 3] += c;
    w[n - 2] += 3.0 * c;
    w[n - 1] += 3.0 * c;
    w[n] += c;
  }
  if (m > 0) {
    for (std::size_t i = 0; i <= m; ++i) {
      const double base = (i == 0 || i == m) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      w[i] += base * h / 3.0;
    }
  }
  return w;
}

/// Running integral F[k] = int_{x0}^{xk} f. Even nodes use Simpson pairs;
/// odd nodes add the quadratic-fit partial panel h/12 (5 f0 + 8 f1 - f2).
template <typename T>
std::vector<T> cumulative(std::span<const T> f, double h) {
  if (f.size() < 3) throw ConfigError("cumulative: need at least two intervals");
  const std::size_t n = f.size() - 1;
  std::vector<T> out(f.size());
  out[0] = T{};
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    out[i + 1] = out[i] + (5.0 * f[i] + 8.0 * f[i + 1] - f[i + 2]) * (h / 12.0);
    out[i + 2] = out[i] + (f[i] + 4.0 * f[i + 1] + f[i + 2]) * (h / 3.0);
  }
  if (i < n) out[n] = out[n - 1] + (-f[n - 2] + 8.0 * f[n - 1] + 5.0 * f[n]) * (h / 12.0);
  return out;
}

template <typename T>
std::vector<T> cumulative(const std::vector<T>& f, double h) {
  return cumulative(std::span<const T>(f), h);
}

}  // namespace nhqc::quad

#endif  // NHQC_QUADRATURE_HPP
