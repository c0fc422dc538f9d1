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

#ifndef NHQC_ERRORS_HPP
#define NHQC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nhqc {

/// Argument outside the domain of a time profile or Hamiltonian grid.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Inverse engineering hit a non-removable singularity.
class DesignError : public std::runtime_error {
 public:
  DesignError(const std::string& what, double t) : std::runtime_error(what), time_(t) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Quadrature did not converge (e.g. a principal value that fails to settle).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The RK4 integrator drifted off the unit sphere beyond tolerance.
class IntegratorError : public std::runtime_error {
 public:
  IntegratorError(const std::string& what, double drift, std::size_t suggested_steps)
      : std::runtime_error(what), drift_(drift), suggested_steps_(suggested_steps) {}
  double drift() const noexcept { return drift_; }
  std::size_t suggested_steps() const noexcept { return suggested_steps_; }

 private:
  double drift_;
  std::size_t suggested_steps_;
};

/// Inconsistent simulation or oracle inputs (mismatched grids, bad step counts).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Unknown gate name.
class CatalogError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace nhqc

#endif  // NHQC_ERRORS_HPP
