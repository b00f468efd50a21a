// Copyright 2026 The kposim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace kposim {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid argument: bad mode index, dimension mismatch, out-of-range parameter.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Fock cutoff too small for the requested state under strict truncation.
class TruncationError : public Error {
 public:
  using Error::Error;
};

// A state construction collapsed to the zero vector (e.g. odd cat at alpha = 0).
class DegenerateStateError : public Error {
 public:
  using Error::Error;
};

// Norm/trace drift or loss of positivity beyond the allowed budget.
class IntegrationError : public Error {
 public:
  using Error::Error;
};

// Requested gate phase cannot be reached inside the theta_amp bracket.
class CalibrationError : public Error {
 public:
  CalibrationError(const std::string& what, double max_achievable)
      : Error(what), max_achievable_(max_achievable) {}
  double max_achievable() const noexcept { return max_achievable_; }

 private:
  double max_achievable_;
};

// State cannot be represented in the qubit frame (residual too large).
class FrameError : public Error {
 public:
  using Error::Error;
};

// Final state left the qubit manifold, so its phase is meaningless.
class PhaseUnreliableError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace kposim
