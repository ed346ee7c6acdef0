// Copyright 2026 The fewbody Authors
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

#ifndef FEWBODY_CORE_ERRORS_HPP
#define FEWBODY_CORE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fewbody {

/// Failure categories shared by every module. The values are mirrored one to
/// one by the status codes of the C API.
enum class ErrorCode {
  invalid_argument = 1,
  unsupported_region,  // E >= 0 or above-breakup kinematics
  dimer_pole,          // tau evaluated on (or too close to) its pole
  resonance_pole,      // Feshbach formula evaluated at B = B0
  no_bound_state,      // eps2 = 0 has no dimer
  assembly,            // non-finite kernel entry
  singular_matrix,
  extraction,          // spectator extraction failed on every pivot
  normalization_unstable,
  numerical_quality,
  threshold,
  io,
};

/// Returns a stable lower-case name such as "dimer-pole".
const char* error_code_name(ErrorCode code) noexcept;

/// True for categories that indicate bad input rather than a numerical
/// failure of an otherwise valid run.
constexpr bool is_validation_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument:
    case ErrorCode::unsupported_region:
    case ErrorCode::dimer_pole:
    case ErrorCode::resonance_pole:
    case ErrorCode::no_bound_state:
    case ErrorCode::io:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by tau() near the dimer pole. Carries the offending energy and its
/// distance to -eps2.
class DimerPoleError : public Error {
 public:
  DimerPoleError(double energy, double distance, const std::string& what)
      : Error(ErrorCode::dimer_pole, what), energy_(energy), distance_(distance) {}
  double energy() const noexcept { return energy_; }
  double distance() const noexcept { return distance_; }

 private:
  double energy_;
  double distance_;
};

/// Raised when a kernel produces a non-finite value during assembly.
class AssemblyError : public Error {
 public:
  AssemblyError(std::size_t row, std::size_t col, double energy,
                const std::string& what)
      : Error(ErrorCode::assembly, what), row_(row), col_(col), energy_(energy) {}
  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }
  double energy() const noexcept { return energy_; }

 private:
  std::size_t row_;
  std::size_t col_;
  double energy_;
};

class SingularMatrixError : public Error {
 public:
  SingularMatrixError(double condition, const std::string& what)
      : Error(ErrorCode::singular_matrix, what), condition_(condition) {}
  /// 1-norm condition estimate; +inf for an exactly zero pivot.
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

}  // namespace fewbody

#endif  // FEWBODY_CORE_ERRORS_HPP
