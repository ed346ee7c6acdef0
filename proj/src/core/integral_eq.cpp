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

#include "core/integral_eq.hpp"

namespace fewbody {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::unsupported_region: return "unsupported-region";
    case ErrorCode::dimer_pole: return "dimer-pole";
    case ErrorCode::resonance_pole: return "resonance-pole";
    case ErrorCode::no_bound_state: return "no-bound-state";
    case ErrorCode::assembly: return "assembly";
    case ErrorCode::singular_matrix: return "singular-matrix";
    case ErrorCode::extraction: return "extraction";
    case ErrorCode::normalization_unstable: return "normalization-unstable";
    case ErrorCode::numerical_quality: return "numerical-quality";
    case ErrorCode::threshold: return "threshold";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

LogDet logdet_sign(const DenseMatrix<double>& m) {
  return LuFactorization<double>(m).logdet();
}

}  // namespace fewbody
