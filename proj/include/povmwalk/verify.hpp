// Copyright 2026 The povmwalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POVMWALK_VERIFY_HPP
#define POVMWALK_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace povmwalk {

/// One property suite's outcome. `detail` carries the first counterexample's
/// inputs when the suite fails, empty otherwise.
struct SuiteResult {
  std::string name;
  int cases = 0;
  bool passed = true;
  std::string detail;
};

/// Randomized invariant suites over `cases` draws each:
///   effect-completeness   E+ + E- = identity (1e-12)
///   commutation-scalar    M+M- = M-M+ = (sqrt(1-lambda^2)/2) identity (1e-12)
///   probability-conservation  p+ + p- = 1 and p_s = <psi|E_s|psi>/<psi|psi>
///   dilation-consistency  U unitary; branches reproduce M+|psi>, M-|psi>
///   balanced-recurrence   balanced sequences restore the state (1e-10)
///   order-invariance      all orderings of (a, b) outcomes, equal probability
///   balanced-return-formula  enumerated mass = C(q, q/2)((1-lambda^2)/4)^(q/2)
///   tomography-inversion  exact per-axis probabilities invert to the Bloch vector
std::vector<SuiteResult> run_verification_suites(uint64_t seed, int cases);

}  // namespace povmwalk

#endif
