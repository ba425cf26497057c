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

#ifndef POVMWALK_WALK_ORACLE_HPP
#define POVMWALK_WALK_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "povmwalk/qubit.hpp"

namespace povmwalk {

// Exhaustive enumeration of +-1 lattice walks, the exact ground truth the
// simulator is checked against at small T.
//
// Conventions (shared verbatim with the trajectory engine):
//   * A walk is a sign sequence; position after a prefix is (#+) - (#-).
//   * A "return" is position 0 at step t > 0; k counts returns within T steps.
//   * A "departure" is the sign taken by a step that starts at position 0.
//     Departures are counted at origin visits 0..k-1 only (the start plus the
//     first k-1 returns), so a walk with k returns has exactly k counted
//     departures; l counts the + departures among them.

/// Exact classification of all 2^T walks by (k, l).
///
/// `counts` classifies every walk with k >= 1 returns; together with
/// `no_return_count` it partitions all 2^T walks. `counts_ending` is the
/// restriction to walks that end at the origin (k complete excursions, the
/// natural set for conditional departure statistics under any step bias).
/// Both views satisfy the reflection identity count(k,l) = C(k,l)*count(k,0).
struct WalkTable {
  int steps = 0;
  std::vector<std::vector<uint64_t>> counts;         // counts[k][l], 1 <= k <= T/2
  std::vector<std::vector<uint64_t>> counts_ending;  // same shape, origin-ending only
  uint64_t no_return_count = 0;

  int max_returns() const { return steps / 2; }
  uint64_t count(int k, int l) const { return counts[k][l]; }
  uint64_t count_ending(int k, int l) const { return counts_ending[k][l]; }
  uint64_t row_total(int k) const;
  uint64_t total_walks() const;  // sum of counts + no_return_count
};

/// Normalized departure distribution for a fixed number of returns.
struct DeparturePMF {
  int k = 0;
  std::vector<double> probabilities;  // index l = 0..k
};

/// Origin-to-origin excursions of a walk: half-open index ranges partitioning
/// the prefix up to the k-th return. Within an excursion the walk touches the
/// origin only at the endpoints, and + and - steps balance.
struct ExcursionDecomposition {
  std::vector<std::pair<size_t, size_t>> ranges;
};

/// One violation of the exact reflection identity.
struct ReflectionViolation {
  int k;
  int l;
  uint64_t expected;
  uint64_t actual;
  bool ending_view;
};

struct ReflectionReport {
  bool all_exact = true;
  std::vector<ReflectionViolation> violations;
};

/// Classifies all 2^T sign sequences. T must be even, 2 <= T <= 24.
WalkTable enumerate_all(int T);

/// Checks count(k,l) = C(k,l) * count(k,0) with exact integer arithmetic for
/// every k on both table views. Violations are reported, never thrown.
ReflectionReport reflection_identity_check(const WalkTable &table);

ExcursionDecomposition decompose_excursions(const std::vector<int8_t> &walk);

/// Flips every sign inside the chosen excursions (indices into the
/// decomposition). Involution; preserves k and total step counts.
std::vector<int8_t> reflect_excursions(const std::vector<int8_t> &walk,
                                       const std::vector<size_t> &subset);

/// Row k of the table, normalized. Equals Binomial(k, 1/2) exactly by the
/// reflection identity. Empty row is a domain error.
DeparturePMF departure_pmf(const WalkTable &table, int k);

/// C(q, q/2) * ((1 - lambda^2)/4)^(q/2): the probability that an unfiltered
/// trajectory sits at the origin after q steps, for any initial state.
double balanced_return_probability(int q, MeasurementStrength strength);

/// Exact conditional distribution of + departures among walks with exactly k
/// returns in T steps, each weighted by its measurement probability for the
/// given initial state. Ground truth for conditioned campaigns. T <= 20.
DeparturePMF conditional_departure_distribution(int T, int k,
                                                MeasurementStrength strength,
                                                const PureState &state);

/// Same conditional distribution for a classical walk with step bias p_plus,
/// optionally restricted to walks that end at the origin. Bias-independence
/// of the origin-ending version is the combinatorial null result.
DeparturePMF biased_departure_pmf(int T, int k, double p_plus, bool origin_ending_only);

/// Exact distribution of the return count k (index 0..T/2) for unfiltered
/// trajectories of the given state, by weighted enumeration. T <= 20.
std::vector<double> return_count_distribution(int T, MeasurementStrength strength,
                                              const PureState &state);

/// Exact binomial coefficient; n <= 62 so the result fits in 64 bits.
uint64_t binomial_coefficient(int n, int r);

}  // namespace povmwalk

#endif
