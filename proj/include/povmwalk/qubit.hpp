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

#ifndef POVMWALK_QUBIT_HPP
#define POVMWALK_QUBIT_HPP

#include <array>
#include <cstdint>
#include <utility>

#include "povmwalk/mat.hpp"

namespace povmwalk {

/// Measurement outcome labels. The walk mapping is plus -> one step in the
/// positive lattice direction; step_of gives the signed increment.
enum class Outcome : int8_t { minus = -1, plus = +1 };

inline int step_of(Outcome s) { return static_cast<int>(s); }

/// Two-level pure state. May be unnormalized: after a measurement sequence
/// the squared norm carries the cumulative probability of that sequence.
struct PureState {
  complexd amp0{1.0, 0.0};
  complexd amp1{0.0, 0.0};

  double squared_norm() const;

  /// Scales to unit norm. Zero-norm input is a domain error.
  PureState normalized() const;

  bool is_normalized(double tol = 1e-12) const;

  /// (x, y, z) with x = 2 Re(a0* a1), y = 2 Im(a0* a1), z = |a0|^2 - |a1|^2,
  /// evaluated on the normalized state.
  std::array<double, 3> bloch_vector() const;

  static PureState z_plus() { return {complexd{1}, complexd{0}}; }   // |0>
  static PureState z_minus() { return {complexd{0}, complexd{1}}; }  // |1>
  static PureState x_plus();                                         // |+>
  static PureState x_minus();                                        // |->
};

/// Measurement strength lambda in [0, 1]: 0 is the trivial measurement,
/// 1 the projective limit.
struct MeasurementStrength {
  explicit MeasurementStrength(double lambda);
  double lambda;
};

/// The diagonal operator pair
///   M+ = diag(sqrt(1+lambda), sqrt(1-lambda)) / sqrt(2)
///   M- = diag(sqrt(1-lambda), sqrt(1+lambda)) / sqrt(2)
/// with effects E_s = M_s^dag M_s satisfying E+ + E- = I and the commutation
/// identity M+M- = M-M+ = (sqrt(1-lambda^2)/2) I.
struct MeasurementPair {
  MeasurementStrength strength;
  Mat2 m_plus;
  Mat2 m_minus;
};

/// Unit vector selecting the measured spin direction.
struct ObservableAxis {
  explicit ObservableAxis(std::array<double, 3> direction);
  std::array<double, 3> n;

  static ObservableAxis x() { return ObservableAxis({1, 0, 0}); }
  static ObservableAxis y() { return ObservableAxis({0, 1, 0}); }
  static ObservableAxis z() { return ObservableAxis({0, 0, 1}); }
};

/// Estimated or exact Bloch vector. Statistical estimates may land outside
/// the unit ball; they are flagged, never clamped.
struct BlochVector {
  std::array<double, 3> r;
  bool outside_sphere;

  double norm() const;
};

/// Click totals for one measured axis.
struct OutcomeCounts {
  uint64_t n_plus = 0;
  uint64_t n_minus = 0;

  uint64_t total() const { return n_plus + n_minus; }
};

/// Expectation-value estimate (1/lambda)(N+ - N-)/N. Out-of-range values are
/// possible at finite samples and are flagged, not clamped.
struct ExpectationEstimate {
  double value;
  bool out_of_range;
};

/// Outcome of one sampled measurement step; state is renormalized.
struct StepResult {
  Outcome outcome;
  PureState state;
};

MeasurementPair build_measurement_pair(MeasurementStrength strength);

/// E_sign = (I + sign * lambda * n.sigma) / 2 for the given axis.
std::pair<Mat2, Mat2> effects(MeasurementStrength strength, const ObservableAxis &axis);

/// p_s = <psi|E_s|psi> / <psi|psi>. Zero-norm state is a domain error.
std::pair<double, double> outcome_probabilities(const PureState &state,
                                                const MeasurementPair &pair);

/// M_s |psi>, unnormalized: output squared norm = p_s * input squared norm.
PureState apply_outcome(const PureState &state, const MeasurementPair &pair,
                        Outcome outcome);

/// Plus iff randomness < p_plus; result state renormalized.
StepResult sample_step(const PureState &state, const MeasurementPair &pair,
                       double randomness);

/// || M+^a M-^b |psi> ||^2 for a normalized state. The operators are
/// diagonal and commute, so this is the probability of every outcome
/// sequence with a pluses and b minuses regardless of order.
double sequence_probability(const PureState &state, int plus_count, int minus_count,
                            MeasurementStrength strength);

/// The 4x4 system (x) ancilla unitary realizing the pair with one ancilla,
/// basis ordered |system, ancilla> with the ancilla as the fast index:
/// U (|psi> (x) |0>) = (M+|psi>) (x) |0> + (M-|psi>) (x) |1>.
Mat4 dilation_unitary(MeasurementStrength strength);

/// (1/lambda)(N+ - N-)/N. lambda = 0 or N = 0 is a domain error.
ExpectationEstimate expectation_from_counts(const OutcomeCounts &counts,
                                            MeasurementStrength strength);

/// Infinite-sample limit of expectation_from_counts: (2 p_plus - 1)/lambda.
double expectation_from_probability(double p_plus, MeasurementStrength strength);

/// Per-axis estimates assembled into a Bloch vector; flagged if |r| > 1.
BlochVector tomography_estimate(const OutcomeCounts &counts_x,
                                const OutcomeCounts &counts_y,
                                const OutcomeCounts &counts_z,
                                MeasurementStrength strength);

}  // namespace povmwalk

#endif
