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

#include "povmwalk/qubit.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace povmwalk {

double PureState::squared_norm() const {
  return std::norm(amp0) + std::norm(amp1);
}

PureState PureState::normalized() const {
  double n2 = squared_norm();
  if (!(n2 > 0) || !std::isfinite(n2)) {
    throw std::domain_error("cannot normalize state with squared norm " +
                            std::to_string(n2));
  }
  double inv = 1.0 / std::sqrt(n2);
  return {amp0 * inv, amp1 * inv};
}

bool PureState::is_normalized(double tol) const {
  return std::abs(squared_norm() - 1.0) <= tol;
}

std::array<double, 3> PureState::bloch_vector() const {
  PureState s = normalized();
  complexd c = std::conj(s.amp0) * s.amp1;
  return {2.0 * c.real(), 2.0 * c.imag(),
          std::norm(s.amp0) - std::norm(s.amp1)};
}

PureState PureState::x_plus() {
  double r = 1.0 / std::sqrt(2.0);
  return {complexd{r}, complexd{r}};
}

PureState PureState::x_minus() {
  double r = 1.0 / std::sqrt(2.0);
  return {complexd{r}, complexd{-r}};
}

MeasurementStrength::MeasurementStrength(double lambda_in) : lambda(lambda_in) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::domain_error("measurement strength must lie in [0,1], got " +
                            std::to_string(lambda_in));
  }
}

ObservableAxis::ObservableAxis(std::array<double, 3> direction) : n(direction) {
  double len2 = n[0] * n[0] + n[1] * n[1] + n[2] * n[2];
  if (std::abs(len2 - 1.0) > 1e-12) {
    throw std::domain_error("observable axis must be a unit vector");
  }
}

double BlochVector::norm() const {
  return std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
}

MeasurementPair build_measurement_pair(MeasurementStrength strength) {
  double lam = strength.lambda;
  double hi = std::sqrt((1.0 + lam) / 2.0);
  double lo = std::sqrt((1.0 - lam) / 2.0);
  return {strength, Mat2::diagonal(hi, lo), Mat2::diagonal(lo, hi)};
}

std::pair<Mat2, Mat2> effects(MeasurementStrength strength, const ObservableAxis &axis) {
  double lam = strength.lambda;
  // n.sigma = [[nz, nx - i ny], [nx + i ny, -nz]]
  Mat2 ns;
  ns(0, 0) = complexd{axis.n[2], 0};
  ns(0, 1) = complexd{axis.n[0], -axis.n[1]};
  ns(1, 0) = complexd{axis.n[0], axis.n[1]};
  ns(1, 1) = complexd{-axis.n[2], 0};
  Mat2 id = Mat2::identity();
  Mat2 e_plus = 0.5 * (id + lam * ns);
  Mat2 e_minus = 0.5 * (id - lam * ns);
  return {e_plus, e_minus};
}

std::pair<double, double> outcome_probabilities(const PureState &state,
                                                const MeasurementPair &pair) {
  double n0 = std::norm(state.amp0);
  double n1 = std::norm(state.amp1);
  double total = n0 + n1;
  if (!(total > 0) || !std::isfinite(total)) {
    throw std::domain_error("outcome probabilities need a state with positive norm");
  }
  double lam = pair.strength.lambda;
  double p_plus = 0.5 * ((1.0 + lam) * n0 + (1.0 - lam) * n1) / total;
  return {p_plus, 1.0 - p_plus};
}

PureState apply_outcome(const PureState &state, const MeasurementPair &pair,
                        Outcome outcome) {
  const Mat2 &op = outcome == Outcome::plus ? pair.m_plus : pair.m_minus;
  auto v = op.apply({state.amp0, state.amp1});
  return {v[0], v[1]};
}

StepResult sample_step(const PureState &state, const MeasurementPair &pair,
                       double randomness) {
  auto [p_plus, p_minus] = outcome_probabilities(state, pair);
  Outcome outcome = randomness < p_plus ? Outcome::plus : Outcome::minus;
  return {outcome, apply_outcome(state, pair, outcome).normalized()};
}

double sequence_probability(const PureState &state, int plus_count, int minus_count,
                            MeasurementStrength strength) {
  if (plus_count < 0 || minus_count < 0) {
    throw std::domain_error("outcome counts must be non-negative");
  }
  MeasurementPair pair = build_measurement_pair(strength);
  PureState s = state;
  for (int i = 0; i < plus_count; i++) s = apply_outcome(s, pair, Outcome::plus);
  for (int i = 0; i < minus_count; i++) s = apply_outcome(s, pair, Outcome::minus);
  return s.squared_norm();
}

Mat4 dilation_unitary(MeasurementStrength strength) {
  double lam = strength.lambda;
  double u = std::sqrt((1.0 + lam) / 2.0);
  double v = std::sqrt((1.0 - lam) / 2.0);
  // Basis |system, ancilla>, ancilla fast: (|00>, |01>, |10>, |11>).
  Mat4 m;
  m(0, 0) = u;
  m(0, 1) = -v;
  m(1, 0) = v;
  m(1, 1) = u;
  m(2, 2) = v;
  m(2, 3) = -u;
  m(3, 2) = u;
  m(3, 3) = v;
  return m;
}

ExpectationEstimate expectation_from_counts(const OutcomeCounts &counts,
                                            MeasurementStrength strength) {
  if (strength.lambda == 0.0) {
    throw std::domain_error("expectation is undefined at zero measurement strength");
  }
  uint64_t total = counts.total();
  if (total == 0) {
    throw std::domain_error("expectation needs at least one recorded outcome");
  }
  double diff = static_cast<double>(counts.n_plus) - static_cast<double>(counts.n_minus);
  double value = diff / (static_cast<double>(total) * strength.lambda);
  return {value, std::abs(value) > 1.0};
}

double expectation_from_probability(double p_plus, MeasurementStrength strength) {
  if (strength.lambda == 0.0) {
    throw std::domain_error("expectation is undefined at zero measurement strength");
  }
  return (2.0 * p_plus - 1.0) / strength.lambda;
}

BlochVector tomography_estimate(const OutcomeCounts &counts_x,
                                const OutcomeCounts &counts_y,
                                const OutcomeCounts &counts_z,
                                MeasurementStrength strength) {
  std::array<double, 3> r = {expectation_from_counts(counts_x, strength).value,
                             expectation_from_counts(counts_y, strength).value,
                             expectation_from_counts(counts_z, strength).value};
  double len = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
  return {r, len > 1.0};
}

}  // namespace povmwalk
