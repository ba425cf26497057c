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

#include "povmwalk/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <sstream>

#include "povmwalk/qubit.hpp"
#include "povmwalk/rng.hpp"
#include "povmwalk/trajectory.hpp"
#include "povmwalk/walk_oracle.hpp"

namespace povmwalk {

namespace {

constexpr double kAlgebraTol = 1e-12;
constexpr double kRecurrenceTol = 1e-10;

PureState random_state(PhiloxStream &rng) {
  for (;;) {
    const PureState candidate{{2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0},
                              {2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0}};
    if (candidate.squared_norm() > 1e-3) return candidate.normalized();
  }
}

std::string describe(const PureState &s) {
  std::ostringstream out;
  out.precision(17);
  out << "state (" << s.amp0.real() << ", " << s.amp0.imag() << ", " << s.amp1.real()
      << ", " << s.amp1.imag() << ")";
  return out.str();
}

std::string describe_case(int index, double lambda) {
  std::ostringstream out;
  out.precision(17);
  out << "case " << index << ": lambda = " << lambda;
  return out.str();
}

// Runs `cases` iterations of `body`; body returns an empty string on success
// and the counterexample description on failure.
SuiteResult run_suite(const std::string &name, int cases,
                      const std::function<std::string(int)> &body) {
  SuiteResult result;
  result.name = name;
  result.cases = cases;
  for (int i = 0; i < cases; ++i) {
    std::string failure = body(i);
    if (!failure.empty()) {
      result.passed = false;
      result.detail = std::move(failure);
      break;
    }
  }
  return result;
}

SuiteResult effect_completeness(PhiloxStream &rng, int cases) {
  return run_suite("effect-completeness", cases, [&](int i) -> std::string {
    const double lambda = rng.uniform();
    const MeasurementPair pair = build_measurement_pair(MeasurementStrength(lambda));
    const Mat2 sum = pair.m_plus.adjoint() * pair.m_plus + pair.m_minus.adjoint() * pair.m_minus;
    if (sum.max_abs_diff(Mat2::identity()) > kAlgebraTol) {
      return describe_case(i, lambda) + ": E+ + E- differs from identity";
    }
    return {};
  });
}

SuiteResult commutation_scalar(PhiloxStream &rng, int cases) {
  return run_suite("commutation-scalar", cases, [&](int i) -> std::string {
    const double lambda = rng.uniform();
    const MeasurementPair pair = build_measurement_pair(MeasurementStrength(lambda));
    const Mat2 pm = pair.m_plus * pair.m_minus;
    const Mat2 mp = pair.m_minus * pair.m_plus;
    const Mat2 scalar = complexd{std::sqrt(1.0 - lambda * lambda) / 2.0, 0.0} * Mat2::identity();
    if (pm.max_abs_diff(mp) > kAlgebraTol) {
      return describe_case(i, lambda) + ": M+M- and M-M+ differ";
    }
    if (pm.max_abs_diff(scalar) > kAlgebraTol) {
      return describe_case(i, lambda) + ": M+M- is not the commuting scalar";
    }
    return {};
  });
}

SuiteResult probability_conservation(PhiloxStream &rng, int cases) {
  return run_suite("probability-conservation", cases, [&](int i) -> std::string {
    const double lambda = rng.uniform();
    const MeasurementPair pair = build_measurement_pair(MeasurementStrength(lambda));
    PureState state = random_state(rng);
    // Exercise the unnormalized path on odd cases.
    if (i % 2 == 1) {
      const double scale = 0.25 + rng.uniform();
      state.amp0 *= scale;
      state.amp1 *= scale;
    }
    const auto [p_plus, p_minus] = outcome_probabilities(state, pair);
    if (std::abs(p_plus + p_minus - 1.0) > kAlgebraTol) {
      return describe_case(i, lambda) + ", " + describe(state) + ": p+ + p- differs from 1";
    }
    const double norm2 = state.squared_norm();
    const double via_operator = apply_outcome(state, pair, Outcome::plus).squared_norm() / norm2;
    if (std::abs(p_plus - via_operator) > kAlgebraTol) {
      return describe_case(i, lambda) + ", " + describe(state) +
             ": p+ differs from ||M+ psi||^2 / ||psi||^2";
    }
    return {};
  });
}

SuiteResult dilation_consistency(PhiloxStream &rng, int cases) {
  return run_suite("dilation-consistency", cases, [&](int i) -> std::string {
    const double lambda = rng.uniform();
    const MeasurementStrength strength(lambda);
    const MeasurementPair pair = build_measurement_pair(strength);
    const Mat4 u = dilation_unitary(strength);
    if ((u.adjoint() * u).max_abs_diff(Mat4::identity()) > kAlgebraTol) {
      return describe_case(i, lambda) + ": U^dag U differs from identity";
    }
    const PureState psi = random_state(rng);
    // |psi> (x) |0> in the |system, ancilla> basis, ancilla fast.
    const std::array<complexd, 4> in = {psi.amp0, complexd{0}, psi.amp1, complexd{0}};
    const std::array<complexd, 4> out = u.apply(in);
    const PureState plus_branch = apply_outcome(psi, pair, Outcome::plus);
    const PureState minus_branch = apply_outcome(psi, pair, Outcome::minus);
    const double err = std::max({std::abs(out[0] - plus_branch.amp0),
                                 std::abs(out[2] - plus_branch.amp1),
                                 std::abs(out[1] - minus_branch.amp0),
                                 std::abs(out[3] - minus_branch.amp1)});
    if (err > kAlgebraTol) {
      return describe_case(i, lambda) + ", " + describe(psi) +
             ": dilation branches differ from M+|psi>, M-|psi>";
    }
    return {};
  });
}

SuiteResult balanced_recurrence(PhiloxStream &rng, int cases) {
  return run_suite("balanced-recurrence", cases, [&](int i) -> std::string {
    const double lambda = rng.uniform();
    const MeasurementStrength strength(lambda);
    const PureState psi = random_state(rng);
    const int half = 1 + static_cast<int>(rng.uniform() * 6.0);  // 2..12 steps
    std::vector<int8_t> outcomes(static_cast<size_t>(2 * half));
    std::fill(outcomes.begin(), outcomes.begin() + half, int8_t{1});
    std::fill(outcomes.begin() + half, outcomes.end(), int8_t{-1});
    for (size_t j = outcomes.size() - 1; j > 0; --j) {
      const size_t swap_with = static_cast<size_t>(rng.uniform() * static_cast<double>(j + 1));
      std::swap(outcomes[j], outcomes[std::min(swap_with, j)]);
    }
    Trajectory traj;
    traj.outcomes = std::move(outcomes);
    traj.initial_state = psi;
    traj.final_state = psi;
    if (!recurrence_audit(psi, traj, strength)) {
      return describe_case(i, lambda) + ", " + describe(psi) +
             ": balanced sequence did not restore the state";
    }
    return {};
  });
}

SuiteResult order_invariance(PhiloxStream &rng, int cases) {
  return run_suite("order-invariance", cases, [&](int i) -> std::string {
    const double lambda = rng.uniform();
    const MeasurementPair pair = build_measurement_pair(MeasurementStrength(lambda));
    const PureState psi = random_state(rng);
    const int q = 2 + static_cast<int>(rng.uniform() * 7.0);  // 2..8
    const int a = static_cast<int>(rng.uniform() * static_cast<double>(q + 1));
    double lowest = 2.0;
    double highest = -1.0;
    for (uint32_t mask = 0; mask < (1u << q); ++mask) {
      if (std::popcount(mask) != a) continue;
      PureState state = psi;
      for (int step = 0; step < q; ++step) {
        state = apply_outcome(state, pair,
                              (mask >> step) & 1u ? Outcome::plus : Outcome::minus);
      }
      const double probability = state.squared_norm();
      lowest = std::min(lowest, probability);
      highest = std::max(highest, probability);
    }
    if (highest - lowest > kAlgebraTol) {
      std::ostringstream out;
      out.precision(17);
      out << describe_case(i, lambda) << ", " << describe(psi) << ", q = " << q
          << ", a = " << a << ": orderings spread " << (highest - lowest);
      return out.str();
    }
    return {};
  });
}

SuiteResult balanced_return_formula(PhiloxStream &rng, int cases) {
  return run_suite("balanced-return-formula", cases, [&](int i) -> std::string {
    static constexpr double kFixedLambdas[] = {0.0, 0.3, 0.5, 0.9};
    const double lambda = i % 5 < 4 ? kFixedLambdas[i % 5] : rng.uniform();
    const MeasurementStrength strength(lambda);
    const MeasurementPair pair = build_measurement_pair(strength);
    const PureState psi = random_state(rng);
    const int q = 2 * (1 + i % 6);  // 2..12
    double mass = 0.0;
    for (uint32_t mask = 0; mask < (1u << q); ++mask) {
      if (2 * std::popcount(mask) != q) continue;
      PureState state = psi;
      for (int step = 0; step < q; ++step) {
        state = apply_outcome(state, pair,
                              (mask >> step) & 1u ? Outcome::plus : Outcome::minus);
      }
      mass += state.squared_norm();
    }
    const double predicted = balanced_return_probability(q, strength);
    if (std::abs(mass - predicted) > kAlgebraTol) {
      std::ostringstream out;
      out.precision(17);
      out << describe_case(i, lambda) << ", " << describe(psi) << ", q = " << q
          << ": enumerated " << mass << " vs formula " << predicted;
      return out.str();
    }
    return {};
  });
}

SuiteResult tomography_inversion(PhiloxStream &rng, int cases) {
  return run_suite("tomography-inversion", cases, [&](int i) -> std::string {
    const double lambda = 0.05 + 0.95 * rng.uniform();
    const MeasurementStrength strength(lambda);
    const PureState psi = random_state(rng);
    const std::array<double, 3> truth = psi.bloch_vector();
    const ObservableAxis axes[3] = {ObservableAxis::x(), ObservableAxis::y(),
                                    ObservableAxis::z()};
    for (int axis = 0; axis < 3; ++axis) {
      const auto [e_plus, e_minus] = effects(strength, axes[axis]);
      const std::array<complexd, 2> amps = {psi.amp0, psi.amp1};
      complexd quad{0.0, 0.0};
      for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
          quad += std::conj(amps[static_cast<size_t>(r)]) * e_plus(r, c) *
                  amps[static_cast<size_t>(c)];
        }
      }
      const double estimate = expectation_from_probability(quad.real(), strength);
      if (std::abs(estimate - truth[static_cast<size_t>(axis)]) > kAlgebraTol) {
        std::ostringstream out;
        out.precision(17);
        out << describe_case(i, lambda) << ", " << describe(psi) << ", axis " << axis
            << ": inverted " << estimate << " vs true " << truth[static_cast<size_t>(axis)];
        return out.str();
      }
    }
    return {};
  });
}

}  // namespace

std::vector<SuiteResult> run_verification_suites(uint64_t seed, int cases) {
  if (cases < 1) cases = 1;
  std::vector<SuiteResult> results;
  // One stream per suite keeps each suite's draws independent of the others.
  uint64_t stream = 0;
  const auto with_stream = [&](auto &&suite) {
    PhiloxStream rng(seed, stream++);
    results.push_back(suite(rng, cases));
  };
  with_stream([&](PhiloxStream &rng, int n) { return effect_completeness(rng, n); });
  with_stream([&](PhiloxStream &rng, int n) { return commutation_scalar(rng, n); });
  with_stream([&](PhiloxStream &rng, int n) { return probability_conservation(rng, n); });
  with_stream([&](PhiloxStream &rng, int n) { return dilation_consistency(rng, n); });
  with_stream([&](PhiloxStream &rng, int n) { return balanced_recurrence(rng, n); });
  with_stream([&](PhiloxStream &rng, int n) { return order_invariance(rng, n); });
  with_stream([&](PhiloxStream &rng, int n) { return balanced_return_formula(rng, n); });
  with_stream([&](PhiloxStream &rng, int n) { return tomography_inversion(rng, n); });
  return results;
}

}  // namespace povmwalk
