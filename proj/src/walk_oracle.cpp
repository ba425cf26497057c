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

#include "povmwalk/walk_oracle.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace povmwalk {

namespace {

constexpr int kCountingCap = 24;
constexpr int kWeightedCap = 20;

struct WalkScan {
  int returns;          // k
  int plus_departures;  // l, counted at origin visits 0..k-1
  int final_position;
};

// bit t of `bits` is step t: 1 -> +, 0 -> -.
WalkScan scan_walk(uint32_t bits, int T) {
  int pos = 0;
  int returns = 0;
  int plus_seen = 0;     // + departures over all origin visits so far
  int plus_counted = 0;  // snapshot at the latest return
  for (int t = 0; t < T; t++) {
    int up = (bits >> t) & 1;
    if (pos == 0) plus_seen += up;
    pos += up ? 1 : -1;
    if (pos == 0) {
      returns++;
      plus_counted = plus_seen;
    }
  }
  return {returns, plus_counted, pos};
}

void require_even_in_range(int T, int cap) {
  if (T < 2 || T > cap || (T % 2) != 0) {
    throw std::domain_error("walk length must be even and within [2, " +
                            std::to_string(cap) + "], got " + std::to_string(T));
  }
}

// Per-walk measurement probability depends only on the + count a:
//   w(a) = |amp0|^2 x^a y^(T-a) + |amp1|^2 y^a x^(T-a),
// with x = (1+lambda)/2, y = (1-lambda)/2.
std::vector<double> sequence_weights_by_plus_count(int T, MeasurementStrength strength,
                                                   const PureState &state) {
  PureState s = state.normalized();
  std::vector<double> w(T + 1);
  for (int a = 0; a <= T; a++) {
    w[a] = sequence_probability(s, a, T - a, strength);
  }
  return w;
}

}  // namespace

uint64_t WalkTable::row_total(int k) const {
  uint64_t sum = 0;
  for (uint64_t c : counts[k]) sum += c;
  return sum;
}

uint64_t WalkTable::total_walks() const {
  uint64_t sum = no_return_count;
  for (int k = 1; k <= max_returns(); k++) sum += row_total(k);
  return sum;
}

WalkTable enumerate_all(int T) {
  require_even_in_range(T, kCountingCap);
  WalkTable table;
  table.steps = T;
  table.counts.assign(T / 2 + 1, {});
  table.counts_ending.assign(T / 2 + 1, {});
  for (int k = 0; k <= T / 2; k++) {
    table.counts[k].assign(k + 1, 0);
    table.counts_ending[k].assign(k + 1, 0);
  }
  uint64_t n = uint64_t{1} << T;
  for (uint64_t bits = 0; bits < n; bits++) {
    WalkScan scan = scan_walk(static_cast<uint32_t>(bits), T);
    if (scan.returns == 0) {
      table.no_return_count++;
      continue;
    }
    table.counts[scan.returns][scan.plus_departures]++;
    if (scan.final_position == 0) {
      table.counts_ending[scan.returns][scan.plus_departures]++;
    }
  }
  return table;
}

ReflectionReport reflection_identity_check(const WalkTable &table) {
  ReflectionReport report;
  auto check_view = [&](const std::vector<std::vector<uint64_t>> &view, bool ending) {
    for (int k = 1; k <= table.max_returns(); k++) {
      uint64_t base = view[k][0];
      for (int l = 0; l <= k; l++) {
        uint64_t expected = binomial_coefficient(k, l) * base;
        if (view[k][l] != expected) {
          report.all_exact = false;
          report.violations.push_back({k, l, expected, view[k][l], ending});
        }
      }
    }
  };
  check_view(table.counts, false);
  check_view(table.counts_ending, true);
  return report;
}

ExcursionDecomposition decompose_excursions(const std::vector<int8_t> &walk) {
  ExcursionDecomposition d;
  int pos = 0;
  size_t start = 0;
  for (size_t t = 0; t < walk.size(); t++) {
    pos += walk[t] > 0 ? 1 : -1;
    if (pos == 0) {
      d.ranges.emplace_back(start, t + 1);
      start = t + 1;
    }
  }
  return d;
}

std::vector<int8_t> reflect_excursions(const std::vector<int8_t> &walk,
                                       const std::vector<size_t> &subset) {
  ExcursionDecomposition d = decompose_excursions(walk);
  std::vector<int8_t> out = walk;
  for (size_t idx : subset) {
    if (idx >= d.ranges.size()) {
      throw std::domain_error("excursion index " + std::to_string(idx) +
                              " out of range; walk has " +
                              std::to_string(d.ranges.size()) + " excursions");
    }
    auto [b, e] = d.ranges[idx];
    for (size_t t = b; t < e; t++) out[t] = -out[t];
  }
  return out;
}

DeparturePMF departure_pmf(const WalkTable &table, int k) {
  if (k < 1 || k > table.max_returns()) {
    throw std::domain_error("no departure row for k = " + std::to_string(k));
  }
  uint64_t total = table.row_total(k);
  if (total == 0) {
    throw std::domain_error("departure row k = " + std::to_string(k) + " is empty");
  }
  DeparturePMF pmf;
  pmf.k = k;
  pmf.probabilities.resize(k + 1);
  for (int l = 0; l <= k; l++) {
    pmf.probabilities[l] =
        static_cast<double>(table.counts[k][l]) / static_cast<double>(total);
  }
  return pmf;
}

double balanced_return_probability(int q, MeasurementStrength strength) {
  if (q < 2 || (q % 2) != 0) {
    throw std::domain_error("balanced return needs even q >= 2");
  }
  double lam = strength.lambda;
  double per_sequence = std::pow((1.0 - lam * lam) / 4.0, q / 2);
  return static_cast<double>(binomial_coefficient(q, q / 2)) * per_sequence;
}

DeparturePMF conditional_departure_distribution(int T, int k,
                                                MeasurementStrength strength,
                                                const PureState &state) {
  require_even_in_range(T, kWeightedCap);
  if (k < 1 || k > T / 2) {
    throw std::domain_error("return count k must lie in [1, T/2]");
  }
  std::vector<double> weights = sequence_weights_by_plus_count(T, strength, state);
  std::vector<double> mass(k + 1, 0.0);
  double total = 0.0;
  uint64_t n = uint64_t{1} << T;
  for (uint64_t bits = 0; bits < n; bits++) {
    WalkScan scan = scan_walk(static_cast<uint32_t>(bits), T);
    if (scan.returns != k) continue;
    double w = weights[std::popcount(static_cast<uint32_t>(bits))];
    mass[scan.plus_departures] += w;
    total += w;
  }
  if (!(total > 0)) {
    throw std::domain_error("no walk with " + std::to_string(k) +
                            " returns carries probability at this strength");
  }
  DeparturePMF pmf;
  pmf.k = k;
  pmf.probabilities.resize(k + 1);
  for (int l = 0; l <= k; l++) pmf.probabilities[l] = mass[l] / total;
  return pmf;
}

DeparturePMF biased_departure_pmf(int T, int k, double p_plus, bool origin_ending_only) {
  require_even_in_range(T, kWeightedCap);
  if (k < 1 || k > T / 2) {
    throw std::domain_error("return count k must lie in [1, T/2]");
  }
  if (!(p_plus > 0.0 && p_plus < 1.0)) {
    throw std::domain_error("step bias must lie strictly inside (0,1)");
  }
  std::vector<double> weights(T + 1);
  for (int a = 0; a <= T; a++) {
    weights[a] = std::pow(p_plus, a) * std::pow(1.0 - p_plus, T - a);
  }
  std::vector<double> mass(k + 1, 0.0);
  double total = 0.0;
  uint64_t n = uint64_t{1} << T;
  for (uint64_t bits = 0; bits < n; bits++) {
    WalkScan scan = scan_walk(static_cast<uint32_t>(bits), T);
    if (scan.returns != k) continue;
    if (origin_ending_only && scan.final_position != 0) continue;
    double w = weights[std::popcount(static_cast<uint32_t>(bits))];
    mass[scan.plus_departures] += w;
    total += w;
  }
  if (!(total > 0)) {
    throw std::domain_error("empty conditional class at k = " + std::to_string(k));
  }
  DeparturePMF pmf;
  pmf.k = k;
  pmf.probabilities.resize(k + 1);
  for (int l = 0; l <= k; l++) pmf.probabilities[l] = mass[l] / total;
  return pmf;
}

std::vector<double> return_count_distribution(int T, MeasurementStrength strength,
                                              const PureState &state) {
  require_even_in_range(T, kWeightedCap);
  std::vector<double> weights = sequence_weights_by_plus_count(T, strength, state);
  std::vector<double> dist(T / 2 + 1, 0.0);
  uint64_t n = uint64_t{1} << T;
  for (uint64_t bits = 0; bits < n; bits++) {
    WalkScan scan = scan_walk(static_cast<uint32_t>(bits), T);
    dist[scan.returns] += weights[std::popcount(static_cast<uint32_t>(bits))];
  }
  return dist;
}

uint64_t binomial_coefficient(int n, int r) {
  if (n < 0 || r < 0 || r > n || n > 62) {
    throw std::domain_error("binomial coefficient out of supported range");
  }
  if (r > n - r) r = n - r;
  uint64_t result = 1;
  for (int i = 1; i <= r; i++) {
    // Exact at every step: result * (n - r + i) is divisible by i. The
    // intermediate product needs 128 bits near n = 62.
    result = static_cast<uint64_t>(static_cast<unsigned __int128>(result) *
                                   static_cast<unsigned>(n - r + i) /
                                   static_cast<unsigned>(i));
  }
  return result;
}

}  // namespace povmwalk
