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

#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "povmwalk/walk_oracle.hpp"

using namespace povmwalk;

namespace {

// Independent cross-check enumerator: depth-first recursion over prefixes
// instead of bit iteration, sharing no code with the library.
void recurse(int t, int T, int pos, int k, int l_seen, int l_at_return,
             std::map<std::pair<int, int>, uint64_t> &out, uint64_t &no_return) {
  if (t == T) {
    if (k == 0) {
      no_return++;
    } else {
      out[{k, l_at_return}]++;
    }
    return;
  }
  for (int sign : {+1, -1}) {
    int seen = l_seen + (pos == 0 && sign > 0 ? 1 : 0);
    int next = pos + sign;
    if (next == 0) {
      recurse(t + 1, T, next, k + 1, seen, seen, out, no_return);
    } else {
      recurse(t + 1, T, next, k, seen, l_at_return, out, no_return);
    }
  }
}

}  // namespace

TEST_CASE("two-step table") {
  const WalkTable table = enumerate_all(2);
  CHECK(table.steps == 2);
  CHECK(table.max_returns() == 1);
  CHECK(table.count(1, 0) == 1);  // - then +
  CHECK(table.count(1, 1) == 1);  // + then -
  CHECK(table.no_return_count == 2);
  CHECK(table.total_walks() == 4);
  CHECK(table.count_ending(1, 0) == 1);
  CHECK(table.count_ending(1, 1) == 1);
}

TEST_CASE("four-step table, both views") {
  const WalkTable table = enumerate_all(4);
  SUBCASE("all-walks view") {
    CHECK(table.count(1, 0) == 3);
    CHECK(table.count(1, 1) == 3);
    CHECK(table.count(2, 0) == 1);
    CHECK(table.count(2, 1) == 2);
    CHECK(table.count(2, 2) == 1);
    CHECK(table.no_return_count == 6);
    CHECK(table.total_walks() == 16);
  }
  SUBCASE("origin-ending view") {
    CHECK(table.count_ending(1, 0) == 1);
    CHECK(table.count_ending(1, 1) == 1);
    CHECK(table.count_ending(2, 0) == 1);
    CHECK(table.count_ending(2, 1) == 2);
    CHECK(table.count_ending(2, 2) == 1);
  }
}

TEST_CASE("enumeration partitions the full walk space") {
  for (int T = 2; T <= 12; T += 2) {
    const WalkTable table = enumerate_all(T);
    CHECK(table.total_walks() == (uint64_t{1} << T));
  }
}

TEST_CASE("independent recursive enumerator agrees") {
  for (int T = 2; T <= 10; T += 2) {
    CAPTURE(T);
    std::map<std::pair<int, int>, uint64_t> expected;
    uint64_t no_return = 0;
    recurse(0, T, 0, 0, 0, 0, expected, no_return);
    const WalkTable table = enumerate_all(T);
    CHECK(table.no_return_count == no_return);
    for (int k = 1; k <= table.max_returns(); k++) {
      for (int l = 0; l <= k; l++) {
        auto it = expected.find({k, l});
        const uint64_t want = it == expected.end() ? 0 : it->second;
        CHECK(table.count(k, l) == want);
      }
    }
  }
}

TEST_CASE("twelve-step row totals") {
  const WalkTable table = enumerate_all(12);
  CHECK(table.no_return_count == 924);
  CHECK(table.row_total(1) == 924);
  CHECK(table.row_total(2) == 840);
  CHECK(table.row_total(3) == 672);
  CHECK(table.row_total(4) == 448);
  CHECK(table.row_total(5) == 224);
  CHECK(table.row_total(6) == 64);
}

TEST_CASE("enumeration domain limits") {
  CHECK_THROWS_AS(enumerate_all(26), std::domain_error);
  CHECK_THROWS_AS(enumerate_all(3), std::domain_error);
  CHECK_THROWS_AS(enumerate_all(0), std::domain_error);
}

TEST_CASE("reflection identity holds exactly at small T") {
  for (int T = 2; T <= 12; T += 2) {
    const ReflectionReport report = reflection_identity_check(enumerate_all(T));
    CHECK(report.all_exact);
    CHECK(report.violations.empty());
  }
}

TEST_CASE("reflection identity check reports tampering") {
  WalkTable table = enumerate_all(4);
  table.counts[2][1] += 1;
  const ReflectionReport report = reflection_identity_check(table);
  CHECK_FALSE(report.all_exact);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].k == 2);
  CHECK(report.violations[0].l == 1);
  CHECK(report.violations[0].expected == 2);
  CHECK(report.violations[0].actual == 3);
  CHECK_FALSE(report.violations[0].ending_view);
}

TEST_CASE("excursion decomposition and reflection") {
  const std::vector<int8_t> walk{+1, -1, -1, +1, +1, +1};
  const ExcursionDecomposition d = decompose_excursions(walk);
  REQUIRE(d.ranges.size() == 2);
  CHECK(d.ranges[0] == std::make_pair(size_t{0}, size_t{2}));
  CHECK(d.ranges[1] == std::make_pair(size_t{2}, size_t{4}));

  SUBCASE("reflecting the first excursion flips only its signs") {
    const std::vector<int8_t> flipped = reflect_excursions(walk, {0});
    CHECK(flipped == std::vector<int8_t>{-1, +1, -1, +1, +1, +1});
  }
  SUBCASE("reflection is an involution") {
    CHECK(reflect_excursions(reflect_excursions(walk, {0, 1}), {0, 1}) == walk);
  }
  SUBCASE("reflection preserves the return count and total sign counts") {
    const std::vector<int8_t> flipped = reflect_excursions(walk, {1});
    CHECK(decompose_excursions(flipped).ranges.size() == 2);
    int plus_before = 0, plus_after = 0;
    for (int8_t s : walk) plus_before += s > 0;
    for (int8_t s : flipped) plus_after += s > 0;
    CHECK(plus_before == plus_after);
  }
  SUBCASE("out-of-range excursion index throws") {
    CHECK_THROWS_AS(reflect_excursions(walk, {2}), std::domain_error);
  }
}

TEST_CASE("departure pmf of a table row is binomial") {
  const WalkTable table = enumerate_all(8);
  const DeparturePMF pmf = departure_pmf(table, 2);
  REQUIRE(pmf.probabilities.size() == 3);
  CHECK(pmf.probabilities[0] == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(pmf.probabilities[1] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(pmf.probabilities[2] == doctest::Approx(0.25).epsilon(1e-14));
  CHECK_THROWS_AS(departure_pmf(table, 0), std::domain_error);
  CHECK_THROWS_AS(departure_pmf(table, 5), std::domain_error);
}

TEST_CASE("balanced return probability") {
  CHECK(balanced_return_probability(2, MeasurementStrength(0.5)) ==
        doctest::Approx(0.375).epsilon(1e-14));
  CHECK(balanced_return_probability(2, MeasurementStrength(0.0)) ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK(balanced_return_probability(4, MeasurementStrength(0.0)) ==
        doctest::Approx(0.375).epsilon(1e-14));
  CHECK(balanced_return_probability(6, MeasurementStrength(0.0)) ==
        doctest::Approx(0.3125).epsilon(1e-14));
  CHECK_THROWS_AS(balanced_return_probability(3, MeasurementStrength(0.5)),
                  std::domain_error);
  CHECK_THROWS_AS(balanced_return_probability(0, MeasurementStrength(0.5)),
                  std::domain_error);
}

TEST_CASE("conditional departures are state independent and binomial") {
  const MeasurementStrength half(0.5);
  const DeparturePMF from_z = conditional_departure_distribution(12, 3, half, PureState::z_plus());
  const DeparturePMF from_x = conditional_departure_distribution(12, 3, half, PureState::x_plus());
  REQUIRE(from_z.probabilities.size() == 4);
  const std::vector<double> binom{0.125, 0.375, 0.375, 0.125};
  for (int l = 0; l <= 3; l++) {
    CHECK(std::abs(from_z.probabilities[l] - binom[l]) < 1e-12);
    CHECK(std::abs(from_x.probabilities[l] - binom[l]) < 1e-12);
  }
  CHECK_THROWS_AS(conditional_departure_distribution(22, 3, half, PureState::z_plus()),
                  std::domain_error);
  CHECK_THROWS_AS(conditional_departure_distribution(12, 0, half, PureState::z_plus()),
                  std::domain_error);
}

TEST_CASE("biased walks keep binomial departures in both views") {
  for (const double p : {0.5, 0.75, 0.9}) {
    for (const bool ending : {false, true}) {
      for (int k = 1; k <= 5; k++) {
        CAPTURE(p);
        CAPTURE(ending);
        CAPTURE(k);
        const DeparturePMF pmf = biased_departure_pmf(12, k, p, ending);
        for (int l = 0; l <= k; l++) {
          const double binom = static_cast<double>(binomial_coefficient(k, l)) *
                               std::pow(0.5, k);
          CHECK(std::abs(pmf.probabilities[l] - binom) < 1e-12);
        }
      }
    }
  }
  CHECK_THROWS_AS(biased_departure_pmf(12, 1, 0.0, false), std::domain_error);
  CHECK_THROWS_AS(biased_departure_pmf(12, 1, 1.0, false), std::domain_error);
}

TEST_CASE("return count distribution") {
  SUBCASE("two steps at half strength from a basis state") {
    const std::vector<double> dist =
        return_count_distribution(2, MeasurementStrength(0.5), PureState::z_plus());
    REQUIRE(dist.size() == 2);
    CHECK(dist[0] == doctest::Approx(0.625).epsilon(1e-14));
    CHECK(dist[1] == doctest::Approx(0.375).epsilon(1e-14));
  }
  SUBCASE("zero strength reduces to uniform counting") {
    const std::vector<double> dist =
        return_count_distribution(12, MeasurementStrength(0.0), PureState::x_plus());
    const std::vector<double> expected{924, 924, 840, 672, 448, 224, 64};
    REQUIRE(dist.size() == expected.size());
    double sum = 0.0;
    for (size_t k = 0; k < dist.size(); k++) {
      CHECK(dist[k] == doctest::Approx(expected[k] / 4096.0).epsilon(1e-12));
      sum += dist[k];
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("mass at k = 1 matches the two-step recurrence formula") {
    for (const double lambda : {0.0, 0.3, 0.5, 0.9}) {
      const MeasurementStrength strength(lambda);
      const std::vector<double> dist =
          return_count_distribution(2, strength, PureState::z_plus());
      CHECK(dist[1] == doctest::Approx(balanced_return_probability(2, strength)).epsilon(1e-12));
    }
  }
}

TEST_CASE("binomial coefficients") {
  CHECK(binomial_coefficient(0, 0) == 1);
  CHECK(binomial_coefficient(5, 2) == 10);
  CHECK(binomial_coefficient(20, 10) == 184756);
  CHECK(binomial_coefficient(62, 31) == 465428353255261088ULL);
  CHECK_THROWS_AS(binomial_coefficient(63, 31), std::domain_error);
  CHECK_THROWS_AS(binomial_coefficient(5, -1), std::domain_error);
  CHECK_THROWS_AS(binomial_coefficient(5, 6), std::domain_error);
}
