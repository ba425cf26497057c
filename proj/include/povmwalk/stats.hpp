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

#ifndef POVMWALK_STATS_HPP
#define POVMWALK_STATS_HPP

#include <cstdint>
#include <vector>

#include "povmwalk/trajectory.hpp"

namespace povmwalk {

/// Left-closed bins [edges[i], edges[i+1]); values outside the edge range
/// are tracked separately so binning always conserves the input count.
struct Histogram {
  std::vector<double> edges;
  std::vector<uint64_t> counts;
  uint64_t below = 0;
  uint64_t above = 0;
  uint64_t total = 0;
};

/// Edges must be strictly increasing with at least two entries.
Histogram histogram(const std::vector<double> &values, std::vector<double> edges);

enum class GofStatus { ok, underpowered };

struct GofReport {
  double statistic = 0.0;
  double p_value = 1.0;
  int dof = 0;
  int bins_used = 0;
  GofStatus status = GofStatus::ok;
};

/// Pearson chi-square of observed counts against an expected pmf on the same
/// support. Bins are merged left to right until each merged bin's expected
/// count reaches 5; a short trailing remainder is folded into the last bin.
/// dof = merged bins - 1. Fewer than two merged bins: underpowered, p = 1.
GofReport chi_square_gof(const std::vector<uint64_t> &counts,
                         const std::vector<double> &pmf);

/// chi_square_gof against Binomial(k, p); counts indexed by l = 0..k.
GofReport chi_square_binomial(const std::vector<uint64_t> &counts, int k,
                              double p = 0.5);

/// Two-sample chi-square homogeneity test of the n = n_plus - n_minus values
/// of two record sets, over the shared integer grid. Grid cells are merged
/// left to right until both rows' expected counts reach 5.
GofReport two_sample_report(const std::vector<OriginRecord> &a,
                            const std::vector<OriginRecord> &b);

/// Normalized return-count distribution with successive ratios
/// ratios[k] = P(k+1)/P(k) (NaN where P(k) = 0).
struct ZeroCrossingSummary {
  uint64_t total = 0;
  std::vector<uint64_t> counts;
  std::vector<double> probabilities;
  std::vector<double> ratios;
};

ZeroCrossingSummary zero_crossing_summary(const std::vector<uint64_t> &return_histogram);

/// Probability mass of n = n_plus - n_minus over its natural lattice
/// {-N, -N+2, ..., N}. Requires a non-empty record set sharing one N >= 1.
struct LatticePMF {
  int32_t n_total = 0;
  std::vector<int32_t> n_values;
  std::vector<double> n_over_N;
  std::vector<uint64_t> counts;
  std::vector<double> probabilities;
};

LatticePMF lattice_pmf(const std::vector<OriginRecord> &records);

}  // namespace povmwalk

#endif
