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

#include "povmwalk/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

namespace povmwalk {

namespace {

constexpr double kExpectedFloor = 5.0;

double chi_square_sf(double statistic, int dof) {
  if (dof < 1) return 1.0;
  const boost::math::chi_squared_distribution<double> dist(static_cast<double>(dof));
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

std::vector<double> binomial_pmf(int k, double p) {
  if (k < 0) throw std::domain_error("chi-square: k must be non-negative");
  if (!(p > 0.0) || !(p < 1.0)) {
    throw std::domain_error("chi-square: p must lie in (0, 1)");
  }
  std::vector<double> pmf(static_cast<size_t>(k) + 1);
  // pmf(l+1)/pmf(l) = (k-l)/(l+1) * p/(1-p); start from (1-p)^k.
  double value = std::pow(1.0 - p, k);
  const double odds = p / (1.0 - p);
  for (int l = 0; l <= k; ++l) {
    pmf[static_cast<size_t>(l)] = value;
    value *= odds * static_cast<double>(k - l) / static_cast<double>(l + 1);
  }
  return pmf;
}

}  // namespace

Histogram histogram(const std::vector<double> &values, std::vector<double> edges) {
  if (edges.size() < 2) {
    throw std::domain_error("histogram: need at least two edges");
  }
  for (size_t i = 0; i + 1 < edges.size(); ++i) {
    if (!(edges[i] < edges[i + 1])) {
      throw std::domain_error("histogram: edges must be strictly increasing");
    }
  }
  Histogram h;
  h.edges = std::move(edges);
  h.counts.assign(h.edges.size() - 1, 0);
  for (const double v : values) {
    ++h.total;
    if (v < h.edges.front()) {
      ++h.below;
    } else if (v >= h.edges.back()) {
      ++h.above;
    } else {
      const auto it = std::upper_bound(h.edges.begin(), h.edges.end(), v);
      h.counts[static_cast<size_t>(it - h.edges.begin()) - 1] += 1;
    }
  }
  return h;
}

GofReport chi_square_gof(const std::vector<uint64_t> &counts,
                         const std::vector<double> &pmf) {
  if (counts.size() != pmf.size() || counts.empty()) {
    throw std::domain_error("chi-square: counts and pmf must have equal, nonzero length");
  }
  double pmf_sum = 0.0;
  for (const double p : pmf) {
    if (p < 0.0) throw std::domain_error("chi-square: pmf entries must be non-negative");
    pmf_sum += p;
  }
  if (std::abs(pmf_sum - 1.0) > 1e-9) {
    throw std::domain_error("chi-square: pmf must sum to 1");
  }
  uint64_t total = 0;
  for (const uint64_t c : counts) total += c;
  if (total == 0) {
    GofReport report;
    report.status = GofStatus::underpowered;
    return report;
  }

  // Greedy left-to-right merge on expected mass; trailing remainder folds
  // into the last closed bin.
  std::vector<std::pair<double, double>> bins;  // (observed, expected)
  double obs = 0.0;
  double exp = 0.0;
  for (size_t i = 0; i < counts.size(); ++i) {
    obs += static_cast<double>(counts[i]);
    exp += static_cast<double>(total) * pmf[i];
    if (exp >= kExpectedFloor) {
      bins.emplace_back(obs, exp);
      obs = 0.0;
      exp = 0.0;
    }
  }
  if (obs > 0.0 || exp > 0.0) {
    if (bins.empty()) {
      bins.emplace_back(obs, exp);
    } else {
      bins.back().first += obs;
      bins.back().second += exp;
    }
  }

  GofReport report;
  report.bins_used = static_cast<int>(bins.size());
  for (const auto &[o, e] : bins) {
    const double d = o - e;
    report.statistic += d * d / e;
  }
  if (bins.size() < 2) {
    report.status = GofStatus::underpowered;
    report.dof = 0;
    report.p_value = 1.0;
    return report;
  }
  report.dof = static_cast<int>(bins.size()) - 1;
  report.p_value = chi_square_sf(report.statistic, report.dof);
  return report;
}

GofReport chi_square_binomial(const std::vector<uint64_t> &counts, int k, double p) {
  if (counts.size() != static_cast<size_t>(k) + 1) {
    throw std::domain_error("chi-square: counts must cover l = 0..k");
  }
  return chi_square_gof(counts, binomial_pmf(k, p));
}

GofReport two_sample_report(const std::vector<OriginRecord> &a,
                            const std::vector<OriginRecord> &b) {
  if (a.empty() || b.empty()) {
    throw std::domain_error("two-sample: both record sets must be non-empty");
  }
  std::map<int32_t, std::pair<uint64_t, uint64_t>> grid;
  for (const OriginRecord &r : a) grid[r.n()].first += 1;
  for (const OriginRecord &r : b) grid[r.n()].second += 1;

  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double grand = na + nb;

  // Merge grid cells left to right until both rows' expected counts clear
  // the floor; fold any trailing remainder into the last closed bin.
  std::vector<std::pair<double, double>> bins;  // (observed A, observed B)
  double ca = 0.0;
  double cb = 0.0;
  for (const auto &[n, cell] : grid) {
    ca += static_cast<double>(cell.first);
    cb += static_cast<double>(cell.second);
    const double column = ca + cb;
    if (na * column / grand >= kExpectedFloor && nb * column / grand >= kExpectedFloor) {
      bins.emplace_back(ca, cb);
      ca = 0.0;
      cb = 0.0;
    }
  }
  if (ca > 0.0 || cb > 0.0) {
    if (bins.empty()) {
      bins.emplace_back(ca, cb);
    } else {
      bins.back().first += ca;
      bins.back().second += cb;
    }
  }

  GofReport report;
  report.bins_used = static_cast<int>(bins.size());
  if (bins.size() < 2) {
    report.status = GofStatus::underpowered;
    return report;
  }
  for (const auto &[oa, ob] : bins) {
    const double column = oa + ob;
    const double ea = na * column / grand;
    const double eb = nb * column / grand;
    report.statistic += (oa - ea) * (oa - ea) / ea + (ob - eb) * (ob - eb) / eb;
  }
  report.dof = static_cast<int>(bins.size()) - 1;
  report.p_value = chi_square_sf(report.statistic, report.dof);
  return report;
}

ZeroCrossingSummary zero_crossing_summary(const std::vector<uint64_t> &return_histogram) {
  ZeroCrossingSummary summary;
  summary.counts = return_histogram;
  for (const uint64_t c : return_histogram) summary.total += c;
  if (summary.total == 0) {
    throw std::domain_error("zero-crossing summary: empty histogram");
  }
  summary.probabilities.reserve(return_histogram.size());
  for (const uint64_t c : return_histogram) {
    summary.probabilities.push_back(static_cast<double>(c) /
                                    static_cast<double>(summary.total));
  }
  if (!return_histogram.empty()) {
    summary.ratios.reserve(return_histogram.size() - 1);
    for (size_t k = 0; k + 1 < return_histogram.size(); ++k) {
      summary.ratios.push_back(
          return_histogram[k] == 0
              ? std::numeric_limits<double>::quiet_NaN()
              : static_cast<double>(return_histogram[k + 1]) /
                    static_cast<double>(return_histogram[k]));
    }
  }
  return summary;
}

LatticePMF lattice_pmf(const std::vector<OriginRecord> &records) {
  if (records.empty()) {
    throw std::domain_error("lattice pmf: empty record set");
  }
  const int32_t n_total = records.front().total();
  if (n_total < 1) {
    throw std::domain_error("lattice pmf: records must have departures");
  }
  LatticePMF pmf;
  pmf.n_total = n_total;
  pmf.counts.assign(static_cast<size_t>(n_total) + 1, 0);
  for (const OriginRecord &r : records) {
    if (r.total() != n_total) {
      throw std::domain_error("lattice pmf: records must share one departure count");
    }
    pmf.counts[static_cast<size_t>(r.n_plus)] += 1;
  }
  pmf.n_values.reserve(pmf.counts.size());
  pmf.n_over_N.reserve(pmf.counts.size());
  pmf.probabilities.reserve(pmf.counts.size());
  for (size_t i = 0; i < pmf.counts.size(); ++i) {
    const int32_t n = 2 * static_cast<int32_t>(i) - n_total;
    pmf.n_values.push_back(n);
    pmf.n_over_N.push_back(static_cast<double>(n) / static_cast<double>(n_total));
    pmf.probabilities.push_back(static_cast<double>(pmf.counts[i]) /
                                static_cast<double>(records.size()));
  }
  return pmf;
}

}  // namespace povmwalk
