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

#ifndef POVMWALK_TRAJECTORY_HPP
#define POVMWALK_TRAJECTORY_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "povmwalk/qubit.hpp"
#include "povmwalk/rng.hpp"

namespace povmwalk {

/// Source of uniform draws in [0,1) for the per-trajectory operations.
using UniformSource = std::function<double()>;

/// Preparation ensemble: equal Z mixture {|0>,|1>}, equal X mixture
/// {|+>,|->}, or an explicit weighted list.
struct EnsembleSpec {
  enum class Kind { z_basis, x_basis, custom };

  struct Member {
    PureState state;
    double weight;
  };

  Kind kind;
  std::vector<Member> members;

  static EnsembleSpec z_basis();
  static EnsembleSpec x_basis();
  /// Weights must be positive and sum to 1 within 1e-12; states normalized.
  static EnsembleSpec custom(std::vector<Member> members);

  /// Index of the member selected by a uniform draw (cumulative weights,
  /// first member for randomness < weight_0).
  size_t sample_index(double randomness) const;
};

enum class ProtocolMode { filtered, unfiltered };

struct ProtocolConfig {
  MeasurementStrength strength;
  int steps;  // T, even and positive
  ProtocolMode mode;
  uint64_t copies;
  uint64_t seed;
  std::optional<int> condition_k;  // unfiltered only; 1 <= k <= T/2

  /// Throws std::domain_error on any invariant violation.
  void validate() const;
};

/// One generated trajectory: the outcome signs and the states bracketing it.
struct Trajectory {
  std::vector<int8_t> outcomes;  // +1 / -1 per step
  PureState initial_state;
  PureState final_state;
};

/// Origin-return statistics of one trajectory. Departures are the outcomes
/// taken from position 0, counted at origin visits 0..k-1, so
/// n_plus + n_minus = k exactly.
struct OriginRecord {
  int32_t k = 0;
  int32_t n_plus = 0;
  int32_t n_minus = 0;

  int32_t n() const { return n_plus - n_minus; }
  int32_t total() const { return n_plus + n_minus; }
  /// (n_plus - n_minus) / (n_plus + n_minus); requires k >= 1.
  double n_over_N() const;

  friend bool operator==(const OriginRecord &, const OriginRecord &) = default;
};

struct CampaignResult {
  std::vector<OriginRecord> records;      // retained copies, in copy order
  std::vector<uint64_t> return_histogram; // index k = 0..T/2, all copies
  uint64_t copies = 0;
  uint64_t retained = 0;

  double acceptance_rate() const {
    return copies == 0 ? 0.0 : static_cast<double>(retained) / static_cast<double>(copies);
  }
};

/// Draws a member state from the ensemble.
PureState sample_preparation(const EnsembleSpec &spec, double randomness);

/// T sampled measurement steps from a normalized state.
Trajectory run_unfiltered(const PureState &state, int steps,
                          MeasurementStrength strength, UniformSource &draw);

/// Odd steps sampled, every even step forced to the opposite sign of its
/// predecessor, so the walker returns to the origin at each even step and
/// the system state is restored there up to a positive scalar. T even.
Trajectory run_filtered(const PureState &state, int steps,
                        MeasurementStrength strength, UniformSource &draw);

/// Origin statistics over all k returns of the trajectory.
OriginRecord origin_stats(const Trajectory &traj);

/// Same, truncated at the k-th return; nullopt if the trajectory has fewer
/// than truncate_at_k returns.
std::optional<OriginRecord> origin_stats(const Trajectory &traj, int truncate_at_k);

/// Runs `config.copies` independent copies: sample a preparation, run the
/// protocol, extract the record. With condition_k set (unfiltered mode) only
/// trajectories with exactly that many returns are retained. The result is a
/// pure function of (spec, config); `workers` changes wall time only.
/// Per-copy randomness stream index = copy index.
CampaignResult run_campaign(const EnsembleSpec &spec, const ProtocolConfig &config,
                            int workers = 1);

/// Replays the trajectory from its initial state and checks that each
/// balanced prefix (equal + and - counts, i.e. every origin visit) restores
/// the renormalized state to within 1e-10.
bool recurrence_audit(const PureState &state, const Trajectory &traj,
                      MeasurementStrength strength);

}  // namespace povmwalk

#endif
