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

#include "povmwalk/trajectory.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>
#include <utility>

namespace povmwalk {

namespace {

constexpr double kWeightSumTol = 1e-12;

}  // namespace

EnsembleSpec EnsembleSpec::z_basis() {
  EnsembleSpec spec;
  spec.kind = Kind::z_basis;
  spec.members = {{PureState::z_plus(), 0.5}, {PureState::z_minus(), 0.5}};
  return spec;
}

EnsembleSpec EnsembleSpec::x_basis() {
  EnsembleSpec spec;
  spec.kind = Kind::x_basis;
  spec.members = {{PureState::x_plus(), 0.5}, {PureState::x_minus(), 0.5}};
  return spec;
}

EnsembleSpec EnsembleSpec::custom(std::vector<Member> members) {
  if (members.empty()) {
    throw std::domain_error("ensemble: custom member list is empty");
  }
  double sum = 0.0;
  for (const Member &m : members) {
    if (!(m.weight > 0.0)) {
      throw std::domain_error("ensemble: member weight must be positive");
    }
    if (!m.state.is_normalized()) {
      throw std::domain_error("ensemble: member state must be normalized");
    }
    sum += m.weight;
  }
  if (std::abs(sum - 1.0) > kWeightSumTol) {
    throw std::domain_error("ensemble: weights must sum to 1");
  }
  EnsembleSpec spec;
  spec.kind = Kind::custom;
  spec.members = std::move(members);
  return spec;
}

size_t EnsembleSpec::sample_index(double randomness) const {
  double cumulative = 0.0;
  for (size_t i = 0; i + 1 < members.size(); ++i) {
    cumulative += members[i].weight;
    if (randomness < cumulative) return i;
  }
  return members.size() - 1;
}

void ProtocolConfig::validate() const {
  if (steps <= 0 || steps % 2 != 0) {
    throw std::domain_error("protocol: steps must be a positive even integer");
  }
  if (copies == 0) {
    throw std::domain_error("protocol: copies must be positive");
  }
  if (condition_k.has_value()) {
    if (mode != ProtocolMode::unfiltered) {
      throw std::domain_error("protocol: return-count conditioning applies to unfiltered mode only");
    }
    if (*condition_k < 1 || *condition_k > steps / 2) {
      throw std::domain_error("protocol: condition_k must lie in [1, steps/2]");
    }
  }
}

double OriginRecord::n_over_N() const {
  if (total() == 0) {
    throw std::domain_error("origin record: n/N undefined without departures");
  }
  return static_cast<double>(n()) / static_cast<double>(total());
}

PureState sample_preparation(const EnsembleSpec &spec, double randomness) {
  if (spec.members.empty()) {
    throw std::domain_error("ensemble: custom member list is empty");
  }
  return spec.members[spec.sample_index(randomness)].state;
}

Trajectory run_unfiltered(const PureState &state, int steps,
                          MeasurementStrength strength, UniformSource &draw) {
  if (steps < 1) throw std::domain_error("trajectory: steps must be >= 1");
  const MeasurementPair pair = build_measurement_pair(strength);
  Trajectory traj;
  traj.outcomes.reserve(static_cast<size_t>(steps));
  traj.initial_state = state.normalized();
  PureState current = traj.initial_state;
  for (int t = 0; t < steps; ++t) {
    const StepResult step = sample_step(current, pair, draw());
    traj.outcomes.push_back(static_cast<int8_t>(step_of(step.outcome)));
    current = step.state;
  }
  traj.final_state = current;
  return traj;
}

Trajectory run_filtered(const PureState &state, int steps,
                        MeasurementStrength strength, UniformSource &draw) {
  if (steps < 2 || steps % 2 != 0) {
    throw std::domain_error("trajectory: filtered steps must be even and >= 2");
  }
  const MeasurementPair pair = build_measurement_pair(strength);
  Trajectory traj;
  traj.outcomes.reserve(static_cast<size_t>(steps));
  traj.initial_state = state.normalized();
  PureState current = traj.initial_state;
  for (int t = 0; t < steps; t += 2) {
    const StepResult step = sample_step(current, pair, draw());
    traj.outcomes.push_back(static_cast<int8_t>(step_of(step.outcome)));
    // The reversal step occurs with probability one and consumes no
    // randomness; it restores the pre-step state up to a positive scalar.
    const Outcome reverse = step.outcome == Outcome::plus ? Outcome::minus : Outcome::plus;
    traj.outcomes.push_back(static_cast<int8_t>(step_of(reverse)));
    current = apply_outcome(step.state, pair, reverse).normalized();
  }
  traj.final_state = current;
  return traj;
}

OriginRecord origin_stats(const Trajectory &traj) {
  OriginRecord snapshot;
  int32_t position = 0;
  int32_t n_plus = 0;
  int32_t n_minus = 0;
  int32_t returns = 0;
  for (const int8_t sign : traj.outcomes) {
    if (position == 0) {
      sign > 0 ? ++n_plus : ++n_minus;
    }
    position += sign;
    if (position == 0) {
      ++returns;
      snapshot = OriginRecord{returns, n_plus, n_minus};
    }
  }
  return snapshot;
}

std::optional<OriginRecord> origin_stats(const Trajectory &traj, int truncate_at_k) {
  if (truncate_at_k < 1) {
    throw std::domain_error("origin stats: truncation count must be >= 1");
  }
  int32_t position = 0;
  int32_t n_plus = 0;
  int32_t n_minus = 0;
  int32_t returns = 0;
  for (const int8_t sign : traj.outcomes) {
    if (position == 0) {
      sign > 0 ? ++n_plus : ++n_minus;
    }
    position += sign;
    if (position == 0) {
      ++returns;
      if (returns == truncate_at_k) {
        return OriginRecord{returns, n_plus, n_minus};
      }
    }
  }
  return std::nullopt;
}

namespace {

// One copy of the campaign loop. Outcome statistics depend only on the
// basis weights (w0, w1) because both operators are diagonal; phases are
// irrelevant to every recorded quantity, so the loop tracks weights alone.
struct CopyOutcome {
  OriginRecord record;
  int32_t returns = 0;
  bool retained = false;
};

CopyOutcome run_one_copy(const EnsembleSpec &spec, const ProtocolConfig &config,
                         uint64_t copy_index) {
  PhiloxStream rng(config.seed, copy_index);
  const PureState prepared = spec.members[spec.sample_index(rng.uniform())].state;
  double w0 = std::norm(prepared.amp0);
  double w1 = std::norm(prepared.amp1);
  const double lambda = config.strength.lambda;
  const double x = 0.5 * (1.0 + lambda);
  const double y = 0.5 * (1.0 - lambda);
  const int steps = config.steps;
  const bool filtered = config.mode == ProtocolMode::filtered;

  int32_t position = 0;
  int32_t n_plus = 0;
  int32_t n_minus = 0;
  int32_t returns = 0;
  OriginRecord snapshot;

  if (filtered) {
    // Each sampled step is undone by a forced reversal, so the weights are
    // restored after every pair and every pair starts at the origin.
    const double p_plus = w0 * x + w1 * y;
    const int pairs = steps / 2;
    for (int t = 0; t < pairs; ++t) {
      rng.uniform() < p_plus ? ++n_plus : ++n_minus;
    }
    returns = pairs;
    snapshot = OriginRecord{returns, n_plus, n_minus};
  } else {
    for (int t = 0; t < steps; ++t) {
      if (std::abs(position) > steps - t) break;  // no further return possible
      const double p_plus = w0 * x + w1 * y;
      const bool plus = rng.uniform() < p_plus;
      if (position == 0) {
        plus ? ++n_plus : ++n_minus;
      }
      position += plus ? 1 : -1;
      if (plus) {
        w0 *= x;
        w1 *= y;
      } else {
        w0 *= y;
        w1 *= x;
      }
      const double sum = w0 + w1;
      w0 /= sum;
      w1 /= sum;
      if (position == 0) {
        ++returns;
        snapshot = OriginRecord{returns, n_plus, n_minus};
      }
    }
  }

  CopyOutcome out;
  out.returns = returns;
  if (config.condition_k.has_value()) {
    out.retained = returns == *config.condition_k;
  } else {
    out.retained = true;
  }
  out.record = snapshot;
  return out;
}

struct ChunkOutcome {
  std::vector<OriginRecord> records;
  std::vector<uint64_t> histogram;
  uint64_t retained = 0;
};

}  // namespace

CampaignResult run_campaign(const EnsembleSpec &spec, const ProtocolConfig &config,
                            int workers) {
  config.validate();
  if (spec.members.empty()) {
    throw std::domain_error("ensemble: custom member list is empty");
  }
  if (workers < 1) workers = 1;

  constexpr uint64_t kChunk = 1u << 16;
  const uint64_t copies = config.copies;
  const uint64_t chunk_count = (copies + kChunk - 1) / kChunk;
  const size_t histogram_size = static_cast<size_t>(config.steps / 2) + 1;

  std::vector<ChunkOutcome> chunks(chunk_count);
  std::atomic<uint64_t> next_chunk{0};

  auto worker_loop = [&]() {
    for (;;) {
      const uint64_t chunk = next_chunk.fetch_add(1);
      if (chunk >= chunk_count) break;
      ChunkOutcome out;
      out.histogram.assign(histogram_size, 0);
      const uint64_t begin = chunk * kChunk;
      const uint64_t end = std::min(copies, begin + kChunk);
      for (uint64_t copy = begin; copy < end; ++copy) {
        const CopyOutcome result = run_one_copy(spec, config, copy);
        ++out.histogram[static_cast<size_t>(result.returns)];
        if (result.retained) {
          ++out.retained;
          out.records.push_back(result.record);
        }
      }
      chunks[chunk] = std::move(out);
    }
  };

  if (workers == 1 || chunk_count == 1) {
    worker_loop();
  } else {
    const uint64_t spawn = std::min<uint64_t>(static_cast<uint64_t>(workers), chunk_count);
    std::vector<std::thread> pool;
    pool.reserve(spawn);
    for (uint64_t i = 0; i < spawn; ++i) pool.emplace_back(worker_loop);
    for (std::thread &t : pool) t.join();
  }

  // Merging in chunk-index order keeps the record sequence identical for
  // every worker count.
  CampaignResult result;
  result.copies = copies;
  result.return_histogram.assign(histogram_size, 0);
  for (ChunkOutcome &chunk : chunks) {
    result.retained += chunk.retained;
    for (size_t k = 0; k < histogram_size; ++k) {
      result.return_histogram[k] += chunk.histogram[k];
    }
    result.records.insert(result.records.end(), chunk.records.begin(), chunk.records.end());
    chunk.records.clear();
    chunk.records.shrink_to_fit();
  }
  return result;
}

bool recurrence_audit(const PureState &state, const Trajectory &traj,
                      MeasurementStrength strength) {
  constexpr double kRecurrenceTol = 1e-10;
  const MeasurementPair pair = build_measurement_pair(strength);
  const PureState reference = state.normalized();
  PureState current = reference;
  int32_t position = 0;
  for (const int8_t sign : traj.outcomes) {
    const Outcome outcome = sign > 0 ? Outcome::plus : Outcome::minus;
    current = apply_outcome(current, pair, outcome).normalized();
    position += sign;
    if (position == 0) {
      const double d0 = std::abs(current.amp0 - reference.amp0);
      const double d1 = std::abs(current.amp1 - reference.amp1);
      if (std::max(d0, d1) > kRecurrenceTol) return false;
    }
  }
  return true;
}

}  // namespace povmwalk
