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

#include "povmwalk/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "povmwalk/io.hpp"
#include "povmwalk/qubit.hpp"
#include "povmwalk/rng.hpp"
#include "povmwalk/stats.hpp"
#include "povmwalk/trajectory.hpp"
#include "povmwalk/verify.hpp"
#include "povmwalk/walk_oracle.hpp"

#ifndef POVMWALK_VERSION
#define POVMWALK_VERSION "0.0.0"
#endif

namespace povmwalk {

namespace {

std::string iso_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

int env_workers() {
  const char *raw = std::getenv("POVMWALK_WORKERS");
  if (raw == nullptr) return 1;
  const int parsed = std::atoi(raw);
  return parsed >= 1 ? parsed : 1;
}

// Output path for the secondary CSV table: <base>.<tag>.csv where <base> is
// the primary path without a trailing .csv/.json extension.
std::string sibling_path(const std::string &out, const std::string &tag) {
  std::string base = out;
  for (const char *ext : {".csv", ".json"}) {
    const size_t len = std::string(ext).size();
    if (base.size() > len && base.compare(base.size() - len, len, ext) == 0) {
      base.resize(base.size() - len);
      break;
    }
  }
  return base + "." + tag + ".csv";
}

void write_manifest(const std::string &out, const std::string &command,
                    JsonValue config, JsonValue result) {
  JsonValue manifest = JsonValue::object();
  manifest.add("schema_version", JsonValue::integer(1));
  manifest.add("artifact", JsonValue::string("povmwalk"));
  manifest.add("artifact_version", JsonValue::string(POVMWALK_VERSION));
  manifest.add("command", JsonValue::string(command));
  manifest.add("timestamp", JsonValue::string(iso_timestamp()));
  manifest.add("config", std::move(config));
  manifest.add("result", std::move(result));
  write_text_file(out + ".manifest.json", manifest.serialize(true));
}

struct SimulateOptions {
  std::string ensemble;
  double lambda = 0.0;
  int steps = 0;
  std::string mode;
  uint64_t copies = 0;
  int condition_k = -1;  // -1: absent
  uint64_t seed = 0;
  int workers = 0;  // 0: resolve from environment
  std::string out;
  std::string format;  // empty: infer from extension
};

struct OracleOptions {
  int steps = 0;
  bool quantum = false;
  double lambda = 0.5;
  std::string state = "z0";
  int condition_k = -1;
  std::string out;
  std::string format;
};

struct VerifyOptions {
  uint64_t seed = 20260819;
  int cases = 1000;
};

struct TomographyOptions {
  std::string state;
  double lambda = 0.0;
  uint64_t shots = 0;
  uint64_t seed = 0;
  std::string out;
  std::string format;
};

PureState named_state(const std::string &name) {
  if (name == "z0") return PureState::z_plus();
  if (name == "z1") return PureState::z_minus();
  if (name == "x+") return PureState::x_plus();
  if (name == "x-") return PureState::x_minus();
  if (name == "y+") return PureState{complexd{1.0 / std::sqrt(2.0)}, complexd{0.0, 1.0 / std::sqrt(2.0)}};
  if (name == "y-") return PureState{complexd{1.0 / std::sqrt(2.0)}, complexd{0.0, -1.0 / std::sqrt(2.0)}};
  throw std::domain_error("unknown state name: " + name);
}

// Named state or four comma-separated reals re0,im0,re1,im1 (normalized).
PureState parse_state_spec(const std::string &spec) {
  if (spec.find(',') == std::string::npos) return named_state(spec);
  std::array<double, 4> parts{};
  std::istringstream in(spec);
  std::string token;
  for (size_t i = 0; i < 4; ++i) {
    if (!std::getline(in, token, ',')) {
      throw std::domain_error("state spec needs four components: " + spec);
    }
    size_t used = 0;
    parts[i] = std::stod(token, &used);
    if (used != token.size()) {
      throw std::domain_error("bad state component '" + token + "' in: " + spec);
    }
  }
  if (std::getline(in, token, ',')) {
    throw std::domain_error("state spec needs exactly four components: " + spec);
  }
  return PureState{{parts[0], parts[1]}, {parts[2], parts[3]}}.normalized();
}

JsonValue bloch_json(const std::array<double, 3> &r) {
  JsonValue arr = JsonValue::array();
  for (const double v : r) arr.push(JsonValue::real(v));
  return arr;
}

int cmd_simulate(const SimulateOptions &opt) {
  EnsembleSpec spec = EnsembleSpec::z_basis();
  ProtocolConfig config{MeasurementStrength(0.0), 0, ProtocolMode::filtered, 0, 0, std::nullopt};
  try {
    if (opt.ensemble == "z") {
      spec = EnsembleSpec::z_basis();
    } else if (opt.ensemble == "x") {
      spec = EnsembleSpec::x_basis();
    } else if (opt.ensemble.rfind("custom:", 0) == 0) {
      spec = parse_ensemble_file(opt.ensemble.substr(7));
    } else {
      throw std::domain_error("unknown ensemble (use z, x, or custom:<file>): " + opt.ensemble);
    }
    config = ProtocolConfig{
        MeasurementStrength(opt.lambda),
        opt.steps,
        opt.mode == "filtered" ? ProtocolMode::filtered : ProtocolMode::unfiltered,
        opt.copies,
        opt.seed,
        opt.condition_k >= 0 ? std::optional<int>(opt.condition_k) : std::nullopt};
    config.validate();
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const int workers = opt.workers >= 1 ? opt.workers : env_workers();
  const CampaignResult result = run_campaign(spec, config, workers);

  JsonValue config_json = JsonValue::object();
  config_json.add("command", JsonValue::string("simulate"));
  config_json.add("ensemble", JsonValue::string(opt.ensemble));
  config_json.add("lambda", JsonValue::real(opt.lambda));
  config_json.add("steps", JsonValue::integer(opt.steps));
  config_json.add("mode", JsonValue::string(opt.mode));
  config_json.add("copies", JsonValue::unsigned_integer(opt.copies));
  config_json.add("condition_k", opt.condition_k >= 0 ? JsonValue::integer(opt.condition_k)
                                                      : JsonValue::null());
  config_json.add("seed", JsonValue::unsigned_integer(opt.seed));

  try {
    const ExportFormat format =
        opt.format.empty() ? infer_format(opt.out) : parse_format(opt.format);
    JsonValue outputs = JsonValue::array();
    if (format == ExportFormat::json) {
      JsonValue doc = json_document(config_json, campaign_json(result));
      write_text_file(opt.out, doc.serialize(false));
      outputs.push(JsonValue::string(opt.out));
    } else {
      const std::string crossings = sibling_path(opt.out, "crossings");
      write_text_file(opt.out, records_csv(result.records));
      write_text_file(crossings,
                      zero_crossing_csv(zero_crossing_summary(result.return_histogram)));
      outputs.push(JsonValue::string(opt.out));
      outputs.push(JsonValue::string(crossings));
    }

    JsonValue manifest_config = std::move(config_json);
    manifest_config.add("workers", JsonValue::integer(workers));
    JsonValue summary = JsonValue::object();
    summary.add("copies", JsonValue::unsigned_integer(result.copies));
    summary.add("retained", JsonValue::unsigned_integer(result.retained));
    summary.add("acceptance_rate", JsonValue::real(result.acceptance_rate()));
    summary.add("outputs", std::move(outputs));
    write_manifest(opt.out, "simulate", std::move(manifest_config), std::move(summary));
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }

  std::cout << "copies " << result.copies << ", retained " << result.retained
            << ", acceptance rate " << format_real(result.acceptance_rate()) << "\n";
  if (config.condition_k.has_value() && result.retained == 0) return kExitEmptyConditioned;
  return kExitOk;
}

int cmd_oracle(const OracleOptions &opt) {
  JsonValue config_json = JsonValue::object();
  config_json.add("command", JsonValue::string("oracle"));
  config_json.add("steps", JsonValue::integer(opt.steps));
  config_json.add("quantum", JsonValue::boolean(opt.quantum));

  try {
    if (!opt.quantum) {
      const WalkTable table = enumerate_all(opt.steps);
      const ReflectionReport report = reflection_identity_check(table);
      const ExportFormat format =
          opt.format.empty() ? infer_format(opt.out) : parse_format(opt.format);
      if (format == ExportFormat::json) {
        write_text_file(opt.out,
                        json_document(config_json, walk_table_json(table)).serialize(false));
      } else {
        write_text_file(opt.out, walk_table_csv(table));
      }
      JsonValue summary = JsonValue::object();
      summary.add("reflection_identity_exact", JsonValue::boolean(report.all_exact));
      summary.add("violations", JsonValue::unsigned_integer(report.violations.size()));
      write_manifest(opt.out, "oracle", std::move(config_json), std::move(summary));
      if (!report.all_exact) {
        std::cerr << "error: reflection identity violated in " << report.violations.size()
                  << " cells\n";
        return kExitVerification;
      }
      return kExitOk;
    }

    if (opt.condition_k < 1) {
      std::cerr << "error: --quantum requires --condition-k >= 1\n";
      return kExitUsage;
    }
    const MeasurementStrength strength(opt.lambda);
    const PureState state = named_state(opt.state);
    const DeparturePMF pmf =
        conditional_departure_distribution(opt.steps, opt.condition_k, strength, state);
    config_json.add("lambda", JsonValue::real(opt.lambda));
    config_json.add("state", JsonValue::string(opt.state));
    config_json.add("condition_k", JsonValue::integer(opt.condition_k));
    const ExportFormat format =
        opt.format.empty() ? infer_format(opt.out) : parse_format(opt.format);
    if (format == ExportFormat::json) {
      write_text_file(opt.out,
                      json_document(config_json, departure_pmf_json(pmf)).serialize(false));
    } else {
      write_text_file(opt.out, departure_pmf_csv(pmf));
    }
    JsonValue summary = JsonValue::object();
    summary.add("k", JsonValue::integer(pmf.k));
    write_manifest(opt.out, "oracle", std::move(config_json), std::move(summary));
    return kExitOk;
  } catch (const std::domain_error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
}

int cmd_verify(const VerifyOptions &opt) {
  const std::vector<SuiteResult> results = run_verification_suites(opt.seed, opt.cases);
  size_t width = 0;
  for (const SuiteResult &r : results) width = std::max(width, r.name.size());
  bool all_passed = true;
  std::string first_failure;
  for (const SuiteResult &r : results) {
    std::cout << r.name << std::string(width - r.name.size() + 2, ' ') << r.cases
              << " cases  " << (r.passed ? "PASS" : "FAIL") << "\n";
    if (!r.passed) {
      all_passed = false;
      if (first_failure.empty()) first_failure = r.name + ": " + r.detail;
    }
  }
  if (!all_passed) {
    std::cerr << "first counterexample: " << first_failure << "\n";
    return kExitVerification;
  }
  return kExitOk;
}

int cmd_tomography(const TomographyOptions &opt) {
  PureState state;
  MeasurementStrength strength(0.0);
  try {
    state = parse_state_spec(opt.state);
    strength = MeasurementStrength(opt.lambda);
    if (strength.lambda == 0.0) {
      throw std::domain_error("lambda = 0 carries no information; estimation impossible");
    }
    if (opt.shots == 0) {
      throw std::domain_error("shots-per-axis must be positive");
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const ObservableAxis axes[3] = {ObservableAxis::x(), ObservableAxis::y(),
                                  ObservableAxis::z()};
  OutcomeCounts counts[3];
  for (int axis = 0; axis < 3; ++axis) {
    const auto [e_plus, e_minus] = effects(strength, axes[axis]);
    const std::array<complexd, 2> amps = {state.amp0, state.amp1};
    complexd quad{0.0, 0.0};
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        quad += std::conj(amps[static_cast<size_t>(r)]) * e_plus(r, c) *
                amps[static_cast<size_t>(c)];
      }
    }
    const double p_plus = quad.real();
    PhiloxStream rng(opt.seed, static_cast<uint64_t>(axis));
    for (uint64_t shot = 0; shot < opt.shots; ++shot) {
      rng.uniform() < p_plus ? ++counts[axis].n_plus : ++counts[axis].n_minus;
    }
  }
  const BlochVector estimate = tomography_estimate(counts[0], counts[1], counts[2], strength);
  const std::array<double, 3> truth = state.bloch_vector();
  double error_sq = 0.0;
  for (int axis = 0; axis < 3; ++axis) {
    const double d = estimate.r[static_cast<size_t>(axis)] - truth[static_cast<size_t>(axis)];
    error_sq += d * d;
  }
  const double error_norm = std::sqrt(error_sq);

  JsonValue config_json = JsonValue::object();
  config_json.add("command", JsonValue::string("tomography"));
  config_json.add("state", JsonValue::string(opt.state));
  config_json.add("lambda", JsonValue::real(opt.lambda));
  config_json.add("shots_per_axis", JsonValue::unsigned_integer(opt.shots));
  config_json.add("seed", JsonValue::unsigned_integer(opt.seed));

  try {
    const ExportFormat format =
        opt.format.empty() ? infer_format(opt.out) : parse_format(opt.format);
    if (format == ExportFormat::json) {
      JsonValue data = JsonValue::object();
      JsonValue counts_json = JsonValue::object();
      const char *axis_names[3] = {"x", "y", "z"};
      for (int axis = 0; axis < 3; ++axis) {
        JsonValue c = JsonValue::object();
        c.add("n_plus", JsonValue::unsigned_integer(counts[axis].n_plus));
        c.add("n_minus", JsonValue::unsigned_integer(counts[axis].n_minus));
        counts_json.add(axis_names[axis], std::move(c));
      }
      data.add("counts", std::move(counts_json));
      data.add("estimate", bloch_json(estimate.r));
      data.add("true_bloch", bloch_json(truth));
      data.add("error_norm", JsonValue::real(error_norm));
      data.add("outside_sphere", JsonValue::boolean(estimate.outside_sphere));
      write_text_file(opt.out, json_document(config_json, std::move(data)).serialize(false));
    } else {
      std::string csv = "axis,n_plus,n_minus,estimate,truth\n";
      const char *axis_names[3] = {"x", "y", "z"};
      for (int axis = 0; axis < 3; ++axis) {
        csv += axis_names[axis];
        csv.push_back(',');
        csv += std::to_string(counts[axis].n_plus);
        csv.push_back(',');
        csv += std::to_string(counts[axis].n_minus);
        csv.push_back(',');
        csv += format_real(estimate.r[static_cast<size_t>(axis)]);
        csv.push_back(',');
        csv += format_real(truth[static_cast<size_t>(axis)]);
        csv.push_back('\n');
      }
      write_text_file(opt.out, csv);
    }
    JsonValue summary = JsonValue::object();
    summary.add("error_norm", JsonValue::real(error_norm));
    summary.add("outside_sphere", JsonValue::boolean(estimate.outside_sphere));
    write_manifest(opt.out, "tomography", std::move(config_json), std::move(summary));
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }

  std::cout << "error norm " << format_real(error_norm) << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string> &args) {
  CLI::App app{"Unsharp-measurement trajectory simulator and walk oracle"};
  app.require_subcommand(1);

  SimulateOptions sim;
  CLI::App *simulate = app.add_subcommand(
      "simulate", "Run a measurement campaign and export origin-return records");
  simulate->add_option("--ensemble", sim.ensemble, "z, x, or custom:<file>")->required();
  simulate->add_option("--lambda", sim.lambda, "measurement strength in [0, 1]")->required();
  simulate->add_option("--steps", sim.steps, "trajectory length T (even)")->required();
  simulate->add_option("--mode", sim.mode, "filtered or unfiltered")
      ->required()
      ->check(CLI::IsMember({"filtered", "unfiltered"}));
  simulate->add_option("--copies", sim.copies, "number of trajectories")->required();
  simulate->add_option("--condition-k", sim.condition_k,
                       "retain only trajectories with exactly k returns (unfiltered)");
  simulate->add_option("--seed", sim.seed, "master seed")->required();
  simulate->add_option("--workers", sim.workers,
                       "worker threads (default: POVMWALK_WORKERS or 1)");
  simulate->add_option("--out", sim.out, "output path")->required();
  simulate->add_option("--format", sim.format, "csv or json (default: from extension)")
      ->check(CLI::IsMember({"csv", "json"}));

  OracleOptions ora;
  CLI::App *oracle = app.add_subcommand(
      "oracle", "Exact walk enumeration: tables and conditional departure pmfs");
  oracle->add_option("--steps", ora.steps, "walk length T (even, <= 24; <= 20 quantum)")
      ->required();
  CLI::Option *quantum_flag =
      oracle->add_flag("--quantum", ora.quantum, "weight walks by measurement probabilities");
  oracle->add_option("--lambda", ora.lambda, "measurement strength (quantum)");
  oracle->add_option("--state", ora.state, "initial state: z0, z1, x+, x- (quantum)");
  oracle->add_option("--condition-k", ora.condition_k, "condition on exactly k returns (quantum)")
      ->needs(quantum_flag);
  oracle->add_option("--out", ora.out, "output path")->required();
  oracle->add_option("--format", ora.format, "csv or json (default: from extension)")
      ->check(CLI::IsMember({"csv", "json"}));

  VerifyOptions ver;
  CLI::App *verify = app.add_subcommand("verify", "Run the randomized invariant suites");
  verify->add_option("--seed", ver.seed, "suite seed");
  verify->add_option("--cases", ver.cases, "cases per suite")->check(CLI::PositiveNumber);

  TomographyOptions tom;
  CLI::App *tomography = app.add_subcommand(
      "tomography", "Estimate a Bloch vector from simulated per-axis measurements");
  tomography->add_option("--state", tom.state, "named state or re0,im0,re1,im1")->required();
  tomography->add_option("--lambda", tom.lambda, "measurement strength in (0, 1]")->required();
  tomography->add_option("--shots-per-axis", tom.shots, "samples per axis")->required();
  tomography->add_option("--seed", tom.seed, "master seed")->required();
  tomography->add_option("--out", tom.out, "output path")->required();
  tomography->add_option("--format", tom.format, "csv or json (default: from extension)")
      ->check(CLI::IsMember({"csv", "json"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp &) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  if (simulate->parsed()) return cmd_simulate(sim);
  if (oracle->parsed()) return cmd_oracle(ora);
  if (verify->parsed()) return cmd_verify(ver);
  if (tomography->parsed()) return cmd_tomography(tom);
  std::cerr << app.help();
  return kExitUsage;
}

}  // namespace povmwalk
